"""Named invariant suites.

Each suite takes a :class:`RunConfig` and returns a plain dict with at least
``passed``, ``checked`` and ``counterexample`` (the first failing input,
printed, or None).  Reports contain no timings so they are reproducible.
"""
from __future__ import annotations


from .config import RunConfig
from .contraction import ZetaMap, chi_equiv, chi_equiv_witness, zeta_apply, zeta_equiv, zeta_quotient_order_type
from .errors import ExpRankError, IncompatibleLog, NotInImage
from .explog import (
    PrecisionPolicy,
    assemble_log,
    check_growth,
    check_strong,
    check_T1,
    chi_from_log,
    decompose_log,
    ell_equiv,
    ell_equiv_witness,
    full_log,
    normalized_log,
    standard_components,
    t1_defect_valuation,
)
from .rank import (
    check_epsilon_order,
    check_sigma_bijection,
    closed_segments_lack_minimum,
    cofinality_class_check,
    compatibility_verdicts,
    compatible_segments,
    enumerate_segments,
    exponential_rank,
    incompatibility_witness,
    induced_contraction_agrees,
    is_compatible,
    log_preserves_nonring,
    principal_exponential_rank,
    principal_rank,
    value_closure_check,
)
from .sampling import Sampler
from .series import Series, hs_w_data
from .tower import (
    domain_growth_witness,
    infinite_part,
    restricted_exp_agreement,
    stage_cross_section,
    stage_invariance_witness,
    tower_build,
    tower_check_strong,
    tower_embed,
    tower_exp,
    tower_log,
    tower_log_descends,
    tower_unembed,
)

__all__ = ["SUITES", "run_suite", "construction_report", "rank_report", "tower_report"]


class _Tally:
    def __init__(self):
        self.checked = 0
        self.failed = 0
        self.counterexample = None

    def record(self, ok, witness=None):
        self.checked += 1
        if not ok:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = str(witness)

    def report(self, **extra) -> dict:
        out = {
            "passed": self.failed == 0 and self.checked > 0,
            "checked": self.checked,
            "failures": self.failed,
            "counterexample": self.counterexample,
        }
        out.update(extra)
        if not out["passed"] and self.failed == 0:
            out["counterexample"] = "nothing was checked"
        return out


def _setup(cfg: RunConfig):
    U = cfg.universe
    comps = standard_components(U, cfg.mode, cfg.interval_width)
    policy = PrecisionPolicy(cfg.taylor_order)
    return U, comps, policy, Sampler(cfg.seed, cfg.window)


def suite_strong(cfg: RunConfig) -> dict:
    """va < v(log a) on positive infinite a; v(h(g)) > g on negative g."""
    U, comps, policy, smp = _setup(cfg)
    t = _Tally()
    for _ in range(cfg.samples):
        a = smp.positive_infinite(U)
        t.record(check_strong(a, comps, policy), a)
        g = smp.exponent(U, -1)
        t.record(comps.cross_section(g).v() > g, g)
    # log is a homomorphism: log(ab) = log a + log b below the floor
    hom = _Tally()
    for _ in range(cfg.samples):
        a, b = smp.positive(U, monic=True), smp.positive(U, monic=True)
        lhs = full_log(a * b, comps, policy)
        rhs = full_log(a, comps, policy) + full_log(b, comps, policy)
        hom.record(lhs.agrees_with(rhs), f"{a} ; {b}")
    out = t.report(homomorphism=hom.report())
    out["passed"] = out["passed"] and out["homomorphism"]["passed"]
    return out


def suite_t1(cfg: RunConfig) -> dict:
    """v(b - log(1+b)) > vb, and = 2 vb since the quadratic term never cancels."""
    U, comps, policy, smp = _setup(cfg)
    t = _Tally()
    doubled = _Tally()
    for _ in range(cfg.samples):
        b = smp.infinitesimal(U)
        t.record(check_T1(b, comps, policy), b)
        val, exact = t1_defect_valuation(b, comps, policy)
        doubled.record(exact and val == b.v() * 2, b)
    out = t.report(doubled_valuation=doubled.report())
    out["passed"] = out["passed"] and out["doubled_valuation"]["passed"]
    return out


def suite_growth(cfg: RunConfig, max_n=10) -> dict:
    U, comps, policy, smp = _setup(cfg)
    t = _Tally()
    for _ in range(cfg.samples):
        a = smp.positive_infinite(U)
        t.record(all(check_growth(a, n, comps, policy) for n in range(1, max_n + 1)), a)
    return t.report(max_n=max_n)


def suite_log_equivalence(cfg: RunConfig, bound=8) -> dict:
    """Log-equivalence: class descriptors against bounded witness search."""
    U, comps, policy, smp = _setup(cfg)
    # classes a gap of d apart need up to d + 1 steps; keep wide windows decidable
    lo, hi = cfg.window
    bound = max(bound, hi - lo + 1)
    log = lambda x: normalized_log(x, comps, policy)  # noqa: E731
    t = _Tally()
    equivalent = 0
    for _ in range(cfg.samples):
        a = smp.positive_infinite(U)
        b = smp.positive_infinite(U)
        decided = ell_equiv(a, b)
        by_chi = chi_equiv(a.v(), b.v())
        by_zeta = zeta_equiv(a.v().vG(), b.v().vG())
        searched = ell_equiv_witness(a, b, log, bound) is not None
        chi_search = chi_equiv_witness(a.v(), b.v(), bound, lambda g: chi_from_log(g, comps, policy)) is not None
        equivalent += decided
        t.record(decided == by_chi == by_zeta == searched == chi_search, f"{a} ; {b}")
    return t.report(equivalent_pairs=equivalent, bound=bound)


def suite_power_bounded(cfg: RunConfig, bound=8) -> dict:
    """a < a' < a^n (n <= 5) forces log-equivalence."""
    U, comps, policy, smp = _setup(cfg)
    log = lambda x: normalized_log(x, comps, policy)  # noqa: E731
    t = _Tally()
    tried = 0
    while t.checked < cfg.samples:
        tried += 1
        a = smp.positive_infinite(U)
        n = smp.rng.randint(2, 5)
        j = smp.rng.randint(1, n)
        b = (a ** j).scale(smp.positive_coeff()) + smp.series(U)
        if not (a < b < a ** n):
            continue
        ok = ell_equiv(a, b) and ell_equiv_witness(a, b, log, bound) is not None
        t.record(ok, f"{a} ; {b}")
    return t.report(candidates=tried, bound=bound)


def suite_compatibility(cfg: RunConfig) -> dict:
    """Three compatibility criteria agree; incompatible segments get a witness."""
    U, comps, policy, smp = _setup(cfg)
    window = cfg.offset_window
    t = _Tally()
    rows = []
    samples = [smp.positive(U) for _ in range(min(cfg.samples, 50))]
    for seg in enumerate_segments(U, window):
        verdicts = compatibility_verdicts(seg, comps, window, policy)
        agree = len(set(verdicts.values())) == 1
        row = {"segment": str(seg), "compatible": verdicts["closure"], "agree": agree}
        ok = agree
        if verdicts["closure"]:
            bad = log_preserves_nonring(seg, samples, comps, policy)
            ok = ok and bad is None
            row["sampled_violation"] = None if bad is None else str(bad)
        else:
            w = incompatibility_witness(seg, comps, window, policy)
            verified = w is not None and _verify_incompatibility(seg, w, comps, policy)
            ok = ok and verified
            row["witness"] = None if w is None else str(w)
        rows.append(row)
        t.record(ok, seg)
    return t.report(segments=rows)


def _verify_incompatibility(seg, a, comps, policy) -> bool:
    la = full_log(a, comps, policy)
    return a.sign() > 0 and not hs_w_data(a, seg).in_Rw and hs_w_data(la, seg).in_Rw


def suite_rank_maps(cfg: RunConfig) -> dict:
    U = cfg.universe
    window = cfg.offset_window
    t = _Tally()
    sig = check_sigma_bijection(U, window)
    t.record(not sig, "; ".join(sig))
    eps = check_epsilon_order(U, window)
    t.record(not eps, "; ".join(eps))
    per = principal_exponential_rank(U)
    quotient = zeta_quotient_order_type(ZetaMap(U))
    t.record(per.same_order_type(quotient) and per.labels == quotient.labels, per)
    return t.report(
        exponential_rank=[str(q) for q in exponential_rank(U)],
        principal_exponential_rank=list(per.labels),
    )


def suite_closed_segments(cfg: RunConfig) -> dict:
    t = _Tally()
    t.record(closed_segments_lack_minimum(cfg.universe, cfg.offset_window), cfg.universe)
    return t.report()


def suite_coarsenings(cfg: RunConfig) -> dict:
    """Induced contraction on each compatible coarsening, plus value closure."""
    U, comps, policy, smp = _setup(cfg)
    t = _Tally()
    per_segment = {}
    for seg in compatible_segments(U):
        candidates = []
        # R_w = K for the whole group, so only proper segments have candidates
        attempts = 0 if seg.tier == 0 else 50 * cfg.samples
        while len(candidates) < cfg.samples and attempts:
            attempts -= 1
            a = smp.positive_infinite(U)
            if not hs_w_data(a, seg).in_Rw:
                candidates.append(a)
        if seg.tier:
            bad = induced_contraction_agrees(seg, candidates, comps, policy)
            t.record(bad is None and len(candidates) == cfg.samples, f"{seg}: {bad}")
        closure_samples = [smp.positive(U) for _ in range(cfg.samples)]
        closure_samples += [_exp_domain_sample(smp, U, comps, seg) for _ in range(cfg.samples)]
        bad_closure = value_closure_check(seg, closure_samples, comps, policy)
        t.record(bad_closure is None, f"{seg}: {bad_closure}")
        cof = all(
            cofinality_class_check(a, seg) == (a.v().vG().tier == seg.tier) for a in candidates
        )
        t.record(cof, seg)
        per_segment[str(seg)] = len(candidates)
    return t.report(samples_per_segment=per_segment)


def _exp_domain_sample(smp, U, comps, seg):
    # h(g) + c + eps with g supported in the segment: exp is defined here
    while True:
        g = smp.exponent(U).restrict(seg.contains)
        if g:
            break
    eps = smp.infinitesimal(U)
    return comps.cross_section(g) + eps


def suite_components(cfg: RunConfig) -> dict:
    """assemble(decompose(log)) = log and decompose(assemble(c)) = c on samples."""
    U, comps, policy, smp = _setup(cfg)
    log = assemble_log(comps)
    t = _Tally()
    positives = [smp.positive(U, monic=True) for _ in range(cfg.samples)]
    try:
        extracted = decompose_log(lambda a, p=policy: log(a, p), U, positives[:20], policy)
    except IncompatibleLog as exc:
        t.record(False, exc.witness)
        return t.report()
    rebuilt = assemble_log(extracted)
    for a in positives:
        t.record(rebuilt(a, policy).agrees_with(log(a, policy)), a)
    for _ in range(cfg.samples):
        g = smp.exponent(U)
        t.record(extracted.cross_section(g) == comps.cross_section(g), g)
        u = smp.one_unit(U)
        t.record(extracted.right(u, policy).agrees_with(comps.right(u, policy)), u)
    t.record(extracted.mid.log(1) == comps.mid.log(1) == 0, "residue log at 1")
    # an incompatible map is rejected: t^g -> t^g violates strong compatibility
    bogus = lambda a, p=policy: a  # noqa: E731
    try:
        decompose_log(bogus, U, positives[:5] + [smp.one_unit(U)], policy)
        t.record(False, "identity map accepted as a logarithm")
    except IncompatibleLog:
        t.record(True)
    return t.report()


# tower suites


def _tower(cfg):
    return tower_build(cfg.universe, cfg.depth, cfg.max_depth, cfg.mode, cfg.interval_width,
                       PrecisionPolicy(cfg.taylor_order))


def suite_tower_strong(cfg: RunConfig) -> dict:
    """v(h_n(g)) > g at every stage, and h_n extends h_{n-1}."""
    T = _tower(cfg)
    smp = Sampler(cfg.seed, cfg.window)
    t = _Tally()
    stages = {}
    for n in range(T.depth + 1):
        U = T.universe(n)
        c = 0
        for _ in range(cfg.samples):
            g = smp.exponent(U, -1)
            t.record(tower_check_strong(g, n), g)
            c += 1
            if n < T.depth:
                up = tower_embed(g, n + 1)
                t.record(stage_cross_section(up) == tower_embed(stage_cross_section(g), n + 1), g)
                t.record(tower_unembed(up, n) == g, g)
        stages[str(n)] = c
    return t.report(per_stage=stages)


def suite_descent(cfg: RunConfig) -> dict:
    """Iterated logs reach A_0 within n steps, and a is log-equivalent to a stage 0 element."""
    T = _tower(cfg)
    smp = Sampler(cfg.seed, cfg.window)
    t = _Tally()
    worst = {}
    for n in range(T.depth + 1):
        U = T.universe(n)
        top = 0
        for _ in range(cfg.samples):
            a = smp.positive_infinite(U)
            k = tower_log_descends(T, a)
            top = max(top, k)
            t.record(k <= n, a)
            t.record(stage_invariance_witness(T, a) is not None, a)
        worst[str(n)] = top
    return t.report(max_descent=worst)


def suite_restricted(cfg: RunConfig) -> dict:
    """exp of finite elements matches the Taylor sum; exp grows its domain each stage."""
    T = _tower(cfg)
    smp = Sampler(cfg.seed, cfg.window)
    t = _Tally()
    witnesses = {}
    for n in range(T.depth + 1):
        U = T.universe(n)
        t.record(restricted_exp_agreement(T, Series.zero(U)), "0")
        for _ in range(cfg.samples):
            eps = smp.infinitesimal(U)
            if T.mode == "interval":
                eps = eps + smp.coeff()
            t.record(restricted_exp_agreement(T, eps), eps)
            if n < T.depth:
                up = tower_exp(T, tower_embed(eps, n + 1))
                t.record(up.agrees_with(tower_embed(tower_exp(T, eps), n + 1)), eps)
            a = smp.positive_infinite(U, monic=True)
            la = tower_log(T, a)
            t.record(tower_exp(T, la).agrees_with(a), a)
            # every element of A_n is a log at stage n + 1
            if n < T.depth:
                inf = infinite_part(a)
                t.record(T.components(n + 1).cross_section.in_image(tower_embed(inf, n + 1)), a)
                for cut in range(1, len(inf.terms) + 1):
                    trunc = Series(U, inf.terms[:cut])
                    t.record(T.components(n + 1).cross_section.in_image(tower_embed(trunc, n + 1)), trunc)
        if n >= 1:
            w = domain_growth_witness(T, n)
            ok = tower_log(T, tower_exp(T, w)).agrees_with(w)
            try:
                tower_exp(T, tower_unembed(w, n - 1))
                ok = False
            except NotInImage:
                pass
            t.record(ok, w)
            witnesses[str(n)] = str(w)
    return t.report(domain_witnesses=witnesses)


SUITES = {
    "strong": suite_strong,
    "t1": suite_t1,
    "growth": suite_growth,
    "lemma9": suite_log_equivalence,
    "lemma10": suite_power_bounded,
    "thm12": suite_compatibility,
    "thm13": suite_rank_maps,
    "cor14": suite_closed_segments,
    "thm15": suite_coarsenings,
    "thm16": suite_components,
    "tower27": suite_tower_strong,
    "descent": suite_descent,
    "restricted": suite_restricted,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    try:
        return fn(cfg)
    except ExpRankError as exc:
        return {"passed": False, "checked": 0, "failures": 1,
                "counterexample": f"{type(exc).__name__}: {exc}"}


# build / rank / tower reports


def construction_report(cfg: RunConfig) -> dict:
    U = cfg.universe
    window = cfg.offset_window
    pts = window.points(U)
    zeta_up = all(zeta_apply(p) > p for p in pts)
    comps = standard_components(U, cfg.mode, cfg.interval_width)
    zeta_from_log = all(
        chi_from_log(-U.e(p.tier, p.offset), comps).vG() == zeta_apply(p) for p in pts
    )
    quotient = zeta_quotient_order_type(ZetaMap(U))
    per = principal_exponential_rank(U)
    return {
        "gamma": f"{U} x Z",
        "zeta": "(t,n) -> (t,n+1)",
        "zeta_increasing_on_window": zeta_up,
        "zeta_induced_by_log": zeta_from_log,
        "quotient_order_type": list(quotient.labels),
        "principal_exponential_rank": list(per.labels),
        "rank_matches": per.same_order_type(U),
        "passed": zeta_up and zeta_from_log and per.same_order_type(U),
        "tower_depth": cfg.depth,
    }


def rank_report(cfg: RunConfig) -> dict:
    U = cfg.universe
    window = cfg.offset_window
    comps = standard_components(U, cfg.mode, cfg.interval_width)
    listing = []
    consistent = True
    for seg in enumerate_segments(U, window):
        row = {"segment": str(seg), "compatible": is_compatible(seg)}
        w = incompatibility_witness(seg, comps, window)
        if not row["compatible"]:
            row["witness"] = None if w is None else str(w)
        # a witness must exist exactly for the incompatible segments
        consistent = consistent and (w is None) == row["compatible"]
        listing.append(row)
    return {
        "exponential_rank": [str(q) for q in exponential_rank(U)],
        "compatible_segments": [str(s) for s in compatible_segments(U)],
        "principal_exponential_rank": list(principal_exponential_rank(U).labels),
        "principal_rank": principal_rank(U, window),
        "segments": listing,
        "passed": consistent,
    }


def tower_report(cfg: RunConfig) -> dict:
    T = _tower(cfg)
    stages = []
    for n in range(T.depth + 1):
        row = {"stage": n, "group": "G" if n == 0 else f"A_{n - 1}"}
        if n >= 1:
            row["domain_witness"] = str(domain_growth_witness(T, n))
        stages.append(row)
    return {"base": list(T.base.labels), "depth": T.depth, "stages": stages, "passed": True}
