"""The thirteen acceptance criteria, each under its runtime budget.

Every test records its criterion label and wall time; the terminal summary
prints one PASS/FAIL line per criterion.
"""
import subprocess
import sys
import time


from exprank.config import RunConfig
from exprank.contraction import ZetaMap, zeta_quotient_order_type
from exprank.groups import OrderTypeSpec
from exprank.rank import Window, enumerate_segments, principal_exponential_rank
from exprank.sampling import Sampler
from exprank.suites import construction_report, run_suite
from oracles import floor_key, from_series, s_add, s_below, s_inverse, s_mul

TAUS_1_TO_5 = ["1", "2", "3", "4", "5", "b,a", "z,y,x,w"]


class Clock:
    def __init__(self, record_property, label, budget):
        self.record = record_property
        self.label = label
        self.budget = budget

    def __enter__(self):
        self.record("criterion", self.label)
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start
        self.record("seconds", round(self.seconds, 2))
        return False

    def within_budget(self):
        assert self.seconds < self.budget, f"{self.label}: {self.seconds:.1f}s over {self.budget}s"


def passing(name, **kw):
    report = run_suite(name, RunConfig(**kw))
    assert report["passed"], (name, kw, report.get("counterexample"))
    return report


def test_criterion_01_principal_rank_reproduces_tau(record_property):
    with Clock(record_property, "1 principal exponential rank equals tau", 10) as c:
        for tau in TAUS_1_TO_5:
            cfg = RunConfig(tau=tau)
            rep = construction_report(cfg)
            assert rep["principal_exponential_rank"] == list(cfg.tau)
            assert rep["rank_matches"] and rep["zeta_increasing_on_window"] and rep["passed"]
    c.within_budget()


def test_criterion_02_strong_axiom(record_property):
    with Clock(record_property, "2 strong axiom", 30) as c:
        for tau in ("1", "2", "3"):
            rep = passing("strong", tau=tau, samples=1000)
            assert rep["failures"] == 0 and rep["checked"] >= 1000
    c.within_budget()


def test_criterion_03_first_taylor_axiom(record_property):
    with Clock(record_property, "3 first Taylor axiom", 30) as c:
        for tau in ("1", "2", "3"):
            rep = passing("t1", tau=tau, samples=1000)
            assert rep["checked"] == 1000 and rep["doubled_valuation"]["checked"] == 1000
    c.within_budget()


def test_criterion_04_growth_axiom(record_property):
    with Clock(record_property, "4 growth axiom", 30) as c:
        for tau in ("1", "2", "3"):
            rep = passing("growth", tau=tau, samples=300)
            assert rep["max_n"] == 10
    c.within_budget()


def test_criterion_05_compatibility_criteria_agree(record_property):
    with Clock(record_property, "5 compatibility criteria agree with witnesses", 60) as c:
        for n in (1, 2, 3, 4):
            rep = passing("thm12", tau=str(n))
            rows = rep["segments"]
            assert len(rows) == len(enumerate_segments(OrderTypeSpec.of_size(n), Window()))
            assert all(r["agree"] for r in rows)
            assert all(r["witness"] for r in rows if not r["compatible"])
    c.within_budget()


def test_criterion_06_sigma_epsilon_and_quotient(record_property):
    with Clock(record_property, "6 sigma and epsilon maps", 10) as c:
        for tau in TAUS_1_TO_5:
            passing("thm13", tau=tau)
            U = RunConfig(tau=tau).universe
            assert principal_exponential_rank(U) == zeta_quotient_order_type(ZetaMap(U))
    c.within_budget()


def test_criterion_07_closed_segments_have_no_minimum(record_property):
    with Clock(record_property, "7 closed segments have no minimum", 5) as c:
        for tau in TAUS_1_TO_5:
            passing("cor14", tau=tau)
    c.within_budget()


def test_criterion_08_log_equivalence(record_property):
    with Clock(record_property, "8 log-equivalence descriptors and witnesses", 60) as c:
        rep = passing("lemma9", tau="3", samples=500)
        assert rep["checked"] == 500 and rep["bound"] == 8
        assert 0 < rep["equivalent_pairs"] < 500
        rep = passing("lemma10", tau="3", samples=500)
        assert rep["checked"] == 500
    c.within_budget()


def test_criterion_09_decompose_assemble_round_trips(record_property):
    with Clock(record_property, "9 decompose and assemble round trips", 10) as c:
        rep = passing("thm16", tau="3", samples=100)
        assert rep["checked"] >= 300
    c.within_budget()


def test_criterion_10_induced_contraction(record_property):
    with Clock(record_property, "10 induced contraction on coarsenings", 30) as c:
        for n in (2, 3):
            rep = passing("thm15", tau=str(n), samples=100)
            per = rep["samples_per_segment"]
            assert all(v == 100 for k, v in per.items() if k != "ALL")
    c.within_budget()


def test_criterion_11_tower(record_property):
    with Clock(record_property, "11 tower cross-sections, descent and exp domain", 120) as c:
        rep = passing("tower27", tau="2", depth=2, samples=1000)
        assert rep["per_stage"] == {"0": 1000, "1": 1000, "2": 1000}
        rep = passing("descent", tau="2", depth=2, samples=300)
        assert all(int(k) >= v for k, v in rep["max_descent"].items())
        rep = passing("restricted", tau="2", depth=2, samples=300)
        assert set(rep["domain_witnesses"]) == {"1", "2"}
    c.within_budget()


def test_criterion_12_series_arithmetic_matches_oracle(record_property):
    with Clock(record_property, "12 series arithmetic matches brute force", 30) as c:
        smp = Sampler(12, max_terms=5)
        for i in range(500):
            U = OrderTypeSpec.of_size(1 + i % 3)
            a = smp.series(U, exact=i % 2 == 0)
            b = smp.series(U, exact=i % 4 < 2)
            exact_a = from_series(a) if a.is_exact else None
            s = a + b
            assert from_series(s) == s_below(s_add(from_series(a), from_series(b)), floor_key(s))
            p = a * b
            assert from_series(p) == s_below(s_mul(from_series(a), from_series(b)), floor_key(p))
            if exact_a is not None and a.terms:
                inv = a.invert(4)
                assert from_series(inv) == s_below(s_inverse(exact_a, 6), floor_key(inv))
    c.within_budget()


def _cli_reports(tmp_path, tag):
    runs = [
        ["check", "all", "--tau", "2", "--samples", "25", "--seed", "1234"],
        ["build", "--tau", "3"],
        ["rank", "--tau", "2", "--window=-1,1"],
        ["tower", "--depth", "3"],
        ["eval", "exp(log(t^{s2{-t^{s1{-t^{-e(t0,0)}}}}}))"],
    ]
    out = []
    for i, argv in enumerate(runs):
        path = tmp_path / f"{tag}{i}.json"
        subprocess.run([sys.executable, "-m", "exprank", *argv, "--format", "json", "--out", str(path)],
                       check=True)
        out.append(path.read_bytes())
    return out


def test_criterion_13_reports_are_byte_identical(tmp_path, record_property):
    with Clock(record_property, "13 identical seeds give identical reports", 120) as c:
        assert _cli_reports(tmp_path, "a") == _cli_reports(tmp_path, "b")
    c.within_budget()
