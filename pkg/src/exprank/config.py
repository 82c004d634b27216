"""Run configuration: defaults, a plain ``key = value`` file format and validation."""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction

from .errors import DomainError
from .groups import OrderTypeSpec
from .rank import Window
from .tower import MAX_DEPTH

__all__ = ["RunConfig", "load_config_file", "parse_config_text"]


@dataclass(frozen=True)
class RunConfig:
    tau: tuple = ("t0", "t1")
    depth: int = 2
    taylor_order: int = 4
    window: tuple = (-3, 3)
    samples: int = 200
    seed: int = 0
    mode: str = "monic"
    interval_width: Fraction = Fraction(1, 10 ** 6)
    max_depth: int = MAX_DEPTH

    def __post_init__(self):
        if isinstance(self.tau, str):
            object.__setattr__(self, "tau", OrderTypeSpec.parse(self.tau).labels)
        object.__setattr__(self, "interval_width", Fraction(self.interval_width))
        self.validate()

    def validate(self):
        OrderTypeSpec(self.tau)
        Window(*self.window)
        if self.taylor_order < 1:
            raise DomainError("taylor_order must be at least 1")
        if self.samples < 1:
            raise DomainError("samples must be at least 1")
        if not 0 <= self.depth <= self.max_depth:
            raise DomainError(f"depth must lie in 0..{self.max_depth}")
        if self.mode not in ("monic", "interval"):
            raise DomainError(f"mode must be monic or interval, not {self.mode!r}")
        if self.interval_width <= 0:
            raise DomainError("interval_width must be positive")
        if not -(2 ** 63) <= self.seed < 2 ** 64:
            raise DomainError("seed must fit in 64 bits")

    @property
    def universe(self) -> OrderTypeSpec:
        return OrderTypeSpec(self.tau)

    @property
    def offset_window(self) -> Window:
        return Window(*self.window)

    def with_values(self, **kw) -> "RunConfig":
        return replace(self, **kw)

    def as_dict(self) -> dict:
        return {
            "tau": ",".join(self.tau),
            "depth": self.depth,
            "taylor_order": self.taylor_order,
            "window": f"{self.window[0]},{self.window[1]}",
            "samples": self.samples,
            "seed": self.seed,
            "mode": self.mode,
            "interval_width": str(self.interval_width),
            "max_depth": self.max_depth,
        }


_ALIASES = {"order": "taylor_order", "width": "interval_width"}


def _convert(key, value: str):
    if key == "tau":
        return OrderTypeSpec.parse(value).labels
    if key == "window":
        lo, _, hi = value.replace(" ", "").partition(",")
        return (int(lo), int(hi))
    if key == "mode":
        return value
    if key == "interval_width":
        return Fraction(value)
    return int(value, 0)


def parse_config_text(text: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment.  Returns converted values."""
    names = {f.name for f in fields(RunConfig)}
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = _ALIASES.get(key.strip(), key.strip())
        if not sep or key not in names:
            raise DomainError(f"config line {lineno}: cannot read {raw.strip()!r}")
        try:
            out[key] = _convert(key, value.strip())
        except ValueError as exc:
            raise DomainError(f"config line {lineno}: {exc}") from None
    return out


def load_config_file(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())
