"""Exact exponential-rank computations on Hahn series fields with rational coefficients."""
from .contraction import chi_model, zeta_apply, zeta_equiv, zeta_quotient_order_type
from .errors import (
    DomainError,
    ExpRankError,
    IncompatibleLog,
    IndeterminateValuation,
    NoDescent,
    NonMonicResidue,
    NotInImage,
    ParseError,
    PrecisionInsufficient,
    UniverseMismatch,
)
from .explog import (
    LogComponents,
    LogCrossSection,
    PrecisionPolicy,
    full_exp,
    full_log,
    normalized_log,
    standard_components,
)
from .groups import GroupElement, IndexPoint, OrderTypeSpec
from .rank import FinalSegment, QuotientSegment, Window
from .series import INF, Series
from .text import parse_group, parse_series, parse_stage_element
from .tower import StageElement, StageTower, tower_build

__all__ = [
    "chi_model",
    "zeta_apply",
    "zeta_equiv",
    "zeta_quotient_order_type",
    "DomainError",
    "ExpRankError",
    "IncompatibleLog",
    "IndeterminateValuation",
    "NoDescent",
    "NonMonicResidue",
    "NotInImage",
    "ParseError",
    "PrecisionInsufficient",
    "UniverseMismatch",
    "LogComponents",
    "LogCrossSection",
    "PrecisionPolicy",
    "full_exp",
    "full_log",
    "normalized_log",
    "standard_components",
    "GroupElement",
    "IndexPoint",
    "OrderTypeSpec",
    "FinalSegment",
    "QuotientSegment",
    "Window",
    "INF",
    "Series",
    "parse_group",
    "parse_series",
    "parse_stage_element",
    "StageElement",
    "StageTower",
    "tower_build",
]

__version__ = "0.1.0"
