"""Exact arithmetic on ordered groups and fields, nearest elements in
subgroups ("standard parts"), tameness decisions and their certificates."""

from .errors import *  # noqa: F401,F403
from .scalars import QQ, FieldCtx, Scalar, parse_scalar, quadratic_field, rat
from .ogroup import HahnCtx, HahnElt, LexCtx, LexVec
from .structure import (
    Compose,
    HahnTruncate,
    KernelDesc,
    Projection,
    Shear,
    Subgroup,
    complement_of_kernel,
    is_order_preserving,
    section_subgroup,
)
from .tame import (
    StResult,
    check_cross_section,
    decide_tame,
    equivalence_report,
    is_cofinal,
    standard_part,
    st,
)
from .hahnfield import (
    XQ,
    Monomial,
    MonomialGroup,
    PrecSeries,
    Series,
    SeriesRing,
    coeff_xq,
    induced_valuation_check,
    residue,
    series_inv,
    series_ring,
    st_positive,
    valuation,
)
from .report import Check, Report

__version__ = "0.1.0"
