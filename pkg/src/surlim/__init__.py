"""Surreal sign expansions, string limits of sequences, and transfinite s-sums."""

from .ordinal import OMEGA, ONE, ZERO, Ordinal, ParamOrdinal, ord_add, ord_mul, ord_nat_sum, param_sup
from .sign import EMPTY, MINUS, PLUS, SignExpansion, concat, negate, normalize, se_cmp, sign_at, truncate
from .real_bridge import Dyadic, RealStream, add_eps, decompose, dyadic_to_se, se_to_dyadic
from .limits import (
    EventuallyConstant,
    Explicit,
    LimitOutcome,
    Oracle,
    Parametric,
    Template,
    f_limit,
    full_limit_check,
    slim,
    slim_diamond,
    slim_star,
)
from .parsing import parse_literal, parse_sign_expansion, parse_template
from .ssum import add_restricted, permute_finite, ssum
from .convergence import RealSequence, verify

__all__ = [
    "OMEGA", "ONE", "ZERO", "Ordinal", "ParamOrdinal", "ord_add", "ord_mul", "ord_nat_sum", "param_sup",
    "EMPTY", "MINUS", "PLUS", "SignExpansion", "concat", "negate", "normalize", "se_cmp", "sign_at", "truncate",
    "Dyadic", "RealStream", "add_eps", "decompose", "dyadic_to_se", "se_to_dyadic",
    "EventuallyConstant", "Explicit", "LimitOutcome", "Oracle", "Parametric", "Template",
    "f_limit", "full_limit_check", "slim", "slim_diamond", "slim_star",
    "parse_literal", "parse_sign_expansion", "parse_template",
    "add_restricted", "permute_finite", "ssum",
    "RealSequence", "verify",
]
