"""Ground arithmetic: F_q, A = F_q[theta], K = F_q(theta), and K_infinity."""

from .field import Ctx, canonical_modulus, ctx_for_q, is_prime, make_ctx
from .laurent import LaurentInf
from .poly import (
    INF,
    NEG_INF,
    PolyA,
    RatK,
    as_ratk,
    inverse_mod,
    is_irreducible,
    monic_enumerate,
    ord_v,
    poly_enumerate,
    poly_gcd,
    poly_xgcd,
    require_prime,
)
from .text import format_poly, format_ratk, parse_poly, parse_ratk
from .kvector import KVector

__all__ = [
    "Ctx",
    "INF",
    "KVector",
    "LaurentInf",
    "NEG_INF",
    "PolyA",
    "RatK",
    "as_ratk",
    "canonical_modulus",
    "ctx_for_q",
    "format_poly",
    "format_ratk",
    "inverse_mod",
    "is_irreducible",
    "is_prime",
    "make_ctx",
    "monic_enumerate",
    "ord_v",
    "parse_poly",
    "parse_ratk",
    "poly_enumerate",
    "poly_gcd",
    "poly_xgcd",
    "require_prime",
]
