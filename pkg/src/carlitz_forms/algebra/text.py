"""Canonical text forms for elements of A and K.

Polynomials print in descending degree with variable ``T``; prime-field
coefficients are integers 0..p-1, extension coefficients are polynomials in
``w`` (parenthesized when multiplying a power of T and having several terms):

    (w+1)*T^2+w      2*T^3+T+1      0

An element of K prints as ``num/den``; a factor with several terms is
parenthesized, and ``/den`` is omitted when den = 1.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .field import Ctx
from .poly import PolyA, RatK


def format_poly(a: PolyA) -> str:
    ctx = a.ctx
    if a.is_zero():
        return "0"
    terms = []
    for e in range(a.c.size - 1, -1, -1):
        c = int(a.c[e])
        if not c:
            continue
        cs = ctx.elem_str(c)
        if e == 0:
            terms.append(cs)
            continue
        mono = "T" if e == 1 else f"T^{e}"
        if c == 1:
            terms.append(mono)
        elif "+" in cs:
            terms.append(f"({cs})*{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    return "+".join(terms)


def format_ratk(x: RatK) -> str:
    num = format_poly(x.num)
    if x.den.is_one():
        return num
    den = format_poly(x.den)
    if "+" in num:
        num = f"({num})"
    if "+" in den:
        den = f"({den})"
    return f"{num}/{den}"


_TERM = re.compile(
    r"""
    (?:
        (?P<coef>(?:\d+\*)?w(?:\^\d+)?|\d+|\([^()]*\))   # w-monomial, integer, or (w-poly)
        (?:\*(?=T))?
    )?
    (?P<var>T(?:\^(?P<exp>\d+))?)?
    """,
    re.VERBOSE,
)


def _parse_elem(ctx: Ctx, s: str, pos: int) -> int:
    """Element of F_q from an integer or a '+'-separated polynomial in w."""
    coords = [0] * ctx.m0
    for part in s.split("+"):
        m = re.fullmatch(r"(?:(\d+)\*?)?(w(?:\^(\d+))?)?", part)
        if not part or not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"bad field element {s!r}", pos)
        c = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(1) is not None and m.group(2) is None:
            e = 0
        else:
            e = int(m.group(3)) if m.group(3) else 1
        if c >= ctx.p and m.group(2) is None and ctx.m0 == 1:
            raise ParseError(f"coefficient {c} not reduced mod {ctx.p}", pos)
        if e >= ctx.m0:
            raise ParseError(f"power of w exceeds field degree in {s!r}", pos)
        coords[e] = (coords[e] + c) % ctx.p
    return sum(c * ctx.p**i for i, c in enumerate(coords))


def parse_poly(ctx: Ctx, text: str, offset: int = 0) -> PolyA:
    """Parse a sum of terms ``coef*T^e`` (any order; repeated degrees add)."""
    s = text.strip()
    if s == "0":
        return PolyA(ctx)
    if not s:
        raise ParseError("empty polynomial", offset)
    coeffs: dict[int, int] = {}
    pos = 0
    while True:
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {s[pos:pos+1]!r}", offset + pos)
        coef_txt, var = m.group("coef"), m.group("var")
        if coef_txt is None and var is None:
            raise ParseError("empty term", offset + pos)
        if coef_txt is None:
            c = 1
        else:
            inner = coef_txt[1:-1] if coef_txt.startswith("(") else coef_txt
            c = _parse_elem(ctx, inner, offset + pos)
        e = 0
        if var is not None:
            e = int(m.group("exp")) if m.group("exp") else 1
        coeffs[e] = int(ctx.add(coeffs.get(e, 0), c))
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != "+":
            raise ParseError(f"expected '+', found {s[pos]!r}", offset + pos)
        pos += 1
    top = max(coeffs)
    vec = [0] * (top + 1)
    for e, c in coeffs.items():
        vec[e] = c
    return PolyA(ctx, vec)


def _strip_parens(s: str) -> str:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        return s
    depth = 0
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and i < len(s) - 1:
            return s
    return s[1:-1]


def parse_ratk(ctx: Ctx, text: str) -> RatK:
    """Parse canonical ``num/den``; the denominator must be monic and coprime to num."""
    if text.count("/") > 1:
        raise ParseError("more than one '/' in element of K", text.rfind("/"))
    if "/" not in text:
        return RatK(parse_poly(ctx, _strip_parens(text)))
    ns, ds = text.split("/")
    num = parse_poly(ctx, _strip_parens(ns))
    den = parse_poly(ctx, _strip_parens(ds), offset=len(ns) + 1)
    if den.is_zero():
        raise ParseError("zero denominator", len(ns) + 1)
    if not den.is_monic():
        raise ParseError("denominator is not monic", len(ns) + 1)
    x = RatK(num, den)
    if x.den != den:
        raise ParseError("fraction is not in lowest terms", len(ns) + 1)
    return x
