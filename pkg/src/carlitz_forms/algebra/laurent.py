"""Truncated Laurent series in 1/theta: elements of K_infinity = F_q((1/theta))."""

from __future__ import annotations

import numpy as np

from ..errors import DomainError, PrecisionError
from . import arrays
from .poly import PolyA


class LaurentInf:
    """``sum_{e >= lead_exp} c_e (1/theta)^e``, known modulo (1/theta)^precision.

    ``coeffs[i]`` is the code of c_(lead_exp + i); there are exactly
    ``precision - lead_exp`` of them.
    """

    __slots__ = ("ctx", "lead_exp", "coeffs", "precision")

    def __init__(self, ctx, lead_exp: int, coeffs, precision: int):
        if lead_exp > precision:
            raise DomainError("lead_exp must not exceed precision")
        c = np.zeros(precision - lead_exp, dtype=np.int64)
        vals = np.asarray(coeffs, dtype=np.int64)[: c.size]
        c[: vals.size] = vals
        self.ctx = ctx
        self.lead_exp = lead_exp
        self.coeffs = c
        self.precision = precision

    @classmethod
    def from_poly(cls, a: PolyA, precision: int):
        """Expand a polynomial: theta^k = (1/theta)^(-k)."""
        if a.is_zero():
            return cls(a.ctx, precision, [], precision)
        lead = -int(a.degree)
        return cls(a.ctx, lead, a.c[::-1], precision)

    @property
    def valuation(self):
        nz = np.nonzero(self.coeffs)[0]
        return self.lead_exp + int(nz[0]) if nz.size else self.precision

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def coefficient(self, e: int) -> int:
        if e >= self.precision:
            raise PrecisionError(f"coefficient of (1/theta)^{e} is beyond precision {self.precision}")
        if e < self.lead_exp:
            return 0
        return int(self.coeffs[e - self.lead_exp])

    def _dense(self, lo, hi):
        out = np.zeros(hi - lo, dtype=np.int64)
        a, b = max(lo, self.lead_exp), min(hi, self.precision)
        if a < b:
            out[a - lo : b - lo] = self.coeffs[a - self.lead_exp : b - self.lead_exp]
        return out

    def __add__(self, other):
        if other.ctx != self.ctx:
            raise DomainError("operands belong to different contexts")
        prec = min(self.precision, other.precision)
        lo = min(self.lead_exp, other.lead_exp, prec)
        return LaurentInf(self.ctx, lo, self.ctx.add(self._dense(lo, prec), other._dense(lo, prec)), prec)

    def __neg__(self):
        return LaurentInf(self.ctx, self.lead_exp, self.ctx.neg(self.coeffs), self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        v1, v2 = self.valuation, other.valuation
        prec = min(self.precision + v2, other.precision + v1)
        a = self._dense(v1, self.precision)
        b = other._dense(v2, other.precision)
        prod = arrays.conv(self.ctx, a, b) if a.size and b.size else np.zeros(0, dtype=np.int64)
        lead = min(v1 + v2, prec)
        return LaurentInf(self.ctx, lead, prod[: max(prec - lead, 0)], prec)

    def inverse(self):
        if self.is_zero():
            raise DomainError("inverse of a series with no known nonzero coefficient")
        v = self.valuation
        a = self._dense(v, self.precision)
        n = a.size
        ctx = self.ctx
        c0inv = int(ctx.inv(a[0]))
        b = np.zeros(n, dtype=np.int64)
        b[0] = c0inv
        for j in range(1, n):
            acc = _dot(ctx, a[1 : j + 1], b[j - 1 :: -1])
            b[j] = int(ctx.mul(ctx.neg(acc), c0inv))
        return LaurentInf(ctx, -v, b, n - v)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return LaurentInf(self.ctx, 0, [1], self.precision - self.valuation)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def truncate(self, precision: int):
        if precision > self.precision:
            raise PrecisionError("cannot raise precision")
        lo = min(self.lead_exp, precision)
        return LaurentInf(self.ctx, lo, self._dense(lo, precision), precision)

    def __eq__(self, other):
        if not isinstance(other, LaurentInf):
            return NotImplemented
        if self.precision != other.precision:
            return False
        lo = min(self.lead_exp, other.lead_exp)
        return np.array_equal(self._dense(lo, self.precision), other._dense(lo, self.precision))

    def __repr__(self):
        terms = [f"{self.ctx.elem_str(int(c))}*(1/T)^{self.lead_exp + i}" for i, c in enumerate(self.coeffs) if c]
        return f"LaurentInf({' + '.join(terms) or '0'} + O((1/T)^{self.precision}))"


def _dot(ctx, a, b) -> int:
    """Sum of a[i]*b[i] in F_q."""
    prods = ctx.mul(a, b)
    if ctx.m0 == 1:
        return int(prods.sum() % ctx.p)
    acc = 0
    for x in prods.tolist():
        acc = int(ctx.add(acc, x))
    return acc
