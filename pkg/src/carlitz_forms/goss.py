"""Goss polynomials of a lattice, plus a power-sum oracle for torsion lattices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .algebra import KVector, PolyA, RatK, arrays, poly_gcd
from .carlitz import ExpCoeffs, carlitz_poly, torsion_exp
from .errors import DomainError, PrecisionError


def goss_rows(ctx, weights, n_max: int, x_trunc: int | None = None, keep_all: bool = True):
    """Yield (n, G_n) for n = 1..n_max from G_n = X * sum_i weights[i] * G_(n - q^i).

    ``weights[i]`` is an element of K (alpha_i for a lattice, alpha_0 = 1).
    G_j = 0 for j <= 0 and G_1 = X.  Each G_n is a KVector of X-coefficients;
    with ``x_trunc`` only the coefficients of X^0..X^(x_trunc - 1) are kept,
    which is exact because coefficient i of G_n only reads lower coefficients.
    Only the last q^(len(weights)-1) rows are retained when ``keep_all`` is false.
    """
    q = ctx.q
    offsets = [q**i for i in range(len(weights))]
    depth = offsets[-1]
    width = lambda n: n + 1 if x_trunc is None else min(n + 1, x_trunc)
    history: dict[int, KVector] = {}
    order: deque = deque()
    for n in range(1, n_max + 1):
        if n == 1:
            row = KVector.from_elements(ctx, [0, 1][: width(1)])
        else:
            terms = []
            for w, off in zip(weights, offsets):
                src = history.get(n - off)
                if src is None or w.is_zero() or src.is_zero():
                    continue
                terms.append((arrays.scale(ctx, src.num, w.num.c), src.den * w.den))
            row = _shifted_sum(ctx, terms, width(n))
        history[n] = row
        order.append(n)
        if not keep_all:
            while len(order) > depth:
                history.pop(order.popleft())
        yield n, row


def _shifted_sum(ctx, terms, width: int) -> KVector:
    """X * sum of num/den terms as one KVector of length ``width``, normalized once."""
    if not terms:
        return KVector.zeros(ctx, width)
    den = terms[0][1]
    for _, d in terms[1:]:
        den = den * (d // poly_gcd(den, d))
    acc = np.zeros((width, 0), dtype=np.int64)
    for num, d in terms:
        num = arrays.scale(ctx, num[: width - 1], (den // d).c)
        w = max(acc.shape[1], num.shape[1])
        part = np.zeros((width, w), dtype=np.int64)
        part[1 : num.shape[0] + 1, : num.shape[1]] = num
        acc = arrays.add(ctx, arrays.pad_last(acc, w), part)
    return KVector(ctx, acc, den)


class GossTable:
    """G_(k, Lambda)(X) for 1 <= k <= n_max; ``polys[k]`` is a KVector over K."""

    def __init__(self, lattice: ExpCoeffs, polys: dict):
        self.lattice = lattice
        self.polys = polys

    @property
    def n_max(self) -> int:
        return max(self.polys) if self.polys else 0

    def __getitem__(self, k: int) -> KVector:
        if k <= 0:
            return KVector.zeros(self.lattice.ctx, 1)
        if k not in self.polys:
            raise PrecisionError(f"G_{k} is beyond the table (n_max = {self.n_max})")
        return self.polys[k]

    def coefficients(self, k: int) -> list[RatK]:
        return self[k].entries()

    def to_json(self):
        return {str(k): [str(c) for c in self.coefficients(k)] for k in sorted(self.polys)}


def _needed_index(q: int, n_max: int) -> int:
    i = 0
    while q ** (i + 1) <= n_max - 1:
        i += 1
    return i


def goss_table(lattice: ExpCoeffs, n_max: int, x_trunc: int | None = None) -> GossTable:
    """Goss polynomials of the lattice with exponential coefficients ``lattice``."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    ctx = lattice.ctx
    need = _needed_index(ctx.q, n_max)
    weights = list(lattice.alphas)
    if lattice.kind == "torsion":
        weights = weights[: need + 1]
    elif len(weights) <= need:
        raise PrecisionError(f"G_{n_max} needs alpha_{need}; only {len(weights) - 1} available")
    else:
        weights = weights[: need + 1]
    polys = {n: row for n, row in goss_rows(ctx, weights, n_max, x_trunc)}
    return GossTable(lattice, polys)


@dataclass(frozen=True)
class PowerSums:
    """p_j = sum of lambda^j over the nonzero g-torsion points, j = 0..j_max."""

    g: PolyA
    sums: tuple

    def __getitem__(self, j):
        return self.sums[j]


def power_sums(g: PolyA, j_max: int) -> PowerSums:
    """Newton's identities on the monic polynomial C_g(X)/X of degree q^d - 1."""
    ctx = g.ctx
    cg = carlitz_poly(g)
    torsion_exp(g)  # validates g
    q = ctx.q
    deg = q ** int(g.degree) - 1
    # P(X) = X^deg + sum_m a_m X^m with a_(q^i - 1) = c_i
    low = {q**i - 1: c for i, c in enumerate(cg.coeffs) if q**i - 1 < deg and not c.is_zero()}
    zero = PolyA(ctx)
    sums = [PolyA.const(ctx, ctx.scalar(deg))]
    for j in range(1, j_max + 1):
        acc = zero
        # e-coefficient of X^(deg - i) is a_(deg - i); include i < j terms times p_(j-i)
        for m, a in low.items():
            i = deg - m
            if i < j:
                acc = acc + a * sums[j - i]
            elif i == j:
                acc = acc + a.scale(ctx.scalar(j))
        sums.append(-acc)
    return PowerSums(g, tuple(sums))


def binom_mod_p(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p by Lucas' theorem; n may be negative."""
    if k < 0:
        return 0
    if n < 0:
        sign = -1 if k % 2 else 1
        return (sign * binom_mod_p(k - n - 1, k, p)) % p
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        num = den = 1
        for t in range(ki):
            num = num * (ni - t) % p
            den = den * (t + 1) % p
        out = out * num * pow(den, p - 2, p) % p
        n //= p
        k //= p
    return out


def verify_goss_identity(g: PolyA, k: int, order: int) -> bool:
    """Check G_(k, Lambda_g)(1/e(z)) = sum_lambda (z + lambda)^(-k) through z^(-order).

    Both sides are expanded in w = 1/z.  With C_g(z) = sum c_i z^(q^i),
    1/e(z) = g w^(q^d) / sum_i c_i w^(q^d - q^i), the same reversed inverse
    that defines u_g; the right side is w^k + sum_j binom(-k, j) p_j w^(k + j).
    """
    from .useries import USeriesK, compose_poly, u_sub_a

    if k < 1 or order < k:
        raise DomainError("need k >= 1 and order >= k")
    ctx = g.ctx
    lattice = torsion_exp(g)
    table = goss_table(lattice, k)
    t = u_sub_a(g, order + 1).scale(g)
    left = compose_poly(table[k], t)
    sums = power_sums(g, order - k)
    right = [RatK.zero(ctx)] * (order + 1)
    right[k] = RatK(PolyA.const(ctx, 1))
    for j in range(order - k + 1):
        b = binom_mod_p(-k, j, ctx.p)
        if b:
            right[k + j] = right[k + j] + RatK(sums[j].scale(b))
    return left == USeriesK.from_coeffs(ctx, right, order + 1)
