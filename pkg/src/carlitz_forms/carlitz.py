"""The Carlitz module C_theta(x) = theta*x + x^q and exponential coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import PolyA, RatK, require_prime
from .errors import DomainError


@dataclass(frozen=True)
class AdditivePoly:
    """F_q-linear polynomial sum_i coeffs[i] * x^(q^i) with coefficients in A."""

    coeffs: tuple

    @property
    def ctx(self):
        return self.coeffs[0].ctx

    @property
    def q_degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else PolyA(self.ctx)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return AdditivePoly(_strip(tuple(self[i] + other[i] for i in range(n))))

    def compose(self, other):
        """(self o other)(x) = self(other(x))."""
        q = self.ctx.q
        out = [PolyA(self.ctx)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, p in enumerate(self.coeffs):
            if p.is_zero():
                continue
            for j, c in enumerate(other.coeffs):
                if c.is_zero():
                    continue
                out[i + j] = out[i + j] + p * c ** (q**i)
        return AdditivePoly(_strip(tuple(out)))

    def to_json(self):
        return [str(c) for c in self.coeffs]


def _strip(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def carlitz_poly(a: PolyA) -> AdditivePoly:
    """C_a, built by Horner's rule from C_(theta*b) = theta*C_b + C_b^q."""
    ctx = a.ctx
    theta = PolyA.theta(ctx)
    coeffs = [PolyA(ctx)]
    for aj in reversed(a.c.tolist()):
        shifted = [theta * c for c in coeffs] + [PolyA(ctx)]
        for i in range(1, len(shifted)):
            shifted[i] = shifted[i] + coeffs[i - 1] ** ctx.q
        shifted[0] = shifted[0] + PolyA.const(ctx, aj)
        coeffs = list(_strip(shifted))
    return AdditivePoly(_strip(coeffs))


@dataclass(frozen=True)
class ExpCoeffs:
    """e_Lambda(z) = sum_i alphas[i] z^(q^i); ``kind`` is "torsion" or "carlitz-prefix"."""

    alphas: tuple
    kind: str
    g: PolyA | None = None

    @property
    def ctx(self):
        return self.alphas[0].ctx

    @property
    def max_index(self) -> int:
        return len(self.alphas) - 1

    def to_json(self):
        doc = {"kind": self.kind, "alphas": [str(a) for a in self.alphas]}
        if self.g is not None:
            doc["g"] = str(self.g)
        return doc


def carlitz_factorials(ctx, i_max: int):
    """Brackets [i] = theta^(q^i) - theta, factorials D_i, and alpha_i = 1/D_i."""
    if i_max < 0:
        raise DomainError("i_max must be nonnegative")
    brackets, facts = _carlitz_tables(ctx, i_max)
    alphas = tuple(RatK(PolyA.const(ctx, 1), d) for d in facts)
    return brackets, facts, ExpCoeffs(alphas, "carlitz-prefix")


@lru_cache(maxsize=None)
def _carlitz_tables(ctx, i_max):
    theta = PolyA.theta(ctx)
    brackets = [PolyA(ctx)]
    facts = [PolyA.const(ctx, 1)]
    for i in range(1, i_max + 1):
        b = PolyA.monomial(ctx, ctx.q**i) - theta
        brackets.append(b)
        facts.append(b * facts[-1] ** ctx.q)
    return tuple(brackets), tuple(facts)


def carlitz_exp(ctx, i_max: int) -> ExpCoeffs:
    return carlitz_factorials(ctx, i_max)[2]


@lru_cache(maxsize=None)
def torsion_exp(g: PolyA) -> ExpCoeffs:
    """Coefficients of e_(Lambda_g)(z) = C_g(z)/g for the g-torsion lattice."""
    require_prime(g)
    cg = carlitz_poly(g)
    alphas = tuple(RatK(c, g) for c in cg.coeffs)
    return ExpCoeffs(alphas, "torsion", g)
