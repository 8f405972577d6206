"""v-adic weights, Teichmuller splitting and v-adic interpolation of Petrov sums.

Everything lives in A / p_v^M.  A v-adic element of K is carried as
p_v^(-shift) * (residue + p_v^M A_v), where the shift absorbs the p_v-part of a
fixed denominator (the denominator of G_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import INF, KVector, PolyA, arrays, inverse_mod, ord_v, require_prime
from .errors import DomainError, PrecisionError
from .forms import AExpansionSpec, Petrov, a_expansions, admissibility_violation, goss_polynomial
from .useries import USeriesK


class VContext:
    """Work modulo p_v^M with p-adic exponents known modulo p^T."""

    def __init__(self, v: PolyA, M: int, T: int | None = None):
        require_prime(v)
        if M < 1:
            raise DomainError("residue precision M must be at least 1")
        p = v.ctx.p
        if T is None:
            T = 0
            while p**T < M:
                T += 1
        if p**T < M:
            raise PrecisionError(f"exponent precision p^T = {p ** T} is below M = {M}")
        self.v = v
        self.M = M
        self.T = T
        self.d = int(v.degree)

    @property
    def ctx(self):
        return self.v.ctx

    @property
    def unit_order(self) -> int:
        """q^d - 1, the order of the roots of unity in A_v."""
        return self.ctx.q**self.d - 1

    @cached_property
    def modulus(self) -> PolyA:
        return self.v**self.M

    def reduce(self, a: PolyA) -> PolyA:
        return a % self.modulus

    def __repr__(self):
        return f"VContext(v={self.v}, M={self.M}, T={self.T})"


@dataclass(frozen=True)
class SvWeight:
    """(x, y) in Z/(q^d - 1) x Z_p, with y known modulo p^T."""

    x: int
    y: int
    T: int
    unit_order: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "x", self.x % self.unit_order)
        object.__setattr__(self, "y", self.y % self.p**self.T)

    def __add__(self, other):
        if (self.unit_order, self.p) != (other.unit_order, other.p):
            raise DomainError("weights belong to different weight spaces")
        T = min(self.T, other.T)
        return SvWeight(self.x + other.x, self.y + other.y, T, self.unit_order, self.p)

    def to_json(self):
        return {"x": self.x, "y": self.y, "T": self.T}


def weight(vctx: VContext, x: int, y: int) -> SvWeight:
    return SvWeight(x, y, vctx.T, vctx.unit_order, vctx.ctx.p)


def embed_weight(m: int, vctx: VContext) -> SvWeight:
    """The image of the integer m: (m mod q^d - 1, m mod p^T)."""
    return weight(vctx, m, m)


def teichmuller_split(a: PolyA, vctx: VContext):
    """(a0, a1) mod p_v^M with a0 a (q^d-1)-st root of unity, a0 = a mod v, a1 = 1 mod v."""
    r = vctx.reduce(a)
    if (r % vctx.v).is_zero():
        raise DomainError(f"{a} is divisible by {vctx.v}")
    qd = vctx.ctx.q**vctx.d
    a0 = r
    # x -> x^(q^d) multiplies the v-adic distance to the root of unity by q^d
    for _ in range(vctx.M + 1):
        nxt = a0.powmod(qd, vctx.modulus)
        if nxt == a0:
            break
        a0 = nxt
    else:
        raise PrecisionError("Teichmuller iteration did not stabilize")
    a1 = (r * inverse_mod(a0, vctx.modulus)) % vctx.modulus
    return a0, a1


def pow_weight(a: PolyA, s: SvWeight, vctx: VContext) -> PolyA:
    """a^s = a0^x * a1^y mod p_v^M."""
    a0, a1 = teichmuller_split(a, vctx)
    return (a0.powmod(s.x, vctx.modulus) * a1.powmod(s.y, vctx.modulus)) % vctx.modulus


def digit_top(n: int, base: int) -> int:
    """Index of the top base-``base`` digit of n."""
    t = 0
    while base ** (t + 1) <= n:
        t += 1
    return t


def sv_membership(s: SvWeight, n: int, vctx: VContext) -> bool:
    """x = n mod (q - 1) and y = 0 mod q^(d(t+1)), t the top base-q^d digit index of n."""
    q = vctx.ctx.q
    t = digit_top(n, q**vctx.d)
    need = vctx.ctx.m0 * vctx.d * (t + 1)
    if need > s.T:
        raise PrecisionError(f"testing y mod q^(d(t+1)) needs T >= {need}, have {s.T}")
    return (s.x - n) % (q - 1) == 0 and s.y % q ** (vctx.d * (t + 1)) == 0


# v-adic series


class VSeries:
    """p_v^(-shift) * sum_j (residues[j] + p_v^M A_v) u^j, for j < trunc."""

    __slots__ = ("vctx", "shift", "residues")

    def __init__(self, vctx: VContext, shift: int, residues: np.ndarray):
        self.vctx = vctx
        self.shift = shift
        residues = np.asarray(residues, dtype=np.int64)
        if residues.shape[1]:
            residues = arrays.mod_rows(vctx.ctx, residues, vctx.modulus.c)
        self.residues = arrays.trim(residues)

    @property
    def trunc(self) -> int:
        return self.residues.shape[0]

    def residue(self, j: int) -> PolyA:
        return PolyA._raw(self.vctx.ctx, self.residues[j])

    def truncate(self, n: int):
        if n > self.trunc:
            raise PrecisionError(f"cannot extend a v-adic series known to u^{self.trunc}")
        return VSeries(self.vctx, self.shift, self.residues[:n])

    def __sub__(self, other):
        if other.shift != self.shift or other.vctx.modulus != self.vctx.modulus:
            raise DomainError("v-adic series with different shifts or moduli")
        n = min(self.trunc, other.trunc)
        return VSeries(self.vctx, self.shift, arrays.sub(self.vctx.ctx, self.residues[:n], other.residues[:n]))

    def __eq__(self, other):
        if not isinstance(other, VSeries):
            return NotImplemented
        a, b = self.residues, other.residues
        w = max(a.shape[1], b.shape[1])
        return (
            self.shift == other.shift
            and self.vctx.modulus == other.vctx.modulus
            and a.shape[0] == b.shape[0]
            and np.array_equal(arrays.pad_last(a, w), arrays.pad_last(b, w))
        )

    def ord_v(self):
        """(ord_v lower bound on the window, exact flag).

        When every residue vanishes the difference is only known to lie in
        p_v^(M - shift) A_v, which is reported with exact = False.
        """
        best = INF
        for j in np.nonzero(self.residues.any(axis=1))[0].tolist() if self.residues.shape[1] else []:
            best = min(best, ord_v(self.residue(j), self.vctx.v))
        if best == INF:
            return self.vctx.M - self.shift, False
        return best - self.shift, True

    def to_json(self):
        return {
            "trunc": self.trunc,
            "shift": self.shift,
            "v": str(self.vctx.v),
            "M": self.vctx.M,
            "residues": [str(self.residue(j)) for j in range(self.trunc)],
        }


def reduce_series(f: USeriesK, vctx: VContext, shift: int) -> VSeries:
    """p_v^shift * f reduced mod p_v^M; f's denominator may hold at most p_v^shift."""
    ctx = vctx.ctx
    den = f.vec.den
    b = ord_v(den, vctx.v)
    if b > shift:
        raise PrecisionError(f"denominator has v-valuation {b} beyond the shift bound {shift}")
    unit = den // vctx.v**b
    factor = (vctx.v ** (shift - b) * inverse_mod(unit % vctx.modulus, vctx.modulus)) % vctx.modulus
    num = arrays.mod_rows(ctx, f.vec.num, vctx.modulus.c) if f.vec.num.shape[1] else f.vec.num
    return VSeries(vctx, shift, arrays.scale(ctx, num, factor.c))


def goss_shift(ctx, n: int, v: PolyA) -> int:
    """The v-valuation of the denominator of G_n."""
    return ord_v(goss_polynomial(ctx, n).den, v)


class ResidueWeights:
    """Coefficient rule c_a = a^s mod p_v^M on monic a prime to v."""

    def __init__(self, s: SvWeight, vctx: VContext):
        self.s = s
        self.vctx = vctx

    def coeff(self, a: PolyA, n: int):
        if (a % self.vctx.v).is_zero():
            return None
        return pow_weight(a, self.s, self.vctx)


@dataclass(frozen=True)
class VFormMeta:
    weight: SvWeight
    type: int
    in_sv: bool | None

    def to_json(self):
        return {"weight": self.weight.to_json(), "type": self.type, "in_Sv": self.in_sv}


def fhat(s: SvWeight, n: int, trunc: int, vctx: VContext):
    """sum over monic a prime to v of a^s G_n(u_a), to u^trunc, as a VSeries."""
    if n < 1:
        raise DomainError("n must be positive")
    ctx = vctx.ctx
    shift = goss_shift(ctx, n, vctx.v)
    series = a_expansions([AExpansionSpec(ctx, n, ResidueWeights(s, vctx))], trunc)[0]
    try:
        member = sv_membership(s, n, vctx)
    except PrecisionError:
        member = None
    meta = VFormMeta(s + embed_weight(n, vctx), n % (ctx.q - 1), member)
    return reduce_series(series, vctx, shift), meta


def crt_exponent(s: SvWeight, c: int) -> int:
    """Smallest positive m with m = x mod (q^d - 1) and m = y mod p^c."""
    if c > s.T:
        raise PrecisionError(f"exponent schedule needs y mod p^{c}, known mod p^{s.T}")
    mod_a, mod_b = s.unit_order, s.p**c
    step = mod_a * mod_b
    for m in range(s.x % mod_a, step + mod_a, mod_a):
        if m > 0 and (m - s.y) % mod_b == 0:
            return m
    raise DomainError("no CRT lift found")


def convergence_table(s: SvWeight, n: int, steps: int, trunc: int, vctx: VContext, schedule=None) -> list[dict]:
    """(k_i, ord_v(fhat - f_(k_i, n))) along the CRT sequence m_i for c_i = schedule[i]."""
    if steps < 1:
        raise DomainError("steps must be at least 1")
    ctx = vctx.ctx
    schedule = list(schedule) if schedule is not None else list(range(1, steps + 1))
    target, _ = fhat(s, n, trunc, vctx)
    shift = target.shift
    rows = []
    todo = []
    for i, c in enumerate(schedule[:steps], start=1):
        m = crt_exponent(s, c)
        k = m + n
        why = admissibility_violation(k, n, ctx.q)
        rows.append({"step": i, "c": c, "m": m, "k": k, "admissible": why is None, "reason": why})
        if why is None:
            todo.append(rows[-1])
    exact = a_expansions([AExpansionSpec(ctx, n, Petrov(r["k"])) for r in todo], trunc)
    for row, f in zip(todo, exact):
        diff = target - reduce_series(f, vctx, shift)
        value, is_exact = diff.ord_v()
        row["ord"] = value
        row["exact"] = is_exact
    return rows


def f0_reduced(k0: int, n: int, trunc: int, vctx: VContext) -> VSeries:
    """The exact prime-to-v part of f_(k0, n), reduced mod p_v^M with the Goss shift."""
    from .forms import VRestrictedPetrov

    ctx = vctx.ctx
    f0 = a_expansions([AExpansionSpec(ctx, n, VRestrictedPetrov(k0, vctx.v))], trunc)[0]
    return reduce_series(f0, vctx, goss_shift(ctx, n, vctx.v))

