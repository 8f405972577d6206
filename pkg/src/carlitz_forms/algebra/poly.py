"""Elements of A = F_q[theta] and of its fraction field K = F_q(theta)."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from ..errors import DomainError
from . import arrays
from .field import Ctx

INF = math.inf
NEG_INF = -math.inf


class PolyA:
    """Immutable polynomial over F_q; ``c`` holds element codes, ascending degree."""

    __slots__ = ("ctx", "c", "_hash")

    def __init__(self, ctx: Ctx, coeffs=()):
        c = np.array(coeffs, dtype=np.int64).reshape(-1)
        if c.size and (c.min() < 0 or c.max() >= ctx.q):
            raise DomainError("coefficient code out of range")
        c = arrays.trim(c)
        c.setflags(write=False)
        self.ctx = ctx
        self.c = c
        self._hash = None

    @classmethod
    def _raw(cls, ctx, c):
        obj = cls.__new__(cls)
        c = arrays.trim(np.asarray(c, dtype=np.int64))
        if c.flags.writeable:
            c = c.copy()
            c.setflags(write=False)
        obj.ctx = ctx
        obj.c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, ctx, c: int):
        return cls(ctx, [c])

    @classmethod
    def theta(cls, ctx):
        return cls(ctx, [0, 1])

    @classmethod
    def monomial(cls, ctx, e: int, c: int = 1):
        v = np.zeros(e + 1, dtype=np.int64)
        v[e] = c
        return cls._raw(ctx, v)

    @classmethod
    def from_ints(cls, ctx, ints):
        """Polynomial with prime-field coefficients given as integers."""
        return cls(ctx, [int(x) % ctx.p for x in ints])

    # basic properties
    @property
    def degree(self):
        return self.c.size - 1 if self.c.size else NEG_INF

    @property
    def lc(self) -> int:
        return int(self.c[-1]) if self.c.size else 0

    def is_zero(self) -> bool:
        return self.c.size == 0

    def is_one(self) -> bool:
        return self.c.size == 1 and self.c[0] == 1

    def is_monic(self) -> bool:
        return self.lc == 1

    def __bool__(self):
        return self.c.size != 0

    def __len__(self):
        return self.c.size

    def coeff(self, i: int) -> int:
        return int(self.c[i]) if 0 <= i < self.c.size else 0

    def __iter__(self):
        return iter(self.c.tolist())

    def __eq__(self, other):
        if isinstance(other, int):
            other = PolyA.const(self.ctx, self.ctx.scalar(other))
        if not isinstance(other, PolyA):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.c, other.c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.c.tobytes()))
        return self._hash

    def sort_key(self):
        return (self.c.size, tuple(reversed(self.c.tolist())))

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, PolyA):
            if other.ctx != self.ctx:
                raise DomainError("operands belong to different contexts")
            return other
        if isinstance(other, (int, np.integer)):
            return PolyA.const(self.ctx, self.ctx.scalar(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyA._raw(self.ctx, arrays.add(self.ctx, self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return PolyA._raw(self.ctx, self.ctx.neg(self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyA._raw(self.ctx, arrays.sub(self.ctx, self.c, o.c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyA._raw(self.ctx, arrays.conv(self.ctx, self.c, o.c))

    __rmul__ = __mul__

    def scale(self, c: int):
        """Multiply by the field element with code ``c``."""
        return PolyA._raw(self.ctx, self.ctx.mul(self.c, c))

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative power of a polynomial; use RatK")
        result = PolyA.const(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.frob() if self.ctx.p == 2 else base * base
        return result

    def frob(self):
        """The p-th power, computed coefficientwise."""
        return PolyA._raw(self.ctx, arrays.frob(self.ctx, self.c))

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DomainError("polynomial division by zero")
        qt, r = arrays.divmod_rows(self.ctx, self.c, o.c)
        return PolyA._raw(self.ctx, qt), PolyA._raw(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            raise DomainError("the zero polynomial has no monic associate")
        return self.scale(int(self.ctx.inv(self.lc)))

    def shift(self, e: int):
        """Multiply by theta^e (e >= 0)."""
        if self.is_zero():
            return self
        return PolyA._raw(self.ctx, np.concatenate([np.zeros(e, dtype=np.int64), self.c]))

    def powmod(self, e: int, m: "PolyA"):
        result = PolyA.const(self.ctx, 1) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def __call__(self, x):
        """Evaluate at an element code (Horner)."""
        acc = 0
        for c in reversed(self.c.tolist()):
            acc = int(self.ctx.add(self.ctx.mul(acc, x), c))
        return acc

    def __str__(self):
        from .text import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"PolyA({self})"


def poly_gcd(a: PolyA, b: PolyA) -> PolyA:
    """Monic gcd (gcd(0, 0) = 0)."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def poly_xgcd(a: PolyA, b: PolyA):
    """Return (g, s, t) with g = s*a + t*b monic."""
    ctx = a.ctx
    r0, r1 = a, b
    s0, s1 = PolyA.const(ctx, 1), PolyA(ctx)
    t0, t1 = PolyA(ctx), PolyA.const(ctx, 1)
    while r1:
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if not r0:
        return r0, s0, t0
    inv = int(ctx.inv(r0.lc))
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def inverse_mod(a: PolyA, m: PolyA) -> PolyA:
    g, s, _ = poly_xgcd(a % m, m)
    if not g.is_one():
        raise DomainError("element is not invertible modulo the given polynomial")
    return s % m


# enumeration


def monic_enumerate(ctx: Ctx, d: int) -> list[PolyA]:
    """All q^d monic polynomials of degree d.

    Ordered lexicographically on the ascending coefficient vector
    (c_0, c_1, ..., c_(d-1), 1).
    """
    if d < 0:
        raise DomainError("degree must be nonnegative")
    return [PolyA._raw(ctx, np.array(low + (1,), dtype=np.int64)) for low in itertools.product(range(ctx.q), repeat=d)]


def poly_enumerate(ctx: Ctx, d: int) -> list[PolyA]:
    """All q^d polynomials of degree < d (the F_q-space A_d), same ordering."""
    return [PolyA._raw(ctx, np.array(c, dtype=np.int64)) for c in itertools.product(range(ctx.q), repeat=d)]


def _prime_factors(n: int):
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(g: PolyA) -> bool:
    """Rabin's test over F_q."""
    if g.is_zero():
        raise DomainError("irreducibility of the zero polynomial is undefined")
    n = g.degree
    if n < 1:
        return False
    if n == 1:
        return True
    g = g.monic()
    q = g.ctx.q
    theta = PolyA.theta(g.ctx)

    def frob_power(k):
        x = theta
        for _ in range(k):
            x = x.powmod(q, g)
        return x

    if frob_power(n) != theta % g:
        return False
    for r in _prime_factors(n):
        if not poly_gcd(g, frob_power(n // r) - theta).is_one():
            return False
    return True


@lru_cache(maxsize=256)
def _checked_prime(v: PolyA) -> PolyA:
    if v.is_zero() or not v.is_monic() or not is_irreducible(v):
        raise DomainError(f"{v} is not a monic irreducible polynomial")
    return v


def require_prime(v: PolyA) -> PolyA:
    return _checked_prime(v)


def _ord_poly(a: PolyA, v: PolyA):
    if a.is_zero():
        return INF
    n = 0
    while True:
        qt, r = divmod(a, v)
        if r:
            return n
        a, n = qt, n + 1


def ord_v(x, v: PolyA):
    """v-adic valuation of an element of A or K; ord_v(0) is +inf."""
    require_prime(v)
    if isinstance(x, RatK):
        if x.num.is_zero():
            return INF
        return _ord_poly(x.num, v) - _ord_poly(x.den, v)
    return _ord_poly(x, v)


class RatK:
    """Element num/den of K with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _normalized=False):
        if isinstance(num, RatK) and den is None:
            self.num, self.den = num.num, num.den
            return
        if isinstance(num, (int, np.integer)):
            if not isinstance(den, PolyA):
                raise DomainError("an integer numerator needs a polynomial denominator")
            num = PolyA.const(den.ctx, den.ctx.scalar(int(num)))
        if den is None:
            den = PolyA.const(num.ctx, 1)
        elif isinstance(den, (int, np.integer)):
            den = PolyA.const(num.ctx, num.ctx.scalar(den))
        if not _normalized:
            if den.is_zero():
                raise DomainError("zero denominator")
            if num.is_zero():
                den = PolyA.const(num.ctx, 1)
            elif not den.is_one():
                g = poly_gcd(num, den)
                if not g.is_one():
                    num, den = num // g, den // g
                if not den.is_monic():
                    inv = int(num.ctx.inv(den.lc))
                    num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def ctx(self):
        return self.num.ctx

    @classmethod
    def zero(cls, ctx):
        return cls(PolyA(ctx))

    @classmethod
    def one(cls, ctx):
        return cls(PolyA.const(ctx, 1))

    def is_zero(self):
        return self.num.is_zero()

    def is_integral(self):
        return self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, RatK):
            return other
        if isinstance(other, PolyA):
            return RatK(other, _normalized=True)
        if isinstance(other, (int, np.integer)):
            return RatK(PolyA.const(self.ctx, self.ctx.scalar(other)))
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RatK(self.num + o.num, _normalized=True)
        if self.den == o.den:
            return RatK(self.num + o.num, self.den)
        return RatK(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatK(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RatK(self.num * o.num, _normalized=True)
        return RatK(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DomainError("division by zero in K")
        return RatK(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatK(self.num**e, self.den**e, _normalized=True)

    def frob(self):
        return RatK(self.num.frob(), self.den.frob(), _normalized=True)

    def __str__(self):
        from .text import format_ratk

        return format_ratk(self)

    def __repr__(self):
        return f"RatK({self})"


def as_ratk(x, ctx=None) -> RatK:
    if isinstance(x, RatK):
        return x
    if isinstance(x, PolyA):
        return RatK(x, _normalized=True)
    if isinstance(x, (int, np.integer)):
        return RatK(PolyA.const(ctx, ctx.scalar(x)))
    raise TypeError(f"cannot interpret {x!r} as an element of K")
