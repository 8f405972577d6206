"""The finite field F_q, q = p^m0.

Elements are encoded as integers ``0 <= c < q``; the base-p digits of the
code are the coordinates of the element in the power basis 1, w, ..., w^(m0-1)
of F_p[w]/(modulus).  All element operations are vectorized over numpy
integer arrays of codes, which is what the polynomial layers feed them.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from ..errors import DomainError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _fp_polymod(a, b, p):
    # a, b ascending coefficient lists over F_p, b with nonzero top coefficient
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return r


def fp_irreducible(coeffs, p) -> bool:
    """Trial division by every monic polynomial over F_p of degree <= n/2."""
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] % p == 0:
        return False
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _fp_polymod(coeffs, list(low) + [1], p):
                return False
    return True


def canonical_modulus(p: int, m0: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m0 over F_p.

    Candidates are ordered by the integer whose base-p digits are the lower
    coefficients c_0, c_1, ..., c_(m0-1).  For m0 = 1 the modulus is w itself.
    """
    if m0 == 1:
        return (0, 1)
    for idx in range(p**m0):
        low = [(idx // p**i) % p for i in range(m0)]
        cand = tuple(low) + (1,)
        if fp_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Ctx:
    """Arithmetic context: the prime p, extension degree m0, and field modulus."""

    __slots__ = ("p", "m0", "q", "modulus", "_pw", "_red", "_frob", "__weakref__")

    def __init__(self, p: int, m0: int = 1, modulus=None):
        if not is_prime(p):
            raise DomainError(f"p = {p} is not prime")
        if m0 < 1:
            raise DomainError("m0 must be positive")
        if modulus is None:
            modulus = canonical_modulus(p, m0)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m0 + 1 or modulus[-1] != 1:
            raise DomainError("field modulus must be monic of degree m0")
        if m0 > 1 and not fp_irreducible(modulus, p):
            raise DomainError("field modulus is not irreducible over F_p")
        self.p = p
        self.m0 = m0
        self.q = p**m0
        self.modulus = modulus
        self._pw = np.array([p**i for i in range(m0)], dtype=np.int64)
        # row e holds the coordinates of w^e, e < 2*m0 - 1
        red = np.zeros((max(2 * m0 - 1, 1), m0), dtype=np.int64)
        cur = [0] * m0
        cur[0] = 1
        for e in range(red.shape[0]):
            red[e] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            if m0 > 1 or modulus != (0, 1):
                cur = [(c - top * m) % p for c, m in zip(cur, modulus[:-1])]
        if m0 == 1:
            red[:] = 1
        self._red = red
        codes = np.arange(self.q, dtype=np.int64)
        self._frob = self._pow_elementwise(codes, p)

    def __eq__(self, other):
        return isinstance(other, Ctx) and (self.p, self.m0, self.modulus) == (
            other.p,
            other.m0,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.m0, self.modulus))

    def __repr__(self):
        return f"Ctx(p={self.p}, m0={self.m0}, modulus={self.modulus})"

    # coordinates <-> codes
    def coords(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def from_wide(self, wide):
        """Codes from coordinate vectors of length up to 2*m0 - 1 (reduced by the modulus)."""
        wide = np.asarray(wide, dtype=np.int64) % self.p
        coords = (wide @ self._red[: wide.shape[-1]]) % self.p
        return coords @ self._pw

    # element operations on code arrays
    def add(self, a, b):
        if self.m0 == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return ((self.coords(a) + self.coords(b)) % self.p) @ self._pw

    def sub(self, a, b):
        if self.m0 == 1:
            return (np.asarray(a) - np.asarray(b)) % self.p
        return ((self.coords(a) - self.coords(b)) % self.p) @ self._pw

    def neg(self, a):
        if self.m0 == 1:
            return (-np.asarray(a)) % self.p
        return ((-self.coords(a)) % self.p) @ self._pw

    def mul(self, a, b):
        if self.m0 == 1:
            return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.p
        ca, cb = np.broadcast_arrays(self.coords(a), self.coords(b))
        m = self.m0
        wide = np.zeros(ca.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            wide[..., i : i + m] += ca[..., i : i + 1] * cb
        return self.from_wide(wide)

    def _pow_elementwise(self, a, e: int):
        result = np.zeros_like(np.asarray(a, dtype=np.int64)) + 1
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def pow(self, a, e: int):
        if e < 0:
            return self._pow_elementwise(self.inv(a), -e)
        return self._pow_elementwise(a, e)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DomainError("division by zero in F_q")
        return self._pow_elementwise(a, self.q - 2)

    def frob(self, a):
        """Elementwise p-th power."""
        return self._frob[np.asarray(a, dtype=np.int64)]

    def scalar(self, c) -> int:
        """Code of an integer (image of Z -> F_p -> F_q)."""
        return int(c) % self.p

    def elements(self):
        return range(self.q)

    def elem_str(self, c: int) -> str:
        c = int(c)
        if c < self.p:
            return str(c)
        digits = [(c // self.p**i) % self.p for i in range(self.m0)]
        terms = []
        for e in range(self.m0 - 1, -1, -1):
            d = digits[e]
            if not d:
                continue
            if e == 0:
                terms.append(str(d))
            else:
                mono = "w" if e == 1 else f"w^{e}"
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(terms)


@functools.lru_cache(maxsize=None)
def make_ctx(p: int, m0: int = 1, modulus=None) -> Ctx:
    return Ctx(p, m0, modulus)


def ctx_for_q(q: int) -> Ctx:
    """Context for a prime power q with the canonical modulus."""
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            m0, r = 0, q
            while r % p == 0:
                r //= p
                m0 += 1
            if r != 1:
                break
            return make_ctx(p, m0)
    raise DomainError(f"q = {q} is not a prime power")
