"""Batched arithmetic on arrays of polynomials over F_q.

A polynomial in A = F_q[theta] is a 1-d int64 array of element codes in
ascending degree.  A stack of polynomials (the coefficients of a series, or of
a polynomial over A) is an array whose *last* axis is the theta-degree.
Products are exact integer convolutions followed by reduction, using FFTs
when the operands are large and the worst-case coefficient sum stays far
below the float64 mantissa.
"""

from __future__ import annotations

import numpy as np
from scipy import signal

_FFT_MIN_WORK = 1 << 14
_FFT_MAX_BOUND = 1 << 36
_SHIFT_ADD_MAX = 24

EMPTY = np.zeros(0, dtype=np.int64)


def _iconv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact full convolution of nonnegative integer arrays of equal ndim."""
    if a.size == 0 or b.size == 0:
        shape = tuple(max(x + y - 1, 0) for x, y in zip(a.shape, b.shape))
        return np.zeros(shape, dtype=np.int64)
    if a.ndim == 1 and min(a.size, b.size) < 64:
        return np.convolve(a, b)
    work = a.size * b.size
    bound = int(a.max()) * int(b.max()) * min(a.size, b.size)
    if work >= _FFT_MIN_WORK and bound < _FFT_MAX_BOUND:
        out = signal.fftconvolve(a.astype(np.float64), b.astype(np.float64))
        return np.rint(out).astype(np.int64)
    if a.ndim == 1:
        return np.convolve(a, b)
    return signal.convolve(a, b, method="direct")


def conv(ctx, a, b) -> np.ndarray:
    """Full convolution of code arrays over all of their axes."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if ctx.m0 == 1:
        return _iconv(a, b) % ctx.p
    wide = _iconv(ctx.coords(a), ctx.coords(b))
    return ctx.from_wide(wide)


def trim(a: np.ndarray) -> np.ndarray:
    """Drop trailing all-zero positions along the last (theta) axis."""
    if a.shape[-1] == 0:
        return a
    nz = np.nonzero(a.reshape(-1, a.shape[-1]).any(axis=0))[0]
    n = int(nz[-1]) + 1 if nz.size else 0
    return a[..., :n] if n != a.shape[-1] else a


def pad_last(a: np.ndarray, n: int) -> np.ndarray:
    if a.shape[-1] >= n:
        return a
    width = [(0, 0)] * (a.ndim - 1) + [(0, n - a.shape[-1])]
    return np.pad(a, width)


def pad_to(a: np.ndarray, shape) -> np.ndarray:
    width = [(0, s - x) for x, s in zip(a.shape, shape)]
    return np.pad(a, width) if any(w for _, w in width) else a


def add(ctx, a, b) -> np.ndarray:
    shape = tuple(max(x, y) for x, y in zip(a.shape, b.shape))
    return trim(ctx.add(pad_to(a, shape), pad_to(b, shape)))


def sub(ctx, a, b) -> np.ndarray:
    shape = tuple(max(x, y) for x, y in zip(a.shape, b.shape))
    return trim(ctx.sub(pad_to(a, shape), pad_to(b, shape)))


def _iconv_last(a: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Exact convolution of every row of ``a`` with the 1-d array ``c``."""
    w = a.shape[-1]
    nz = np.nonzero(c)[0]
    if nz.size <= _SHIFT_ADD_MAX:
        out = np.zeros(a.shape[:-1] + (w + c.size - 1,), dtype=np.int64)
        for j in nz.tolist():
            out[..., j : j + w] += a * int(c[j])
        return out
    bound = int(a.max()) * int(c.max()) * min(w, c.size)
    if bound < _FFT_MAX_BOUND:
        kernel = c.astype(np.float64).reshape((1,) * (a.ndim - 1) + (-1,))
        out = signal.fftconvolve(a.astype(np.float64), kernel, axes=-1)
        return np.rint(out).astype(np.int64)
    return signal.convolve(a, c.reshape((1,) * (a.ndim - 1) + (-1,)), method="direct")


def scale(ctx, a: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Multiply every polynomial in the stack ``a`` by the polynomial ``c``."""
    if c.size == 0 or a.shape[-1] == 0:
        return np.zeros(a.shape[:-1] + (0,), dtype=np.int64)
    if c.size == 1:
        return ctx.mul(a, c[0]) if c[0] != 1 else a
    if ctx.m0 == 1:
        return _iconv_last(a, c) % ctx.p
    kernel = c.reshape((1,) * (a.ndim - 1) + (-1,))
    return conv(ctx, a, kernel)


def divmod_rows(ctx, a: np.ndarray, m: np.ndarray):
    """Row-wise long division of the stack ``a`` by the nonzero polynomial ``m``."""
    dm = m.size - 1
    n = a.shape[-1]
    if n <= dm:
        return np.zeros(a.shape[:-1] + (0,), dtype=np.int64), a
    r = a.copy()
    qt = np.zeros(a.shape[:-1] + (n - dm,), dtype=np.int64)
    lead_inv = int(ctx.inv(m[-1]))
    monic = lead_inv == 1
    for i in range(n - 1, dm - 1, -1):
        c = r[..., i]
        if not c.any():
            continue
        if not monic:
            c = ctx.mul(c, lead_inv)
        qt[..., i - dm] = c
        r[..., i - dm : i + 1] = ctx.sub(r[..., i - dm : i + 1], ctx.mul(c[..., None], m))
    return qt, trim(r[..., :dm])


def mod_rows(ctx, a: np.ndarray, m: np.ndarray) -> np.ndarray:
    if m[-1] == 1 and not m[:-1].any():
        return trim(a[..., : m.size - 1])
    return divmod_rows(ctx, a, m)[1]


def frob(ctx, a: np.ndarray) -> np.ndarray:
    """Coefficientwise p-th power of every polynomial in the stack."""
    p = ctx.p
    n = a.shape[-1]
    out = np.zeros(a.shape[:-1] + (max(p * (n - 1) + 1, 0),), dtype=np.int64)
    out[..., ::p] = ctx.frob(a)
    return out
