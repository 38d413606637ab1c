"""Dense reference transforms: DFT, radix-2 FFT/IFFT and orthonormal DCT-II/III.

The naive O(N^2) routines are ground-truth oracles; the radix-2 routines are
the building blocks used inside the sparse algorithms and the full-length
baseline in benchmarks.  Conventions: the forward DFT is unnormalized with
omega_N = exp(-2*pi*i/N); the inverse carries the 1/N factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _check_pow2(n: int) -> None:
    if not is_power_of_two(n):
        raise ValueError(f"length must be a power of two, got {n}")


@dataclass(frozen=True)
class TwiddleTable:
    """Roots of unity ``omega_N^k = exp(-2 pi i k / N)`` for ``k < N``."""

    order: int
    roots: np.ndarray

    @classmethod
    def build(cls, order: int) -> "TwiddleTable":
        _check_pow2(order)
        k = np.arange(order)
        roots = np.exp(-2j * np.pi * k / order)
        roots[0] = 1.0
        # exact values at quarter turns keep small transforms free of 1e-17 residue
        if order % 4 == 0:
            roots[order // 4] = -1j
            roots[order // 2] = -1.0
            roots[3 * order // 4] = 1j
        elif order == 2:
            roots[1] = -1.0
        roots.setflags(write=False)
        return cls(order, roots)


@lru_cache(maxsize=64)
def twiddles(order: int) -> TwiddleTable:
    """Cached twiddle table for a power-of-two ``order``."""
    return TwiddleTable.build(order)


@lru_cache(maxsize=64)
def _bit_reversal(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    rev.setflags(write=False)
    return rev


def naive_dft(v) -> np.ndarray:
    """Return ``F_N v`` by direct summation (O(N^2))."""
    v = np.asarray(v, dtype=complex)
    n = v.shape[0]
    if n == 0:
        return v.copy()
    kl = np.outer(np.arange(n), np.arange(n)) % n
    mat = np.exp(-2j * np.pi * kl / n)
    return mat @ v


def fft_radix2(v) -> np.ndarray:
    """Iterative decimation-in-time radix-2 FFT (unnormalized)."""
    x = np.asarray(v, dtype=complex)
    n = x.shape[0]
    _check_pow2(n)
    if n == 1:
        return x.copy()
    roots = twiddles(n).roots
    x = x[_bit_reversal(n)]
    size = 2
    while size <= n:
        half = size // 2
        w = roots[:: n // size][:half]
        blocks = x.reshape(-1, size)
        even = blocks[:, :half]
        odd = blocks[:, half:] * w
        x = np.concatenate((even + odd, even - odd), axis=1).reshape(n)
        size *= 2
    return x


def ifft_radix2(v) -> np.ndarray:
    """Inverse of :func:`fft_radix2`, normalized by ``1/N``."""
    x = np.asarray(v, dtype=complex)
    n = x.shape[0]
    _check_pow2(n)
    return np.conj(fft_radix2(np.conj(x))) / n


def dct_weight(k, n: int):
    """``eps_N(k)``: ``1/sqrt(2)`` when ``k = 0 mod N``, else 1."""
    k = np.asarray(k)
    return np.where(k % n == 0, 1.0 / np.sqrt(2.0), 1.0)


def dct2_matrix(n: int) -> np.ndarray:
    """Orthogonal cosine matrix of type II."""
    k = np.arange(n)[:, None]
    l = np.arange(n)[None, :]
    return np.sqrt(2.0 / n) * dct_weight(k, n) * np.cos(k * (2 * l + 1) * np.pi / (2 * n))


def naive_dct2(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return dct2_matrix(x.shape[0]) @ x


def naive_dct3(c) -> np.ndarray:
    """Inverse of :func:`naive_dct2` (transpose of the type-II matrix)."""
    c = np.asarray(c, dtype=float)
    return dct2_matrix(c.shape[0]).T @ c


def mirror_extend(x) -> np.ndarray:
    """``(x, reversed x)``, the length-2N symmetric extension."""
    x = np.asarray(x, dtype=float)
    return np.concatenate((x, x[::-1]))


def dct2_via_fft(x) -> np.ndarray:
    """DCT-II of ``x`` computed from the length-2N FFT of its mirror extension.

    Raises
    ------
    ValueError
        If the length is not a power of two, or the twiddled spectrum has an
        imaginary residue above 1e-9 (relative to its magnitude).
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    _check_pow2(n)
    yhat = fft_radix2(mirror_extend(x))[:n]
    k = np.arange(n)
    prod = dct_weight(k, n) / np.sqrt(2.0 * n) * twiddles(4 * n).roots[k] * yhat
    scale = max(1.0, float(np.max(np.abs(prod))))
    if np.max(np.abs(prod.imag)) >= 1e-9 * scale:
        raise ValueError("imaginary residue in DCT-II conversion exceeds 1e-9")
    return prod.real.copy()


def yhat_from_dct2(coeffs) -> np.ndarray:
    """Full length-2N spectrum of the mirror extension from DCT-II coefficients."""
    c = np.asarray(coeffs)
    n = c.shape[0]
    k = np.arange(2 * n)
    roots = twiddles(4 * n).roots
    # omega_{4N}^{-k} = conj(omega_{4N}^k)
    inv_tw = np.conj(roots[k])
    out = np.zeros(2 * n, dtype=complex)
    lo = k[:n]
    out[:n] = np.sqrt(2.0 * n) / dct_weight(lo, n) * inv_tw[:n] * c
    hi = k[n + 1 :]
    out[n + 1 :] = -np.sqrt(2.0 * n) / dct_weight(2 * n - hi, n) * inv_tw[n + 1 :] * c[2 * n - hi]
    return out


def idct_via_ifft(coeffs) -> np.ndarray:
    """Full-length inverse DCT-II (= DCT-III) through one radix-2 IFFT of length 2N."""
    c = np.asarray(coeffs, dtype=float)
    _check_pow2(c.shape[0])
    y = ifft_radix2(yhat_from_dct2(c))
    return y.real[: c.shape[0]].copy()
