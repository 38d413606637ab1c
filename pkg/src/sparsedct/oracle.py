"""Sample access to a spectrum with request accounting.

An oracle serves entries of ``yhat`` (the length-2N DFT of a mirrored vector)
one index or one index array at a time and counts how many requests were made
and how many distinct indices were touched.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .transforms import dct_weight, twiddles


@dataclass(frozen=True)
class OracleStats:
    total_requests: int
    distinct_indices: int


class _Counter:
    def __init__(self):
        self._lock = threading.Lock()
        self._total = 0
        self._seen = set()

    def record(self, indices) -> None:
        with self._lock:
            self._total += len(indices)
            self._seen.update(indices)

    def snapshot(self) -> OracleStats:
        with self._lock:
            return OracleStats(self._total, len(self._seen))


class FrequencyOracle:
    """Base class: subclasses implement :meth:`_values` for an index array."""

    def __init__(self, length: int):
        self.length = int(length)
        self._counter = _Counter()

    @property
    def stats(self) -> OracleStats:
        return self._counter.snapshot()

    def _check(self, idx: np.ndarray) -> None:
        if idx.size and (idx.min() < 0 or idx.max() >= self.length):
            raise IndexError(f"frequency index outside [0, {self.length})")

    def sample(self, k: int) -> complex:
        return complex(self.samples(np.array([k]))[0])

    def samples(self, indices) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64).reshape(-1)
        self._check(idx)
        self._counter.record(idx.tolist())
        return self._values(idx)

    def _values(self, idx: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class DenseOracle(FrequencyOracle):
    """Serves entries of an explicitly stored spectrum."""

    def __init__(self, yhat):
        data = np.asarray(yhat, dtype=complex)
        super().__init__(data.shape[0])
        self._data = data

    def _values(self, idx):
        return self._data[idx]


def dct_backed_sample(coeffs, k: int) -> complex:
    """One entry of ``yhat`` from DCT-II coefficients of ``x`` (length N)."""
    c = np.asarray(coeffs)
    n = c.shape[0]
    if not 0 <= k < 2 * n:
        raise IndexError(f"frequency index {k} outside [0, {2 * n})")
    return complex(_convert(c, np.array([k]))[0])


def _convert(coeffs: np.ndarray, k: np.ndarray) -> np.ndarray:
    n = coeffs.shape[0]
    out = np.zeros(k.shape[0], dtype=complex)
    inv_tw = np.conj(twiddles(4 * n).roots[k])
    lo = k < n
    hi = k > n
    scale = math.sqrt(2.0 * n)
    out[lo] = scale / dct_weight(k[lo], n) * inv_tw[lo] * coeffs[k[lo]]
    kk = 2 * n - k[hi]
    out[hi] = -scale / dct_weight(kk, n) * inv_tw[hi] * coeffs[kk]
    return out


class DctOracle(FrequencyOracle):
    """Converts DCT-II coefficients into spectrum samples on demand.

    Conversions are memoized per index.  :attr:`coefficient_stats` counts the
    distinct coefficients read, which is the sample complexity seen by a
    caller holding only the DCT data.
    """

    def __init__(self, coeffs):
        c = np.asarray(coeffs)
        super().__init__(2 * c.shape[0])
        self._coeffs = c
        self._cache = {}
        self._coeff_counter = _Counter()
        self._cache_lock = threading.Lock()

    @property
    def coefficient_stats(self) -> OracleStats:
        return self._coeff_counter.snapshot()

    def _values(self, idx):
        n = self._coeffs.shape[0]
        with self._cache_lock:
            missing = np.array([k for k in dict.fromkeys(idx.tolist()) if k not in self._cache], dtype=np.int64)
            if missing.size:
                used = missing[missing != n]
                self._coeff_counter.record(np.where(used < n, used, 2 * n - used).tolist())
                for k, v in zip(missing.tolist(), _convert(self._coeffs, missing)):
                    self._cache[k] = v
            return np.array([self._cache[k] for k in idx.tolist()], dtype=complex)


@dataclass(frozen=True)
class NoiseSpec:
    """Additive noise, uniform on ``[-1, 1]`` (per real and imaginary part) before scaling."""

    snr_db: float
    seed: int

    def __post_init__(self):
        if math.isnan(self.snr_db) or self.snr_db == -math.inf:
            raise ValueError("snr_db must be finite or +inf")


def snr_db(signal, noise) -> float:
    nn = float(np.linalg.norm(noise))
    if nn == 0.0:
        return math.inf
    return 20.0 * math.log10(float(np.linalg.norm(signal)) / nn)


def add_noise_to_snr(signal, spec: NoiseSpec):
    """Return ``(signal + eta, achieved_snr)`` with ``||signal|| / ||eta||`` at ``spec.snr_db``.

    Complex input receives complex noise; real input (e.g. DCT coefficients)
    receives real noise.  ``snr_db = inf`` returns an unchanged copy.
    """
    s = np.asarray(signal)
    norm = float(np.linalg.norm(s))
    if norm == 0.0:
        raise ValueError("cannot scale noise against a zero-norm signal")
    if spec.snr_db == math.inf:
        return s.copy(), math.inf
    rng = np.random.default_rng(spec.seed)
    if np.iscomplexobj(s):
        eta = rng.uniform(-1.0, 1.0, s.shape) + 1j * rng.uniform(-1.0, 1.0, s.shape)
    else:
        eta = rng.uniform(-1.0, 1.0, s.shape)
    eta *= norm / (float(np.linalg.norm(eta)) * 10.0 ** (spec.snr_db / 20.0))
    return s + eta, snr_db(s, eta)
