"""Sparse inverse FFT for real vectors with reflected block support.

The vector ``y = (x, reversed x)`` of length ``2^J`` is rebuilt level by level
from its periodizations ``y^(0), y^(1), ..., y^(J) = y``.  Each level either
solves a short restricted Fourier system (one-block periodizations) or picks
one of two shifted copies of the previous level (two-block periodizations).
Only ``O(m log(2N/m))`` spectrum samples are requested from the oracle.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .oracle import FrequencyOracle, OracleStats
from .support import (
    ZERO,
    Center,
    OneBlock,
    SupportState,
    TwoBlockFinal,
    TwoBlockReflected,
    Unstructured,
    full_block,
)
from .transforms import ifft_radix2, twiddles

# Threshold floor relative to the current level's magnitude; only matters
# when epsilon is below round-off (e.g. epsilon = 0).
RELATIVE_FLOOR = 1e-13
DEGENERATE_SAMPLE = 1e-300
# Consistency check of the two-block step: number of samples compared and the
# allowed residual (relative round-off plus a noise allowance tied to epsilon).
VERIFY_POINTS = 8
VERIFY_RELATIVE = 1e-8
VERIFY_NOISE_FACTOR = 4.0


class CompareMode(enum.Enum):
    SIGNED = "signed"
    MAGNITUDE = "magnitude"


@dataclass(frozen=True)
class AlgorithmConfig:
    epsilon: float = 1e-4
    b_exp: int = 0
    compare_mode: CompareMode = CompareMode.SIGNED

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be >= 0")
        if self.b_exp < 0:
            raise ValueError("b_exp must be >= 0")

    def keep(self, values: np.ndarray, threshold: Optional[float] = None) -> np.ndarray:
        """Mask of entries counted as significant."""
        thr = self.epsilon if threshold is None else threshold
        if self.compare_mode is CompareMode.MAGNITUDE:
            return np.abs(values) > thr
        return values > thr


class DegenerateSignalError(ValueError):
    """All candidate odd-indexed samples vanish; the block shift is undecidable."""


@dataclass
class IterationState:
    j: int
    y: np.ndarray
    support: SupportState


@dataclass
class StepTrace:
    """Diagnostics of one level transition.  Fields not touched by the branch stay ``None``."""

    j: int
    branch: str
    L: Optional[int] = None
    v: Optional[np.ndarray] = None
    a: Optional[np.ndarray] = None
    z_j: Optional[np.ndarray] = None
    z_next: Optional[np.ndarray] = None
    k0: Optional[int] = None
    sample_k0: Optional[complex] = None
    u0_hat: Optional[complex] = None
    lam: Optional[int] = None
    T0: Optional[np.ndarray] = None
    T1: Optional[np.ndarray] = None
    d0: Optional[int] = None
    d1: Optional[int] = None
    e0: Optional[float] = None
    e1: Optional[float] = None
    relabeled: Optional[SupportState] = None
    detected: Optional[SupportState] = field(default=None, repr=False)


class Reconstruction(NamedTuple):
    y: np.ndarray
    stats: OracleStats
    traces: list
    support: SupportState


def _n_exp(oracle: FrequencyOracle) -> int:
    n = oracle.length
    J = n.bit_length() - 1
    if n != 1 << J:
        raise ValueError(f"oracle length {n} is not a power of two")
    return J


def _threshold(config: AlgorithmConfig, reference: np.ndarray) -> float:
    scale = float(np.max(np.abs(reference))) if reference.size else 0.0
    return max(config.epsilon, RELATIVE_FLOOR * scale)


def _ceil_log2(m: int) -> int:
    return (m - 1).bit_length()


def initial_periodization(oracle: FrequencyOracle, b_exp: int = 0,
                          config: AlgorithmConfig = AlgorithmConfig()) -> IterationState:
    """Compute ``y^(b)`` from ``2^b`` equidistant samples and label its support."""
    J = _n_exp(oracle)
    if not 0 <= b_exp <= J:
        raise ValueError(f"b_exp must lie in [0, {J}]")
    idx = (1 << (J - b_exp)) * np.arange(1 << b_exp)
    y = ifft_radix2(oracle.samples(idx)).real
    mask = config.keep(y, _threshold(config, y))
    y = np.where(mask, y, 0.0)
    if not mask.any():
        support = ZERO
    elif b_exp == 0:
        support = full_block(0)
    else:
        support = _detect_after_full(y, b_exp, J, config)
    return IterationState(b_exp, y, support)


def recover_one_block_step(state: IterationState, oracle: FrequencyOracle,
                           config: AlgorithmConfig = AlgorithmConfig()):
    """Compute ``y^(j+1)`` when ``y^(j)`` has a one-block support.

    Long blocks (``m^(j) > 2^(j-1)``) use all ``2^j`` odd-indexed samples of
    the next level; short blocks solve the system restricted to a window of
    length ``2^L``, ``L = ceil(log2 m^(j))``, starting at ``mu^(j)``.
    """
    s = state.support
    if not isinstance(s, OneBlock):
        raise TypeError(f"one-block step needs a OneBlock support, got {type(s).__name__}")
    J = _n_exp(oracle)
    j = state.j
    size = 1 << j
    y = np.asarray(state.y, dtype=float)
    if s.is_zero:
        return np.zeros(2 * size), StepTrace(j, "zero")

    step = 1 << (J - j - 1)
    inv_roots = np.conj(twiddles(2 * size).roots)
    thr = _threshold(config, y)
    if 2 * s.length > size:
        k = np.arange(size)
        v = oracle.samples(step * (2 * k + 1))
        a = inv_roots[k] * ifft_radix2(v)
        vals = 0.5 * (y + a).real
        y0 = np.where(config.keep(vals, thr), vals, 0.0)
        trace = StepTrace(j, "direct", v=v, a=a)
    else:
        L = _ceil_log2(s.length)
        width = 1 << L
        pos = (s.mu + np.arange(width)) % size
        z = y[pos]
        p = np.arange(width)
        v = oracle.samples((1 << (J - L)) * p + step)
        w0_inv = np.conj(twiddles(width).roots[(p * s.mu) % width])
        a = inv_roots[pos] * ifft_radix2(w0_inv * v)
        vals = 0.5 * (z + a).real
        z_next = np.where(config.keep(vals, thr), vals, 0.0)
        y0 = np.zeros(size)
        y0[pos] = z_next
        trace = StepTrace(j, "restricted", L=L, v=v, a=a, z_j=z, z_next=z_next)
    return np.concatenate((y0, y0[::-1])), trace


def _odd_samples(oracle: FrequencyOracle, j: int, block_len: int):
    J = _n_exp(oracle)
    count = max(1, min(2 * block_len, 1 << j))
    k = np.arange(count)
    return k, oracle.samples((1 << (J - j - 1)) * (2 * k + 1))


def find_nonzero_odd_sample(oracle: FrequencyOracle, j: int, block_len: int):
    """Largest-modulus sample among the first ``2 n`` odd entries of the level-(j+1) spectrum.

    Returns ``(k0, value)``; ties go to the smallest ``k``.
    """
    _, v = _odd_samples(oracle, j, block_len)
    return _pick_k0(v, j)


def _pick_k0(v: np.ndarray, j: int):
    k0 = int(np.argmax(np.abs(v)))
    if abs(v[k0]) < DEGENERATE_SAMPLE:
        raise DegenerateSignalError(f"no nonzero odd-indexed sample at level {j + 1}")
    return k0, complex(v[k0])


def _first_candidate_odd(y: np.ndarray, j: int, s: TwoBlockReflected, k: np.ndarray) -> np.ndarray:
    """Odd-indexed spectrum entries ``2k+1`` of the candidate that keeps the blocks in place."""
    size = 1 << j
    big = 2 * size
    n = s.block_length
    roots = twiddles(big).roots
    freq = (2 * np.asarray(k) + 1)[:, None]
    first = s.mu + np.arange(n)
    second = big - n - s.mu + np.arange(n)
    return (roots[(freq * first) % big] @ y[first % size]
            + roots[(freq * second) % big] @ y[(second - size) % size])


def recover_two_block_step(state: IterationState, oracle: FrequencyOracle,
                           config: AlgorithmConfig = AlgorithmConfig()):
    """Compute ``y^(j+1)`` when ``y^(j)`` has two reflected blocks.

    Both candidates (blocks kept in place or moved by ``2^j``) have odd-indexed
    spectra of opposite sign, so one sample decides between them.  The chosen
    candidate is then checked against the other fetched samples; if it does
    not explain them, the support of ``y^(j)`` is relabelled as one block and
    the one-block step runs instead (``trace.relabeled`` holds the new label).
    """
    s = state.support
    if not isinstance(s, TwoBlockReflected):
        raise TypeError(f"two-block step needs a TwoBlockReflected support, got {type(s).__name__}")
    j = state.j
    size = 1 << j
    big = 2 * size
    n = s.block_length
    y = np.asarray(state.y, dtype=float)
    ks, v = _odd_samples(oracle, j, n)
    k0, sample = _pick_k0(v, j)

    u0 = complex(_first_candidate_odd(y, j, s, np.array([k0]))[0])
    keep_place = abs(u0 - sample) <= abs(u0 + sample)
    lam = s.mu if keep_place else size + s.mu
    trace = StepTrace(j, "two-block", k0=k0, sample_k0=sample, u0_hat=u0, lam=lam)

    check = np.argsort(-np.abs(v), kind="stable")[:VERIFY_POINTS]
    predicted = _first_candidate_odd(y, j, s, ks[check]) * (1.0 if keep_place else -1.0)
    residual = float(np.max(np.abs(predicted - v[check])))
    allowed = VERIFY_RELATIVE * float(np.max(np.abs(v))) + VERIFY_NOISE_FACTOR * config.epsilon * math.sqrt(size)
    if residual > allowed:
        relabel = _detect_after_full(y, j, _n_exp(oracle), config)
        y_next, inner = recover_one_block_step(IterationState(j, y, relabel), oracle, config)
        inner.branch = "two-block-rejected/" + inner.branch
        inner.k0, inner.sample_k0, inner.u0_hat = k0, sample, u0
        inner.relabeled = relabel
        return y_next, inner

    y_next = np.zeros(big)
    blk1 = (lam + np.arange(n)) % big
    blk2 = (big - n - lam + np.arange(n)) % big
    y_next[blk1] = y[blk1 % size]
    y_next[blk2] = y[blk2 % size]
    return y_next, trace


def _detect_after_full(y: np.ndarray, level: int, J: int, config: AlgorithmConfig,
                       trace: Optional[StepTrace] = None) -> SupportState:
    size = 1 << level
    half = size // 2
    if level == J:
        quarter = half // 2
        t = np.flatnonzero(config.keep(y[:quarter]))
        u = quarter + np.flatnonzero(config.keep(y[quarter:half]))
        if trace is not None:
            trace.T0, trace.T1 = t, u
        if t.size == 0 and u.size == 0:
            return ZERO
        if t.size == 0:
            return OneBlock(int(u[0]), 2 * (half - int(u[0])), Center.MIDDLE)
        if u.size == 0:
            return OneBlock(size - 1 - int(t[-1]), 2 * (int(t[-1]) + 1), Center.BOUNDARY)
        return Unstructured(tuple(int(k) for k in np.flatnonzero(config.keep(y))))

    t = np.flatnonzero(config.keep(y[:half]))
    if trace is not None:
        trace.T0 = t
    K = t.size
    if K == 0:
        return ZERO
    T = np.concatenate((t, size - 1 - t[::-1]))
    d0 = int(T[K] - T[K - 1])
    d1 = int((T[0] - T[-1]) % size)
    if trace is not None:
        trace.d0, trace.d1 = d0, d1
    if d0 == d1:
        return full_block(level)
    if d0 < d1:
        return OneBlock(int(T[0]), int(T[-1] - T[0] + 1), Center.MIDDLE)
    return OneBlock(int(T[K]), int(size - T[K] + T[K - 1] + 1), Center.BOUNDARY)


def detect_support(y_next, prior: IterationState, config: AlgorithmConfig, n_exp: int,
                   lam: Optional[int] = None, trace: Optional[StepTrace] = None) -> SupportState:
    """Label the support of ``y^(j+1)`` given the support of ``y^(j)``.

    ``lam`` is the block position chosen by the two-block step and is
    required when the prior support is :class:`TwoBlockReflected`.
    """
    y_next = np.asarray(y_next, dtype=float)
    j = prior.j
    s = prior.support
    size = 1 << j
    big = 2 * size
    if isinstance(s, TwoBlockReflected):
        if lam is None:
            raise ValueError("two-block detection needs the chosen shift lam")
        n = s.block_length
        mu = s.mu if lam == s.mu else size - n - s.mu
        return TwoBlockReflected(mu, mu + n - 1, n)
    if not isinstance(s, OneBlock):
        raise TypeError(f"cannot continue from support state {type(s).__name__}")
    if s.is_zero:
        return ZERO

    if s.center is Center.FULL or s.length >= size:
        return _detect_after_full(y_next, j + 1, n_exp, config, trace)
    if s.center is Center.MIDDLE:
        cand = np.arange(s.mu, size - s.mu)
        t = cand[config.keep(y_next[cand])]
        if trace is not None:
            trace.T0 = t
        if t.size == 0:
            return ZERO
        mu = int(t[0])
        n = int(t[-1]) - mu + 1
        if config.keep(y_next[:size]).sum() != t.size:
            # entries outside the predicted window: the prior label was wrong
            return _detect_after_full(y_next, j + 1, n_exp, config, trace)
        return TwoBlockReflected(mu, mu + n - 1, n)

    # boundary-centred
    m = s.length
    if j + 1 < n_exp:
        w0 = (s.mu + np.arange(m)) % big
        w1 = (size + s.mu + np.arange(m)) % big
        e0 = float(np.sum(np.abs(y_next[w0])))
        e1 = float(np.sum(np.abs(y_next[w1])))
        if trace is not None:
            trace.e0, trace.e1 = e0, e1
        if e0 == 0.0 and e1 == 0.0:
            return ZERO
        if config.keep(y_next[w0]).any() and config.keep(y_next[w1]).any():
            # exactly one window is occupied unless the prior label was wrong
            return _detect_after_full(y_next, j + 1, n_exp, config, trace)
        if e0 > e1:
            return OneBlock(s.mu, m, Center.MIDDLE)
        return OneBlock(size + s.mu, m, Center.BOUNDARY)

    t = s.mu + np.flatnonzero(config.keep(y_next[s.mu:size]))
    u = size + s.mu + np.flatnonzero(config.keep(y_next[size + s.mu:big]))
    if trace is not None:
        trace.T0, trace.T1 = t, u
    if t.size == 0 and u.size == 0:
        return ZERO
    if t.size == 0:
        return OneBlock(int(u[0]), 2 * (big - int(u[0])), Center.BOUNDARY)
    if u.size == 0:
        return OneBlock(int(t[0]), 2 * (size - int(t[0])), Center.MIDDLE)
    return TwoBlockFinal(int(t[0]), int(u[0]), 2 * (size - int(t[0])), 2 * (big - int(u[0])))


def reconstruct(oracle: FrequencyOracle, n_exp: Optional[int] = None,
                config: AlgorithmConfig = AlgorithmConfig()) -> Reconstruction:
    """Recover ``y`` (length ``2^J``) with reflected block support from spectrum samples."""
    J = _n_exp(oracle)
    if n_exp is not None and n_exp != J:
        raise ValueError(f"oracle serves 2^{J} indices but n_exp={n_exp}")
    state = initial_periodization(oracle, config.b_exp, config)
    traces = []
    for j in range(state.j, J):
        if isinstance(state.support, OneBlock):
            y_next, trace = recover_one_block_step(state, oracle, config)
        elif isinstance(state.support, TwoBlockReflected):
            y_next, trace = recover_two_block_step(state, oracle, config)
            if trace.relabeled is not None:
                state = IterationState(j, state.y, trace.relabeled)
        else:
            raise RuntimeError(f"support state {state.support!r} cannot occur below the final level")
        support = detect_support(y_next, state, config, J, lam=trace.lam, trace=trace)
        trace.detected = support
        traces.append(trace)
        state = IterationState(j + 1, y_next, support)
    return Reconstruction(state.y, oracle.stats, traces, state.support)


def sample_bound(n_exp: int, block_length: int) -> int:
    """Upper bound ``2^L (J - L + 1)`` on distinct samples, ``2^(L-1) < 2m <= 2^L``."""
    L = _ceil_log2(2 * block_length)
    return (1 << L) * (n_exp - L + 1)
