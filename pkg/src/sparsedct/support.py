"""Block supports, reflection and periodization of mirrored vectors."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np


class Center(enum.Enum):
    MIDDLE = "middle"
    BOUNDARY = "boundary"
    FULL = "full"


@dataclass(frozen=True)
class OneBlock:
    """Symmetric one-block support ``I_{mu, mu+length-1}`` of a length-2^j vector.

    ``length == 0`` is the zero-vector sentinel.
    """

    mu: int
    length: int
    center: Center

    @property
    def is_zero(self) -> bool:
        return self.length == 0


@dataclass(frozen=True)
class TwoBlockReflected:
    """Two separated blocks ``I_{mu,nu}`` and its mirror image."""

    mu: int
    nu: int
    block_length: int


@dataclass(frozen=True)
class TwoBlockFinal:
    """Final-level support: a block centered on the middle starting at ``mu``
    and a block centered on the boundary starting at ``eta``."""

    mu: int
    eta: int
    len_middle: int
    len_boundary: int


@dataclass(frozen=True)
class Unstructured:
    indices: tuple


SupportState = Union[OneBlock, TwoBlockReflected, TwoBlockFinal, Unstructured]

ZERO = OneBlock(0, 0, Center.FULL)


def full_block(j: int) -> OneBlock:
    return OneBlock(0, 1 << j, Center.FULL)


@dataclass(frozen=True)
class BlockVectorSpec:
    """Description of ``x`` in R^N, N = 2^(J-1), with one (possibly wrapped) block."""

    n_exp: int
    first_index: int
    values: tuple

    def __post_init__(self):
        n = 1 << (self.n_exp - 1)
        m = len(self.values)
        if not 1 <= m < n:
            raise ValueError(f"block length must satisfy 1 <= m < {n}, got {m}")
        if not 0 <= self.first_index < n:
            raise ValueError("first index out of range")
        if self.values[0] == 0 or self.values[-1] == 0:
            raise ValueError("first and last block entries must be nonzero")

    @property
    def block_length(self) -> int:
        return len(self.values)

    @property
    def last_index(self) -> int:
        return (self.first_index + self.block_length - 1) % (1 << (self.n_exp - 1))

    def to_vector(self) -> np.ndarray:
        n = 1 << (self.n_exp - 1)
        x = np.zeros(n)
        idx = (self.first_index + np.arange(self.block_length)) % n
        x[idx] = self.values
        return x


def reflect(v) -> np.ndarray:
    """Apply the counter identity: entry ``k`` goes to ``N-1-k``."""
    return np.asarray(v)[::-1].copy()


def build_y(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.concatenate((x, x[::-1]))


def periodize(y, j: int) -> np.ndarray:
    """Length-2^j periodization: entry ``k`` sums ``y[k + 2^j l]`` over all ``l``."""
    y = np.asarray(y)
    n = y.shape[0]
    n_exp = n.bit_length() - 1
    if n != 1 << n_exp:
        raise ValueError("length must be a power of two")
    if not 0 <= j <= n_exp:
        raise ValueError(f"level {j} outside [0, {n_exp}]")
    return y.reshape(-1, 1 << j).sum(axis=0)


def periodization_ladder(y) -> list:
    """All periodizations ``[y^(0), ..., y^(J)]`` by repeated halving."""
    y = np.asarray(y)
    ladder = [y]
    cur = y
    while cur.shape[0] > 1:
        half = cur.shape[0] // 2
        cur = cur[:half] + cur[half:]
        ladder.append(cur)
    return ladder[::-1]


def check_no_cancellation(y, epsilon: float = 0.0) -> bool:
    """True iff no periodization shrinks a nonzero entry of ``y`` to ``<= epsilon``."""
    y = np.asarray(y, dtype=float)
    nz = np.flatnonzero(y)
    if nz.size == 0:
        return True
    for j, per in enumerate(periodization_ladder(y)):
        vals = np.abs(per[nz % (1 << j)])
        if epsilon == 0.0:
            if np.any(vals == 0.0):
                return False
        elif np.any(vals <= epsilon):
            return False
    return True


def support_indices(s: SupportState, j: int) -> list:
    """Explicit sorted index set of a support state at level ``j``."""
    size = 1 << j
    if isinstance(s, OneBlock):
        return sorted({(s.mu + r) % size for r in range(s.length)})
    if isinstance(s, TwoBlockReflected):
        first = {(s.mu + r) % size for r in range(s.block_length)}
        return sorted(first | {size - 1 - k for k in first})
    if isinstance(s, TwoBlockFinal):
        mid = {(s.mu + r) % size for r in range(s.len_middle)}
        bnd = {(s.eta + r) % size for r in range(s.len_boundary)}
        return sorted(mid | bnd)
    if isinstance(s, Unstructured):
        return sorted(s.indices)
    raise TypeError(f"unknown support state {s!r}")


def block_length_estimate(s: SupportState) -> int:
    """Block length of ``x`` implied by a final-level support state of ``y``."""
    if isinstance(s, TwoBlockReflected):
        return s.block_length
    if isinstance(s, OneBlock):
        return (s.length + 1) // 2
    if isinstance(s, TwoBlockFinal):
        return (s.len_middle + s.len_boundary + 1) // 2
    if isinstance(s, Unstructured):
        return (len(s.indices) + 1) // 2
    raise TypeError(f"unknown support state {s!r}")


def classify_symmetric(v, j: int) -> SupportState:
    """Brute-force label of the exact support of a symmetric length-2^j vector.

    Used as an independent oracle in tests: looks at the nonzero set only and
    returns the canonical one-block or reflected two-block description, or
    :class:`Unstructured` when neither pattern fits.
    """
    v = np.asarray(v)
    size = 1 << j
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return ZERO
    if nz.size == size:
        return full_block(j)
    mask = np.zeros(size, dtype=bool)
    mask[nz] = True
    # runs of the cyclic mask
    starts = [k for k in range(size) if mask[k] and not mask[k - 1]]
    runs = []
    for s in starts:
        ln = 0
        while mask[(s + ln) % size]:
            ln += 1
        runs.append((s, ln))
    if len(runs) == 1:
        return _centered(*runs[0], size)
    if len(runs) == 2:
        (a, la), (b, lb) = sorted(runs)
        if la == lb and (a + la - 1) % size == size - 1 - b:
            return TwoBlockReflected(a, a + la - 1, la)
        blocks = [_centered(s, ln, size) for s, ln in runs]
        if all(_is_self_mirror(s, ln, size) for s, ln in runs):
            mid = next((b for b in blocks if b.center is Center.MIDDLE), None)
            bnd = next((b for b in blocks if b.center is Center.BOUNDARY), None)
            if mid is not None and bnd is not None:
                return TwoBlockFinal(mid.mu, bnd.mu, mid.length, bnd.length)
    return Unstructured(tuple(int(k) for k in nz))


def _is_self_mirror(mu: int, ln: int, size: int) -> bool:
    block = {(mu + r) % size for r in range(ln)}
    return block == {size - 1 - k for k in block}


def _centered(mu: int, ln: int, size: int) -> OneBlock:
    # a symmetric cyclic run is centred on exactly one of the two mirror axes
    half = size // 2
    if (half - mu) % size <= ln - 1 and (half - 1 - mu) % size <= ln - 1:
        return OneBlock(mu, ln, Center.MIDDLE)
    return OneBlock(mu, ln, Center.BOUNDARY)
