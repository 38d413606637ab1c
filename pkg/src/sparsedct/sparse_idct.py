"""Sparse inverse DCT-II for vectors with one-block support.

The coefficients of ``x`` are turned into samples of the spectrum of the
mirrored vector ``(x, reversed x)`` only when the sparse IFFT asks for them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .oracle import DctOracle, OracleStats
from .sparse_ifft import AlgorithmConfig, Reconstruction, reconstruct
from .transforms import is_power_of_two


@dataclass(frozen=True)
class DctProblem:
    coefficients: np.ndarray
    config: AlgorithmConfig = AlgorithmConfig()

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if c.ndim != 1 or c.shape[0] < 2 or not is_power_of_two(c.shape[0]):
            raise ValueError("coefficient vector length must be a power of two >= 2")
        object.__setattr__(self, "coefficients", c)

    @property
    def n_exp(self) -> int:
        return self.coefficients.shape[0].bit_length()


def reconstruct_x_full(problem: DctProblem) -> tuple[np.ndarray, OracleStats, Reconstruction]:
    """Like :func:`reconstruct_x` but also returns the underlying IFFT result."""
    oracle = DctOracle(problem.coefficients)
    rec = reconstruct(oracle, problem.n_exp, problem.config)
    n = problem.coefficients.shape[0]
    return rec.y[:n].copy(), oracle.coefficient_stats, rec


def reconstruct_x(problem: DctProblem) -> tuple[np.ndarray, OracleStats]:
    """Recover ``x`` from its DCT-II coefficients.

    The returned stats count distinct coefficient indices read.
    """
    x, stats, _ = reconstruct_x_full(problem)
    return x, stats
