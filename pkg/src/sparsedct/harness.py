"""Experiment harness: random instances, single trials, sweeps and exhaustive checks."""

from __future__ import annotations

import csv
import enum
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .oracle import DctOracle, DenseOracle, NoiseSpec, add_noise_to_snr
from .sparse_idct import DctProblem, reconstruct_x
from .sparse_ifft import (
    AlgorithmConfig,
    CompareMode,
    DegenerateSignalError,
    reconstruct,
    sample_bound,
)
from .support import (
    BlockVectorSpec,
    block_length_estimate,
    build_y,
    support_indices,
)
from .transforms import (
    dct2_via_fft,
    fft_radix2,
    idct_via_ifft,
    ifft_radix2,
    naive_dct2,
)


class Mode(enum.Enum):
    IFFT = "ifft"
    IDCT = "idct"


# Thresholds keyed by SNR (dB) used for noisy data; exact data uses EXACT_EPSILON.
IFFT_EPSILON = {0: 1.7, 10: 1.2, 20: 0.4, 30: 0.19, 40: 0.05, 50: 0.02}
IDCT_EPSILON = {0: 2.5, 10: 1.8, 20: 1.0, 30: 0.3, 40: 0.15, 50: 0.05}
EXACT_EPSILON = 1e-4

# naive O(N^2) DCT above this length is too slow for a harness run
NAIVE_DCT_MAX = 1 << 11

CSV_FIELDS = (
    "mode", "n_exp", "m", "trial", "seed", "epsilon", "snr_db", "runtime_ns",
    "samples_distinct", "err_per_length", "support_correct", "length_bounded", "detected_len",
)
SWEEP_FIELDS = (
    "mode", "n_exp", "m", "snr_db", "epsilon", "trials",
    "recovery_rate", "recovery_rate_bounded", "mean_err_per_length",
)


def default_epsilon(mode: Mode, snr: Optional[float]) -> float:
    """Threshold for the given SNR: nearest tabulated value, or EXACT_EPSILON without noise."""
    if snr is None or math.isinf(snr):
        return EXACT_EPSILON
    table = IFFT_EPSILON if mode is Mode.IFFT else IDCT_EPSILON
    key = min(table, key=lambda s: (abs(s - snr), s))
    return table[key]


@dataclass(frozen=True)
class TrialSpec:
    n_exp: int
    block_length: int
    seed: int = 0
    snr_db: Optional[float] = None
    epsilon: Optional[float] = None
    b_exp: int = 0
    mode: Mode = Mode.IFFT
    zero_fill: bool = True
    compare_mode: CompareMode = CompareMode.SIGNED

    def __post_init__(self):
        if self.n_exp < 2:
            raise ValueError("n_exp must be >= 2")
        n = 1 << (self.n_exp - 1)
        if not 1 <= self.block_length < n:
            raise ValueError(f"block length must satisfy 1 <= m < {n}, got {self.block_length}")
        if self.snr_db is not None and math.isnan(self.snr_db):
            raise ValueError("snr_db must not be NaN")

    @property
    def resolved_epsilon(self) -> float:
        if self.epsilon is not None:
            return self.epsilon
        return default_epsilon(self.mode, self.snr_db)

    @property
    def noisy(self) -> bool:
        return self.snr_db is not None and not math.isinf(self.snr_db)

    def config(self) -> AlgorithmConfig:
        return AlgorithmConfig(self.resolved_epsilon, self.b_exp, self.compare_mode)


@dataclass
class TrialResult:
    err_per_length: float
    samples_distinct: int
    runtime_ns: int
    support_correct: bool
    length_bounded: bool
    detected_len: int
    achieved_snr: float
    detected_support: object = field(default=None, repr=False)
    failure: Optional[str] = None


class Instance(NamedTuple):
    x: np.ndarray
    y: np.ndarray
    truth_x: np.ndarray
    truth_y: np.ndarray


def gen_instance(spec: TrialSpec) -> Instance:
    """Random ``x`` with one (possibly wrapped) block of positive entries."""
    rng = np.random.default_rng([spec.seed, 0])
    n = 1 << (spec.n_exp - 1)
    m = spec.block_length
    mu = int(rng.integers(n))
    vals = 10.0 - rng.uniform(0.0, 10.0, m)
    if spec.zero_fill and m > 2:
        interior = rng.choice(np.arange(1, m - 1), (m - 2) // 2, replace=False)
        vals[interior] = 0.0
    x = BlockVectorSpec(spec.n_exp, mu, tuple(vals)).to_vector()
    y = build_y(x)
    return Instance(x, y, np.flatnonzero(x), np.flatnonzero(y))


def dct_coefficients(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[0] <= NAIVE_DCT_MAX:
        return naive_dct2(x)
    return dct2_via_fft(x)


def noise_seed(seed: int) -> int:
    return int(np.random.SeedSequence([seed, 1]).generate_state(1)[0])


def _prepare(spec: TrialSpec, inst: Instance):
    """Oracle input data (spectrum or coefficients) and the achieved SNR."""
    data = fft_radix2(inst.y) if spec.mode is Mode.IFFT else dct_coefficients(inst.x)
    if spec.noisy:
        return add_noise_to_snr(data, NoiseSpec(spec.snr_db, noise_seed(spec.seed)))
    return data, math.inf


def run_trial(spec: TrialSpec) -> TrialResult:
    inst = gen_instance(spec)
    data, achieved = _prepare(spec, inst)
    cfg = spec.config()
    n2 = inst.y.shape[0]
    if spec.mode is Mode.IFFT:
        oracle = DenseOracle(data)
        truth = inst.y
    else:
        oracle = DctOracle(data)
        truth = inst.x
    start = time.perf_counter_ns()
    try:
        rec = reconstruct(oracle, spec.n_exp, cfg)
    except DegenerateSignalError as exc:
        elapsed = time.perf_counter_ns() - start
        stats = oracle.stats if spec.mode is Mode.IFFT else oracle.coefficient_stats
        return TrialResult(float(np.linalg.norm(truth)) / truth.shape[0], stats.distinct_indices,
                           elapsed, False, False, 0, achieved, None, str(exc))
    elapsed = time.perf_counter_ns() - start

    if spec.mode is Mode.IFFT:
        recovered = rec.y
        samples = rec.stats.distinct_indices
    else:
        recovered = rec.y[: n2 // 2]
        samples = oracle.coefficient_stats.distinct_indices
    err = float(np.linalg.norm(truth - recovered)) / truth.shape[0]
    detected = set(support_indices(rec.support, spec.n_exp))
    contained = bool(detected) and set(inst.truth_y.tolist()) <= detected
    m_est = block_length_estimate(rec.support)
    return TrialResult(err, samples, elapsed, contained, m_est <= 3 * spec.block_length,
                       m_est, achieved, rec.support)


def run_full_baseline(spec: TrialSpec):
    """Time the dense inverse transform on the same data; returns ``(runtime_ns, err_per_length)``."""
    inst = gen_instance(spec)
    data, _ = _prepare(spec, inst)
    if spec.mode is Mode.IFFT:
        start = time.perf_counter_ns()
        out = ifft_radix2(data).real
        elapsed = time.perf_counter_ns() - start
        truth = inst.y
    else:
        start = time.perf_counter_ns()
        out = idct_via_ifft(data)
        elapsed = time.perf_counter_ns() - start
        truth = inst.x
    return elapsed, float(np.linalg.norm(truth - out)) / truth.shape[0]


def trial_row(spec: TrialSpec, trial: int, res: TrialResult) -> dict:
    return {
        "mode": spec.mode.value,
        "n_exp": spec.n_exp,
        "m": spec.block_length,
        "trial": trial,
        "seed": spec.seed,
        "epsilon": repr(spec.resolved_epsilon),
        "snr_db": "inf" if spec.snr_db is None else repr(float(spec.snr_db)),
        "runtime_ns": res.runtime_ns,
        "samples_distinct": res.samples_distinct,
        "err_per_length": f"{res.err_per_length:.6e}",
        "support_correct": str(res.support_correct).lower(),
        "length_bounded": str(res.length_bounded).lower(),
        "detected_len": res.detected_len,
    }


def trial_seed(base: int, m: int, trial: int) -> int:
    return int(np.random.SeedSequence([base, m, trial]).generate_state(1)[0])


def _write_csv(out, fields, rows) -> None:
    if hasattr(out, "write"):
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return
    with open(out, "w", newline="", encoding="ascii") as fh:
        _write_csv(fh, fields, rows)


def _run_many(specs: Sequence[TrialSpec], workers: int) -> list:
    if workers <= 1:
        return [run_trial(s) for s in specs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_trial, specs))


def bench_sweep(n_exp: int, m_list: Iterable[int], trials: int, out=None, *, seed: int = 0,
                mode: Mode = Mode.IFFT, epsilon: Optional[float] = None,
                snr_db: Optional[float] = None, b_exp: int = 0,
                compare_mode: CompareMode = CompareMode.SIGNED, workers: int = 1) -> list:
    """One sparse row and one full-transform row per ``(m, trial)``.

    Full-transform rows use mode ``ifft_full`` / ``idct_full`` and leave the
    support columns blank.  Rows are returned and, if ``out`` is given,
    written as CSV.
    """
    m_list = list(m_list)
    if not m_list or trials < 1:
        raise ValueError("m_list must be nonempty and trials >= 1")
    specs = [(m, t, TrialSpec(n_exp, m, trial_seed(seed, m, t), snr_db, epsilon, b_exp, mode,
                              True, compare_mode))
             for m in m_list for t in range(trials)]
    results = _run_many([s for _, _, s in specs], workers)
    rows = []
    for (m, t, spec), res in zip(specs, results):
        rows.append(trial_row(spec, t, res))
        runtime, err = run_full_baseline(spec)
        full = trial_row(spec, t, res)
        full.update(mode=f"{mode.value}_full", runtime_ns=runtime,
                    samples_distinct=1 << (n_exp - (mode is Mode.IDCT)),
                    err_per_length=f"{err:.6e}", support_correct="", length_bounded="",
                    detected_len="")
        rows.append(full)
    if out is not None:
        _write_csv(out, CSV_FIELDS, rows)
    return rows


def noise_sweep(n_exp: int, m: int, snr_list: Iterable[float], trials: int,
                epsilon_list: Optional[Iterable[float]] = None, out=None, *, seed: int = 0,
                mode: Mode = Mode.IFFT, compare_mode: CompareMode = CompareMode.SIGNED,
                workers: int = 1) -> list:
    """Recovery rates and mean error for every ``(snr, epsilon)`` pair.

    Without ``epsilon_list`` each SNR uses its tabulated default threshold.
    Trial ``t`` uses the same instance for every SNR and threshold.
    """
    snr_list = list(snr_list)
    if not snr_list or trials < 1:
        raise ValueError("snr_list must be nonempty and trials >= 1")
    eps_given = None if epsilon_list is None else list(epsilon_list)
    if eps_given is not None and not eps_given:
        raise ValueError("epsilon_list must be nonempty when given")
    rows = []
    for snr in snr_list:
        for eps in (eps_given or [default_epsilon(mode, snr)]):
            specs = [TrialSpec(n_exp, m, trial_seed(seed, m, t), snr, eps, 0, mode, True, compare_mode)
                     for t in range(trials)]
            results = _run_many(specs, workers)
            ok = [r.support_correct for r in results]
            ok_b = [r.support_correct and r.length_bounded for r in results]
            rows.append({
                "mode": mode.value, "n_exp": n_exp, "m": m,
                "snr_db": "inf" if math.isinf(snr) else repr(float(snr)),
                "epsilon": repr(eps), "trials": trials,
                "recovery_rate": f"{np.mean(ok):.4f}",
                "recovery_rate_bounded": f"{np.mean(ok_b):.4f}",
                "mean_err_per_length": f"{np.mean([r.err_per_length for r in results]):.6e}",
            })
    if out is not None:
        _write_csv(out, SWEEP_FIELDS, rows)
    return rows


@dataclass
class VerifyReport:
    total: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total > 0 and self.passed == self.total


def verify_exhaustive(j_max: int, seeds: int = 5, tol: float = 1e-10,
                      epsilon: float = 1e-8, j_min: int = 2) -> VerifyReport:
    """Every block position and length for every ``J`` in ``[j_min, j_max]``, both paths.

    An instance passes when the IFFT path returns ``build_y(x)`` and the
    IDCT path returns ``x`` within ``tol`` and both respect the sample bound.
    """
    if j_max < j_min:
        raise ValueError("j_max must be >= j_min")
    cfg = AlgorithmConfig(epsilon)
    report = VerifyReport()
    for J in range(j_min, j_max + 1):
        n = 1 << (J - 1)
        for mu in range(n):
            for m in range(1, n):
                bound = sample_bound(J, m)
                for s in range(seeds):
                    rng = np.random.default_rng([s, J, mu, m])
                    vals = 10.0 - rng.uniform(0.0, 10.0, m)
                    x = BlockVectorSpec(J, mu, tuple(vals)).to_vector()
                    y = build_y(x)
                    report.total += 1
                    try:
                        rec = reconstruct(DenseOracle(fft_radix2(y)), J, cfg)
                        xr, xstats = reconstruct_x(DctProblem(naive_dct2(x), cfg))
                        e_y = float(np.max(np.abs(rec.y - y)))
                        e_x = float(np.max(np.abs(xr - x)))
                        good = (e_y <= tol and e_x <= tol and rec.stats.distinct_indices <= bound
                                and xstats.distinct_indices <= bound)
                        reason = f"err_y={e_y:.3e} err_x={e_x:.3e} samples={rec.stats.distinct_indices}/{bound}"
                    except Exception as exc:  # report, do not abort the sweep
                        good, reason = False, f"{type(exc).__name__}: {exc}"
                    if good:
                        report.passed += 1
                    else:
                        report.failures.append((J, mu, m, s, reason))
    return report
