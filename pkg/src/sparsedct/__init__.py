"""Sparse inverse FFT and DCT-II for vectors with block support."""

from .oracle import (
    DctOracle,
    DenseOracle,
    FrequencyOracle,
    NoiseSpec,
    OracleStats,
    add_noise_to_snr,
    dct_backed_sample,
    snr_db,
)
from .sparse_idct import DctProblem, reconstruct_x, reconstruct_x_full
from .sparse_ifft import (
    AlgorithmConfig,
    CompareMode,
    DegenerateSignalError,
    IterationState,
    Reconstruction,
    StepTrace,
    detect_support,
    find_nonzero_odd_sample,
    initial_periodization,
    reconstruct,
    recover_one_block_step,
    recover_two_block_step,
    sample_bound,
)
from .support import (
    ZERO,
    BlockVectorSpec,
    Center,
    OneBlock,
    TwoBlockFinal,
    TwoBlockReflected,
    Unstructured,
    build_y,
    check_no_cancellation,
    classify_symmetric,
    periodization_ladder,
    periodize,
    support_indices,
)
from .transforms import (
    dct2_via_fft,
    fft_radix2,
    idct_via_ifft,
    ifft_radix2,
    naive_dct2,
    naive_dct3,
    naive_dft,
)

__version__ = "0.1.0"
