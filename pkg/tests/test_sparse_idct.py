import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsedct import (
    AlgorithmConfig,
    BlockVectorSpec,
    DctProblem,
    OneBlock,
    naive_dct2,
    naive_dct3,
    reconstruct_x,
    reconstruct_x_full,
    sample_bound,
)

CFG = AlgorithmConfig(1e-8)


def test_inner_block(inner_block_x):
    x, _ = reconstruct_x(DctProblem(naive_dct2(inner_block_x), CFG))
    assert np.allclose(x, inner_block_x, atol=1e-10)


def test_wrapped_block(wrapped_block_x):
    x, _ = reconstruct_x(DctProblem(naive_dct2(wrapped_block_x), CFG))
    assert np.allclose(x, wrapped_block_x, atol=1e-10)


def test_single_spike_at_zero():
    x = np.zeros(16)
    x[0] = 4.0
    coeffs = naive_dct2(x)
    got, _, rec = reconstruct_x_full(DctProblem(coeffs, CFG))
    assert np.allclose(got, naive_dct3(coeffs), atol=1e-10)
    assert np.allclose(got, x, atol=1e-10)
    assert isinstance(rec.support, OneBlock) and rec.support.length == 2


def test_last_entry_block():
    x = np.zeros(16)
    x[13:] = [1.0, 2.0, 3.0]
    got, _ = reconstruct_x(DctProblem(naive_dct2(x), CFG))
    assert np.allclose(got, x, atol=1e-10)


def test_problem_validation():
    with pytest.raises(ValueError):
        DctProblem(np.ones(6))
    with pytest.raises(ValueError):
        DctProblem(np.ones(1))
    with pytest.raises(ValueError):
        DctProblem(np.ones((2, 2)))
    assert DctProblem(np.ones(8)).n_exp == 4


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 9), st.data())
def test_round_trip_and_accounting(J, data):
    n = 1 << (J - 1)
    m = data.draw(st.integers(1, n - 1))
    mu = data.draw(st.integers(0, n - 1))
    vals = 10.0 - np.random.default_rng(data.draw(st.integers(0, 2**31))).uniform(0, 10, m)
    x = BlockVectorSpec(J, mu, tuple(vals)).to_vector()
    got, stats, rec = reconstruct_x_full(DctProblem(naive_dct2(x), CFG))
    assert np.max(np.abs(got - x)) <= 1e-10 * max(1.0, np.max(x))
    assert stats.distinct_indices <= rec.stats.distinct_indices
    assert stats.distinct_indices <= sample_bound(J, m)
