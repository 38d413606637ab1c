import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsedct.support import (
    ZERO,
    BlockVectorSpec,
    Center,
    OneBlock,
    TwoBlockFinal,
    TwoBlockReflected,
    Unstructured,
    block_length_estimate,
    build_y,
    check_no_cancellation,
    classify_symmetric,
    full_block,
    periodization_ladder,
    periodize,
    reflect,
    support_indices,
)


def test_reflect():
    assert reflect([1, 2, 3]).tolist() == [3, 2, 1]
    v = np.arange(7.0)
    assert np.array_equal(reflect(reflect(v)), v)


def test_build_y_examples(inner_block_x, wrapped_block_x):
    assert build_y(inner_block_x).tolist() == [0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 1, 0]
    assert build_y(wrapped_block_x).tolist() == [5, 1, 0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 0, 0, 1, 5]
    y = build_y(wrapped_block_x)
    assert np.array_equal(reflect(y), y)


def test_periodize_inner_block(inner_block_x):
    y = build_y(inner_block_x)
    assert periodize(y, 3).tolist() == [0, 1, 2, 0, 0, 2, 1, 0]
    assert periodize(y, 2).tolist() == [0, 3, 3, 0]
    assert periodize(y, 0).tolist() == [6]
    assert np.array_equal(periodize(y, 4), y)


def test_periodize_wrapped_block(wrapped_block_x):
    assert periodize(build_y(wrapped_block_x), 3).tolist() == [7, 1, 0, 0, 0, 0, 1, 7]


def test_periodize_errors():
    with pytest.raises(ValueError):
        periodize(np.ones(6), 1)
    with pytest.raises(ValueError):
        periodize(np.ones(8), 4)


def test_ladder_matches_periodize():
    y = np.random.default_rng(0).standard_normal(32)
    ladder = periodization_ladder(y)
    assert len(ladder) == 6
    for j, v in enumerate(ladder):
        assert np.allclose(v, periodize(y, j))


def test_no_cancellation(inner_block_x):
    assert check_no_cancellation(build_y(inner_block_x))
    assert check_no_cancellation(np.zeros(8))
    # +1 and -1 fold onto the same entry at level 0
    assert not check_no_cancellation(np.array([1.0, -1.0]))
    assert not check_no_cancellation(build_y(inner_block_x), epsilon=5.0)


def test_support_indices_examples():
    assert support_indices(OneBlock(1, 2, Center.MIDDLE), 2) == [1, 2]
    assert support_indices(TwoBlockReflected(1, 2, 2), 3) == [1, 2, 5, 6]
    assert support_indices(OneBlock(6, 4, Center.BOUNDARY), 3) == [0, 1, 6, 7]
    assert support_indices(ZERO, 3) == []
    assert support_indices(full_block(2), 2) == [0, 1, 2, 3]
    assert support_indices(TwoBlockFinal(3, 15, 2, 2), 4) == [0, 3, 4, 15]
    assert support_indices(Unstructured((4, 1)), 3) == [1, 4]
    with pytest.raises(TypeError):
        support_indices("nope", 2)


def test_block_length_estimate():
    assert block_length_estimate(TwoBlockReflected(1, 2, 2)) == 2
    assert block_length_estimate(OneBlock(6, 4, Center.BOUNDARY)) == 2
    assert block_length_estimate(OneBlock(3, 1, Center.MIDDLE)) == 1
    assert block_length_estimate(TwoBlockFinal(3, 15, 2, 2)) == 2
    assert block_length_estimate(Unstructured((1, 2, 5))) == 2


def test_block_spec_validation():
    with pytest.raises(ValueError):
        BlockVectorSpec(3, 0, (1.0, 2.0, 3.0, 4.0))  # m == N
    with pytest.raises(ValueError):
        BlockVectorSpec(3, 4, (1.0,))
    with pytest.raises(ValueError):
        BlockVectorSpec(3, 0, (1.0, 0.0))
    spec = BlockVectorSpec(4, 6, (1.0, 0.0, 2.0))
    assert spec.last_index == 0
    assert spec.to_vector().tolist() == [2, 0, 0, 0, 0, 0, 1, 0]


def test_classify_examples(inner_block_x, wrapped_block_x):
    y1 = build_y(inner_block_x)
    assert classify_symmetric(periodize(y1, 2), 2) == OneBlock(1, 2, Center.MIDDLE)
    assert classify_symmetric(periodize(y1, 3), 3) == TwoBlockReflected(1, 2, 2)
    y2 = build_y(wrapped_block_x)
    assert classify_symmetric(periodize(y2, 3), 3) == OneBlock(6, 4, Center.BOUNDARY)
    assert classify_symmetric(periodize(y2, 2), 2) == full_block(2)
    assert classify_symmetric(np.zeros(4), 2) == ZERO
    # final-level shape: one middle block and one boundary block
    v = np.array([1, 0, 0, 1, 1, 0, 0, 1.0])
    assert classify_symmetric(v, 3) == TwoBlockFinal(3, 7, 2, 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 9), st.data())
def test_symmetric_supports_are_blocks(J, data):
    # every periodization of a one-block y has one of the recognised shapes
    n = 1 << (J - 1)
    m = data.draw(st.integers(1, n - 1))
    mu = data.draw(st.integers(0, n - 1))
    vals = np.random.default_rng(data.draw(st.integers(0, 2**31))).uniform(0.5, 1.0, m)
    y = build_y(BlockVectorSpec(J, mu, tuple(vals)).to_vector())
    for j in range(J + 1):
        per = periodize(y, j)
        label = classify_symmetric(per, j)
        assert support_indices(label, j) == np.flatnonzero(per).tolist()
        if j < J:
            assert not isinstance(label, (Unstructured, TwoBlockFinal))
