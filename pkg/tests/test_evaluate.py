import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sciflow.predictor.evaluate import auc, average_ranks

from oracles import auc_pairwise


def test_average_ranks_with_ties():
    np.testing.assert_allclose(
        average_ranks(np.array([10.0, 20.0, 20.0, 30.0])), [1.0, 2.5, 2.5, 4.0]
    )
    np.testing.assert_allclose(average_ranks(np.array([5.0, 5.0, 5.0])), [2.0, 2.0, 2.0])
    np.testing.assert_allclose(average_ranks(np.array([3.0, 1.0, 2.0])), [3.0, 1.0, 2.0])


def test_auc_extremes():
    assert auc([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1]) == 1.0
    assert auc([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0]) == 1.0
    assert auc([0.9, 0.8, 0.2, 0.1], [0, 0, 1, 1]) == 0.0


def test_auc_ties_count_half():
    assert auc([0.5, 0.5], [0, 1]) == 0.5
    assert auc([0.3, 0.5, 0.5, 0.7], [0, 0, 1, 1]) == pytest.approx(0.875)


def test_auc_single_class_is_none():
    assert auc([0.1, 0.9], [1, 1]) is None
    assert auc([0.1, 0.9], [0, 0]) is None


def test_auc_validates_labels():
    with pytest.raises(ValueError, match="0/1"):
        auc([0.1, 0.9], [0, 2])
    with pytest.raises(ValueError, match="length"):
        auc([0.1], [0, 1])


@given(
    st.lists(
        st.tuples(st.integers(min_value=0, max_value=20), st.integers(0, 1)),
        min_size=2,
        max_size=40,
    )
)
def test_auc_matches_pairwise_oracle(pairs):
    # integer scores make ties common
    scores = [float(s) for s, _ in pairs]
    labels = [y for _, y in pairs]
    want = auc_pairwise(scores, labels)
    got = auc(scores, labels)
    if want is None:
        assert got is None
    else:
        assert got == pytest.approx(want, abs=1e-12)
