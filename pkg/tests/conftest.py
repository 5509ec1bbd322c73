import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from mhgalg.metric import MetricSpace, uniform
from mhgalg.params import INF, ParameterSequence

MAIN = ParameterSequence(3, 1, 3, 10, 11)
BIPARTITE = ParameterSequence(3, INF, 0, 8, 7)
HENSON = ParameterSequence(3, 2, 3, 10, 11, (uniform(3, 3),))
TIGHT = ParameterSequence(3, 1, 2, 10, 9)
ALL_SEQUENCES = [MAIN, BIPARTITE, HENSON, TIGHT]


@pytest.fixture
def main_params():
    return MAIN


@st.composite
def metric_spaces(draw, max_n=5, max_d=4):
    """Shortest-path closure of random positive weights: always a metric."""
    n = draw(st.integers(0, max_n))
    W = np.zeros((n, n), dtype=np.int64)
    for i, j in itertools.combinations(range(n), 2):
        W[i, j] = W[j, i] = draw(st.integers(1, max_d))
    for k in range(n):
        W = np.minimum(W, W[:, [k]] + W[[k], :])
    return MetricSpace.from_matrix(W)


@st.composite
def relabelled(draw, max_n=5, max_d=4):
    A = draw(metric_spaces(max_n, max_d))
    perm = draw(st.permutations(range(A.n)))
    return A, perm
