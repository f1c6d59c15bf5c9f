import numpy as np
import pytest
from hypothesis import strategies as st

import maxdep as md


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def integer_matrices(min_n=2, max_n=25, min_k=2, max_k=5, low=-50, high=50):
    """Matrices of integer-valued floats: exact under affine maps, tie-rich."""
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.integers(min_k, max_k).flatmap(
            lambda k: st.lists(
                st.lists(st.integers(low, high), min_size=k, max_size=k),
                min_size=n,
                max_size=n,
            ).map(lambda rows: np.asarray(rows, dtype=np.float64))
        )
    )


def pseudo_matrices(min_n=2, max_n=40, min_k=2, max_k=6):
    """Arbitrary matrices with entries in (0, 1]."""
    unit = st.floats(min_value=0.0, max_value=1.0, exclude_min=True, width=64)
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.integers(min_k, max_k).flatmap(
            lambda k: st.lists(
                st.lists(unit, min_size=k, max_size=k), min_size=n, max_size=n
            ).map(lambda rows: np.asarray(rows, dtype=np.float64))
        )
    )


def labels_for(k):
    return tuple(f"C{j}" for j in range(1, k + 1))


def pseudo_obs(u):
    return md.PseudoObservations(labels_for(u.shape[1]), u)


def table_of(values):
    values = np.asarray(values, dtype=np.float64)
    return md.validate_table(values, labels_for(values.shape[1]))
