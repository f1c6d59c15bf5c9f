"""Hot numeric kernels with a compiled fast path and a numpy fallback.

Three operations dominate the runtime of estimation and bootstrapping:
the column-wise rank transform, per-row ranges, and the fused
resample-then-rank-then-range step used by the bootstrap. Each exists
twice: in the optional compiled extension ``maxdep._speedups`` (built
from Cython) and in plain numpy below. Both versions are pinned to the
same arithmetic, element by element, so they return bit-identical
arrays; swapping backends can never change a result.

The backend is selected once at import time: the compiled one when the
extension is importable, unless the MAXDEP_PURE_PYTHON environment
variable is set. ``use_backend`` temporarily overrides the choice
(used by the benchmark and the parity tests).
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from types import SimpleNamespace

import numpy as np


def _as_matrix(values) -> np.ndarray:
    a = np.ascontiguousarray(values, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got ndim={a.ndim}")
    return a


def _column_ranks_numpy(values: np.ndarray, midrank: bool) -> np.ndarray:
    n, k = values.shape
    out = np.empty((n, k), dtype=np.float64)
    for j in range(k):
        col = values[:, j]
        srt = np.sort(col)
        hi = np.searchsorted(srt, col, side="right")
        if midrank:
            lo = np.searchsorted(srt, col, side="left")
            out[:, j] = (lo + 1 + hi) / (2.0 * n)
        else:
            out[:, j] = hi / (1.0 * n)
    return out


def _row_ranges_numpy(u: np.ndarray) -> np.ndarray:
    return u.max(axis=1) - u.min(axis=1)


def _resample_ranges_numpy(values: np.ndarray, idx: np.ndarray, midrank: bool) -> np.ndarray:
    return _row_ranges_numpy(_column_ranks_numpy(values[idx], midrank))


_PYTHON_IMPL = SimpleNamespace(
    column_ranks=_column_ranks_numpy,
    row_ranges=_row_ranges_numpy,
    resample_ranges=_resample_ranges_numpy,
    prepare_resample=lambda values: None,
    resample_ranges_prepared=lambda values, prep, idx, midrank: _resample_ranges_numpy(
        values, idx, midrank
    ),
)

try:
    from maxdep import _speedups  # type: ignore[attr-defined]

    _COMPILED_IMPL = SimpleNamespace(
        column_ranks=_speedups.column_ranks,
        row_ranges=_speedups.row_ranges,
        resample_ranges=_speedups.resample_ranges,
        prepare_resample=_speedups._column_orders,
        resample_ranges_prepared=_speedups.resample_ranges_prepared,
    )
except ImportError:
    _COMPILED_IMPL = None

_impl = _PYTHON_IMPL
_active = "python"
if _COMPILED_IMPL is not None and not os.environ.get("MAXDEP_PURE_PYTHON"):
    _impl = _COMPILED_IMPL
    _active = "compiled"


def active_backend() -> str:
    """Name of the backend in use: 'compiled' or 'python'."""
    return _active


def available_backends() -> tuple[str, ...]:
    return ("python", "compiled") if _COMPILED_IMPL is not None else ("python",)


@contextmanager
def use_backend(name: str):
    """Run a block under a specific backend ('python' or 'compiled')."""
    global _impl, _active
    if name == "python":
        impl = _PYTHON_IMPL
    elif name == "compiled":
        if _COMPILED_IMPL is None:
            raise ValueError("compiled backend is not available")
        impl = _COMPILED_IMPL
    else:
        raise ValueError(f"unknown backend {name!r}")
    old_impl, old_active = _impl, _active
    _impl, _active = impl, name
    try:
        yield
    finally:
        _impl, _active = old_impl, old_active


def column_ranks(values, midrank: bool = True) -> np.ndarray:
    """Per-column pseudo-observations of an (n, k) matrix, in (0, 1].

    With ``midrank`` tied values share the average of their tied ranks
    divided by n; otherwise each entry gets the plain empirical CDF
    value, the count of column entries <= it, divided by n.
    """
    a = _as_matrix(values)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.empty(a.shape, dtype=np.float64)
    return _impl.column_ranks(a, bool(midrank))


def row_ranges(u) -> np.ndarray:
    """Per-row max minus min of an (n, k) matrix."""
    a = _as_matrix(u)
    if a.shape[1] == 0:
        raise ValueError("row_ranges needs at least one column")
    return _impl.row_ranges(a)


def _check_idx(a: np.ndarray, idx) -> np.ndarray:
    ix = np.ascontiguousarray(idx, dtype=np.intp)
    if ix.ndim != 1:
        raise ValueError("idx must be 1-d")
    if ix.size and (ix.min() < 0 or ix.max() >= a.shape[0]):
        raise ValueError("resample index out of range")
    if a.shape[1] == 0:
        raise ValueError("resampling needs at least one column")
    return ix


def resample_ranges(values, idx, midrank: bool = True) -> np.ndarray:
    """Row ranges of the rank transform of ``values[idx]``.

    Equivalent to ``row_ranges(column_ranks(values[idx], midrank))`` but
    fused in the compiled backend. ``idx`` is a 1-d array of row indices
    into ``values`` (repeats allowed).
    """
    a = _as_matrix(values)
    ix = _check_idx(a, idx)
    if ix.size == 0:
        return np.empty(0, dtype=np.float64)
    return _impl.resample_ranges(a, ix, bool(midrank))


def prepare_resample(values):
    """Backend-specific precomputation shared by bootstrap replicates.

    The compiled backend sorts each column once here so that every
    replicate only needs a linear counting pass; the python backend has
    nothing to precompute and returns None.
    """
    return _impl.prepare_resample(_as_matrix(values))


def resample_ranges_prepared(values, prep, idx, midrank: bool = True) -> np.ndarray:
    """``resample_ranges`` using state from ``prepare_resample``.

    ``prep`` must come from the currently active backend.
    """
    a = _as_matrix(values)
    ix = _check_idx(a, idx)
    if ix.size == 0:
        return np.empty(0, dtype=np.float64)
    return _impl.resample_ranges_prepared(a, prep, ix, bool(midrank))
