"""Domain types, validation, and subset bookkeeping.

Locations are plain string labels; column order in a table is the order
of its labels. Subsets of columns are handled as 1-based index sets
(``SubsetIndex``) everywhere, including in CLI output. All types are
immutable after construction and safe to share across threads.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np

from maxdep.errors import (
    DimensionError,
    DuplicateLabelError,
    InvariantError,
    NonFiniteError,
    RangeError,
)

LocationId = str

# Any operation that enumerates all 2**k - 1 subsets is capped here so
# closed-form evaluation stays fast and small. Estimation on raw data
# never enumerates subsets and accepts any k >= 2.
MAX_SUBSET_DIMENSION = 20

_EPS_TOL = 1e-12


def _check_labels(labels: Iterable[str]) -> tuple[str, ...]:
    labs = tuple(labels)
    for lab in labs:
        if not isinstance(lab, str) or lab == "":
            raise InvariantError(f"location labels must be nonempty strings, got {lab!r}")
    if len(set(labs)) != len(labs):
        dupes = sorted({x for x in labs if labs.count(x) > 1})
        raise DuplicateLabelError(f"duplicate location labels: {dupes}")
    return labs


@dataclass(frozen=True, eq=False)
class BlockMaximaTable:
    """n observations of block maxima at k labelled locations.

    ``values`` is an (n, k) float64 matrix; column j holds the maxima
    observed at ``locations[j]``. Construction validates shape (n >= 2,
    k >= 2), label uniqueness, and finiteness, and stores a read-only
    copy of the data.
    """

    locations: tuple[LocationId, ...]
    values: np.ndarray

    def __post_init__(self):
        labs = _check_labels(self.locations)
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise DimensionError(f"values must be 2-d, got ndim={arr.ndim}")
        n, k = arr.shape
        if k < 2:
            raise DimensionError(f"at least 2 locations are required, got k={k}")
        if n < 2:
            raise DimensionError(f"at least 2 observations are required, got n={n}")
        if len(labs) != k:
            raise DimensionError(f"{len(labs)} labels for {k} columns")
        bad = ~np.isfinite(arr)
        if bad.any():
            r, c = np.argwhere(bad)[0]
            raise NonFiniteError(int(r), int(c), labs[int(c)])
        arr.setflags(write=False)
        object.__setattr__(self, "locations", labs)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def k(self) -> int:
        return self.values.shape[1]

    def position(self, label: LocationId) -> int:
        """0-based column position of a label."""
        try:
            return self.locations.index(label)
        except ValueError:
            raise KeyError(f"unknown location {label!r}") from None


def validate_table(values, labels: Iterable[str]) -> BlockMaximaTable:
    """Build a validated table from a raw (n, k) array and column labels.

    Raises DimensionError, NonFiniteError (with row and column of the
    first offender), or DuplicateLabelError. Never drops or alters data.
    """
    return BlockMaximaTable(tuple(labels), values)


@dataclass(frozen=True, eq=False)
class PseudoObservations:
    """Rank-transformed data: an (n, k) matrix with entries in (0, 1].

    Produced by ``estimators.rank_transform``; each column of a midrank
    transform is a tie-averaged permutation of {1/n, ..., n/n}. The
    constructor checks only shape and range, since the plain empirical
    CDF policy legitimately repeats values under ties.
    """

    locations: tuple[LocationId, ...]
    u: np.ndarray

    def __post_init__(self):
        labs = _check_labels(self.locations)
        arr = np.array(self.u, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise DimensionError(f"u must be 2-d, got ndim={arr.ndim}")
        n, k = arr.shape
        if k < 2 or n < 2:
            raise DimensionError(f"pseudo-observations need n >= 2 and k >= 2, got {arr.shape}")
        if len(labs) != k:
            raise DimensionError(f"{len(labs)} labels for {k} columns")
        if not ((arr > 0.0) & (arr <= 1.0)).all():
            raise InvariantError("pseudo-observations must lie in (0, 1]")
        arr.setflags(write=False)
        object.__setattr__(self, "locations", labs)
        object.__setattr__(self, "u", arr)

    @property
    def n(self) -> int:
        return self.u.shape[0]

    @property
    def k(self) -> int:
        return self.u.shape[1]


@dataclass(frozen=True)
class SubsetIndex:
    """Nonempty set of 1-based column indices, stored sorted.

    Accepts any iterable of indices; duplicates collapse. Ordering of
    instances (by size, then lexicographically) matches the canonical
    subset enumeration order used across the package.
    """

    members: tuple[int, ...]

    def __init__(self, members: Iterable[int]):
        got = sorted({int(m) for m in members})
        if not got:
            raise DimensionError("a subset must contain at least one index")
        if got[0] < 1:
            raise DimensionError(f"column indices are 1-based, got {got[0]}")
        object.__setattr__(self, "members", tuple(got))

    @classmethod
    def coerce(cls, obj: "SubsetIndex | Iterable[int]") -> "SubsetIndex":
        return obj if isinstance(obj, cls) else cls(obj)

    @property
    def size(self) -> int:
        return len(self.members)

    def positions(self) -> np.ndarray:
        """0-based column positions, for array indexing."""
        return np.asarray(self.members, dtype=np.intp) - 1

    def validate_for(self, k: int) -> None:
        if self.members[-1] > k:
            raise DimensionError(
                f"subset {self.members} references column {self.members[-1]} "
                f"but the data has k={k}"
            )

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.size, self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


def _mask_of(subset: SubsetIndex, k: int) -> int:
    subset.validate_for(k)
    m = 0
    for i in subset.members:
        m |= 1 << (i - 1)
    return m


def _subset_from_mask(mask: int) -> SubsetIndex:
    return SubsetIndex(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@lru_cache(maxsize=None)
def _ordered_masks(k: int, min_size: int = 1) -> np.ndarray:
    """Bitmasks of all subsets of {1..k} with >= min_size members, ordered
    by (size, lexicographic on the sorted member tuple)."""
    masks = []
    for size in range(min_size, k + 1):
        for combo in itertools.combinations(range(k), size):
            m = 0
            for c in combo:
                m |= 1 << c
            masks.append(m)
    return np.asarray(masks, dtype=np.int64)


def enumerate_subsets(k: int, min_size: int = 1) -> list[SubsetIndex]:
    """All subsets of {1..k} with at least ``min_size`` members.

    Deterministic order: by size, then lexicographic. Capped at
    k <= MAX_SUBSET_DIMENSION because the result has 2**k - 1 entries.
    """
    if k < 2 or k > MAX_SUBSET_DIMENSION:
        raise DimensionError(
            f"subset enumeration supports 2 <= k <= {MAX_SUBSET_DIMENSION}, got k={k}"
        )
    if min_size < 1 or min_size > k:
        raise RangeError(f"min_size must be in 1..{k}, got {min_size}")
    out = []
    for size in range(min_size, k + 1):
        for combo in itertools.combinations(range(1, k + 1), size):
            out.append(SubsetIndex(combo))
    return out


class ExtremalCoefficientSet:
    """Extremal coefficients for every nonempty subset of {1..k}.

    Stored internally as an array indexed by subset bitmask (bit j-1 set
    means index j is in the subset). Construction enforces completeness,
    singleton coefficients exactly 1, the bounds 1 <= eps_I <= |I|, and
    monotonicity under subset inclusion.
    """

    __slots__ = ("_k", "_by_mask")

    def __init__(self, k: int, eps: Mapping):
        if k < 2 or k > MAX_SUBSET_DIMENSION:
            raise DimensionError(
                f"coefficient sets support 2 <= k <= {MAX_SUBSET_DIMENSION}, got k={k}"
            )
        by_mask = np.full(1 << k, np.nan)
        seen = 0
        for key, val in eps.items():
            m = _mask_of(SubsetIndex.coerce(key), k)
            by_mask[m] = float(val)
            seen += 1
        if seen != (1 << k) - 1 or np.isnan(by_mask[1:]).any():
            raise InvariantError(
                f"need one coefficient for each of the {(1 << k) - 1} nonempty subsets"
            )
        self._k = k
        self._by_mask = by_mask
        self._validate()

    @classmethod
    def _from_mask_array(cls, k: int, by_mask: np.ndarray) -> "ExtremalCoefficientSet":
        self = object.__new__(cls)
        self._k = k
        self._by_mask = np.asarray(by_mask, dtype=np.float64)
        self._validate()
        return self

    def _validate(self) -> None:
        k, by_mask = self._k, self._by_mask
        masks = np.arange(1, 1 << k, dtype=np.int64)
        vals = by_mask[1:]
        if not np.isfinite(vals).all():
            raise InvariantError("extremal coefficients must be finite")
        sizes = np.bitwise_count(masks).astype(np.float64)
        singles = sizes == 1
        if not (vals[singles] == 1.0).all():
            raise InvariantError("singleton extremal coefficients must equal 1 exactly")
        if (vals < 1.0 - _EPS_TOL).any() or (vals > sizes + _EPS_TOL).any():
            raise InvariantError("extremal coefficients must satisfy 1 <= eps_I <= |I|")
        for b in range(k):
            bit = 1 << b
            with_b = masks[(masks & bit) != 0]
            with_b = with_b[with_b != bit]  # parent of a singleton is empty
            if (by_mask[with_b ^ bit] > by_mask[with_b] + _EPS_TOL).any():
                raise InvariantError("extremal coefficients must be monotone: I <= J implies eps_I <= eps_J")

    @property
    def k(self) -> int:
        return self._k

    def value(self, subset: SubsetIndex | Iterable[int]) -> float:
        return float(self._by_mask[_mask_of(SubsetIndex.coerce(subset), self._k)])

    def full_set_value(self) -> float:
        return float(self._by_mask[(1 << self._k) - 1])

    def items(self) -> Iterator[tuple[SubsetIndex, float]]:
        """(subset, coefficient) pairs in (size, lexicographic) order."""
        for m in _ordered_masks(self._k):
            yield _subset_from_mask(int(m)), float(self._by_mask[m])

    def __len__(self) -> int:
        return (1 << self._k) - 1


@dataclass(frozen=True)
class BootstrapInterval:
    """Percentile bootstrap interval for one subset's coefficient."""

    lower: float
    upper: float
    level: float
    replicates: int

    def __post_init__(self):
        if not 0.0 < self.level < 1.0:
            raise RangeError(f"level must be in (0, 1), got {self.level}")
        if self.replicates < 1:
            raise RangeError(f"replicates must be positive, got {self.replicates}")
        if not self.lower <= self.upper:
            raise InvariantError(f"interval bounds out of order: ({self.lower}, {self.upper})")


@dataclass(frozen=True)
class DependenceReport:
    """Estimates for one subset of locations.

    ``madogram`` and ``extremal_coefficient`` are present for pairs
    only. A percentile interval may exclude the point estimate; only
    lower <= upper is guaranteed. The coefficient of a subset of size m
    estimated from n observations always satisfies
    1 - ((m+1)/(m-1)) * ((n-1)/n) <= v_hat <= 1.
    """

    subset: SubsetIndex
    labels: tuple[str, ...]
    v_hat: float
    madogram: float | None = None
    extremal_coefficient: float | None = None
    ci: BootstrapInterval | None = None

    def __post_init__(self):
        if len(self.labels) != self.subset.size:
            raise DimensionError(
                f"{len(self.labels)} labels for a subset of size {self.subset.size}"
            )
        if not self.v_hat <= 1.0:
            raise InvariantError(f"v_hat cannot exceed 1, got {self.v_hat}")
        if (self.madogram is None) != (self.extremal_coefficient is None):
            raise InvariantError("madogram and extremal_coefficient travel together")
        if self.madogram is not None and self.subset.size != 2:
            raise DimensionError("madogram and extremal_coefficient apply to pairs only")
