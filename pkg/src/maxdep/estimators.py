"""Rank-based estimation of the dependence coefficients.

Everything here works on pseudo-observations: each column of the raw
table is replaced by its empirical CDF values, which makes every
estimate invariant under strictly increasing transformations of any
single column. The subset coefficient of pseudo-observations u is

    v_hat = 1 - ((m+1)/(m-1)) * mean_i( max_j u_ij - min_j u_ij )

with m the subset size and j running over the subset columns. The
statistic is not clipped: it can drop below 0 in small samples even
though the population value lies in [0, 1].
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from maxdep import kernels
from maxdep.core import (
    BlockMaximaTable,
    PseudoObservations,
    SubsetIndex,
)
from maxdep.errors import DimensionError, RangeError

TIE_MIDRANK = "midrank"
TIE_FIRST_OCCURRENCE = "first-occurrence"

MIN_BOOTSTRAP_REPLICATES = 100

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class EstimationOptions:
    """Estimation knobs. ``tie_policy`` decides how rank ties are scored.

    midrank (default): tied values share the average of their tied
    ranks, which keeps every column mean at (n+1)/(2n).
    first-occurrence: the plain empirical CDF, where every member of a
    tie block scores the full count of values <= it.
    """

    tie_policy: str = TIE_MIDRANK

    def __post_init__(self):
        if self.tie_policy not in (TIE_MIDRANK, TIE_FIRST_OCCURRENCE):
            raise RangeError(
                f"tie_policy must be {TIE_MIDRANK!r} or {TIE_FIRST_OCCURRENCE!r}, "
                f"got {self.tie_policy!r}"
            )

    @property
    def midrank(self) -> bool:
        return self.tie_policy == TIE_MIDRANK


def rank_transform(
    table: BlockMaximaTable, options: EstimationOptions = EstimationOptions()
) -> PseudoObservations:
    """Column-wise empirical CDF transform of a table, entries in (0, 1].

    Entry (i, j) under first-occurrence is (count of rows i' in column j
    with value <= value at i) / n; under midrank, tied blocks share
    their average rank over n. Larger raw values never map to smaller
    pseudo-values within a column.
    """
    u = kernels.column_ranks(table.values, midrank=options.midrank)
    return PseudoObservations(table.locations, u)


def _subset_scale(m: int) -> float:
    return (m + 1) / (m - 1)


def _check_subset(pseudo: PseudoObservations, subset, min_size: int = 2) -> SubsetIndex:
    sub = SubsetIndex.coerce(subset)
    if sub.size < min_size:
        raise DimensionError(f"subset {sub} has {sub.size} members, need >= {min_size}")
    sub.validate_for(pseudo.k)
    return sub


def empirical_variogram(pseudo: PseudoObservations, subset) -> float:
    """Subset coefficient from pseudo-observations: 1 at comonotone
    columns, near 0 at independence, possibly negative in small samples.
    """
    sub = _check_subset(pseudo, subset)
    ranges = kernels.row_ranges(pseudo.u[:, sub.positions()])
    return float(1.0 - _subset_scale(sub.size) * ranges.mean())


def empirical_variogram_via_pairs(pseudo: PseudoObservations, subset) -> float:
    """Same coefficient through the maximal pairwise gap per row.

    The per-row range equals the largest absolute difference over
    column pairs, so this must agree with ``empirical_variogram`` to
    within 1e-12 on any input. It exists as an independent computation
    path for checking, and deliberately avoids the shared kernels.
    """
    sub = _check_subset(pseudo, subset)
    cols = pseudo.u[:, sub.positions()]
    best = np.zeros(pseudo.n)
    for a, b in itertools.combinations(range(sub.size), 2):
        np.maximum(best, np.abs(cols[:, a] - cols[:, b]), out=best)
    return float(1.0 - _subset_scale(sub.size) * best.mean())


def empirical_madogram(pseudo: PseudoObservations, pair) -> float:
    """Half the mean absolute difference of a pair's pseudo-observations.

    Lies in [0, (n-1)/(2n)]; 0 exactly for comonotone columns. For a
    pair, the coefficient satisfies v_hat = 1 - 6 * madogram.
    """
    sub = _check_subset(pseudo, pair)
    if sub.size != 2:
        raise DimensionError(f"the madogram is pairwise, got subset {sub}")
    a, b = sub.positions()
    return 0.5 * float(np.mean(np.abs(pseudo.u[:, a] - pseudo.u[:, b])))


def extremal_coefficient_from_madogram(nu: float) -> float:
    """Invert the madogram relation to the pairwise extremal coefficient.

    Returns (1/2 + nu) / (1/2 - nu), which is >= 1 for nu >= 0. The
    inversion is singular at nu = 1/2; empirical madograms stay below
    it because they are bounded by (n-1)/(2n).
    """
    if not 0.0 <= nu < 0.5:
        raise RangeError(f"madogram must lie in [0, 1/2), got {nu}")
    return (0.5 + nu) / (0.5 - nu)


def _replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    # Fixed splitting rule: replicate r uses PCG64 seeded with
    # SeedSequence(seed, spawn_key=(r,)), so results do not depend on
    # execution order and replicates may run in parallel.
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(replicate,)))


def bootstrap_variogram(
    table: BlockMaximaTable,
    subset,
    replicates: int,
    level: float = 0.95,
    seed: int = 0,
    options: EstimationOptions = EstimationOptions(),
) -> tuple[float, float]:
    """Percentile bootstrap interval for a subset coefficient.

    Resamples whole rows with replacement and re-rank-transforms every
    resample, since the rank transform is part of the estimator. The
    interval is the (1-level)/2 and (1+level)/2 quantiles of the
    replicate statistics. Deterministic for a fixed seed; see
    ``_replicate_rng`` for the per-replicate seeding rule.
    """
    if replicates < MIN_BOOTSTRAP_REPLICATES:
        raise RangeError(
            f"need at least {MIN_BOOTSTRAP_REPLICATES} replicates, got {replicates}"
        )
    if not 0.0 < level < 1.0:
        raise RangeError(f"level must be in (0, 1), got {level}")
    if not 0 <= seed <= MAX_SEED:
        raise RangeError(f"seed must fit in 64 unsigned bits, got {seed}")
    sub = SubsetIndex.coerce(subset)
    if sub.size < 2:
        raise DimensionError(f"subset {sub} has {sub.size} members, need >= 2")
    sub.validate_for(table.k)

    values = np.ascontiguousarray(table.values[:, sub.positions()])
    prep = kernels.prepare_resample(values)
    scale = _subset_scale(sub.size)
    n = table.n
    stats = np.empty(replicates)
    for r in range(replicates):
        idx = _replicate_rng(seed, r).integers(0, n, size=n)
        ranges = kernels.resample_ranges_prepared(values, prep, idx, midrank=options.midrank)
        stats[r] = 1.0 - scale * ranges.mean()
    lo = (1.0 - level) / 2.0
    qs = np.quantile(stats, [lo, 1.0 - lo], method="linear")
    return float(qs[0]), float(qs[1])
