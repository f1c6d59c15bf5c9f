"""Closed-form dependence quantities and the symmetric logistic family.

The population coefficient of k locations is determined by the extremal
coefficients of all nonempty index subsets through a signed
inclusion-exclusion reduction:

    v = 1 - ((k+1)/(k-1)) * ( e_F/(1+e_F)
          - sum over nonempty I of (-1)^(|I|+1) * e_I/(1+e_I) )

with e_F the full-set coefficient and I running over every nonempty
subset, the full set included. The exchangeable logistic family with
dependence parameter alpha in (0, 1] has e_I = |I|**alpha, spans
independence (alpha = 1, v = 0) to total dependence (alpha -> 0,
v -> 1), and admits exact simulation, which makes it the ground truth
model for validating the estimators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from maxdep.core import (
    MAX_SUBSET_DIMENSION,
    ExtremalCoefficientSet,
    _ordered_masks,
)
from maxdep.errors import DimensionError, RangeError

# Closed forms are stable down to tiny alpha; the sampler is not (see
# maxdep.simulate for its own, larger floor).
MIN_ALPHA_CLOSED_FORM = 1e-6


@dataclass(frozen=True)
class LogisticModel:
    """Exchangeable logistic dependence model.

    alpha = 1 gives independent margins; alpha -> 0 approaches total
    dependence. k is the number of locations.
    """

    alpha: float
    k: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "k", int(self.k))
        if not 0.0 < self.alpha <= 1.0:
            raise RangeError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.k < 2:
            raise DimensionError(f"a dependence model needs k >= 2, got k={self.k}")


def _require_closed_form_alpha(alpha: float) -> None:
    if alpha < MIN_ALPHA_CLOSED_FORM:
        raise RangeError(
            f"closed forms accept alpha >= {MIN_ALPHA_CLOSED_FORM:g}, got {alpha}"
        )


def logistic_tail_dependence(model: LogisticModel, t) -> float:
    """Stable tail dependence function of the logistic model at t > 0.

    Returns (sum_j t_j**(1/alpha))**alpha, evaluated against the largest
    component so that tiny alpha cannot overflow. The result is
    homogeneous of order 1 and lies between max(t) and sum(t).
    """
    _require_closed_form_alpha(model.alpha)
    tv = np.asarray(t, dtype=np.float64)
    if tv.ndim != 1 or tv.shape[0] != model.k:
        raise DimensionError(f"t must be a vector of length k={model.k}")
    if not np.isfinite(tv).all() or (tv <= 0.0).any():
        raise RangeError("t must have strictly positive finite components")
    m = tv.max()
    if model.alpha == 1.0:
        return float(tv.sum())
    # (t_j/m) <= 1, so the powers cannot overflow; underflow to 0 only
    # drops terms that are negligible next to the maximal one.
    s = np.power(tv / m, 1.0 / model.alpha).sum()
    return float(m * s**model.alpha)


def logistic_extremal_coefficients(model: LogisticModel) -> ExtremalCoefficientSet:
    """Full coefficient set of the logistic model: e_I = |I|**alpha."""
    _require_closed_form_alpha(model.alpha)
    k = model.k
    if k > MAX_SUBSET_DIMENSION:
        raise DimensionError(
            f"coefficient sets support k <= {MAX_SUBSET_DIMENSION}, got k={k}"
        )
    masks = np.arange(1, 1 << k, dtype=np.int64)
    by_mask = np.empty(1 << k, dtype=np.float64)
    by_mask[0] = np.nan
    by_mask[1:] = np.bitwise_count(masks).astype(np.float64) ** model.alpha
    return ExtremalCoefficientSet._from_mask_array(k, by_mask)


# Compensated (double-double) evaluation of e/(1+e). The signed subset
# sum cancels almost completely at the independence and total-dependence
# endpoints, where plain double terms would leave an error near 1e-14 by
# k = 10; carrying each term as an exact head/tail pair and reducing
# with fsum keeps the result within a couple of ulps.

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _ratio_heads_tails(e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """e/(1+e) as head q and tail r with q + r accurate to ~eps**2."""
    dh, dl = _two_sum(1.0, e)
    q = e / dh
    p, pe = _two_prod(q, dh)
    resid = (e - p) - pe - q * dl
    return q, resid / dh


def variogram_from_extremal_coefficients(eps: ExtremalCoefficientSet) -> float:
    """Population coefficient from a complete extremal coefficient set.

    Evaluates the signed inclusion-exclusion reduction over all
    2**k - 1 subsets in (size, lexicographic) order. The value lies in
    [0, 1] for any coefficient set of a max-stable vector; float dust
    within 1e-12 of either endpoint is clipped onto it.
    """
    k = eps.k
    order = _ordered_masks(k)
    vals = eps._by_mask[order]
    sizes = np.bitwise_count(order)
    signs = np.where(sizes % 2 == 1, 1.0, -1.0)
    q, r = _ratio_heads_tails(vals)
    fq, fr = _ratio_heads_tails(np.array([eps.full_set_value()]))
    inner = math.fsum(
        [fq[0], fr[0]]
        + list(-(signs * q))
        + list(-(signs * r))
    )
    c = (k + 1) / (k - 1)
    v = 1.0 - c * inner
    if -1e-12 < v < 0.0:
        return 0.0
    if 1.0 < v < 1.0 + 1e-12:
        return 1.0
    return v


def madogram_from_tail_dependence(l_value: float) -> float:
    """Pairwise madogram from the pair's tail dependence value in [1, 2]."""
    if not 1.0 <= l_value <= 2.0:
        raise RangeError(f"a pairwise tail dependence value lies in [1, 2], got {l_value}")
    return l_value / (1.0 + l_value) - 0.5


def pairwise_variogram_from_madogram(nu: float) -> float:
    """Pairwise coefficient 1 - 6*nu from a madogram in [0, 1/6]."""
    if not 0.0 <= nu <= 1.0 / 6.0:
        raise RangeError(f"a population madogram lies in [0, 1/6], got {nu}")
    return 1.0 - 6.0 * nu


def logistic_variogram(model: LogisticModel) -> float:
    """Closed-form coefficient of the logistic model.

    Strictly decreasing in alpha for fixed k: 0 at alpha = 1 and
    approaching 1 as alpha -> 0.
    """
    return variogram_from_extremal_coefficients(logistic_extremal_coefficients(model))
