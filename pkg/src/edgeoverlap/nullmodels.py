"""Closed-form mean and variance of overlap under random-graph null models.

Two approximation routes are provided for every variant:

* approach 1 (``TAYLOR``): first-order Taylor expansion of the overlap
  ratio about the means of numerator and denominator, variance kept to
  the two leading terms;
* approach 2 (``FIXED_DENOMINATOR``): the denominator is replaced by its
  expectation, so the variance is just the scaled numerator variance and
  equals the first term of approach 1.

The means coincide for both approaches. All formulas are asymptotic in n;
evaluation outside their domain raises :class:`~edgeoverlap.errors.DomainError`
instead of silently extrapolating, since downstream z-scores would be
corrupted. The covariance between numerator and denominator is dropped
everywhere; ``covariance`` parameters exist as an injection hook and
default to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError

__all__ = [
    "Variant",
    "Approach",
    "NullSpec",
    "NullMoments",
    "moments",
    "unweighted_moments",
    "weighted_moments",
    "directed_moments",
    "expected_min_truncated_poisson",
    "zero_truncated_poisson_variance",
    "second_order_mean",
]

# beyond this rate the Poisson pmf recurrence underflows; use log space
_LOG_SPACE_RATE = 700.0


class Variant(Enum):
    UNWEIGHTED = "unweighted"
    WEIGHTED = "weighted"
    DIRECTED = "directed"


class Approach(Enum):
    TAYLOR = 1
    FIXED_DENOMINATOR = 2


@dataclass(frozen=True)
class NullSpec:
    """Which overlap variant, approximation route, and G(n, p) parameters."""

    variant: Variant
    approach: Approach
    n: int
    p: float

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"n must be at least 3, got {self.n}")
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {self.p}")
        if self.n * self.p <= 1.0:
            raise DomainError(
                f"average degree n*p must exceed 1, got {self.n * self.p:g}")


@dataclass(frozen=True)
class NullMoments:
    mean: float
    variance: float


def moments(spec: NullSpec, covariance: float = 0.0) -> NullMoments:
    """Dispatch to the per-variant moment formulas."""
    if spec.variant is Variant.UNWEIGHTED:
        return unweighted_moments(spec, covariance)
    if spec.variant is Variant.WEIGHTED:
        return weighted_moments(spec, covariance)
    return directed_moments(spec, covariance)


def _unweighted_denominator_mean(n: int, p: float) -> float:
    d = 2 * n * p - 2 - n * p * p
    if d <= 0:
        raise DomainError(
            "unweighted null requires 2*n*p - 2 - n*p^2 > 0 "
            f"(got {d:g} for n={n}, p={p:g})")
    return d


def unweighted_moments(spec: NullSpec, covariance: float = 0.0) -> NullMoments:
    """Overlap moments under G(n, p).

    mean = p / (2 - p); approach-2 variance is n p^2 / (2np - 2 - np^2)^2,
    approach 1 adds n^2 p^4 (2np - 2 + np^2) / (2np - 2 - np^2)^4.
    """
    _expect_variant(spec, Variant.UNWEIGHTED)
    n, p = spec.n, spec.p
    d = _unweighted_denominator_mean(n, p)
    np2 = n * p * p
    mean = p / (2 - p)
    variance = np2 / d**2
    if spec.approach is Approach.TAYLOR:
        variance += n * n * p**4 * (2 * n * p - 2 + np2) / d**4
        variance -= 2 * np2 * covariance / d**3
    return NullMoments(mean=mean, variance=variance)


def weighted_moments(spec: NullSpec, covariance: float = 0.0) -> NullMoments:
    """Overlap moments under the geometric-weight random graph.

    mean = p; approach-1 variance is (p + 1) / n, approach 2 gives
    n p^2 (p + 2) / (2 (np - 1)^2).
    """
    _expect_variant(spec, Variant.WEIGHTED)
    n, p = spec.n, spec.p
    mean = p
    if spec.approach is Approach.TAYLOR:
        variance = (p + 1) / n
        variance -= (1 - p) ** 2 * covariance / (2 * n * (n * p - 1))
    else:
        variance = n * p * p * (p + 2) / (2 * (n * p - 1) ** 2)
    return NullMoments(mean=mean, variance=variance)


def expected_min_truncated_poisson(n: int, p: float, *,
                                   cap: int | None = None) -> float:
    """Expected minimum of two iid Poisson(n*p) variables truncated at cap.

    Computed as ``sum_{k=1}^{cap} P(k <= K <= cap)^2`` with ``cap = n - 1``
    by default. The tail probabilities come from the pmf recurrence
    ``pmf(j) = pmf(j-1) * (n*p) / j`` accumulated backward; for rates above
    ~700 the recurrence runs in log space, so evaluation stays finite for
    n*p well past 2000.
    """
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p}")
    kmax = n - 1 if cap is None else int(cap)
    if kmax < 1:
        raise DomainError(f"truncation cap must be at least 1, got {kmax}")
    tail = _poisson_tail(n * p, kmax)
    # tail[k] = P(k <= K <= kmax); index 0 unused in the sum
    return float(np.sum(tail[1:] ** 2))


def _poisson_tail(rate: float, kmax: int) -> np.ndarray:
    """Array t with t[k] = P(k <= K <= kmax) for K ~ Poisson(rate)."""
    if rate <= _LOG_SPACE_RATE:
        # seeding the cumulative product with e^-rate keeps every
        # intermediate equal to an actual pmf value, so nothing overflows
        pmf = np.empty(kmax + 1)
        pmf[0] = math.exp(-rate)
        pmf[1:] = rate / np.arange(1, kmax + 1)
        np.cumprod(pmf, out=pmf)
        return np.cumsum(pmf[::-1])[::-1].copy()
    from scipy.special import gammaln
    j = np.arange(kmax + 1)
    log_pmf = -rate + j * math.log(rate) - gammaln(j + 1)
    log_tail = np.logaddexp.accumulate(log_pmf[::-1])[::-1]
    return np.exp(log_tail)


def _zero_truncated_factor(rate: float) -> float:
    """``e^r/(e^r - 1) * (1 - r/(e^r - 1))`` evaluated without overflow.

    Multiplying by ``rate`` gives the variance of a zero-truncated
    Poisson(rate); the factor itself appears in the directed formulas.
    """
    # e^r/(e^r - 1) = 1/(1 - e^-r); r/(e^r - 1) = r e^-r/(1 - e^-r)
    one_minus = -math.expm1(-rate)
    tail_ratio = rate * math.exp(-rate) / one_minus
    return (1.0 - tail_ratio) / one_minus


def zero_truncated_poisson_variance(rate: float) -> float:
    """Variance of Poisson(rate) conditioned on being >= 1."""
    return rate * _zero_truncated_factor(rate)


def directed_moments(spec: NullSpec, covariance: float = 0.0) -> NullMoments:
    """Overlap moments under the directed G(n, p).

    The denominator's expectation is ``2 E[K_(1)] - 1`` with ``E[K_(1)]``
    from :func:`expected_min_truncated_poisson`; the approach-1 variance
    adds a term built from the zero-truncated Poisson(n*p) variance, an
    upper bound that makes approach 1 deliberately conservative.
    """
    _expect_variant(spec, Variant.DIRECTED)
    n, p = spec.n, spec.p
    emin = expected_min_truncated_poisson(n, p)
    denom = 2 * emin - 1
    if denom <= 0:
        raise DomainError(
            "directed null requires 2*E[min degree] - 1 > 0 "
            f"(got {denom:g} for n={n}, p={p:g})")
    mean = n * p * p / (emin - 0.5)
    variance = 2 * n * n * p**4 / denom**2
    if spec.approach is Approach.TAYLOR:
        variance += 32 * n**3 * p**5 * _zero_truncated_factor(n * p) / denom**2
        variance -= 4 * n * p * p * covariance / denom**3
    return NullMoments(mean=mean, variance=variance)


def second_order_mean(spec: NullSpec, covariance: float = 0.0) -> float:
    """First-order mean plus the denominator-variance Taylor correction.

    The correction is O(1/n) at fixed p and vanishes as n grows; the
    numerator-denominator covariance term is excluded unless injected.
    """
    n, p = spec.n, spec.p
    if spec.variant is Variant.UNWEIGHTED:
        d = _unweighted_denominator_mean(n, p)
        np2 = n * p * p
        return (p / (2 - p) + (2 * n * p - 2 + np2) * np2 / d**3
                - covariance / d**2)
    if spec.variant is Variant.WEIGHTED:
        return (p + n * n * p**3 / (n * p - 1) ** 3
                - (1 - p) ** 2 * covariance / (4 * (n * p - 1) ** 2))
    emin = expected_min_truncated_poisson(n, p)
    denom = 2 * emin - 1
    if denom <= 0:
        raise DomainError(
            "directed null requires 2*E[min degree] - 1 > 0 "
            f"(got {denom:g} for n={n}, p={p:g})")
    correction = 16 * n * n * p**3 * _zero_truncated_factor(n * p) / denom**3
    return n * p * p / (emin - 0.5) + correction - covariance / denom**2


def _expect_variant(spec: NullSpec, expected: Variant) -> None:
    if spec.variant is not expected:
        raise DomainError(
            f"spec variant is {spec.variant.value}, expected {expected.value}")
