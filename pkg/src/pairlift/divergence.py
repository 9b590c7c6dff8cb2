"""f-divergences and the original-GAN objective over finite-support distributions.

These replace the continuous integrals with exact sums over a finite outcome
set, which makes the identities (nonnegativity, zero at equality, the
Jensen-Shannon connection of the GAN objective) directly testable. Natural
logarithms throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InvalidMassMove, SupportMismatch, UndefinedLimit

_CONVEXITY_GRID = np.concatenate([np.linspace(0.05, 1.0, 12),
                                  np.linspace(1.0, 6.0, 12)])


@dataclass(frozen=True)
class DiscreteDistribution:
    """A probability vector over an explicit finite support."""

    support: tuple
    probs: np.ndarray

    def __init__(self, support, probs):
        object.__setattr__(self, "support", tuple(support))
        p = np.asarray(probs, dtype=np.float64)
        if p.ndim != 1 or len(p) != len(self.support):
            raise ValueError("probs must be 1-D and match the support length")
        if p.size and p.min() < 0:
            raise ValueError(f"negative probability: {p.min()}")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {p.sum()}, not 1")
        object.__setattr__(self, "probs", p)

    def __getitem__(self, outcome):
        return float(self.probs[self.support.index(outcome)])


@dataclass(frozen=True)
class ConvexGenerator:
    """A convex function f with f(1) = 0, plus its declared limit rules.

    ``value_at_zero`` is lim_{t->0+} f(t) (used for outcomes where the fake
    distribution has no mass) and ``slope_at_infinity`` is lim_{t->inf} f(t)/t
    (used where the data distribution has no mass: the term p*f(q/p)
    converges to q * slope_at_infinity). Either may be ``math.inf``; ``None``
    means undeclared, and evaluating the corresponding case raises
    UndefinedLimit.
    """

    f: Callable[[float], float]
    name: str
    value_at_zero: Optional[float] = None
    slope_at_infinity: Optional[float] = None

    def __post_init__(self):
        if abs(self.f(1.0)) > 1e-12:
            raise ValueError(f"{self.name}: f(1) = {self.f(1.0)}, must be 0")
        g = _CONVEXITY_GRID
        for x in g[::3]:
            for y in g[::3]:
                mid = self.f((x + y) / 2.0)
                if mid > (self.f(x) + self.f(y)) / 2.0 + 1e-9:
                    raise ValueError(
                        f"{self.name}: midpoint convexity fails at ({x}, {y})")


def _check_supports(p_data, p_fake):
    if p_data.support != p_fake.support:
        raise SupportMismatch(
            f"supports differ: {p_data.support} vs {p_fake.support}")


def f_divergence(p_data: DiscreteDistribution, p_fake: DiscreteDistribution,
                 gen: ConvexGenerator) -> float:
    """Sum over outcomes of p_data(x) * f(p_fake(x) / p_data(x)).

    Zero-mass conventions: an outcome with p_data = p_fake = 0 contributes
    nothing; p_fake = 0 uses f's value at 0; p_data = 0 uses the declared
    slope at infinity.
    """
    _check_supports(p_data, p_fake)
    total = 0.0
    for p, q in zip(p_data.probs, p_fake.probs):
        if p == 0.0 and q == 0.0:
            continue
        if p == 0.0:
            if gen.slope_at_infinity is None:
                raise UndefinedLimit(
                    f"{gen.name} declares no limit for p_data -> 0")
            total += q * gen.slope_at_infinity
        elif q == 0.0:
            if gen.value_at_zero is None:
                raise UndefinedLimit(
                    f"{gen.name} declares no value at t = 0")
            total += p * gen.value_at_zero
        else:
            total += p * gen.f(q / p)
    return total


def gan_objective(p_data: DiscreteDistribution, p_fake: DiscreteDistribution) -> float:
    """The original-GAN minimization target at the optimal discriminator.

    Sum of log(2p/(p+q)) * p + log(2q/(p+q)) * q over outcomes, with the
    convention 0 * log(.) = 0. Equals twice the Jensen-Shannon divergence,
    hence bounded by [0, 2 log 2], zero exactly at p = q.
    """
    _check_supports(p_data, p_fake)
    total = 0.0
    for p, q in zip(p_data.probs, p_fake.probs):
        m = p + q
        if m == 0.0:
            continue
        if p > 0.0:
            total += p * math.log(2.0 * p / m)
        if q > 0.0:
            total += q * math.log(2.0 * q / m)
    return total


def pointwise_gap_monotonicity_check(p_data: DiscreteDistribution,
                                     p_fake: DiscreteDistribution,
                                     x, delta: float):
    """Move ``delta`` of fake mass toward p_data at outcome ``x`` and report
    the GAN objective before and after.

    The donated mass comes from (or goes to) the single outcome with the
    largest opposite-signed gap. The move may close the gap at ``x`` exactly
    but must not overshoot past it; a move that would overshoot, leave the
    simplex, or start from delta < 0 raises InvalidMassMove.
    """
    _check_supports(p_data, p_fake)
    if x not in p_data.support:
        raise InvalidMassMove(f"outcome {x!r} not in support")
    if delta < 0:
        raise InvalidMassMove(f"delta must be >= 0, got {delta}")

    before = gan_objective(p_data, p_fake)
    if delta == 0.0:
        return before, before

    idx = p_data.support.index(x)
    gap = p_data.probs[idx] - p_fake.probs[idx]
    if abs(gap) + 1e-12 < delta:
        raise InvalidMassMove(
            f"delta {delta} overshoots the gap {gap} at outcome {x!r}")

    direction = 1.0 if gap > 0 else -1.0
    surplus = (p_fake.probs - p_data.probs) * direction
    surplus[idx] = -np.inf
    donor = int(np.argmax(surplus))
    new_probs = p_fake.probs.copy()
    new_probs[idx] += direction * delta
    new_probs[donor] -= direction * delta
    if new_probs.min() < -1e-12 or new_probs.max() > 1.0 + 1e-12:
        raise InvalidMassMove("move leaves the probability simplex")
    new_fake = DiscreteDistribution(p_fake.support, np.clip(new_probs, 0.0, 1.0))
    after = gan_objective(p_data, new_fake)
    return before, after


def _f_kl(t):
    return t * math.log(t)


def _f_reverse_kl(t):
    return -math.log(t)


def _f_total_variation(t):
    return 0.5 * abs(t - 1.0)


def _f_jensen_shannon(t):
    return 0.5 * (t * math.log(t) - (1.0 + t) * math.log((1.0 + t) / 2.0))


#: f(t) = t ln t. Plugged into f_divergence(p_data, p_fake, .) this yields
#: KL(p_fake || p_data). The term p*f(q/p) diverges as p -> 0 with q fixed.
KL = ConvexGenerator(_f_kl, "kl", value_at_zero=0.0,
                     slope_at_infinity=math.inf)

#: f(t) = -ln t, yielding KL(p_data || p_fake).
REVERSE_KL = ConvexGenerator(_f_reverse_kl, "reverse_kl",
                             value_at_zero=math.inf, slope_at_infinity=0.0)

#: f(t) = |t - 1| / 2, the total-variation distance.
TOTAL_VARIATION = ConvexGenerator(_f_total_variation, "total_variation",
                                  value_at_zero=0.5, slope_at_infinity=0.5)

#: Jensen-Shannon generator; f_divergence with it equals JS(p_data, p_fake).
JENSEN_SHANNON = ConvexGenerator(_f_jensen_shannon, "jensen_shannon",
                                 value_at_zero=0.5 * math.log(2.0),
                                 slope_at_infinity=0.5 * math.log(2.0))

GENERATORS = {g.name: g for g in (KL, REVERSE_KL, TOTAL_VARIATION, JENSEN_SHANNON)}
