"""Closed forms of the classical losses that rho reduces to.

These are written independently of :mod:`robustloss.loss_core` and serve as
reference oracles for it.
"""

from __future__ import annotations

import enum
import math

from .loss_core import InvalidInputError


class ClassicLossId(enum.Enum):
    CHARBONNIER = "charbonnier"
    CHARBONNIER_REPARAM = "charbonnier_reparam"
    GENERALIZED_CHARBONNIER = "generalized_charbonnier"
    L2_HALF_SCALED = "l2_half_scaled"
    L1_ASYMPTOTE = "l1_asymptote"
    CAUCHY = "cauchy"
    GEMAN_MCCLURE = "geman_mcclure"
    WELSCH = "welsch"


def _check(x, c):
    if not math.isfinite(x):
        raise InvalidInputError(f"x must be finite, got {x!r}")
    if not (math.isfinite(c) and c > 0):
        raise InvalidInputError(f"c must be finite and > 0, got {c!r}")


def charbonnier(x: float, c: float) -> float:
    """sqrt(x**2 + c**2)."""
    _check(x, c)
    return math.sqrt(x * x + c * c)


def charbonnier_reparam(x: float, c: float) -> float:
    """The L1-L2 / pseudo-Huber form c * sqrt((x/c)**2 + 1)."""
    _check(x, c)
    t = x / c
    return c * math.sqrt(t * t + 1.0)


def generalized_charbonnier(x: float, alpha: float, c: float) -> float:
    """((x/c)**2 + 1) ** (alpha/2), invariant under (x, c) -> (kx, kc)."""
    _check(x, c)
    if not math.isfinite(alpha):
        raise InvalidInputError(f"alpha must be finite, got {alpha!r}")
    t = x / c
    return (t * t + 1.0) ** (alpha / 2.0)


def classic(loss_id: ClassicLossId, x: float, c: float) -> float:
    """Evaluate one of the single-scale classical forms.

    GENERALIZED_CHARBONNIER needs a power and is only reachable through
    :func:`generalized_charbonnier`.
    """
    _check(x, c)
    t = x / c
    sq = t * t
    if loss_id is ClassicLossId.L2_HALF_SCALED:
        return 0.5 * sq
    if loss_id is ClassicLossId.L1_ASYMPTOTE:
        return abs(t) - 1.0
    if loss_id is ClassicLossId.CAUCHY:
        return math.log(0.5 * sq + 1.0)
    if loss_id is ClassicLossId.GEMAN_MCCLURE:
        return 2.0 * sq / (sq + 4.0)
    if loss_id is ClassicLossId.WELSCH:
        return 1.0 - math.exp(-0.5 * sq)
    if loss_id is ClassicLossId.CHARBONNIER:
        return charbonnier(x, c)
    if loss_id is ClassicLossId.CHARBONNIER_REPARAM:
        return charbonnier_reparam(x, c)
    raise ValueError(f"{loss_id} requires a power parameter; use generalized_charbonnier")
