"""Closed-form shape properties of rho: where it redescends and its bounds.

Unbounded quantities are reported as ``None`` rather than ``inf`` so callers
have to handle those regimes explicitly.
"""

from __future__ import annotations

import math
from typing import Optional

from .loss_core import NEG_INF, LossParams, _inv_c2


def redescend_point(params: LossParams) -> Optional[float]:
    """|x| at which the second derivative changes sign, or None for alpha >= 1."""
    alpha, c = params.alpha, params.c
    if alpha == NEG_INF:
        return c
    if alpha >= 1.0:
        return None
    return c * math.sqrt((alpha - 2.0) / (alpha - 1.0))


def loss_supremum(params: LossParams) -> Optional[float]:
    """Limit of rho as |x| -> inf for alpha < 0, else None."""
    alpha = params.alpha
    if alpha == NEG_INF:
        return 1.0
    if alpha >= 0.0:
        return None
    return (alpha - 2.0) / alpha


def gradient_bound(params: LossParams) -> Optional[float]:
    """Supremum of d rho / dx over x for alpha <= 1, else None.

    At alpha = 1 the printed expression is an indeterminate power; its limit
    is 1/c, which the alpha = 1 gradient approaches from below.
    """
    alpha, c = params.alpha, params.c
    if alpha == NEG_INF:
        return math.exp(-0.5) / c
    if alpha > 1.0:
        return None
    if alpha == 1.0:
        return 1.0 / c
    return ((alpha - 2.0) / (alpha - 1.0)) ** ((alpha - 1.0) / 2.0) / c


def curvature_bound(params: LossParams) -> Optional[float]:
    """Upper bound 1/c**2 on the second derivative, attained at x = 0.

    Usable as a diagonal (Jacobi) preconditioner entry per residual. Holds for
    alpha <= 2 only; above that the curvature grows with |x| and None is
    returned.
    """
    if params.alpha > 2.0:
        return None
    return _inv_c2(params.c)
