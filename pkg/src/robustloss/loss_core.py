"""Scalar kernels for the two-parameter robust loss rho(x, alpha, c).

The shape parameter ``alpha`` is a float that may be ``NEG_INF``; ``c`` is a
positive scale in the units of ``x``. Three branches are evaluated:

* ``alpha == 0``: Cauchy / Lorentzian, ``log(0.5 * (x/c)**2 + 1)``
* ``alpha == NEG_INF``: Welsch / Leclerc, ``1 - exp(-0.5 * (x/c)**2)``
* otherwise: ``z/alpha * (((x/c)**2 / z + 1)**(alpha/2) - 1)`` with
  ``z = max(1, 2 - alpha)``

The general branch is computed as ``z/alpha * expm1(alpha/2 * log1p(u))``
with ``u = (x/c)**2 / z`` so that it stays accurate for small ``|alpha|`` and
small ``|x/c|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

NEG_INF = -math.inf

# Above this |x/c| the squared ratio is formed in log space.
_LOG_SPACE_RATIO = 1e150


class InvalidInputError(ValueError):
    """Raised for NaN/infinite residuals or invalid loss parameters."""


def power_param(value: Union[float, int, str]) -> float:
    """Validate (and parse, for strings) a shape parameter.

    Accepts any finite real or negative infinity. Strings are parsed
    case-insensitively, so ``"-inf"``, ``"-Inf"`` and ``"-infinity"`` all map
    to ``NEG_INF``.
    """
    if isinstance(value, str):
        try:
            alpha = float(value.strip())
        except ValueError:
            raise InvalidInputError(f"cannot parse alpha from {value!r}") from None
    else:
        alpha = float(value)
    if math.isnan(alpha):
        raise InvalidInputError("alpha must not be NaN")
    if alpha == math.inf:
        raise InvalidInputError("alpha must not be +inf")
    return alpha


def scale_param(value: Union[float, int, str]) -> float:
    c = float(value)
    if not (math.isfinite(c) and c > 0.0):
        raise InvalidInputError(f"scale c must be finite and > 0, got {value!r}")
    return c


@dataclass(frozen=True)
class LossParams:
    """Shape ``alpha`` and scale ``c`` of the loss."""

    alpha: float
    c: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", power_param(self.alpha))
        object.__setattr__(self, "c", scale_param(self.c))


@dataclass(frozen=True)
class KernelEval:
    value: float
    gradient: float
    weight: float
    curvature: float
    # True when the loss (or a derivative) overflowed to +/-inf.
    saturated: bool = False


def z_of_alpha(alpha: float) -> float:
    """Return ``max(1, 2 - alpha)``; undefined for ``NEG_INF``."""
    if alpha == NEG_INF:
        raise ValueError("z_of_alpha is not defined for alpha = -inf")
    return max(1.0, 2.0 - alpha)


def _check_x(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInputError(f"x must be finite, got {x!r}")
    return x


def _safe_exp(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def _log1p_u(t: float, z: float) -> float:
    """log1p(t**2 / z) for t = |x/c| >= 0, without overflowing t**2."""
    if t > _LOG_SPACE_RATIO:
        return 2.0 * math.log(t) - math.log(z)
    return math.log1p(t * t / z)


def _inv_c2(c: float) -> float:
    return (1.0 / c) / c


def rho(x: float, params: LossParams) -> float:
    """Loss value; +inf when it exceeds the float range (alpha > 2 only)."""
    x = _check_x(x)
    alpha, c = params.alpha, params.c
    t = abs(x) / c
    if alpha == 0.0:
        return math.log1p(0.5 * t * t)
    if alpha == NEG_INF:
        return -math.expm1(-0.5 * t * t)
    if alpha == 2.0:
        # exact reduction of the general branch; avoids expm1(log1p(.)) rounding
        return 0.5 * t * t
    z = z_of_alpha(alpha)
    log1p_u = _log1p_u(t, z)
    v = 0.5 * alpha * log1p_u
    scale = z / alpha
    try:
        if math.isfinite(scale):
            return scale * math.expm1(v)
        # subnormal alpha: regroup as z * (log1p_u / 2) * expm1(v)/v
        return z * (0.5 * log1p_u) * (math.expm1(v) / v if v != 0.0 else 1.0)
    except OverflowError:
        return math.inf


def weight(x: float, params: LossParams) -> float:
    """IRLS weight ``psi(x) / x`` from its closed form (defined at x = 0)."""
    x = _check_x(x)
    alpha, c = params.alpha, params.c
    t = abs(x) / c
    if alpha == 0.0:
        # 2 / (x**2 + 2c**2) written in units of c
        return _inv_c2(c) / (0.5 * t * t + 1.0)
    if alpha == NEG_INF:
        return _inv_c2(c) * math.exp(-0.5 * t * t)
    if alpha == 2.0:
        return _inv_c2(c)
    z = z_of_alpha(alpha)
    return _inv_c2(c) * _safe_exp((0.5 * alpha - 1.0) * _log1p_u(t, z))


def gradient(x: float, params: LossParams) -> float:
    """d rho / dx, formed as ``x * weight(x)`` so the two agree exactly."""
    return _check_x(x) * weight(x, params)


def _curvature_factor(t: float, alpha: float) -> float:
    """Ratio curvature / weight for each branch, with u = t**2 / z.

    General branch: psi = (x/c**2) * B**(a/2 - 1), B = 1 + u. Then
        psi' = B**(a/2 - 2) / c**2 * (B + (a - 2) u)
             = weight * (1 + (a - 1) u) / (1 + u).
    alpha = 0 is the same expression with z = 2; alpha = -inf gives
        psi' = weight * (1 - (x/c)**2).
    """
    if alpha == NEG_INF:
        return 1.0 - t * t
    z = z_of_alpha(alpha)
    if t > _LOG_SPACE_RATIO:
        return alpha - 1.0
    u = t * t / z
    if u <= 1.0:
        return (1.0 + (alpha - 1.0) * u) / (1.0 + u)
    # same quantity, finite as u -> inf
    return (alpha - 1.0) + (2.0 - alpha) / (1.0 + u)


def curvature(x: float, params: LossParams) -> float:
    """Second derivative d^2 rho / dx^2; equals 1/c**2 at x = 0."""
    x = _check_x(x)
    w = weight(x, params)
    factor = _curvature_factor(abs(x) / params.c, params.alpha)
    if w == 0.0:
        # underflowed tail; the Welsch factor may be -inf here
        return 0.0
    if w == math.inf:
        return math.copysign(math.inf, factor) if factor != 0.0 else 0.0
    return w * factor


def eval_all(x: float, params: LossParams) -> KernelEval:
    x = _check_x(x)
    value = rho(x, params)
    w = weight(x, params)
    g = x * w
    curv = curvature(x, params)
    saturated = any(math.isinf(v) for v in (value, w, g, curv))
    return KernelEval(value=value, gradient=g, weight=w, curvature=curv, saturated=saturated)
