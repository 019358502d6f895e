"""Robust linear regression by IRLS, with alpha-annealing (GNC) on top.

Residuals are ``r_i = y_i - (X_i . coef + intercept)``. Each IRLS step solves
the weighted normal equations with ``w_i = weight(r_i, alpha, c)``. For
alpha <= 2 the loss is concave in r**2, so each step is a majorize-minimize
step and the objective does not increase.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import loss_core
from .loss_core import NEG_INF, LossParams, power_param, scale_param

logger = logging.getLogger(__name__)

# Relative slack allowed on per-iteration objective increases (alpha <= 2).
MONOTONE_SLACK = 1e-9


class FitError(RuntimeError):
    """The weighted least-squares system could not be solved."""


@dataclass(frozen=True)
class Observation:
    features: Tuple[float, ...]
    target: float


@dataclass
class Dataset:
    """Design matrix ``features`` (n, d) and ``targets`` (n,)."""

    features: np.ndarray
    targets: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.features, dtype=float)
        y = np.asarray(self.targets, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2 or y.ndim != 1:
            raise ValueError("features must be (n, d) and targets (n,)")
        if X.shape[0] == 0:
            raise ValueError("dataset is empty")
        if X.shape[0] != y.shape[0]:
            raise ValueError(f"{X.shape[0]} feature rows but {y.shape[0]} targets")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
            raise ValueError("dataset contains non-finite values")
        if X.shape[0] < X.shape[1] + 1:
            logger.warning("fewer observations (%d) than parameters (%d)", X.shape[0], X.shape[1] + 1)
        self.features, self.targets = X, y

    @classmethod
    def from_observations(cls, observations: Sequence[Observation]) -> "Dataset":
        if not observations:
            raise ValueError("dataset is empty")
        widths = {len(o.features) for o in observations}
        if len(widths) != 1:
            raise ValueError(f"observations have mixed feature lengths {sorted(widths)}")
        return cls(
            np.array([o.features for o in observations], dtype=float),
            np.array([o.target for o in observations], dtype=float),
        )

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class LinearModel:
    coefficients: Tuple[float, ...]
    intercept: float

    def __post_init__(self):
        coef = tuple(float(v) for v in np.ravel(self.coefficients))
        if not all(math.isfinite(v) for v in coef) or not math.isfinite(self.intercept):
            raise FitError("model parameters are not finite")
        object.__setattr__(self, "coefficients", coef)
        object.__setattr__(self, "intercept", float(self.intercept))

    @classmethod
    def from_vector(cls, beta: np.ndarray) -> "LinearModel":
        """Build from a stacked ``[coef..., intercept]`` vector."""
        return cls(tuple(beta[:-1]), float(beta[-1]))

    def as_vector(self) -> np.ndarray:
        return np.array(self.coefficients + (self.intercept,))


@dataclass(frozen=True)
class IRLSConfig:
    max_iters: int = 100
    param_tol: float = 1e-10
    ridge: float = 1e-12

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.param_tol > 0:
            raise ValueError("param_tol must be > 0")
        if not self.ridge >= 0:
            raise ValueError("ridge must be >= 0")


@dataclass(frozen=True)
class GNCSchedule:
    """Strictly decreasing alphas, run in order with a shared scale ``c``."""

    alphas: Tuple[float, ...]
    c: float = 1.0

    def __post_init__(self):
        alphas = tuple(power_param(a) for a in self.alphas)
        if not alphas:
            raise ValueError("schedule needs at least one alpha")
        for prev, nxt in zip(alphas, alphas[1:]):
            if not nxt < prev:
                raise ValueError(f"schedule must be strictly decreasing, got {prev} then {nxt}")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "c", scale_param(self.c))


@dataclass(frozen=True)
class StageReport:
    alpha: float
    objective: float
    iterations: int


@dataclass
class FitReport:
    model: LinearModel
    iterations: int
    final_objective: float
    converged: bool
    per_stage: List[StageReport] = field(default_factory=list)
    # Objective of the initial model followed by every accepted iterate.
    objective_history: List[float] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def _design(dataset: Dataset) -> np.ndarray:
    return np.hstack([dataset.features, np.ones((dataset.n, 1))])


def residuals(dataset: Dataset, model: LinearModel) -> np.ndarray:
    if len(model.coefficients) != dataset.d:
        raise ValueError(f"model has {len(model.coefficients)} coefficients, dataset has {dataset.d} features")
    return dataset.targets - (dataset.features @ np.array(model.coefficients) + model.intercept)


def _objective_from_residuals(r: np.ndarray, params: LossParams) -> float:
    return math.fsum(loss_core.rho(float(v), params) for v in r)


def objective(dataset: Dataset, model: LinearModel, params: LossParams) -> float:
    """Sum of rho over the model's residuals."""
    return _objective_from_residuals(residuals(dataset, model), params)


def objective_gradient(dataset: Dataset, model: LinearModel, params: LossParams) -> np.ndarray:
    """d objective / d [coef..., intercept] via the chain rule on psi."""
    r = residuals(dataset, model)
    psi = np.array([loss_core.gradient(float(v), params) for v in r])
    return -(_design(dataset).T @ psi)


def _weighted_solve(A: np.ndarray, y: np.ndarray, w: np.ndarray, ridge: float) -> np.ndarray:
    AtW = A.T * w
    normal = AtW @ A
    p = normal.shape[0]
    normal[np.diag_indices(p)] += ridge * np.trace(normal) / p
    try:
        beta = np.linalg.solve(normal, AtW @ y)
    except np.linalg.LinAlgError as exc:
        raise FitError(
            f"weighted normal equations are singular (trace={np.trace(normal):.3g}, "
            f"min weight={w.min():.3g}); {exc}"
        ) from None
    if not np.all(np.isfinite(beta)):
        raise FitError("weighted least-squares solution is not finite")
    return beta


def ols(dataset: Dataset, ridge: float = 0.0) -> LinearModel:
    """Ordinary least squares, optionally with the same relative ridge."""
    return LinearModel.from_vector(
        _weighted_solve(_design(dataset), dataset.targets, np.ones(dataset.n), ridge)
    )


def irls_fit(
    dataset: Dataset,
    params: LossParams,
    config: IRLSConfig = IRLSConfig(),
    init: Optional[LinearModel] = None,
) -> FitReport:
    """Minimize the summed loss by iteratively reweighted least squares.

    Starts from ``init`` or the OLS solution and stops once the max-norm
    parameter change drops below ``config.param_tol``.
    """
    A = _design(dataset)
    y = dataset.targets
    model = init if init is not None else ols(dataset, config.ridge)
    beta = model.as_vector()
    if beta.shape[0] != A.shape[1]:
        raise ValueError(f"init has {beta.shape[0] - 1} coefficients, dataset has {dataset.d} features")

    warnings: List[str] = []
    if params.alpha > 2:
        warnings.append(f"alpha={params.alpha:g} > 2: weights grow with |residual| (anti-robust)")

    r = y - A @ beta
    history = [_objective_from_residuals(r, params)]
    converged = False
    iterations = 0
    for iterations in range(1, config.max_iters + 1):
        w = np.array([loss_core.weight(float(v), params) for v in r])
        new_beta = _weighted_solve(A, y, w, config.ridge)
        step = float(np.max(np.abs(new_beta - beta)))
        beta = new_beta
        r = y - A @ beta
        obj = _objective_from_residuals(r, params)
        prev = history[-1]
        if obj > prev + MONOTONE_SLACK * max(abs(prev), 1e-300):
            msg = f"iteration {iterations}: objective rose from {prev!r} to {obj!r}"
            if params.alpha <= 2:
                logger.warning(msg)
            warnings.append(msg)
        history.append(obj)
        if step < config.param_tol:
            converged = True
            break

    model = LinearModel.from_vector(beta)
    return FitReport(
        model=model,
        iterations=iterations,
        final_objective=objective(dataset, model, params),
        converged=converged,
        objective_history=history,
        warnings=warnings,
    )


def gnc_fit(dataset: Dataset, schedule: GNCSchedule, config: IRLSConfig = IRLSConfig()) -> FitReport:
    """Run IRLS once per alpha in ``schedule``, warm-starting each stage."""
    model: Optional[LinearModel] = None  # first stage starts from OLS
    stages: List[StageReport] = []
    history: List[float] = []
    warnings: List[str] = []
    total_iters = 0
    report = None
    for alpha in schedule.alphas:
        params = LossParams(alpha, schedule.c)
        try:
            report = irls_fit(dataset, params, config, init=model)
        except (FitError, ValueError) as exc:
            raise type(exc)(f"GNC stage alpha={alpha:g}: {exc}") from exc
        model = report.model
        total_iters += report.iterations
        stages.append(StageReport(alpha, report.final_objective, report.iterations))
        history.extend(report.objective_history)
        warnings.extend(f"alpha={alpha:g}: {w}" for w in report.warnings)
    return FitReport(
        model=model,
        iterations=total_iters,
        final_objective=report.final_objective,
        converged=report.converged,
        per_stage=stages,
        objective_history=history,
        warnings=warnings,
    )


def make_linear_schedule(alpha_target: float, steps: int, c: float = 1.0) -> GNCSchedule:
    """Anneal alpha linearly from 2 down to ``alpha_target``.

    For a finite target the schedule has ``steps`` evenly spaced values from 2
    to the target (just the target when ``steps == 1``). For ``-inf`` it
    descends linearly from 2 to -16 over ``steps - 1`` values and then
    appends ``-inf``.
    """
    alpha_target = power_param(alpha_target)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if alpha_target >= 2:
        raise ValueError(f"alpha_target must be < 2, got {alpha_target}")
    if alpha_target == NEG_INF:
        k = steps - 1
        if k == 0:
            head: List[float] = []
        elif k == 1:
            head = [2.0]
        else:
            head = [2.0 - 18.0 * i / (k - 1) for i in range(k)]
        return GNCSchedule(tuple(head) + (NEG_INF,), c)
    if steps == 1:
        return GNCSchedule((alpha_target,), c)
    span = 2.0 - alpha_target
    alphas = [2.0 - span * k / (steps - 1) for k in range(steps - 1)]
    return GNCSchedule(tuple(alphas) + (alpha_target,), c)
