"""General two-parameter robust loss: kernels, properties, IRLS/GNC fitting."""

from .analysis import curvature_bound, gradient_bound, loss_supremum, redescend_point
from .classic_losses import ClassicLossId, charbonnier, charbonnier_reparam, classic, generalized_charbonnier
from .estimation import (
    Dataset,
    FitError,
    FitReport,
    GNCSchedule,
    IRLSConfig,
    LinearModel,
    Observation,
    gnc_fit,
    irls_fit,
    make_linear_schedule,
    objective,
)
from .loss_core import (
    NEG_INF,
    InvalidInputError,
    KernelEval,
    LossParams,
    curvature,
    eval_all,
    gradient,
    power_param,
    rho,
    weight,
    z_of_alpha,
)

__version__ = "0.1.0"
