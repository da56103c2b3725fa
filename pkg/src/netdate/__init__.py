"""netdate: activity-date estimation in timestamped interaction networks.

A latent-date random graph model links agents whose activity dates are
close and stamps each interaction with a date near the agents' activity
midpoint.  The package fits the model to an observed network by
maximum likelihood, simulates ground-truthed networks under ideal,
misspecified and rewired regimes, and scores model estimates against
the local-average baseline.
"""

from .estimation import FitConfig, FitResult, default_param_init, fit, local_average_init
from .evaluation import (
    ExperimentRecord,
    SmoothedCurve,
    improvement,
    improvement_curve,
    kernel_smooth,
    mse,
    positive_crossing,
    run_experiment,
)
from .model import (
    LogLikelihoodGradient,
    ModelParams,
    TimestampedGraph,
    connection_probability,
    date_log_density,
    log_likelihood,
    log_likelihood_gradient,
    log_likelihood_value_and_gradient,
)
from .simulation import (
    SimConfig,
    SimOutput,
    alpha_for_density,
    beta_for_span,
    generate,
    largest_connected_component,
    rewire,
    sample_dates,
    sample_edges,
)

__version__ = "0.1.0"

__all__ = [
    "ExperimentRecord",
    "FitConfig",
    "FitResult",
    "LogLikelihoodGradient",
    "ModelParams",
    "SimConfig",
    "SimOutput",
    "SmoothedCurve",
    "TimestampedGraph",
    "alpha_for_density",
    "beta_for_span",
    "connection_probability",
    "date_log_density",
    "default_param_init",
    "fit",
    "generate",
    "improvement",
    "improvement_curve",
    "kernel_smooth",
    "largest_connected_component",
    "local_average_init",
    "log_likelihood",
    "log_likelihood_gradient",
    "log_likelihood_value_and_gradient",
    "mse",
    "positive_crossing",
    "rewire",
    "run_experiment",
    "sample_dates",
    "sample_edges",
]
