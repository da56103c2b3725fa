"""Maximum-likelihood estimation of activity dates.

Fits the latent-date model by full-batch gradient ascent on the
log-likelihood over ``(z, alpha, log beta, log sigma)`` with Armijo
backtracking.  The log-reparameterization keeps ``beta`` and ``sigma``
structurally positive; a fixed diagonal preconditioner rescales the
``z`` block, whose natural gradient magnitudes are orders of magnitude
smaller than the scalar parameters'.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import (
    ModelParams,
    TimestampedGraph,
    log_likelihood,
    log_likelihood_value_and_gradient,
)
from .simulation import alpha_for_density, beta_for_span


@dataclass(frozen=True)
class FitConfig:
    """Optimizer settings and initialization constants.

    The initialization constants mirror the estimation defaults: the
    date noise scale starts at 50 years (a generous agent life span),
    ``alpha`` matches the observed density at zero temporal distance,
    and ``beta`` pushes the connection probability down to
    ``epsilon_init`` at a temporal distance of ``span_init`` years.
    """

    max_iterations: int = 5000
    relative_tolerance: float = 1e-8
    initial_step: float = 1.0
    armijo_c: float = 1e-4
    backtracking_factor: float = 0.5
    max_backtracks: int = 50
    epsilon_init: float = 1e-6
    span_init: float = 100.0
    sigma_init: float = 50.0

    def __post_init__(self):
        if self.max_iterations < 1 or self.max_backtracks < 1:
            raise ValueError("iteration budgets must be positive")
        for name in ("relative_tolerance", "armijo_c", "backtracking_factor",
                     "epsilon_init"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {v!r}")
        for name in ("initial_step", "span_init", "sigma_init"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class FitResult:
    """Outcome of :func:`fit`.

    ``trace`` holds the log-likelihood at initialization followed by
    the value after each accepted ascent step; Armijo acceptance makes
    it non-decreasing.  ``converged`` is False only when the iteration
    budget ran out or no ascent step existed at the very first
    iteration.
    """

    z_hat: np.ndarray
    params_hat: ModelParams
    final_log_likelihood: float
    iterations: int
    converged: bool
    trace: np.ndarray = field(repr=False)


def local_average_init(graph):
    """Per-vertex mean of incident edge dates.

    Vertices with no incident edge fall back to the global mean edge
    date; a graph without edges yields all zeros.  This is the purely
    local baseline estimate the model is compared against.
    """
    n = graph.n
    if graph.m == 0:
        return np.zeros(n)
    sums = np.bincount(graph.edge_i, weights=graph.dates, minlength=n)
    sums += np.bincount(graph.edge_j, weights=graph.dates, minlength=n)
    deg = graph.degrees()
    z = np.full(n, graph.dates.mean())
    covered = deg > 0
    z[covered] = sums[covered] / deg[covered]
    return z


def default_param_init(graph, config=None):
    """Starting parameters derived from the observed network.

    ``sigma`` starts at ``config.sigma_init``; ``alpha`` is the logit of
    the observed density, so the zero-distance connection probability
    equals the density; ``beta`` brings the connection probability down
    to ``config.epsilon_init`` at ``config.span_init`` years.
    """
    config = config or FitConfig()
    if graph.n < 2:
        raise ValueError("need at least 2 vertices to match a density")
    if graph.m < 1:
        raise ValueError("need at least one edge (density 0 has no logit)")
    n_pairs = graph.n * (graph.n - 1) // 2
    density = graph.m / n_pairs
    if density >= 1.0:
        raise ValueError(
            "graph is complete (density 1); supply init_params explicitly"
        )
    alpha = alpha_for_density(density)
    beta = beta_for_span(alpha, config.span_init, config.epsilon_init)
    return ModelParams(alpha=alpha, beta=beta, sigma=config.sigma_init)


def _objective(graph, theta, n):
    """Log-likelihood at packed coordinates; -inf outside the domain."""
    alpha = theta[n]
    with np.errstate(over="ignore"):
        beta = np.exp(theta[n + 1])
        sigma = np.exp(theta[n + 2])
    if not (np.isfinite(beta) and np.isfinite(sigma) and beta > 0 and sigma > 0):
        return -np.inf
    # extreme trial sigmas can overflow or zero out the date term; that
    # only means the step is rejected, so keep the evaluation quiet
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        value = log_likelihood(graph, theta[:n], ModelParams(alpha, beta, sigma))
    return value if np.isfinite(value) else -np.inf


def _objective_with_gradient(graph, theta, n):
    alpha = theta[n]
    beta = np.exp(theta[n + 1])
    sigma = np.exp(theta[n + 2])
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        value, grad = log_likelihood_value_and_gradient(
            graph, theta[:n], ModelParams(alpha, beta, sigma)
        )
        g = np.empty(n + 3)
        g[:n] = grad.z
        g[n] = grad.alpha
        # chain rule through the log-reparameterization
        g[n + 1] = beta * grad.beta
        g[n + 2] = sigma * grad.sigma
    return value, g


def fit(graph, config=None, init_z=None, init_params=None):
    """Maximize the log-likelihood over activity dates and parameters.

    Starts from :func:`local_average_init` and
    :func:`default_param_init` unless explicit ``init_z`` /
    ``init_params`` are given.  Dates and activity estimates are
    centered on the mean edge date internally (the likelihood is
    shift-covariant, so this only reduces floating-point cancellation);
    results are mapped back to raw years.

    Accepted steps never decrease the objective.  Iteration stops when
    the relative objective change drops below
    ``config.relative_tolerance``, when the gradient vanishes, or when
    backtracking cannot improve a previously improved point; all three
    report ``converged=True``.  Exhausting ``config.max_iterations``,
    or failing to find any ascent step at the first iteration, reports
    ``converged=False``.  The function is deterministic.
    """
    config = config or FitConfig()
    if graph.m < 1:
        raise ValueError("fit requires at least one edge")
    if init_z is None:
        init_z = local_average_init(graph)
    else:
        init_z = np.asarray(init_z, dtype=np.float64)
        if init_z.shape != (graph.n,):
            raise ValueError("init_z length must equal the vertex count")
    if init_params is None:
        init_params = default_param_init(graph, config)

    # center on the mean edge date; shift covariance makes this exact
    mu = float(graph.dates.mean())
    centered = TimestampedGraph._from_canonical(
        graph.n, graph.edge_i, graph.edge_j, graph.dates - mu
    )

    n = graph.n
    theta = np.empty(n + 3)
    theta[:n] = init_z - mu
    theta[n] = init_params.alpha
    theta[n + 1] = np.log(init_params.beta)
    theta[n + 2] = np.log(init_params.sigma)

    # fixed diagonal preconditioner: z gradients live on a 1/sigma^2 scale
    precond = np.ones(n + 3)
    precond[:n] = config.sigma_init**2

    value, grad = _objective_with_gradient(centered, theta, n)
    trace = [value]
    converged = False
    iterations = 0
    step = config.initial_step

    for it in range(config.max_iterations):
        direction = precond * grad
        slope = float(grad @ direction)
        if not np.isfinite(slope):
            # gradient blew up at a degenerate optimum (e.g. the noise
            # scale collapsing on a zero-residual instance)
            converged = it > 0
            break
        if slope <= 0.0:
            # gradient numerically zero: already at a stationary point
            converged = True
            break
        accepted = False
        t = step
        for _ in range(config.max_backtracks + 1):
            candidate = theta + t * direction
            cand_value = _objective(centered, candidate, n)
            if cand_value >= value + config.armijo_c * t * slope:
                accepted = True
                break
            t *= config.backtracking_factor
        if not accepted:
            # no ascent step: a failure on the first iteration, numerical
            # convergence after any accepted progress
            converged = it > 0
            break
        theta = candidate
        previous = value
        value, grad = _objective_with_gradient(centered, theta, n)
        trace.append(value)
        iterations = it + 1
        step = 2.0 * t
        if abs(value - previous) / (abs(value) + 1.0) < config.relative_tolerance:
            converged = True
            break

    params_hat = ModelParams(
        alpha=float(theta[n]),
        beta=float(np.exp(theta[n + 1])),
        sigma=float(np.exp(theta[n + 2])),
    )
    return FitResult(
        z_hat=theta[:n] + mu,
        params_hat=params_hat,
        final_log_likelihood=float(value),
        iterations=iterations,
        converged=converged,
        trace=np.asarray(trace),
    )
