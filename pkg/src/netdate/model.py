"""Latent activity-date model for timestamped interaction networks.

An undirected simple graph records dated interactions between agents.
Each vertex carries an unobserved activity date ``z_i`` (in years); a
pair of vertices is connected with logistic probability

    P(edge between i and j) = sigmoid(alpha - beta * (z_i - z_j)**2)

and, when connected, the interaction date is Gaussian around the
midpoint ``(z_i + z_j) / 2`` with scale ``sigma``.  This module defines
the graph and parameter containers and evaluates the log-likelihood of
observed data together with its exact analytic gradient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit


class TimestampedGraph:
    """Undirected simple graph with one interaction date per edge.

    Vertices are the integers ``0..n-1``.  Edges are stored canonically:
    endpoint arrays satisfy ``edge_i < edge_j`` and edges are sorted
    lexicographically, so two graphs with the same edge set compare
    equal regardless of input order.  Instances are immutable; all
    arrays are read-only and safe to share across threads.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (i, j, date)
        One entry per undirected edge.  Self-loops and repeated pairs
        are rejected; dates must be finite.
    """

    __slots__ = ("n", "edge_i", "edge_j", "dates", "_cache")

    def __init__(self, n, edges):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        edges = list(edges)
        m = len(edges)
        ei = np.empty(m, dtype=np.int64)
        ej = np.empty(m, dtype=np.int64)
        dates = np.empty(m, dtype=np.float64)
        for k, (i, j, d) in enumerate(edges):
            ei[k], ej[k], dates[k] = i, j, d
        lo = np.minimum(ei, ej)
        hi = np.maximum(ei, ej)
        if m:
            if lo.min() < 0 or hi.max() >= n:
                raise ValueError("edge endpoint out of range 0..n-1")
            if np.any(lo == hi):
                raise ValueError("self-loops are not allowed")
            if not np.all(np.isfinite(dates)):
                raise ValueError("edge dates must be finite")
            order = np.lexsort((hi, lo))
            lo, hi, dates = lo[order], hi[order], dates[order]
            pair_ids = lo * n + hi
            if np.any(np.diff(pair_ids) == 0):
                raise ValueError("duplicate edges are not allowed")
        for arr in (lo, hi, dates):
            arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edge_i", lo)
        object.__setattr__(self, "edge_j", hi)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("TimestampedGraph is immutable")

    @classmethod
    def _from_canonical(cls, n, edge_i, edge_j, dates):
        # trusted path: arrays already satisfy every invariant and the
        # canonical (i < j, lexicographic) ordering
        g = cls.__new__(cls)
        edge_i = np.asarray(edge_i, dtype=np.int64)
        edge_j = np.asarray(edge_j, dtype=np.int64)
        dates = np.asarray(dates, dtype=np.float64)
        for arr in (edge_i, edge_j, dates):
            arr.setflags(write=False)
        object.__setattr__(g, "n", int(n))
        object.__setattr__(g, "edge_i", edge_i)
        object.__setattr__(g, "edge_j", edge_j)
        object.__setattr__(g, "dates", dates)
        object.__setattr__(g, "_cache", {})
        return g

    @property
    def m(self):
        """Number of edges."""
        return self.edge_i.shape[0]

    @property
    def edges(self):
        """Edge list as (i, j, date) tuples with i < j."""
        return [
            (int(i), int(j), float(d))
            for i, j, d in zip(self.edge_i, self.edge_j, self.dates)
        ]

    def degrees(self):
        """Vertex degrees; sums to 2 * m."""
        deg = np.bincount(self.edge_i, minlength=self.n) + np.bincount(
            self.edge_j, minlength=self.n
        )
        return deg

    def adjacency(self):
        """Incident edge indices per vertex (tuple of index arrays)."""
        key = "adjacency"
        if key not in self._cache:
            by_vertex = [[] for _ in range(self.n)]
            for k in range(self.m):
                by_vertex[self.edge_i[k]].append(k)
                by_vertex[self.edge_j[k]].append(k)
            self._cache[key] = tuple(
                np.asarray(ix, dtype=np.int64) for ix in by_vertex
            )
        return self._cache[key]

    def pair_indices(self):
        """Row/column arrays enumerating all unordered vertex pairs i < j."""
        key = "pairs"
        if key not in self._cache:
            iu = np.triu_indices(self.n, k=1)
            self._cache[key] = (iu[0].copy(), iu[1].copy())
        return self._cache[key]

    def pair_adjacency(self):
        """0/1 indicator over the unordered pairs from :meth:`pair_indices`."""
        key = "pair_adj"
        if key not in self._cache:
            a = np.zeros(self.n * (self.n - 1) // 2, dtype=np.float64)
            a[self._edge_pair_positions()] = 1.0
            a.setflags(write=False)
            self._cache[key] = a
        return self._cache[key]

    def _edge_pair_positions(self):
        # Position of edge (i, j) in the row-major i<j pair enumeration:
        # offset(i) + (j - i - 1) with offset(i) = i*n - i*(i+1)/2.
        i, j, n = self.edge_i, self.edge_j, self.n
        return i * n - i * (i + 1) // 2 + (j - i - 1)

    def __eq__(self, other):
        if not isinstance(other, TimestampedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.edge_i, other.edge_i)
            and np.array_equal(self.edge_j, other.edge_j)
            and np.array_equal(self.dates, other.dates)
        )

    def __hash__(self):
        return hash((self.n, self.m))

    def __repr__(self):
        return f"TimestampedGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ModelParams:
    """Scalar model parameters.

    alpha : logistic intercept (log-odds of a connection at zero
        temporal distance).
    beta : temporal-distance penalty, in years**-2; must be positive.
    sigma : date noise scale, in years; must be positive.
    """

    alpha: float
    beta: float
    sigma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "sigma"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta!r}")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")


@dataclass(frozen=True)
class LogLikelihoodGradient:
    """Partial derivatives of the log-likelihood.

    ``z`` holds d/dz_i for every vertex; ``alpha``, ``beta`` and
    ``sigma`` are the scalar parameter derivatives.
    """

    z: np.ndarray
    alpha: float
    beta: float
    sigma: float


def connection_probability(zi, zj, params):
    """Probability of a connection between activity dates ``zi`` and ``zj``.

    Evaluates ``sigmoid(alpha - beta * (zi - zj)**2)``.  Accepts scalars
    or broadcastable arrays; never overflows, even for date magnitudes
    up to about 1e6 (extreme logits may round to exactly 0.0 or 1.0 in
    float64).
    """
    dz = np.asarray(zi, dtype=np.float64) - np.asarray(zj, dtype=np.float64)
    return expit(params.alpha - params.beta * dz * dz)


def date_log_density(d, zi, zj, sigma):
    """Per-edge date term of the log-likelihood, constants dropped.

    Returns ``-log(sigma) - (d - (zi + zj)/2)**2 / (2 sigma**2)``; the
    Gaussian normalization ``-log(2 pi)/2`` is omitted throughout the
    package, so values are comparable across all likelihood code here.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    d = np.asarray(d, dtype=np.float64)
    mid = 0.5 * (np.asarray(zi, dtype=np.float64) + np.asarray(zj, dtype=np.float64))
    r = d - mid
    return -np.log(sigma) - r * r / (2.0 * sigma * sigma)


def _check_dims(graph, z):
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 1 or z.shape[0] != graph.n:
        raise ValueError(
            f"activity-date vector has length {z.shape}, expected ({graph.n},)"
        )
    return z


def log_likelihood(graph, z, params):
    """Log-likelihood of (adjacency, dates) given activity dates and params.

    The sum runs over unordered vertex pairs i < j: every pair
    contributes the Bernoulli term ``A*eta - log(1 + exp(eta))`` with
    ``eta = alpha - beta*(z_i - z_j)**2``, and every edge additionally
    contributes :func:`date_log_density`.  The softplus is evaluated in
    overflow-free form, so the value is finite for any finite inputs.
    A graph with fewer than two vertices has likelihood 0.0 (empty sum).
    """
    z = _check_dims(graph, z)
    if graph.n < 2:
        return 0.0
    i0, i1 = graph.pair_indices()
    dz = z[i0] - z[i1]
    eta = params.alpha - params.beta * dz * dz
    # sum over pairs of A*eta - softplus(eta); the A*eta part only sees edges
    conn = -np.logaddexp(0.0, eta).sum()
    if graph.m:
        ze_i = z[graph.edge_i]
        ze_j = z[graph.edge_j]
        dsq = ze_i - ze_j
        conn += params.alpha * graph.m - params.beta * (dsq * dsq).sum()
        r = graph.dates - 0.5 * (ze_i + ze_j)
        date = -graph.m * np.log(params.sigma) - (r * r).sum() / (
            2.0 * params.sigma**2
        )
    else:
        date = 0.0
    return float(conn + date)


def log_likelihood_gradient(graph, z, params):
    """Exact analytic gradient of :func:`log_likelihood`.

    For each unordered pair let ``w = A - sigmoid(eta)``.  Then

        d/dalpha = sum_pairs w
        d/dbeta  = -sum_pairs w * (z_i - z_j)**2
        d/dz_i   = sum_{pairs at i} -2*beta*w*(z_i - z_j)
                   + sum_{edges at i} (D - (z_i + z_j)/2) / (2 sigma**2)
        d/dsigma = -m/sigma + sum_edges (D - (z_i + z_j)/2)**2 / sigma**3
    """
    z = _check_dims(graph, z)
    n = graph.n
    if n < 2:
        return LogLikelihoodGradient(np.zeros(n), 0.0, 0.0, 0.0)
    i0, i1 = graph.pair_indices()
    dz = z[i0] - z[i1]
    sq = dz * dz
    eta = params.alpha - params.beta * sq
    w = graph.pair_adjacency() - expit(eta)
    g_alpha = w.sum()
    g_beta = -(w * sq).sum()
    wdz = w * dz
    g_z = -2.0 * params.beta * (
        np.bincount(i0, weights=wdz, minlength=n)
        - np.bincount(i1, weights=wdz, minlength=n)
    )
    if graph.m:
        r = graph.dates - 0.5 * (z[graph.edge_i] + z[graph.edge_j])
        half = r / (2.0 * params.sigma**2)
        g_z += np.bincount(graph.edge_i, weights=half, minlength=n)
        g_z += np.bincount(graph.edge_j, weights=half, minlength=n)
        g_sigma = -graph.m / params.sigma + (r * r).sum() / params.sigma**3
    else:
        g_sigma = 0.0
    return LogLikelihoodGradient(g_z, float(g_alpha), float(g_beta), float(g_sigma))


def log_likelihood_value_and_gradient(graph, z, params):
    """Log-likelihood and its gradient in one pass.

    Equivalent to calling :func:`log_likelihood` and
    :func:`log_likelihood_gradient` separately; shares the pair work so
    optimizers pay for the quadratic sweep once.
    """
    z = _check_dims(graph, z)
    n = graph.n
    if n < 2:
        return 0.0, LogLikelihoodGradient(np.zeros(n), 0.0, 0.0, 0.0)
    i0, i1 = graph.pair_indices()
    dz = z[i0] - z[i1]
    sq = dz * dz
    eta = params.alpha - params.beta * sq
    value = -np.logaddexp(0.0, eta).sum()
    w = graph.pair_adjacency() - expit(eta)
    g_alpha = w.sum()
    g_beta = -(w * sq).sum()
    wdz = w * dz
    g_z = -2.0 * params.beta * (
        np.bincount(i0, weights=wdz, minlength=n)
        - np.bincount(i1, weights=wdz, minlength=n)
    )
    if graph.m:
        ze_i = z[graph.edge_i]
        ze_j = z[graph.edge_j]
        de = ze_i - ze_j
        value += params.alpha * graph.m - params.beta * (de * de).sum()
        r = graph.dates - 0.5 * (ze_i + ze_j)
        value += -graph.m * np.log(params.sigma) - (r * r).sum() / (
            2.0 * params.sigma**2
        )
        half = r / (2.0 * params.sigma**2)
        g_z += np.bincount(graph.edge_i, weights=half, minlength=n)
        g_z += np.bincount(graph.edge_j, weights=half, minlength=n)
        g_sigma = -graph.m / params.sigma + (r * r).sum() / params.sigma**3
    else:
        g_sigma = 0.0
    grad = LogLikelihoodGradient(g_z, float(g_alpha), float(g_beta), float(g_sigma))
    return float(value), grad
