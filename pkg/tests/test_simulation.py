"""Simulation tests: parameter formulas, seeded determinism, Monte Carlo
agreement with the connection model, rewiring noise, and a BFS oracle
for component extraction."""

import math
from collections import deque

import numpy as np
import pytest

from netdate.model import ModelParams, TimestampedGraph, connection_probability
from netdate.simulation import (
    SimConfig,
    alpha_for_density,
    beta_for_span,
    generate,
    largest_connected_component,
    rewire,
    sample_dates,
    sample_edges,
)


# ---------------------------------------------------------------------------
# oracle: plain BFS component extraction
# ---------------------------------------------------------------------------

def bfs_components(n, pairs):
    neighbors = [[] for _ in range(n)]
    for i, j in pairs:
        neighbors[i].append(j)
        neighbors[j].append(i)
    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        components.append(sorted(comp))
    return components


# ---------------------------------------------------------------------------
# parameter formulas
# ---------------------------------------------------------------------------

class TestAlphaForDensity:
    def test_half(self):
        assert alpha_for_density(0.5) == 0.0

    def test_tenth(self):
        np.testing.assert_allclose(alpha_for_density(0.1), -math.log(9.0),
                                   rtol=1e-14)

    def test_round_trip_through_connection_probability(self):
        for d in (0.1, 0.25, 0.5, 0.9):
            params = ModelParams(alpha=alpha_for_density(d), beta=1e-3, sigma=1.0)
            np.testing.assert_allclose(
                connection_probability(1300.0, 1300.0, params), d, rtol=1e-12
            )

    def test_rejects_out_of_range(self):
        for d in (0.0, 1.0, -0.2, 1.4):
            with pytest.raises(ValueError):
                alpha_for_density(d)


class TestBetaForSpan:
    def test_reference_value(self):
        np.testing.assert_allclose(
            beta_for_span(0.0, 80.0, 1e-6), math.log(1e6 - 1.0) / 6400.0,
            rtol=1e-14,
        )

    def test_probability_at_span_is_epsilon(self):
        for alpha in (0.0, -math.log(9.0), 1.2):
            beta = beta_for_span(alpha, 80.0, 1e-6)
            params = ModelParams(alpha=alpha, beta=beta, sigma=1.0)
            np.testing.assert_allclose(
                connection_probability(0.0, 80.0, params), 1e-6, rtol=1e-9
            )

    def test_rejects_nonpositive_beta(self):
        # epsilon above the zero-distance probability has no solution
        with pytest.raises(ValueError, match="beta"):
            beta_for_span(-math.log(9.0), 80.0, 0.2)

    def test_rejects_bad_span_and_epsilon(self):
        with pytest.raises(ValueError):
            beta_for_span(0.0, 0.0, 1e-6)
        with pytest.raises(ValueError):
            beta_for_span(0.0, 80.0, 0.0)


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

class TestGenerate:
    def test_seeded_determinism(self):
        config = SimConfig(target_density=0.3, seed=42)
        a = generate(config)
        b = generate(config)
        assert a.graph == b.graph
        np.testing.assert_array_equal(a.z_true, b.z_true)
        np.testing.assert_array_equal(a.original_ids, b.original_ids)
        assert a.params_true == b.params_true
        assert a.accepted == b.accepted

    def test_density_at_equal_dates(self):
        # pin all activity dates to one year: every pair is Bernoulli(d);
        # 142 vertices give 10011 pairs, enough for a 3-sigma band
        n = 142
        config = SimConfig(target_density=0.5, seed=9, n=n,
                           z_low=1300.0, z_high=1300.0)
        out = generate(config)
        assert out.graph.n == n  # G(142, 1/2) is connected in practice
        pairs = n * (n - 1) / 2
        density = out.graph.m / pairs
        band = 3.0 * math.sqrt(0.5 * 0.5 / pairs)
        assert abs(density - 0.5) < band

    def test_uniform_dates_live_between_endpoints(self):
        out = generate(SimConfig(target_density=0.3, seed=21,
                                 date_model="uniform"))
        g = out.graph
        zi = out.z_true[g.edge_i]
        zj = out.z_true[g.edge_j]
        assert np.all(g.dates >= np.minimum(zi, zj))
        assert np.all(g.dates <= np.maximum(zi, zj))

    def test_acceptance_rule_on_component(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            out = generate(SimConfig(target_density=float(rng.uniform(0.1, 0.5)),
                                     seed=int(rng.integers(2**32)), n=30))
            assert out.accepted == (out.graph.m >= out.graph.n + 3)

    def test_component_is_connected(self):
        out = generate(SimConfig(target_density=0.1, seed=3, n=60))
        comps = bfs_components(out.graph.n,
                               list(zip(out.graph.edge_i, out.graph.edge_j)))
        assert len(comps) == 1

    def test_truth_alignment_via_original_ids(self):
        out = generate(SimConfig(target_density=0.2, seed=8, n=50))
        assert out.z_true.shape == (out.graph.n,)
        assert out.original_ids.shape == (out.graph.n,)
        # ids ascend, so relabeling preserved vertex order
        assert np.all(np.diff(out.original_ids) > 0)

    def test_edges_per_vertex(self):
        out = generate(SimConfig(target_density=0.4, seed=10))
        assert out.edges_per_vertex == out.graph.m / out.graph.n

    def test_rejects_invalid_density(self):
        with pytest.raises(ValueError):
            SimConfig(target_density=0.0, seed=1)
        with pytest.raises(ValueError):
            SimConfig(target_density=1.0, seed=1)

    def test_trivial_component_is_rejected_not_crashed(self):
        # two far-apart vertices rarely connect; find a seed with no edge
        for seed in range(50):
            out = generate(SimConfig(target_density=0.1, seed=seed, n=2,
                                     z_low=1200.0, z_high=1400.0))
            if out.graph.m == 0:
                assert out.graph.n == 1
                assert not out.accepted
                assert out.z_true.shape == (1,)
                return
        pytest.fail("no edgeless draw in 50 seeds")


class TestSampleEdges:
    def test_monte_carlo_pair_frequencies(self):
        # frequencies over repeated draws must match the logistic model
        z = np.array([1200.0, 1230.0, 1260.0, 1290.0, 1320.0])
        params = ModelParams(alpha=0.0, beta=beta_for_span(0.0, 80.0, 1e-6),
                             sigma=20.0)
        rng = np.random.default_rng(1234)
        reps = 20000
        counts = np.zeros((5, 5))
        for _ in range(reps):
            ei, ej = sample_edges(z, params, rng)
            counts[ei, ej] += 1
        for i in range(5):
            for j in range(i + 1, 5):
                p = connection_probability(z[i], z[j], params)
                se = math.sqrt(p * (1 - p) / reps)
                assert abs(counts[i, j] / reps - p) <= 3.0 * se + 1e-12

    def test_zero_width_uniform_dates(self):
        z = np.array([1300.0, 1300.0, 1250.0])
        config = SimConfig(target_density=0.5, seed=1, date_model="uniform")
        rng = np.random.default_rng(5)
        dates = sample_dates(z, np.array([0]), np.array([1]), config, rng)
        assert dates[0] == 1300.0


# ---------------------------------------------------------------------------
# rewire
# ---------------------------------------------------------------------------

def dated_graph(rng, n=30, p=0.2):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = rng.random(len(pairs)) < p
    edges = [(i, j, float(rng.uniform(1200, 1400)))
             for (i, j), k in zip(pairs, keep) if k]
    return TimestampedGraph(n, edges)


class TestRewire:
    def test_zero_fraction_is_identity(self):
        rng = np.random.default_rng(2)
        graph = dated_graph(rng)
        rewired, skips = rewire(graph, 0.0, rng)
        assert rewired == graph
        assert skips == 0

    def test_edge_count_and_dates_preserved(self):
        rng = np.random.default_rng(3)
        graph = dated_graph(rng)
        for fraction in (0.01, 0.05, 0.5):
            rewired, _ = rewire(graph, fraction, np.random.default_rng(7))
            assert rewired.m == graph.m
            np.testing.assert_array_equal(
                np.sort(rewired.dates), np.sort(graph.dates)
            )

    def test_output_is_simple(self):
        rng = np.random.default_rng(4)
        graph = dated_graph(rng, n=20, p=0.4)
        for seed in range(10):
            rewired, _ = rewire(graph, 0.3, np.random.default_rng(seed))
            assert rewired.edge_i.shape[0] == graph.m
            assert np.all(rewired.edge_i < rewired.edge_j)
            pairs = set(zip(rewired.edge_i.tolist(), rewired.edge_j.tolist()))
            assert len(pairs) == graph.m

    def test_selection_count(self):
        # 300 edges at 5% -> exactly 15 moved endpoints at most
        rng = np.random.default_rng(11)
        n = 100
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        idx = rng.choice(len(pairs), size=300, replace=False)
        edges = [(pairs[k][0], pairs[k][1], 1300.0) for k in idx]
        graph = TimestampedGraph(n, edges)
        rewired, skips = rewire(graph, 0.05, np.random.default_rng(12))
        assert skips == 0
        changed = set(graph.edges) ^ set(rewired.edges)
        # each moved edge changes at most one pair on each side
        assert len(changed) <= 2 * 15
        assert round(0.05 * 300) == 15

    def test_near_complete_graph_skips(self):
        # complete graph minus nothing to move to: every rewire must skip
        n = 5
        edges = [(i, j, 1300.0) for i in range(n) for j in range(i + 1, n)]
        graph = TimestampedGraph(n, edges)
        rewired, skips = rewire(graph, 0.5, np.random.default_rng(1))
        assert rewired == graph
        assert skips == round(0.5 * graph.m)

    def test_rejects_bad_fraction(self):
        rng = np.random.default_rng(6)
        graph = dated_graph(rng)
        with pytest.raises(ValueError):
            rewire(graph, 1.0, rng)


# ---------------------------------------------------------------------------
# largest_connected_component
# ---------------------------------------------------------------------------

class TestLargestConnectedComponent:
    def test_connected_graph_is_identity(self):
        graph = TimestampedGraph(3, [(0, 1, 1.0), (1, 2, 2.0)])
        sub, ids = largest_connected_component(graph)
        assert sub == graph
        np.testing.assert_array_equal(ids, [0, 1, 2])

    def test_keeps_larger_component(self):
        graph = TimestampedGraph(
            5, [(0, 1, 1.0), (1, 2, 2.0), (3, 4, 3.0)]
        )
        sub, ids = largest_connected_component(graph)
        assert sub.n == 3
        np.testing.assert_array_equal(ids, [0, 1, 2])
        assert sub.edges == [(0, 1, 1.0), (1, 2, 2.0)]

    def test_tie_broken_by_smallest_original_id(self):
        graph = TimestampedGraph(6, [(2, 4, 1.0), (1, 5, 2.0), (0, 3, 3.0)])
        sub, ids = largest_connected_component(graph)
        assert sub.n == 2
        np.testing.assert_array_equal(ids, [0, 3])

    def test_empty_graph(self):
        sub, ids = largest_connected_component(TimestampedGraph(0, []))
        assert sub.n == 0
        assert ids.shape == (0,)

    def test_edgeless_graph_gives_single_vertex(self):
        sub, ids = largest_connected_component(TimestampedGraph(4, []))
        assert sub.n == 1
        np.testing.assert_array_equal(ids, [0])

    def test_matches_bfs_oracle_on_random_graphs(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            n = 20
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
            keep = rng.random(len(pairs)) < 0.06
            edges = [(i, j, float(rng.uniform(0, 10)))
                     for (i, j), k in zip(pairs, keep) if k]
            graph = TimestampedGraph(n, edges)
            comps = bfs_components(n, [(i, j) for i, j, _ in edges])
            comps.sort(key=lambda c: (-len(c), min(c)))
            want = comps[0]
            sub, ids = largest_connected_component(graph)
            np.testing.assert_array_equal(ids, want)
            # induced edges: exactly those of the oracle component
            want_edges = sorted(
                (min(i, j), max(i, j), d) for i, j, d in edges
                if i in set(want) and j in set(want)
            )
            relabel = {old: new for new, old in enumerate(want)}
            want_edges = sorted(
                (min(relabel[i], relabel[j]), max(relabel[i], relabel[j]), d)
                for i, j, d in want_edges
            )
            assert sub.edges == want_edges
            assert sub.degrees().sum() == 2 * len(want_edges)
