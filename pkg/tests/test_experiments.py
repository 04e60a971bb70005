import numpy as np
import pytest

from paulicut.circuits import build_brickwork
from paulicut.encoding import min_qubits
from paulicut.experiments import (
    VARIANTS,
    ablation_histograms,
    gate_budget_sweep,
    plateau_variance,
    sample_bound,
)
from paulicut.graphs import Graph, parse_graph
from paulicut.training import TrainConfig

K2 = parse_graph("2 1\n1 2 1\n")

CHEAP = TrainConfig(learning_rate=0.05, stop_window=15, stop_threshold=1e-3, max_epochs=150)


class TestSampleBound:
    def test_pinned_value(self):
        assert sample_bound(K2, epsilon=1.0, delta=0.5, alpha=1.0) == 532

    def test_monotonicity(self):
        base = sample_bound(K2, 0.5, 0.1, 1.5)
        assert sample_bound(K2, 0.25, 0.1, 1.5) > base  # tighter accuracy
        assert sample_bound(K2, 0.5, 0.01, 1.5) > base  # higher confidence
        assert sample_bound(K2, 0.5, 0.1, 3.0) > base  # sharper loss
        bigger = parse_graph("3 3\n1 2 1\n1 3 1\n2 3 1\n")
        assert sample_bound(bigger, 0.5, 0.1, 1.5) > base  # more terms

    def test_quadratic_epsilon_scaling(self):
        s1 = sample_bound(K2, 0.1, 0.1, 1.0)
        s2 = sample_bound(K2, 0.05, 0.1, 1.0)
        assert s2 == pytest.approx(4 * s1, rel=1e-4)  # up to the final floor

    def test_validation(self):
        for bad in [dict(epsilon=0.0), dict(delta=0.0), dict(delta=1.0), dict(alpha=0.0)]:
            kwargs = dict(epsilon=0.3, delta=0.1, alpha=1.0)
            kwargs.update(bad)
            with pytest.raises(ValueError):
                sample_bound(K2, **kwargs)


class TestPlateauVariance:
    def test_report_fields_and_determinism(self):
        r1 = plateau_variance(n=3, k=1, depth_rows=6, trials=48, seed=11)
        r2 = plateau_variance(n=3, k=1, depth_rows=6, trials=48, seed=11)
        assert r1 == r2
        assert r1.n == 3 and r1.depth_rows == 6 and r1.layers == 3
        assert r1.trials == 48
        assert r1.predicted_normalized == 2.0 ** (-6)
        assert r1.variance > 0
        assert r1.normalized_variance == pytest.approx(
            r1.variance / (r1.alpha**4 * r1.sum_w_sq)
        )
        assert r1.ci_low <= r1.normalized_variance <= r1.ci_high

    def test_explicit_graph_is_used(self):
        g = parse_graph("9 9\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 1\n6 7 1\n7 8 1\n8 9 1\n1 9 1\n")
        r = plateau_variance(n=3, k=2, depth_rows=6, trials=16, seed=0, graph=g)
        assert r.graph_m == 9 and r.graph_edges == 9 and r.sum_w_sq == 9.0

    def test_mean_of_bare_edge_term_is_near_zero(self):
        r = plateau_variance(n=3, k=1, depth_rows=8, trials=300, seed=5)
        assert abs(r.mean) < 5 * r.stderr + 1e-12

    def test_normalized_variance_insensitive_to_instance(self):
        a = plateau_variance(n=3, k=1, depth_rows=8, trials=400, seed=1)
        b = plateau_variance(n=3, k=1, depth_rows=8, trials=400, seed=2)
        ratio = a.normalized_variance / b.normalized_variance
        assert 0.5 < ratio < 2.0

    def test_validation(self):
        with pytest.raises(ValueError):
            plateau_variance(n=3, k=1, depth_rows=6, trials=1, seed=0)
        with pytest.raises(ValueError):
            plateau_variance(n=3, k=1, depth_rows=1, trials=8, seed=0)


@pytest.fixture(scope="module")
def ablation_results(small_instances):
    return ablation_histograms(
        small_instances[:2],
        k=2,
        layers=2,
        variants=("tanh", "tanh+reg", "quadratic"),
        inits=1,
        seed=4,
        cfg=CHEAP,
    )


class TestAblation:
    def test_structure(self, ablation_results, small_instances):
        results = ablation_results
        total_vertices = sum(g.num_vertices for g in small_instances[:2])
        for name in ("tanh", "tanh+reg", "quadratic"):
            r = results[name]
            assert r.variant == VARIANTS[name]
            assert r.expectations.shape == (total_vertices,)
            assert np.all(np.abs(r.expectations) <= 1.0 + 1e-9)
            assert len(r.ratios_readout) == len(r.ratios_refined) == 2
            assert all(v <= 1.0 + 1e-9 for v in r.ratios_refined)
            assert r.mean_ratio_refined >= r.mean_ratio_readout - 1e-9
            assert 0.0 < r.mean_abs_expectation <= 1.0

    def test_unknown_variant_rejected(self, small_instances):
        with pytest.raises(ValueError, match="variant"):
            ablation_histograms(small_instances[:1], k=2, layers=1, variants=("cubic",))


class TestSweep:
    def test_structure_and_censoring(self):
        reachable, censored = gate_budget_sweep(
            [12], k=2, target_ratio=0.5, instances=1, inits=1,
            max_layers=4, seed=3, cfg=CHEAP,
        ), gate_budget_sweep(
            [12], k=2, target_ratio=1.5, instances=1, inits=1,
            max_layers=2, seed=3, cfg=CHEAP,
        )
        (p,) = reachable
        assert p.m == 12 and p.n == min_qubits(12, 2) == 4
        assert p.depth_rows == 2 * p.layers
        assert p.ms_gates == p.layers * (p.n // 2)
        assert p.reached and p.mean_readout_ratio >= 0.5
        assert 1 <= p.layers <= 4

        (q,) = censored
        assert not q.reached
        assert q.layers == 2  # pinned at max_layers
        assert q.mean_readout_ratio < 1.5

    def test_ms_count_matches_circuit(self):
        circ = build_brickwork(4, 3)
        assert circ.num_ms_gates == 3 * (4 // 2)
