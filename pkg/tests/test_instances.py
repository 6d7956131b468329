from lsemStability.errors import NotBowFree, ValidationError
from lsemStability import MixedGraph
from lsemStability.graphs import clique_of_paths, layered_graph, path_graph
from lsemStability.instances import (
    GeneratorConfig,
    divergence_probe,
    graph_gram_vectors,
    instability_instance,
    jitter_parameters,
    orthogonal_chain_vectors,
    random_parameters,
)
from lsemStability.scm import cumulative_path_weight, forward_covariance
from lsemStability.stability import check_model_assumptions
import numpy as np
import pytest
import unittest


class TestGeneratorConfig(unittest.TestCase):
    def test_defaults(self):
        cfg = GeneratorConfig()
        self.assertEqual(cfg.h, 0.5)
        self.assertEqual(cfg.dimension(10), 1000)
        self.assertEqual(cfg.dimension(400), 1600)
        self.assertAlmostEqual(GeneratorConfig(h=0.3).sigma_h_squared, 0.03)

    def test_invalid(self):
        with self.assertRaises(ValidationError):
            GeneratorConfig(h=-0.1)
        with self.assertRaises(ValidationError):
            GeneratorConfig(d=1)

    def test_seeded(self):
        a = GeneratorConfig(seed=3).rng().random()
        b = GeneratorConfig(seed=3).rng().random()
        self.assertEqual(a, b)


class TestGramVectors(unittest.TestCase):
    def test_chain(self):
        v = orthogonal_chain_vectors(40, 10, np.random.default_rng(0))
        np.testing.assert_allclose(np.linalg.norm(v, axis=1), 1.0, atol=1e-14)
        neighbours = np.abs(np.sum(v[:-1] * v[1:], axis=1))
        self.assertLessEqual(neighbours.max(), 1e-14)

    def test_chain_depth(self):
        v = orthogonal_chain_vectors(12, 6, np.random.default_rng(1), depth=3)
        gram = v @ v.T
        for i in range(12):
            for j in range(max(0, i - 3), i):
                self.assertLessEqual(abs(gram[i, j]), 1e-14)

    def test_chain_dimension(self):
        with self.assertRaises(ValidationError):
            orthogonal_chain_vectors(3, 1, np.random.default_rng(0))

    def test_parents_orthogonal(self):
        g = clique_of_paths(12, 3)
        v = graph_gram_vectors(g, 12, np.random.default_rng(2))
        for i, j in g.directed:
            self.assertLessEqual(abs(v[i] @ v[j]), 1e-14)

    def test_dimension_for_indegree(self):
        with self.assertRaises(ValidationError):
            graph_gram_vectors(clique_of_paths(12, 3), 11, np.random.default_rng(0))


class TestRandomParameters(unittest.TestCase):
    def test_pattern(self):
        rng = np.random.default_rng(7)
        for g in (path_graph(30), clique_of_paths(20, 2), layered_graph(30, 5, 0.5, rng)):
            p = random_parameters(g, GeneratorConfig(h=0.4, d=100), rng)
            np.testing.assert_array_equal(np.diag(p.omega), 1.0)
            for i, j in g.directed:
                self.assertEqual(p.omega[i, j], 0.0)
                self.assertLessEqual(abs(p.lambda_[i, j]), 0.4)
            off = np.ones((g.n, g.n), dtype=bool)
            for i, j in g.directed:
                off[i, j] = False
            self.assertTrue(np.all(p.lambda_[off] == 0))

    def test_reproducible(self):
        cfg = GeneratorConfig(h=0.2, d=50)
        a = random_parameters(path_graph(10), cfg, np.random.default_rng(5))
        b = random_parameters(path_graph(10), cfg, np.random.default_rng(5))
        np.testing.assert_array_equal(a.lambda_, b.lambda_)
        np.testing.assert_array_equal(a.omega, b.omega)

    def test_gram_vectors_kept(self):
        p = random_parameters(path_graph(6), GeneratorConfig(d=20), np.random.default_rng(0))
        np.testing.assert_allclose(p.gram_vectors @ p.gram_vectors.T, p.omega, atol=1e-14)

    def test_unrelated_pairs_zeroed(self):
        g = MixedGraph(3, [(0, 1)], [(0, 2)])
        with pytest.warns(UserWarning):
            p = random_parameters(g, GeneratorConfig(d=20), np.random.default_rng(0))
        self.assertEqual(p.omega[1, 2], 0.0)
        self.assertIsNone(p.gram_vectors)

    def test_bows_rejected(self):
        with self.assertRaises(NotBowFree):
            random_parameters(
                MixedGraph(2, [(0, 1)], [(0, 1)]), GeneratorConfig(), np.random.default_rng(0)
            )


class TestInstabilityInstance(unittest.TestCase):
    def test_parameters(self):
        p = instability_instance(1e-3)
        self.assertEqual(p.omega[2, 2], 1.0 + 1e-3)
        self.assertEqual(p.lambda_[2, 3], 0.5)
        self.assertTrue(p.graph.is_path)

    def test_zero_eps_is_valid(self):
        self.assertEqual(instability_instance(0.0).omega[2, 2], 1.0)

    def test_negative_eps(self):
        with self.assertRaises(ValidationError):
            instability_instance(-1e-6)


class TestJitter(unittest.TestCase):
    def test_zero_std(self):
        p = instability_instance(0.01)
        q = jitter_parameters(p, 0.0, np.random.default_rng(0), target="both")
        np.testing.assert_array_equal(q.lambda_, p.lambda_)
        np.testing.assert_array_equal(q.omega, p.omega)

    def test_targets(self):
        p = instability_instance(0.01)
        q = jitter_parameters(p, 1e-3, np.random.default_rng(0), target="lambda")
        np.testing.assert_array_equal(q.omega, p.omega)
        self.assertTrue(np.all((q.lambda_ != 0) == (p.lambda_ != 0)))
        self.assertFalse(np.array_equal(q.lambda_, p.lambda_))

        q = jitter_parameters(p, 1e-3, np.random.default_rng(0), target="omega")
        np.testing.assert_array_equal(q.lambda_, p.lambda_)
        np.testing.assert_array_equal(q.omega, q.omega.T)
        self.assertTrue(np.all((q.omega == 0) == (p.omega == 0)))

    def test_invalid(self):
        p = instability_instance(0.01)
        with self.assertRaises(ValidationError):
            jitter_parameters(p, 1e-3, np.random.default_rng(0), target="sigma")
        with self.assertRaises(ValidationError):
            jitter_parameters(p, -1.0, np.random.default_rng(0))


def test_weight_variance():
    cfg = GeneratorConfig(h=0.5, d=8)
    base = np.random.default_rng(12)
    g = path_graph(101)
    weights = []
    for _ in range(1000):
        p = random_parameters(g, cfg, base)
        weights.append(np.diag(p.lambda_, 1))
    weights = np.concatenate(weights)
    assert len(weights) == 100000
    assert np.var(weights) == pytest.approx(cfg.sigma_h_squared, rel=0.05)


def test_local_dominance_rate():
    cfg = GeneratorConfig(h=0.15, d=2000)
    g = path_graph(50)
    hits = 0
    for seed in range(200):
        p = random_parameters(g, cfg, np.random.default_rng(seed))
        report = check_model_assumptions(forward_covariance(p), p.lambda_)
        if report.alpha_min <= 0.2:
            hits += 1
    assert hits >= 180


def test_divergence_probe():
    fraction = divergence_probe(1.5, 2000, 4000, np.random.default_rng(31))
    assert 0.25 <= fraction <= 0.42
    assert divergence_probe(0.5, 2000, 4000, np.random.default_rng(32)) <= 0.01


def test_divergence_probe_invalid():
    with pytest.raises(ValidationError):
        divergence_probe(0.0, 10, 10, np.random.default_rng(0))


def test_layered_parameters(rng):
    g = layered_graph(30, 5, 0.5, rng)
    p = random_parameters(g, GeneratorConfig(h=0.2), rng)
    np.testing.assert_allclose(p.gram_vectors @ p.gram_vectors.T, p.omega, atol=1e-12)
    for v in range(g.n):
        for u in g.parents(v):
            assert p.omega[u, v] == 0.0


def test_weight_tail():
    h = 0.5
    base = np.random.default_rng(13)
    g = path_graph(101)
    weights = np.concatenate(
        [np.diag(random_parameters(g, GeneratorConfig(h=h, d=8), base).lambda_, 1) for _ in range(100)]
    )
    for beta in (0.05, 0.1, 0.25, 0.4):
        assert np.mean(np.abs(weights) <= beta) == pytest.approx(beta / h, abs=0.02)


def test_path_weight_second_moment():
    cfg = GeneratorConfig(h=0.8, d=8)
    base = np.random.default_rng(14)
    g = path_graph(101)
    k = 3
    products = []
    for _ in range(100):
        p = random_parameters(g, cfg, base)
        products.extend(cumulative_path_weight(p, l, l + k) for l in range(0, 99, k))
    assert np.mean(np.square(products)) == pytest.approx(cfg.sigma_h_squared ** k, rel=0.15)


def test_chain_projections_are_small():
    d = 10000
    v = orthogonal_chain_vectors(50, d, np.random.default_rng(15))
    gram = v @ v.T
    far = np.abs(gram[np.triu_indices(50, 2)])
    assert len(far) == 1176
    assert np.mean(far >= 4 / np.sqrt(d)) <= np.exp(-4)
    assert np.mean(np.square(far)) * d == pytest.approx(1.0, rel=0.15)


def test_chain_in_two_dimensions():
    # each vector is forced back onto the line of the one two steps before
    v = orthogonal_chain_vectors(6, 2, np.random.default_rng(16))
    gram = v @ v.T
    np.testing.assert_allclose(np.diag(gram, 1), 0.0, atol=1e-14)
    np.testing.assert_allclose(np.abs(np.diag(gram, 2)), 1.0, atol=1e-12)
