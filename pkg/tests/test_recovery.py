from lsemStability import MixedGraph, Parameters
from lsemStability.errors import NearSingularSystem, NotAPath, NotBowFree, ShapeMismatch
from lsemStability.graphs import clique_of_paths, layered_graph, path_graph
from lsemStability.instances import GeneratorConfig, instability_instance, random_parameters
from lsemStability.recovery import (
    recover,
    recover_bowfree_lambda,
    recover_omega,
    recover_path_lambda,
    verify_recurrence_identity,
)
from lsemStability.scm import forward_covariance
from lsemStability.stability import rel_dist
import numpy as np
import pytest
import unittest

SQRT2 = np.sqrt(2)


def random_paths(count, n, h, d, seed=0):
    base = np.random.default_rng(seed)
    for _ in range(count):
        yield random_parameters(path_graph(n), GeneratorConfig(h=h, d=d), base)


class TestPathRecovery(unittest.TestCase):
    def test_two_node(self):
        a = -0.4
        result = recover_path_lambda([[1.0, a], [a, a * a + 1.0]])
        self.assertAlmostEqual(result.lambda_hat[0, 1], a)

    def test_instability_instance(self):
        eps = 1e-6
        sigma = forward_covariance(instability_instance(eps))
        lam = recover_path_lambda(sigma).lambda_hat
        np.testing.assert_allclose(np.diag(lam, 1), [SQRT2, -SQRT2, 0.5], atol=1e-8)

    def test_singular_instance(self):
        sigma = forward_covariance(instability_instance(0.0))
        with self.assertRaises(NearSingularSystem) as cm:
            recover_path_lambda(sigma)
        self.assertEqual(cm.exception.node, 3)

    def test_shapes(self):
        with self.assertRaises(ShapeMismatch):
            recover_path_lambda(np.eye(3), n=4)
        with self.assertRaises(ShapeMismatch):
            recover_path_lambda(np.ones((2, 3)))

    def test_min_pivots(self):
        result = recover_path_lambda(forward_covariance(instability_instance(1e-6)))
        self.assertEqual(result.min_pivots[0], np.inf)
        self.assertAlmostEqual(result.min_pivots[3], 1e-6 / (5 + 1e-6), delta=1e-12)
        data = result.asJSON()
        self.assertIsNone(data["min_pivots"][0])
        self.assertIsNone(data["omega"])


class TestBowFreeRecovery(unittest.TestCase):
    def test_zero_lambda(self):
        g = clique_of_paths(6, 2)
        p = Parameters(g, np.zeros((6, 6)), np.eye(6))
        lam = recover_bowfree_lambda(forward_covariance(p), g).lambda_hat
        np.testing.assert_array_equal(lam, np.zeros((6, 6)))

    def test_clique_small(self):
        rng = np.random.default_rng(17)
        g = clique_of_paths(4, 2)
        p = random_parameters(g, GeneratorConfig(h=0.5, d=20), rng)
        lam = recover_bowfree_lambda(forward_covariance(p), g).lambda_hat
        np.testing.assert_allclose(lam, p.lambda_, atol=1e-8)

    def test_not_bow_free(self):
        g = MixedGraph(2, [(0, 1)], [(0, 1)])
        with self.assertRaises(NotBowFree):
            recover_bowfree_lambda(np.eye(2), g)

    def test_singular_node(self):
        g = clique_of_paths(4, 2)
        sigma = np.eye(4)
        sigma[0, 1] = sigma[1, 0] = 1.0
        with self.assertRaises(NearSingularSystem) as cm:
            recover_bowfree_lambda(sigma, g)
        self.assertEqual(cm.exception.node, 2)

    def test_dispatch(self):
        p = instability_instance(0.01)
        sigma = forward_covariance(p)
        result = recover(sigma, p.graph, omega=True)
        np.testing.assert_allclose(result.omega_hat, p.omega, atol=1e-10)
        self.assertAlmostEqual(result.omega_hat[0, 2], 0.5)


class TestOmega(unittest.TestCase):
    def test_zero_lambda(self):
        sigma = np.asarray(forward_covariance(instability_instance(0.3)))
        np.testing.assert_array_equal(recover_omega(sigma, np.zeros((4, 4))), sigma)

    def test_shapes(self):
        with self.assertRaises(ShapeMismatch):
            recover_omega(np.eye(3), np.zeros((2, 2)))


class TestRecurrenceIdentity(unittest.TestCase):
    def test_instability_instance(self):
        self.assertLessEqual(verify_recurrence_identity(instability_instance(0.01)), 1e-12)

    def test_zero_lambda(self):
        p = instability_instance(0.01)
        q = Parameters(p.graph, np.zeros((4, 4)), p.omega)
        self.assertEqual(verify_recurrence_identity(q), 0.0)

    def test_needs_path(self):
        g = clique_of_paths(4, 2)
        p = Parameters(g, np.zeros((4, 4)), np.eye(4))
        with self.assertRaises(NotAPath):
            verify_recurrence_identity(p)


def test_path_round_trip():
    for p in random_paths(100, 50, 0.2, 1000, seed=1):
        sigma = forward_covariance(p)
        lam = recover_path_lambda(sigma).lambda_hat
        assert np.max(np.abs(lam - p.lambda_)) <= 1e-8
        assert verify_recurrence_identity(p) <= 1e-10 * np.max(np.abs(np.asarray(sigma)))


def test_recurrence_identity_wider_weights():
    for p in random_paths(100, 50, 0.5, 1000, seed=2):
        sigma = np.asarray(forward_covariance(p))
        assert verify_recurrence_identity(p) <= 1e-10 * np.max(np.abs(sigma))


def test_solvers_agree_on_paths():
    for p in random_paths(100, 30, 0.2, 200, seed=3):
        sigma = forward_covariance(p)
        path = recover_path_lambda(sigma).lambda_hat
        general = recover_bowfree_lambda(sigma, p.graph).lambda_hat
        assert np.max(np.abs(path - general)) <= 1e-10


def test_omega_round_trip():
    for p in random_paths(20, 10, 0.2, 1000, seed=4):
        sigma = forward_covariance(p)
        omega = recover_omega(sigma, recover_path_lambda(sigma).lambda_hat)
        assert rel_dist(p.omega, omega) <= 1e-8
        off_pattern = [(i, i + 1) for i in range(9)]
        assert max(abs(omega[i, j]) for i, j in off_pattern) <= 1e-8


@pytest.mark.parametrize(
    "make_graph",
    [
        lambda rng: clique_of_paths(20, 2),
        lambda rng: layered_graph(30, 5, 0.2, rng),
        lambda rng: layered_graph(30, 5, 0.5, rng),
        lambda rng: layered_graph(30, 5, 0.8, rng),
    ],
)
def test_bowfree_round_trip(make_graph):
    skipped = 0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        g = make_graph(rng)
        p = random_parameters(g, GeneratorConfig(h=0.2), rng)
        try:
            lam = recover_bowfree_lambda(forward_covariance(p), g).lambda_hat
        except NearSingularSystem:
            skipped += 1
            continue
        assert np.max(np.abs(lam - p.lambda_)) <= 1e-8
    assert skipped < 5


def test_dispatch_on_random_path(random_path):
    result = recover(forward_covariance(random_path), random_path.graph, omega=True)
    np.testing.assert_allclose(result.lambda_hat, random_path.lambda_, atol=1e-10)
    np.testing.assert_allclose(result.omega_hat, random_path.omega, atol=1e-10)
    assert min(result.min_pivots) > 0.5


def test_unstable_pivot(unstable):
    pivots = recover_path_lambda(forward_covariance(unstable)).min_pivots
    assert pivots[3] < 1e-6
    assert min(pivots[1:3]) > 0.1
