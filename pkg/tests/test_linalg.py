from lsemStability import MixedGraph, Parameters
from lsemStability.errors import (
    InputFileError,
    NearSingularSystem,
    NonPsdOmega,
    NotUnitTriangular,
    ShapeMismatch,
)
from lsemStability.instances import instability_instance
from lsemStability.linalg import (
    mat_mul,
    psd_check,
    read_matrix_csv,
    solve_dense,
    unit_upper_triangular_inverse,
    write_matrix_csv,
)
from hypothesis import given, settings, strategies as st
import numpy as np
import pytest
import unittest

SQRT2 = np.sqrt(2)


class TestProducts(unittest.TestCase):
    def test_mat_mul(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        np.testing.assert_array_equal(mat_mul(np.eye(2), a), a)
        np.testing.assert_array_equal(mat_mul(a, [[0.0], [1.0]]), [[2.0], [4.0]])
        np.testing.assert_array_equal(mat_mul(a, np.zeros((2, 2))), np.zeros((2, 2)))
        with self.assertRaises(ShapeMismatch):
            mat_mul(a, np.ones((3, 1)))


class TestSolve(unittest.TestCase):
    def test_identity(self):
        v = np.array([1.0, -2.0, 3.0])
        np.testing.assert_array_equal(solve_dense(np.eye(3), v), v)

    def test_diagonal(self):
        x = solve_dense([[2.0, 0.0], [0.0, 4.0]], [[2.0], [8.0]])
        np.testing.assert_allclose(x, [[1.0], [2.0]])

    def test_singular(self):
        with self.assertRaises(NearSingularSystem):
            solve_dense([[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])

    def test_full_output(self):
        x, pivot = solve_dense([[4.0, 0.0], [0.0, 1e-3]], [4.0, 1e-3], full_output=True)
        np.testing.assert_allclose(x, [1.0, 1.0])
        self.assertEqual(pivot, 1.0)
        _, pivot = solve_dense(
            [[4.0, 0.0], [0.0, 1e-3]], [4.0, 1e-3], scale=[1.0, 1.0], full_output=True
        )
        self.assertAlmostEqual(pivot, 1e-3)

    def test_shapes(self):
        with self.assertRaises(ShapeMismatch):
            solve_dense(np.ones((2, 3)), np.ones(2))
        with self.assertRaises(ShapeMismatch):
            solve_dense(np.eye(2), np.ones(3))


class TestTriangularInverse(unittest.TestCase):
    def test_small(self):
        np.testing.assert_array_equal(unit_upper_triangular_inverse(np.eye(3)), np.eye(3))
        np.testing.assert_allclose(
            unit_upper_triangular_inverse([[1.0, SQRT2], [0.0, 1.0]]),
            [[1.0, -SQRT2], [0.0, 1.0]],
        )

    def test_instability_propagator(self):
        p = instability_instance(0.01)
        inverse = unit_upper_triangular_inverse(np.eye(4) - p.lambda_)
        expected = [
            [1.0, SQRT2, -2.0, -1.0],
            [0.0, 1.0, -SQRT2, -1.0 / SQRT2],
            [0.0, 0.0, 1.0, 0.5],
            [0.0, 0.0, 0.0, 1.0],
        ]
        np.testing.assert_allclose(inverse, expected, atol=1e-15)

    def test_permuted(self):
        # 2 -> 0 -> 1
        a = np.eye(3)
        a[2, 0] = -0.5
        a[0, 1] = -2.0
        inverse = unit_upper_triangular_inverse(a)
        np.testing.assert_allclose(a @ inverse, np.eye(3), atol=1e-15)

    def test_rejects(self):
        with self.assertRaises(NotUnitTriangular):
            unit_upper_triangular_inverse([[2.0, 0.0], [0.0, 1.0]])
        with self.assertRaises(NotUnitTriangular):
            unit_upper_triangular_inverse([[1.0, 1.0], [1.0, 1.0]])


class TestPsd(unittest.TestCase):
    def test_examples(self):
        self.assertTrue(psd_check(np.eye(3)))
        self.assertFalse(psd_check([[1.0, 2.0], [2.0, 1.0]]))
        self.assertTrue(psd_check(instability_instance(0.01).omega))
        self.assertFalse(psd_check([[1.0, 0.5], [0.0, 1.0]]))

    def test_singular_psd(self):
        v = np.array([[1.0, 2.0, -1.0]])
        self.assertTrue(psd_check(v.T @ v))

    def test_tiny_diagonal_large_offdiagonal(self):
        # eigenvalues 1e-10 +- 1e-4
        self.assertFalse(psd_check([[1e-10, 1e-4], [1e-4, 1e-10]], 1e-9))
        self.assertFalse(psd_check([[0.0, 1e-8], [1e-8, 0.0]]))
        self.assertTrue(psd_check(np.zeros((3, 3))))

    def test_tiny_diagonal_omega_rejected(self):
        g = MixedGraph(2, [], [(0, 1)])
        omega = np.array([[1e-10, 1e-4], [1e-4, 1e-10]])
        with self.assertRaises(NonPsdOmega):
            Parameters(g, np.zeros((2, 2)), omega)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=50), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_triangular_inverse_property(n, seed):
    rng = np.random.default_rng(seed)
    a = np.eye(n) + np.triu(rng.uniform(-1.0, 1.0, (n, n)), 1) * (rng.random((n, n)) < 0.3)
    assert np.max(np.abs(mat_mul(a, unit_upper_triangular_inverse(a)) - np.eye(n))) <= 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=100), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_solve_residual(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + n * np.eye(n)
    b = rng.standard_normal(n)
    x = solve_dense(a, b)
    assert np.max(np.abs(a @ x - b)) <= 1e-9 * (1 + np.max(np.abs(b)))


def test_matrix_csv(tmp_path):
    m = np.array([[1.0 / 3.0, -2e-17], [np.pi, 1e300]])
    path = str(tmp_path / "m.csv")
    write_matrix_csv(path, m)
    with open(path) as f:
        assert f.readline() == "2,2\n"
    np.testing.assert_array_equal(read_matrix_csv(path), m)


def test_matrix_csv_errors(tmp_path):
    with pytest.raises(InputFileError):
        read_matrix_csv(str(tmp_path / "missing.csv"))
    bad = tmp_path / "bad.csv"
    bad.write_text("2,2\n1,2\n")
    with pytest.raises(InputFileError):
        read_matrix_csv(str(bad))
