import heapq
import numpy as np
from lsemStability.errors import (
    ShapeMismatch,
    NearSingularSystem,
    NotUnitTriangular,
    CycleDetected,
    InputFileError,
    ValidationError,
)

PIVOT_THRESHOLD = 1e-12


def as_matrix(a, name="matrix"):
    """Coerce ``a`` to a finite 2-D float64 array."""
    m = np.array(a, dtype=np.float64)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2 or m.size == 0:
        raise ShapeMismatch("%s must be a non-empty 2-D array, got shape %s" % (name, m.shape))
    if not np.all(np.isfinite(m)):
        raise ValidationError("%s has non-finite entries" % name)
    return m


def topological_sort(n, edges):
    """Kahn's algorithm; ties go to the smallest vertex index."""
    children = [[] for _ in range(n)]
    indegree = [0] * n
    for i, j in edges:
        children[i].append(j)
        indegree[j] += 1
    ready = [v for v in range(n) if indegree[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for c in children[v]:
            indegree[c] -= 1
            if indegree[c] == 0:
                heapq.heappush(ready, c)
    if len(order) != n:
        remaining = sorted(set(range(n)) - set(order))
        raise CycleDetected(
            "Directed edges contain a cycle through vertices %s" % remaining,
            remaining=remaining,
        )
    return order


def mat_mul(a, b):
    a, b = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeMismatch("Cannot multiply %s by %s" % (a.shape, b.shape))
    return a @ b


def solve_dense(a, b, scale=None, full_output=False):
    """Solve ``a x = b`` by Gaussian elimination with partial pivoting.

  A pivot counts as singular when its magnitude is below ``1e-12`` times the
  largest absolute entry of its (original) row, or of ``scale[row]`` if a
  per-row reference scale is supplied and larger. With ``full_output`` the
  smallest relative pivot seen is returned alongside the solution."""
    a = as_matrix(a, "a")
    b = np.array(b, dtype=np.float64)
    vector = b.ndim == 1
    b = as_matrix(b, "b")
    n = a.shape[0]
    if a.shape[1] != n:
        raise ShapeMismatch("Coefficient matrix must be square, got %s" % (a.shape,))
    if b.shape[0] != n:
        raise ShapeMismatch("Right-hand side has %i rows, expected %i" % (b.shape[0], n))

    rowscale = np.max(np.abs(a), axis=1)
    if scale is not None:
        rowscale = np.maximum(rowscale, np.abs(np.asarray(scale, dtype=np.float64)))
    u = a.copy()
    x = b.copy()
    min_pivot = np.inf
    for k in range(n):
        p = k + int(np.argmax(np.abs(u[k:, k])))
        if p != k:
            u[[k, p]] = u[[p, k]]
            x[[k, p]] = x[[p, k]]
            rowscale[[k, p]] = rowscale[[p, k]]
        pivot = abs(u[k, k])
        relative = pivot / rowscale[k] if rowscale[k] > 0 else 0.0
        min_pivot = min(min_pivot, relative)
        if relative < PIVOT_THRESHOLD:
            raise NearSingularSystem(
                "Near-singular system: relative pivot %.3g at elimination step %i"
                % (relative, k),
                pivot=relative,
            )
        factors = u[k + 1 :, k] / u[k, k]
        u[k + 1 :, k:] -= np.outer(factors, u[k, k:])
        x[k + 1 :] -= np.outer(factors, x[k])

    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - u[k, k + 1 :] @ x[k + 1 :]) / u[k, k]

    if vector:
        x = x[:, 0]
    if full_output:
        return x, min_pivot
    return x


def unit_upper_triangular_inverse(a, order=None):
    """Invert a matrix that is unit upper-triangular after a symmetric
  permutation.

  ``order`` is a vertex permutation under which the strictly-lower part
  vanishes; if omitted it is derived from the off-diagonal support. For
  ``a = I - Lambda`` this is the finite Neumann series
  ``I + Lambda + ... + Lambda^(n-1)``, computed by back-substitution."""
    a = as_matrix(a, "a")
    n = a.shape[0]
    if a.shape[1] != n:
        raise NotUnitTriangular("Matrix must be square, got %s" % (a.shape,))
    if np.any(np.diag(a) != 1.0):
        raise NotUnitTriangular("Diagonal entries must all be exactly 1")
    if order is None:
        rows, cols = np.nonzero(a - np.eye(n))
        try:
            order = topological_sort(n, zip(rows.tolist(), cols.tolist()))
        except CycleDetected as e:
            raise NotUnitTriangular(
                "No permutation makes the matrix upper-triangular (%s)" % e
            )
    order = list(order)
    u = a[np.ix_(order, order)]
    if np.any(np.tril(u, -1) != 0.0):
        raise NotUnitTriangular("Matrix is not upper-triangular in the given order")

    x = np.eye(n)
    for i in range(n - 2, -1, -1):
        x[i, i + 1 :] = -u[i, i + 1 :] @ x[i + 1 :, i + 1 :]
    inverse = np.empty_like(x)
    inverse[np.ix_(order, order)] = x
    return inverse


def psd_check(a, tol=1e-9):
    """Symmetry within ``tol`` plus a diagonally pivoted Cholesky sweep.

  The tolerance is scaled by the largest diagonal entry (at least 1)."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatch("psd_check needs a square matrix, got %s" % (a.shape,))
    if not np.all(np.isfinite(a)):
        return False
    scale = max(1.0, float(np.max(np.abs(np.diag(a))))) if a.size else 1.0
    threshold = tol * scale
    if np.max(np.abs(a - a.T), initial=0.0) > threshold:
        return False

    s = (a + a.T) / 2.0
    while s.shape[0]:
        d = np.diag(s)
        if np.min(d) < -threshold:
            return False
        j = int(np.argmax(d))
        if d[j] <= threshold:
            # Remaining block is numerically zero on the diagonal; a PSD
            # matrix then has |s_ij| <= sqrt(s_ii s_jj) <= threshold.
            return bool(np.max(np.abs(s)) <= threshold)
        column = s[:, j] / np.sqrt(d[j])
        s = s - np.outer(column, column)
        keep = np.arange(s.shape[0]) != j
        s = s[np.ix_(keep, keep)]
    return True


def format_matrix_csv(m):
    """``n_rows,n_cols`` header followed by one row per line, 17 significant
  digits so that values round-trip exactly."""
    m = as_matrix(m)
    lines = ["%i,%i" % m.shape]
    lines.extend(",".join("%.17g" % v for v in row) for row in m)
    return "\n".join(lines) + "\n"


def write_matrix_csv(path, m):
    with open(path, "w") as f:
        f.write(format_matrix_csv(m))


def read_matrix_csv(path):
    try:
        with open(path) as f:
            header = f.readline().strip()
            rows, cols = [int(x) for x in header.split(",")]
            m = np.loadtxt(f, delimiter=",", ndmin=2, dtype=np.float64)
    except FileNotFoundError:
        raise InputFileError("Matrix file %s not found" % path, path=path)
    except ValueError as e:
        raise InputFileError("Could not parse matrix file %s: %s" % (path, e), path=path)
    if m.shape != (rows, cols):
        raise InputFileError(
            "Matrix file %s declares %ix%i but holds %s" % (path, rows, cols, m.shape),
            path=path,
        )
    return m
