import numpy as np
from bidict import bidict
from lsemStability.errors import (
    InvalidSize,
    InvalidGraph,
    ShapeMismatch,
    ValidationError,
    NonPsdOmega,
)
from lsemStability.linalg import topological_sort, psd_check, as_matrix

__version__ = "0.1.0"


class MixedGraph:
    """A mixed graph on ``n`` observed variables: a DAG of directed (causal)
  edges plus bidirected edges standing for correlated noise.

  Vertices are numbered from 0 (the mathematical literature counts from 1,
  so vertex ``i`` here is vertex ``i+1`` there). Directed edges are ordered
  pairs ``(i, j)`` meaning ``i -> j``; bidirected edges are stored as pairs
  with ``i < j``. The graph encodes the zero-patterns of the edge-weight
  matrix Lambda and the noise covariance Omega."""

    def __init__(self, n, directed=None, bidirected=None, names=None):
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise InvalidSize("Vertex count must be a positive integer, got %r" % (n,))
        self.n = int(n)
        self.directed = set((int(i), int(j)) for i, j in (directed or []))
        self.bidirected = set(
            (min(int(i), int(j)), max(int(i), int(j))) for i, j in (bidirected or [])
        )
        self.names = list(names) if names else None
        self._check_indices()

    def _check_indices(self):
        for kind, edges in (("directed", self.directed), ("bidirected", self.bidirected)):
            for i, j in edges:
                if not (0 <= i < self.n and 0 <= j < self.n):
                    raise InvalidGraph(
                        "%s edge (%i, %i) out of range for n=%i" % (kind, i, j, self.n)
                    )
                if i == j:
                    raise InvalidGraph("%s self-loop on vertex %i" % (kind, i))
        if self.names is not None and len(self.names) != self.n:
            raise InvalidGraph(
                "Graph has %i vertices but %i names" % (self.n, len(self.names))
            )

    def __eq__(self, other):
        return (
            isinstance(other, MixedGraph)
            and self.n == other.n
            and self.directed == other.directed
            and self.bidirected == other.bidirected
        )

    def __repr__(self):
        return "<MixedGraph n=%i directed=%i bidirected=%i>" % (
            self.n,
            len(self.directed),
            len(self.bidirected),
        )

    def is_bow_free(self):
        return not any((min(i, j), max(i, j)) in self.bidirected for i, j in self.directed)

    def topological_order(self):
        return topological_sort(self.n, sorted(self.directed))

    def parents(self, v):
        return sorted(i for i, j in self.directed if j == v)

    @property
    def is_path(self):
        return self.n >= 2 and self.directed == set((i, i + 1) for i in range(self.n - 1))

    @property
    def max_indegree(self):
        return max([len(self.parents(v)) for v in range(self.n)] + [0])

    from .jsonLib.MixedGraph import asJSON, fromJSON, save, load

    fromJSON = classmethod(fromJSON)
    load = classmethod(load)


class Parameters:
    """The parameter pair (Lambda, Omega) of a linear SEM over a mixed graph.

  ``X = Lambda^T X + eta`` with ``eta ~ N(0, Omega)``. Lambda may only be
  non-zero on directed edges; Omega is symmetric, strictly positive on the
  diagonal and may only be non-zero off the diagonal on bidirected edges.

  ``gram_vectors`` (an ``n x d`` array whose rows ``v_i`` satisfy
  ``Omega_ij = <v_i, v_j>``) is kept when the instance came from the random
  generator, so noise can be sampled exactly from it. Pass ``check=False``
  to skip validation, e.g. for jittered instances whose Omega need not be
  PSD any more."""

    def __init__(self, graph, lambda_, omega, gram_vectors=None, check=True):
        self.graph = graph
        self.lambda_ = as_matrix(lambda_, "Lambda")
        self.omega = as_matrix(omega, "Omega")
        self.gram_vectors = None if gram_vectors is None else as_matrix(gram_vectors, "Gram vectors")
        if check:
            self.validate()

    @property
    def n(self):
        return self.graph.n

    def validate(self, tol=1e-9):
        n = self.graph.n
        if self.lambda_.shape != (n, n) or self.omega.shape != (n, n):
            raise ShapeMismatch(
                "Lambda %s and Omega %s must both be %ix%i"
                % (self.lambda_.shape, self.omega.shape, n, n)
            )
        rows, cols = np.nonzero(self.lambda_)
        for i, j in zip(rows.tolist(), cols.tolist()):
            if (i, j) not in self.graph.directed:
                raise ValidationError(
                    "Lambda[%i,%i] is non-zero but (%i, %i) is not a directed edge" % (i, j, i, j)
                )
        scale = max(1.0, float(np.max(np.abs(self.omega))))
        if np.max(np.abs(self.omega - self.omega.T)) > 1e-12 * scale:
            raise ValidationError("Omega is not symmetric")
        if np.any(np.diag(self.omega) <= 0):
            raise ValidationError("Omega must have a strictly positive diagonal")
        rows, cols = np.nonzero(np.triu(self.omega, 1))
        for i, j in zip(rows.tolist(), cols.tolist()):
            if (i, j) not in self.graph.bidirected:
                raise ValidationError(
                    "Omega[%i,%i] is non-zero but {%i, %i} is not a bidirected edge" % (i, j, i, j)
                )
        if not psd_check(self.omega, tol):
            raise NonPsdOmega("Omega is not positive semidefinite")
        if self.gram_vectors is not None and self.gram_vectors.shape[0] != n:
            raise ShapeMismatch(
                "Expected %i Gram vectors, got %i" % (n, self.gram_vectors.shape[0])
            )

    def copy(self, lambda_=None, omega=None, check=True):
        return Parameters(
            self.graph,
            self.lambda_ if lambda_ is None else lambda_,
            self.omega if omega is None else omega,
            gram_vectors=self.gram_vectors if omega is None else None,
            check=check,
        )

    from .jsonLib.Parameters import asJSON, fromJSON, save, load

    fromJSON = classmethod(fromJSON)
    load = classmethod(load)


class Covariance:
    """A data covariance matrix Sigma. Behaves as an array under numpy."""

    def __init__(self, sigma, check=True, tol=1e-9):
        self.sigma = as_matrix(sigma, "Sigma")
        if check:
            if self.sigma.shape[0] != self.sigma.shape[1]:
                raise ShapeMismatch("Sigma must be square, got %s" % (self.sigma.shape,))
            if not psd_check(self.sigma, tol):
                raise ValidationError("Sigma is not symmetric positive semidefinite")

    @property
    def n(self):
        return self.sigma.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.sigma
        return self.sigma.astype(dtype)

    def __getitem__(self, key):
        return self.sigma[key]


class ObservationBatch:
    """``m`` samples of the observed vector, one per row.

  ``variables`` maps column index to variable name and back."""

    def __init__(self, data, names=None):
        self.data = as_matrix(data, "observations")
        n = self.data.shape[1]
        if names is None:
            names = ["x%i" % i for i in range(n)]
        if len(names) != n:
            raise ShapeMismatch("%i column names for %i columns" % (len(names), n))
        self.variables = bidict(enumerate(names))

    @property
    def m(self):
        return self.data.shape[0]

    @property
    def n(self):
        return self.data.shape[1]

    @property
    def names(self):
        return [self.variables[i] for i in range(self.n)]

    def select(self, names):
        """Columns reordered to follow ``names``."""
        missing = [x for x in names if x not in self.variables.inverse]
        if missing:
            raise ValidationError("Variables %s not present in data" % ", ".join(missing))
        columns = [self.variables.inverse[x] for x in names]
        return ObservationBatch(self.data[:, columns], names=list(names))

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.data
        return self.data.astype(dtype)


class RecoveryResult:
    """Recovered ``lambda_hat`` (and optionally ``omega_hat``) with the
  smallest relative pivot met while solving for each node's column."""

    def __init__(self, lambda_hat, omega_hat=None, min_pivots=None):
        self.lambda_hat = lambda_hat
        self.omega_hat = omega_hat
        self.min_pivots = min_pivots if min_pivots is not None else []

    from .jsonLib.RecoveryResult import asJSON, save
