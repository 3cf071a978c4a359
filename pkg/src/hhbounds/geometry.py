"""Simplex geometry: volumes, barycentric coordinates, subsimplex constructors.

Conventions used throughout the package:

* a *point* is a 1-D float array of length ``n``; a batch of points is an
  ``(m, n)`` array (one point per row);
* vertex indices are 0-based;
* simplices are immutable; every constructor returns a new value, so the
  cached volume and factorization stay valid and instances are safe to share
  between threads.

Barycentric coordinates are computed two independent ways: by solving the
linear system that stacks the vertex-combination equations with the
weights-sum-to-one constraint (``barycentric_solve``), and by ratios of
vertex-replacement volumes (``barycentric_volumes``).  The two must agree;
the test suite enforces this cross-check.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import det as _det
from scipy.linalg import lu_factor, lu_solve

from .errors import (
    DegenerateSimplexError,
    DimensionMismatchError,
    PointOutsideSimplexError,
    SingularSystemError,
    SubsimplexEscapesParentError,
)
from .tolerances import DEGENERACY_RTOL, TOL_GEOM

__all__ = ["BarycentricCoords", "Simplex", "as_point", "standard_simplex"]


def as_point(x, dim: int | None = None) -> np.ndarray:
    """Validate and return ``x`` as a 1-D float array of finite coordinates."""
    p = np.asarray(x, dtype=float)
    if p.ndim == 0:
        p = p.reshape(1)
    if p.ndim != 1:
        raise DimensionMismatchError(f"point must be 1-D, got shape {p.shape}")
    if dim is not None and p.shape[0] != dim:
        raise DimensionMismatchError(
            f"point has dimension {p.shape[0]}, expected {dim}"
        )
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


class BarycentricCoords:
    """Weight vector of a point relative to a simplex's vertices.

    Weights sum to one.  Entries in ``[-TOL_GEOM, 0)`` are treated as
    round-off, clamped to zero, and the vector renormalized; genuinely
    negative entries are kept untouched so callers can detect points outside
    the simplex.
    """

    __slots__ = ("_weights",)

    def __init__(self, weights) -> None:
        w = np.array(weights, dtype=float)
        if w.ndim != 1 or w.size < 2:
            raise DimensionMismatchError("weights must be a 1-D vector of length n+1")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        total = float(w.sum())
        if abs(total - 1.0) > TOL_GEOM:
            raise ValueError(f"weights sum to {total!r}, expected 1")
        tiny = (w < 0.0) & (w >= -TOL_GEOM)
        if tiny.any():
            w[tiny] = 0.0
            w /= w.sum()
        w.setflags(write=False)
        self._weights = w

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def min_weight(self) -> float:
        return float(self._weights.min())

    @property
    def is_inside(self) -> bool:
        """True when every weight is nonnegative (after round-off clamping)."""
        return bool(self._weights.min() >= -TOL_GEOM)

    def reconstruct(self, simplex: "Simplex") -> np.ndarray:
        """Return the point these weights represent in ``simplex``."""
        return self._weights @ simplex.vertices

    def __len__(self) -> int:
        return self._weights.size

    def __repr__(self) -> str:
        return f"BarycentricCoords({np.array2string(self._weights, precision=6)})"


class Simplex:
    """Nondegenerate n-simplex given by n+1 vertices in R^n."""

    __slots__ = ("_vertices", "_volume", "_abs_det", "_lu")

    def __init__(self, vertices) -> None:
        V = np.array(vertices, dtype=float)
        if V.ndim != 2:
            raise DimensionMismatchError("vertices must be an (n+1, n) array")
        m, n = V.shape
        if n < 1 or m != n + 1:
            raise DimensionMismatchError(
                f"need n+1 vertices of dimension n, got {m} vertices in {n}-space"
            )
        if not np.all(np.isfinite(V)):
            raise ValueError("vertex coordinates must be finite")
        edges = V[1:] - V[0]
        # scipy's det multiplies LU diagonals directly (numpy's goes through
        # exp(logdet) and rounds even trivial cases)
        det = float(_det(edges, check_finite=False))
        gauge = float(np.prod(np.linalg.norm(edges, axis=1)))
        if not gauge > 0.0 or abs(det) <= DEGENERACY_RTOL * gauge:
            raise DegenerateSimplexError(
                f"vertices are affinely dependent (|det|={abs(det):.3e}, "
                f"edge gauge={gauge:.3e})"
            )
        V.setflags(write=False)
        self._vertices = V
        self._abs_det = abs(det)
        self._volume = abs(det) / math.factorial(n)
        self._lu = None

    # -- basic data ---------------------------------------------------------

    @property
    def vertices(self) -> np.ndarray:
        """Read-only ``(n+1, n)`` vertex array."""
        return self._vertices

    @property
    def dimension(self) -> int:
        return self._vertices.shape[1]

    @property
    def volume(self) -> float:
        """Lebesgue n-volume, |det(edge matrix)| / n!."""
        return self._volume

    @property
    def centroid(self) -> np.ndarray:
        """Vertex centroid, which is also the mean of the uniform measure."""
        return self._vertices.mean(axis=0)

    def __repr__(self) -> str:
        return f"Simplex(dim={self.dimension}, volume={self._volume:.6g})"

    # -- barycentric coordinates --------------------------------------------

    def _factorization(self):
        if self._lu is None:
            np1 = self.dimension + 1
            system = np.vstack([self._vertices.T, np.ones((1, np1))])
            try:
                self._lu = lu_factor(system)
            except Exception as exc:  # pragma: no cover - excluded by invariant
                raise SingularSystemError(str(exc)) from exc
        return self._lu

    def solve_weights(self, points) -> np.ndarray:
        """Raw (unclamped) barycentric weights for one point or a batch.

        Returns shape ``(n+1,)`` for a single point, ``(m, n+1)`` for a
        batch.  Weights may be negative when a point lies outside.
        """
        P = np.asarray(points, dtype=float)
        single = P.ndim == 1
        P = np.atleast_2d(P)
        if P.shape[1] != self.dimension:
            raise DimensionMismatchError(
                f"points have dimension {P.shape[1]}, expected {self.dimension}"
            )
        rhs = np.vstack([P.T, np.ones((1, P.shape[0]))])
        W = lu_solve(self._factorization(), rhs, check_finite=False).T
        return W[0] if single else W

    def barycentric_solve(self, x) -> BarycentricCoords:
        """Barycentric coordinates of ``x`` via the stacked linear system."""
        return BarycentricCoords(self.solve_weights(as_point(x, self.dimension)))

    def barycentric_volumes(self, x) -> BarycentricCoords:
        """Barycentric coordinates of ``x`` as vertex-replacement volume ratios.

        Requires ``x`` inside the simplex.  Independent of
        :meth:`barycentric_solve` (determinants only); the two methods must
        agree within ``TOL_GEOM`` for interior points.
        """
        x = as_point(x, self.dimension)
        raw = self.solve_weights(x)
        if raw.min() < -TOL_GEOM:
            raise PointOutsideSimplexError(
                f"point {x!r} lies outside (min weight {raw.min():.3e})"
            )
        np1 = self.dimension + 1
        ratios = np.empty(np1)
        for k in range(np1):
            W = np.array(self._vertices)
            W[k] = x
            ratios[k] = abs(float(_det(W[1:] - W[0], check_finite=False))) / self._abs_det
        return BarycentricCoords(ratios / ratios.sum())

    def contains(self, x) -> bool:
        """True when all barycentric weights of ``x`` are >= -TOL_GEOM."""
        raw = self.solve_weights(as_point(x, self.dimension))
        return bool(raw.min() >= -TOL_GEOM)

    # -- derived simplices ----------------------------------------------------

    def replace_vertex(self, i: int, p) -> "Simplex":
        """Return the simplex with vertex ``i`` replaced by interior point ``p``.

        The new volume equals ``weight_i(p) * volume``; replacing by a point
        on the facet opposite vertex ``i`` is degenerate and raises.
        """
        np1 = self.dimension + 1
        if not 0 <= i < np1:
            raise IndexError(f"vertex index {i} out of range 0..{np1 - 1}")
        p = as_point(p, self.dimension)
        if not self.contains(p):
            raise PointOutsideSimplexError("replacement point lies outside the simplex")
        W = np.array(self._vertices)
        W[i] = p
        try:
            return Simplex(W)
        except DegenerateSimplexError as exc:
            raise DegenerateSimplexError(
                f"replacement point lies on the facet opposite vertex {i}"
            ) from exc

    def homothety_about_centroid(self, t: float) -> "Simplex":
        """Scale the simplex by ``t`` in ``(0, 1]`` about its centroid.

        The result is contained in the original and shares its centroid.
        """
        if not 0.0 < t <= 1.0:
            raise ValueError(f"scale must lie in (0, 1], got {t!r}")
        c = self.centroid
        return Simplex(c + t * (self._vertices - c))

    def max_centered_scale(self, p) -> float:
        """Largest ``t`` for which :meth:`centered_subsimplex` stays inside.

        Equals ``(n+1) * min_k weight_k(p)``: the translated copy
        ``p + t*(V - c)`` has weights ``w_j(p) + t*(delta_jk - 1/(n+1))``,
        and the binding constraint is the smallest weight of ``p``.
        """
        raw = self.solve_weights(as_point(p, self.dimension))
        if raw.min() < -TOL_GEOM:
            raise PointOutsideSimplexError("center point lies outside the simplex")
        return (self.dimension + 1) * max(0.0, float(raw.min()))

    def centered_subsimplex(self, p, t: float) -> "Simplex":
        """Subsimplex with centroid ``p``: vertices ``p + t*(V_k - centroid)``.

        ``t`` must be positive and at most :meth:`max_centered_scale`; beyond
        that a vertex escapes the parent.
        """
        p = as_point(p, self.dimension)
        if t <= 0.0:
            raise ValueError(f"scale must be positive, got {t!r}")
        raw = self.solve_weights(p)
        if raw.min() < -TOL_GEOM:
            raise PointOutsideSimplexError("center point lies outside the simplex")
        np1 = self.dimension + 1
        t_max = np1 * max(0.0, float(raw.min()))
        if t > np1 * (float(raw.min()) + TOL_GEOM):
            raise SubsimplexEscapesParentError(
                f"scale {t!r} exceeds max centered scale {t_max!r}"
            )
        return Simplex(p + t * (self._vertices - self.centroid))

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "vertices": self._vertices.tolist(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Simplex":
        vertices = np.asarray(data["vertices"], dtype=float)
        s = cls(vertices)
        if "dimension" in data and int(data["dimension"]) != s.dimension:
            raise DimensionMismatchError(
                f"descriptor says dimension {data['dimension']}, "
                f"vertices give {s.dimension}"
            )
        return s


def standard_simplex(n: int) -> Simplex:
    """The simplex spanned by the origin and the ``n`` unit basis vectors."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    V = np.zeros((n + 1, n))
    V[1:] = np.eye(n)
    return Simplex(V)
