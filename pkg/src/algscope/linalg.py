"""Tolerance-aware dense linear algebra over complex doubles.

Matrices are plain ``numpy.ndarray`` objects (complex128, 2-d).  This module
supplies the rank/nullspace primitives, the subspace lattice (sum,
intersection, equality), eigen-analysis of a matrix pencil through a regular
shift, and extraction of the homogeneous determinant polynomial
``det(lam*a + mu*b)``.

Rank decisions use a relative singular-value threshold ``tol * sigma_max``.
Operators of the form ``a - alpha*b`` can cancel to a matrix that is zero up
to roundoff; for those the caller passes ``scale`` (the pre-cancellation
magnitude) so the cutoff never collapses to the noise floor of an
all-noise matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonFinite, ShapeError, SingularShift

__all__ = [
    "ProjectivePoint",
    "INFINITY",
    "Subspace",
    "HomogeneousPoly",
    "as_matrix",
    "rank",
    "nullspace",
    "orthonormal_columns",
    "subspace_sum",
    "subspace_intersect",
    "subspace_equal",
    "complement",
    "projector_distance",
    "pencil_eigen",
    "det_poly",
    "projective_close",
]


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite complex 2-d array; raise on NaN/Inf."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-d array, got shape {m.shape}")
    if m.size and not np.all(np.isfinite(m.real) & np.isfinite(m.imag)):
        raise NonFinite("matrix contains NaN or Inf entries")
    return m


def _svd_cutoff(s: np.ndarray, tol: float, scale: float | None) -> float:
    """Threshold below which singular values count as zero.

    Relative to the largest singular value (or 1 for an exactly zero matrix),
    and never below ``tol * scale`` when a problem scale is supplied.
    """
    smax = float(s[0]) if s.size else 0.0
    base = smax if smax > 0.0 else 1.0
    if scale is not None:
        base = max(base, float(scale))
    return tol * base


def rank(m, tol: float, *, scale: float | None = None) -> int:
    """Numerical rank with the cutoff convention of :func:`nullspace`."""
    m = as_matrix(m)
    if 0 in m.shape:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s >= _svd_cutoff(s, tol, scale)))


# --------------------------------------------------------------------------
# projective points


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of the projective line: a finite complex number or infinity.

    Infinity is a distinct tag (``value is None``), never a large float.
    """

    value: complex | None

    @classmethod
    def finite(cls, z) -> "ProjectivePoint":
        z = complex(z)
        if not (np.isfinite(z.real) and np.isfinite(z.imag)):
            raise NonFinite("finite projective point built from non-finite value")
        return cls(z)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def inverse(self) -> "ProjectivePoint":
        """The involution alpha -> 1/alpha with 0 and infinity swapped."""
        if self.is_infinite:
            return ProjectivePoint.finite(0.0)
        if self.value == 0:
            return INFINITY
        return ProjectivePoint.finite(1.0 / self.value)

    def __repr__(self) -> str:
        return "inf" if self.is_infinite else repr(self.value)


INFINITY = ProjectivePoint(None)


def projective_close(p: ProjectivePoint, q: ProjectivePoint, tol: float) -> bool:
    """Closeness test used to match spectrum points; relative for large values."""
    if p.is_infinite or q.is_infinite:
        return p.is_infinite and q.is_infinite
    a, b = p.value, q.value
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^n carried by an orthonormal column frame.

    ``frame`` has shape ``(ambient_dim, dim)`` and satisfies
    ``frame^H frame = I`` within ``10 * tol``.
    """

    ambient_dim: int
    frame: np.ndarray
    tol: float

    def __post_init__(self):
        frame = np.asarray(self.frame, dtype=complex)
        if frame.ndim != 2 or frame.shape[0] != self.ambient_dim:
            raise ShapeError(
                f"frame shape {frame.shape} does not match ambient dim {self.ambient_dim}"
            )
        if frame.shape[1] > self.ambient_dim:
            raise ShapeError("frame has more columns than the ambient dimension")
        g = frame.conj().T @ frame
        if g.size and np.max(np.abs(g - np.eye(frame.shape[1]))) > 10.0 * self.tol:
            raise ShapeError("frame columns are not orthonormal at the stated tolerance")
        frame.setflags(write=False)
        object.__setattr__(self, "frame", frame)

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def projector(self) -> np.ndarray:
        return self.frame @ self.frame.conj().T

    def residual(self, vectors: np.ndarray) -> np.ndarray:
        """Relative out-of-subspace norm per column of ``vectors``.

        Accepts a single vector or a column matrix of vectors.
        """
        v = np.asarray(vectors, dtype=complex)
        if v.ndim == 1:
            v = v.reshape(-1, 1)
        if v.shape[0] != self.ambient_dim:
            raise DimensionMismatch(
                f"vectors of length {v.shape[0]} against ambient dimension {self.ambient_dim}"
            )
        out = v - self.frame @ (self.frame.conj().T @ v)
        return np.linalg.norm(out, axis=0) / np.maximum(1.0, np.linalg.norm(v, axis=0))

    @classmethod
    def zero(cls, ambient_dim: int, tol: float = 1e-9) -> "Subspace":
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex), tol)

    @classmethod
    def full(cls, ambient_dim: int, tol: float = 1e-9) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=complex), tol)


def nullspace(m, tol: float, *, scale: float | None = None) -> Subspace:
    """Right nullspace of ``m``: the span of right-singular directions whose
    singular values fall below ``tol * sigma_max`` (``sigma_max`` replaced by 1
    for an exactly zero matrix, and by ``scale`` when that is larger).

    Satisfies ``rank(m) + dim(nullspace(m)) = cols(m)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_matrix(m)
    n = m.shape[1]
    if n == 0:
        return Subspace(0, np.zeros((0, 0), dtype=complex), tol)
    if m.shape[0] == 0:
        return Subspace.full(n, tol)
    u, s, vh = np.linalg.svd(m)
    cutoff = _svd_cutoff(s, tol, scale)
    r = int(np.sum(s >= cutoff))
    return Subspace(n, vh[r:].conj().T, tol)


def orthonormal_columns(cols, tol: float, *, scale: float | None = None) -> np.ndarray:
    """Orthonormal basis of the column span of ``cols`` (SVD based)."""
    cols = as_matrix(cols)
    if cols.shape[1] == 0:
        return cols
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    r = int(np.sum(s >= _svd_cutoff(s, tol, scale)))
    return u[:, :r]


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"subspaces live in different ambient dimensions: {a.ambient_dim} vs {b.ambient_dim}"
        )


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Orthonormal frame spanning the union of the two column spans."""
    _check_ambient(a, b)
    tol = max(a.tol, b.tol)
    stacked = np.hstack([a.frame, b.frame])
    return Subspace(a.ambient_dim, orthonormal_columns(stacked, tol), tol)


def subspace_intersect(a: Subspace, b: Subspace, tol: float) -> Subspace:
    """Intersection, via the nullspace of stacked projector complements."""
    _check_ambient(a, b)
    eye = np.eye(a.ambient_dim)
    stacked = np.vstack([eye - a.projector(), eye - b.projector()])
    # projectors have unit scale, so an all-roundoff stack means full overlap
    return nullspace(stacked, tol, scale=1.0)


def subspace_equal(a: Subspace, b: Subspace, tol: float) -> bool:
    """Equal dimension and operator-norm projector distance below ``tol``."""
    _check_ambient(a, b)
    if a.dim != b.dim:
        return False
    return projector_distance(a, b) < tol


def projector_distance(a: Subspace, b: Subspace) -> float:
    _check_ambient(a, b)
    d = a.projector() - b.projector()
    if d.size == 0:
        return 0.0
    return float(np.linalg.norm(d, ord=2))


def complement(a: Subspace) -> Subspace:
    """Orthogonal complement of ``a`` inside its ambient space."""
    if a.dim == 0:
        return Subspace.full(a.ambient_dim, a.tol)
    return nullspace(a.frame.conj().T, a.tol, scale=1.0)


# --------------------------------------------------------------------------
# pencil eigen-analysis


def _cluster_values(values: np.ndarray, cluster_tol: float) -> list[tuple[complex, int]]:
    """Single-linkage clustering of complex values; relative for large moduli."""
    n = len(values)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= cluster_tol * max(
                1.0, abs(values[i]), abs(values[j])
            ):
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(values[i])
    return [(complex(np.mean(g)), len(g)) for g in groups.values()]


def _point_sort_key(item: tuple[ProjectivePoint, int]):
    p = item[0]
    if p.is_infinite:
        return (1, 0.0, 0.0)
    return (0, abs(p.value), float(np.angle(p.value)))


def pencil_eigen(
    a, b, alpha0: complex, *, cluster_tol: float = 1e-6
) -> list[tuple[ProjectivePoint, int]]:
    """Eigenvalues of the pencil ``a - alpha*b`` through the regular shift
    ``alpha0``.

    Forms ``M = (a - alpha0*b)^{-1} b``, takes its eigenvalues ``L`` and maps
    ``L = 0 -> alpha = infinity`` and ``L != 0 -> alpha = alpha0 + 1/L``.
    Mapped values closer than ``cluster_tol`` (relative for large moduli) are
    merged into a single point with summed multiplicity; multiplicities add up
    to the pencil size.  The two poles of the projective line are treated
    symmetrically at the same resolution: values of modulus at most
    ``cluster_tol`` snap to exactly 0, mirroring the cutoff that sends values
    of modulus beyond ``1/cluster_tol`` to infinity, so the involution
    alpha -> 1/alpha maps returned points to returned points.

    Raises :class:`SingularShift` when ``a - alpha0*b`` is numerically
    singular, which signals a bad shift rather than bad data.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ShapeError(f"pencil needs equal square matrices, got {a.shape} and {b.shape}")
    k = a.shape[0]
    if k == 0:
        return []
    shifted = a - alpha0 * b
    s = np.linalg.svd(shifted, compute_uv=False)
    problem_scale = max(
        float(np.linalg.norm(a, "fro")), abs(alpha0) * float(np.linalg.norm(b, "fro")), 1e-300
    )
    if s[-1] < 1e-12 * max(s[0], problem_scale):
        raise SingularShift(f"shift alpha0={alpha0} leaves the pencil singular")
    m = np.linalg.solve(shifted, b)
    lams = np.linalg.eigvals(m)

    inf_thresh = cluster_tol / (1.0 + cluster_tol * abs(alpha0))
    inf_count = int(np.sum(np.abs(lams) <= inf_thresh))
    finite = lams[np.abs(lams) > inf_thresh]
    alphas = alpha0 + 1.0 / finite

    points = [
        (ProjectivePoint.finite(0.0 if abs(z) <= cluster_tol else z), mult)
        for z, mult in _cluster_values(alphas, cluster_tol)
    ]
    if inf_count:
        points.append((INFINITY, inf_count))
    points.sort(key=_point_sort_key)
    return points


# --------------------------------------------------------------------------
# homogeneous determinant polynomial


@dataclass(frozen=True)
class HomogeneousPoly:
    """Homogeneous polynomial ``sum_d coeffs[d] * lam^(degree-d) * mu^d``."""

    degree: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (self.degree + 1,):
            raise ShapeError(
                f"need {self.degree + 1} coefficients for degree {self.degree}, got {coeffs.shape}"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def evaluate(self, lam: complex, mu: complex) -> complex:
        d = np.arange(self.degree + 1)
        return complex(np.sum(self.coeffs * lam ** (self.degree - d) * mu**d))

    def coefficient_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def infinity_multiplicity(self, rel_tol: float = 1e-6) -> int:
        """Order of vanishing at (lam, mu) = (0, 1): trailing near-zero coeffs."""
        norm = self.coefficient_norm()
        if norm == 0.0:
            return self.degree
        count = 0
        for c in self.coeffs[::-1]:
            if abs(c) <= rel_tol * norm:
                count += 1
            else:
                break
        return count

    def finite_root_multiset(self, rel_tol: float = 1e-6) -> np.ndarray:
        """Roots alpha of ``poly(1, -alpha)``, with multiplicity, unsorted.

        Leading coefficients below ``rel_tol`` times the coefficient norm are
        trimmed first; those degrees correspond to roots at infinity, which
        would otherwise surface as huge spurious values.
        """
        d = np.arange(self.degree + 1)
        p = self.coeffs * (-1.0) ** d  # coefficients of alpha^d
        keep = self.degree + 1 - self.infinity_multiplicity(rel_tol)
        p = p[:keep]
        if p.size <= 1:
            return np.zeros(0, dtype=complex)
        return np.roots(p[::-1])


def det_poly(a, b) -> HomogeneousPoly:
    """Coefficients of ``det(lam*a + mu*b)`` as a homogeneous polynomial.

    Recovered by evaluating the determinant at ``K+1`` sample ratios and
    solving the interpolation system; sampling at the ``K+1``-st roots of
    unity makes the system an exact inverse DFT with unit-modulus nodes, so
    the recovery is perfectly conditioned at any degree.  For ``K = 0`` the
    empty-determinant convention gives the constant polynomial 1.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ShapeError(f"det_poly needs equal square matrices, got {a.shape} and {b.shape}")
    k = a.shape[0]
    if k == 0:
        return HomogeneousPoly(0, np.array([1.0 + 0.0j]))
    nodes = np.exp(2j * np.pi * np.arange(k + 1) / (k + 1))
    values = np.array([np.linalg.det(a + t * b) for t in nodes])
    coeffs = np.fft.fft(values) / (k + 1)
    return HomogeneousPoly(k, coeffs)
