"""Linear functionals, the pairing matrix F(e_i e_j), and its kernels.

A functional F is a coordinate vector f with f_i = F(e_i).  Pushing the
multiplication table through F gives the pairing matrix a[i, j] = F(e_i e_j),
a bilinear form on the algebra.  Its left kernel, right kernel and their
intersection (the two-sided degenerate directions, ``nil``) drive the whole
decomposition: compressing the form to an orthonormal complement of ``nil``
yields the reduced pencil (a~, a~^T) that is nondegenerate for generic
pencil combinations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import Algebra, Element, pairwise_products
from .errors import DimensionMismatch, TheoremViolation
from .linalg import Subspace, complement, nullspace, rank, subspace_equal, subspace_intersect

__all__ = [
    "Functional",
    "GramData",
    "ReducedPencil",
    "Kernels",
    "random_functional",
    "matrix_trace_functional",
    "gram",
    "kernels",
    "reduce_pencil",
    "reduce",
    "MultiplicativeReport",
    "is_multiplicative",
    "NilIdealReport",
    "nil_ideal_check",
]

#: verdicts of :func:`is_multiplicative`
MULTIPLICATIVE = "Multiplicative"
RANK_ONE_BUT_NOT_UNIT = "RankOneButNotUnit"
NOT_RANK_ONE = "NotRankOne"


@dataclass(frozen=True)
class Functional:
    """Linear functional with coordinates f_i = F(e_i)."""

    coords: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.coords, dtype=complex)
        if v.ndim != 1:
            raise DimensionMismatch("functional coordinates must be a vector")
        v.setflags(write=False)
        object.__setattr__(self, "coords", v)

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    def __call__(self, x) -> complex:
        xv = x.coords if isinstance(x, Element) else np.asarray(x, dtype=complex)
        if xv.shape != self.coords.shape:
            raise DimensionMismatch("element does not match the functional's dimension")
        return complex(xv @ self.coords)


def random_functional(dim: int, rng: np.random.Generator) -> Functional:
    """Independent complex-Gaussian coordinates, unit variance per entry."""
    return Functional((rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) / np.sqrt(2))


def matrix_trace_functional(weight: np.ndarray) -> Functional:
    """The functional X -> tr(weight @ X) on the matrix algebra, for the
    row-major e_{ij} basis of :func:`algscope.algebra.mat_algebra`."""
    w = np.asarray(weight, dtype=complex)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DimensionMismatch("weight must be a square matrix")
    # tr(w e_{ij}) = w[j, i]
    return Functional(w.T.reshape(-1))


@dataclass(frozen=True)
class GramData:
    """The pairing matrix a[i, j] = F(e_i e_j) with its transpose cached."""

    a: np.ndarray
    at: np.ndarray

    def __post_init__(self):
        for name in ("a", "at"):
            m = np.asarray(getattr(self, name), dtype=complex)
            m.setflags(write=False)
            object.__setattr__(self, name, m)


def gram(alg: Algebra, f: Functional) -> GramData:
    """Pairing matrix of the multiplication table through F."""
    if f.dim != alg.dim:
        raise DimensionMismatch("functional does not match the algebra dimension")
    a = np.einsum("ijk,k->ij", alg.structure, f.coords)
    return GramData(a, a.T.copy())


class Kernels(NamedTuple):
    left: Subspace
    right: Subspace
    nil: Subspace


def kernels(alg: Algebra, f: Functional, tol: float = 1e-9) -> Kernels:
    """Left kernel {x : F(x y) = 0 for all y}, right kernel
    {x : F(y x) = 0 for all y}, and their intersection ``nil``."""
    g = gram(alg, f)
    ker_l = nullspace(g.at, tol)
    ker_r = nullspace(g.a, tol)
    nil = subspace_intersect(ker_l, ker_r, tol)
    return Kernels(ker_l, ker_r, nil)


@dataclass(frozen=True)
class ReducedPencil:
    """The pairing compressed to an orthonormal complement of ``nil``.

    ``a_tilde = Q^T a Q`` where the columns of ``Q = quotient_frame`` complete
    ``nil`` to a basis; ``at_tilde`` is its transpose.  ``K`` is the quotient
    dimension.  Downstream results must not depend on the choice of Q.
    """

    nil: Subspace
    quotient_frame: np.ndarray
    a_tilde: np.ndarray
    at_tilde: np.ndarray
    K: int

    def __post_init__(self):
        for name in ("quotient_frame", "a_tilde", "at_tilde"):
            m = np.asarray(getattr(self, name), dtype=complex)
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    def pencil_scale(self) -> float:
        """Magnitude of the pencil before any cancellation; rank-decision floor."""
        if self.K == 0:
            return 1.0
        return max(float(np.linalg.norm(self.a_tilde, "fro")), 1e-300)


def reduce_pencil(
    alg: Algebra, f: Functional, tol: float = 1e-9, quotient_frame: np.ndarray | None = None
) -> ReducedPencil:
    """Compress the pairing to a complement of its two-sided kernel.

    ``quotient_frame`` may supply any orthonormal complement of ``nil``; by
    default the canonical SVD complement is used.
    """
    ker = kernels(alg, f, tol)
    nil = ker.nil
    if quotient_frame is None:
        q = complement(nil).frame
    else:
        q = np.asarray(quotient_frame, dtype=complex)
        if q.shape != (alg.dim, alg.dim - nil.dim):
            raise DimensionMismatch(
                f"quotient frame shape {q.shape} does not complement nil (dim {nil.dim})"
            )
        ortho = q.conj().T @ q - np.eye(q.shape[1])
        overlap = nil.frame.conj().T @ q
        if (ortho.size and np.max(np.abs(ortho)) > 10 * tol) or (
            overlap.size and np.max(np.abs(overlap)) > 10 * tol
        ):
            raise DimensionMismatch("quotient frame is not an orthonormal complement of nil")
    g = gram(alg, f)
    a_tilde = q.T @ g.a @ q
    return ReducedPencil(nil, q, a_tilde, a_tilde.T.copy(), alg.dim - nil.dim)


# the operation is published under this name as well
reduce = reduce_pencil


@dataclass(frozen=True)
class MultiplicativeReport:
    verdict: str
    rank: int
    unit_value: complex
    max_residual: float


def is_multiplicative(alg: Algebra, f: Functional, tol: float = 1e-9) -> MultiplicativeReport:
    """Classify F by the rank-1 criterion.

    A functional with ``rank a = 1`` and ``F(1) = 1`` must satisfy
    ``F(e_i e_j) = F(e_i) F(e_j)`` for every pair; that identity is verified
    directly and a failure raises :class:`TheoremViolation` because it can
    only come from a defect, not from the input.
    """
    g = gram(alg, f)
    r = rank(g.a, tol)
    unit_value = f(alg.unit)
    if r != 1:
        return MultiplicativeReport(NOT_RANK_ONE, r, unit_value, float("nan"))
    if abs(unit_value - 1.0) >= tol:
        return MultiplicativeReport(RANK_ONE_BUT_NOT_UNIT, r, unit_value, float("nan"))
    residual = float(np.max(np.abs(g.a - np.outer(f.coords, f.coords))))
    if residual >= tol * max(1.0, float(np.abs(f.coords).max()) ** 2):
        raise TheoremViolation(
            f"rank-1 functional with F(1)=1 failed the product identity (residual {residual:.3e})"
        )
    return MultiplicativeReport(MULTIPLICATIVE, r, unit_value, residual)


@dataclass(frozen=True)
class NilIdealReport:
    premise_holds: bool
    is_ideal: bool | None
    max_residual: float


def nil_ideal_check(alg: Algebra, f: Functional, tol: float = 1e-9) -> NilIdealReport:
    """When left kernel = right kernel = nil, verify that nil is a two-sided
    ideal by projecting basis-by-frame products onto nil's complement."""
    ker = kernels(alg, f, tol)
    premise = subspace_equal(ker.left, ker.nil, 100 * tol) and subspace_equal(
        ker.right, ker.nil, 100 * tol
    )
    if not premise:
        return NilIdealReport(False, None, float("nan"))
    if ker.nil.dim == 0:
        return NilIdealReport(True, True, 0.0)
    basis = np.eye(alg.dim, dtype=complex)
    worst = 0.0
    for prods in (
        pairwise_products(alg, basis, ker.nil.frame),
        pairwise_products(alg, ker.nil.frame, basis),
    ):
        flat = prods.reshape(-1, alg.dim).T
        worst = max(worst, float(np.max(ker.nil.residual(flat))))
    return NilIdealReport(True, worst < tol, worst)
