"""Spectrum, stabilizer subspaces, and the Jordan filtration of the reduced
pencil.

The reduced pencil (a~, a~^T) defines, for each point alpha of the projective
line, the stabilizer

    Stab(alpha) = {x : F(x z) = alpha F(z x) for all z}

which in quotient coordinates is the kernel of ``a~^T - alpha a~`` (the
kernel of the pencil acting on the *first* slot of the bilinear form; the
matrices a~ and a~^T act on the second slot, so the slot-one kernel is the
nullspace of the transposed combination).  Stab(infinity) is the kernel of
``a~``.  The filtration

    V^0 = Stab(alpha),
    V^{k+1} = {x : exists y in V^k with (a~^T - alpha a~) x = (a~^T - alpha0 a~) y}

climbs the Jordan chain of the shifted operator and stabilizes at V(alpha);
the stabilized spaces are independent of the regular shift alpha0 and satisfy
dim V(alpha) = dim nil + algebraic multiplicity of alpha.  All spaces are
materialized as subspaces of the full algebra containing nil, so downstream
product tests multiply honest algebra elements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra
from .errors import NoRegularValue
from .functional import Functional, ReducedPencil, reduce_pencil
from .linalg import (
    HomogeneousPoly,
    ProjectivePoint,
    Subspace,
    det_poly,
    nullspace,
    orthonormal_columns,
    pencil_eigen,
    subspace_intersect,
    subspace_equal,
    projector_distance,
    subspace_sum,
)

__all__ = [
    "SpectrumPoint",
    "Decomposition",
    "InvariantCheck",
    "char_poly",
    "choose_alpha0",
    "spectrum",
    "stab",
    "jordan_filtration",
    "decompose",
    "verify_alpha0_independence",
]

DEFAULT_TOL = 1e-9
DEFAULT_CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class SpectrumPoint:
    """One spectral point with its algebraic and geometric data.

    ``filtration_dims`` are dimensions of the filtration levels inside the
    full algebra (each level contains nil), so the final value minus
    ``dim nil`` equals the algebraic multiplicity; ``stab_dim`` is the
    stabilizer dimension within the quotient.
    """

    alpha: ProjectivePoint
    algebraic_mult: int
    stab_dim: int
    filtration_dims: tuple[int, ...]


@dataclass(frozen=True)
class InvariantCheck:
    name: str
    passed: bool
    residual: float
    detail: str = ""


@dataclass(frozen=True)
class Decomposition:
    """Full output of :func:`decompose` for one (algebra, functional) pair."""

    nil: Subspace
    chi: HomogeneousPoly
    points: tuple[SpectrumPoint, ...]
    v_spaces: dict[ProjectivePoint, Subspace]
    filtrations: dict[ProjectivePoint, tuple[Subspace, ...]]
    alpha0_used: complex | None
    tol: float
    cluster_tol: float
    checks: tuple[InvariantCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def quotient_dim(self) -> int:
        return self.nil.ambient_dim - self.nil.dim

    def point_at(self, alpha: ProjectivePoint, tol: float | None = None) -> SpectrumPoint | None:
        from .linalg import projective_close

        t = self.cluster_tol if tol is None else tol
        for p in self.points:
            if projective_close(p.alpha, alpha, t):
                return p
        return None


def char_poly(rp: ReducedPencil) -> HomogeneousPoly:
    """Homogeneous characteristic polynomial det(lam a~ + mu a~^T)."""
    return det_poly(rp.a_tilde, rp.at_tilde)


def _shift_regularity(rp: ReducedPencil, alpha0: complex) -> float:
    """sigma_min / max(sigma_max, pencil scale) of the shifted pencil."""
    shifted = rp.a_tilde - alpha0 * rp.at_tilde
    s = np.linalg.svd(shifted, compute_uv=False)
    scale = max(float(s[0]) if s.size else 0.0, (1.0 + abs(alpha0)) * rp.pencil_scale())
    return float(s[-1]) / scale if s.size else 0.0


def choose_alpha0(rp: ReducedPencil, seed: int = 0, floor: float = 1e-8) -> complex:
    """Draw a regular shift: random modulus in [0.5, 2], random phase,
    accepted when the shifted pencil is comfortably nonsingular.

    Deterministic for a fixed seed; tries up to 64 samples and raises
    :class:`NoRegularValue` if all fail, which contradicts the reduced
    pencil's nondegeneracy and therefore signals broken data.
    """
    if rp.K < 1:
        raise NoRegularValue("empty pencil has no spectrum to shift into")
    rng = np.random.default_rng(seed)
    for _ in range(64):
        modulus = rng.uniform(0.5, 2.0)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        alpha0 = complex(modulus * np.cos(phase), modulus * np.sin(phase))
        if _shift_regularity(rp, alpha0) >= floor:
            return alpha0
    raise NoRegularValue(
        "no regular shift found in 64 samples: the pencil determinant appears to vanish identically"
    )


def spectrum(
    rp: ReducedPencil, alpha0: complex, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> list[tuple[ProjectivePoint, int]]:
    """Spectral points with algebraic multiplicities, sorted by modulus then
    phase with infinity last."""
    return pencil_eigen(rp.a_tilde, rp.at_tilde, alpha0, cluster_tol=cluster_tol)


def _slot_one_operator(rp: ReducedPencil, alpha: ProjectivePoint) -> tuple[np.ndarray, float]:
    """Matrix whose nullspace is Stab(alpha) in quotient coordinates, with the
    pre-cancellation scale used as the rank-decision floor."""
    if alpha.is_infinite:
        return rp.a_tilde, rp.pencil_scale()
    m = rp.at_tilde - alpha.value * rp.a_tilde
    return m, (1.0 + abs(alpha.value)) * rp.pencil_scale()


def _stab_reduced(rp: ReducedPencil, alpha: ProjectivePoint, tol: float) -> np.ndarray:
    if rp.K == 0:
        return np.zeros((0, 0), dtype=complex)
    m, scale = _slot_one_operator(rp, alpha)
    return nullspace(m, tol, scale=scale).frame


def _filtration_reduced(
    rp: ReducedPencil, alpha: ProjectivePoint, alpha0: complex, tol: float
) -> list[np.ndarray]:
    """Quotient-coordinate frames of V^0 <= V^1 <= ... until the dimension
    stabilizes (at most K steps)."""
    s_mat, s_scale = _slot_one_operator(rp, alpha)
    t_mat = rp.at_tilde - alpha0 * rp.a_tilde
    t_scale = (1.0 + abs(alpha0)) * rp.pencil_scale()
    levels = [nullspace(s_mat, tol, scale=s_scale).frame]
    for _ in range(rp.K):
        image = orthonormal_columns(t_mat @ levels[-1], tol, scale=t_scale)
        off_image = s_mat - image @ (image.conj().T @ s_mat)
        nxt = nullspace(off_image, tol, scale=s_scale).frame
        if nxt.shape[1] <= levels[-1].shape[1]:
            break
        levels.append(nxt)
    return levels


def _lift(rp: ReducedPencil, quotient_frame_cols: np.ndarray, tol: float) -> Subspace:
    """Preimage in the full algebra: quotient directions plus all of nil."""
    ambient = rp.nil.ambient_dim
    frame = np.hstack([rp.quotient_frame @ quotient_frame_cols, rp.nil.frame])
    return Subspace(ambient, frame, tol)


def stab(alg: Algebra, f: Functional, alpha: ProjectivePoint, tol: float = DEFAULT_TOL) -> Subspace:
    """Stabilizer subspace of the full algebra at ``alpha`` (contains nil).

    Equals {x : F(x z) = alpha F(z x) for all z} for finite alpha and
    {x : F(z x) = 0 for all z} at infinity.
    """
    rp = reduce_pencil(alg, f, tol)
    return _lift(rp, _stab_reduced(rp, alpha, tol), tol)


def jordan_filtration(
    alg: Algebra,
    f: Functional,
    alpha: ProjectivePoint,
    alpha0: complex,
    tol: float = DEFAULT_TOL,
) -> list[Subspace]:
    """Increasing filtration V^0 <= V^1 <= ... <= V(alpha) as subspaces of the
    full algebra, each containing nil.  Requires a regular shift
    ``alpha0 != alpha``."""
    if not alpha.is_infinite and alpha.value == alpha0:
        raise NoRegularValue("the shift must differ from the point under study")
    rp = reduce_pencil(alg, f, tol)
    return [_lift(rp, w, tol) for w in _filtration_reduced(rp, alpha, alpha0, tol)]


def _decomposition_checks(
    alg: Algebra,
    nil: Subspace,
    chi: HomogeneousPoly,
    points: list[SpectrumPoint],
    v_spaces: dict[ProjectivePoint, Subspace],
    tol: float,
) -> list[InvariantCheck]:
    checks = []
    k = alg.dim - nil.dim

    total = sum(p.algebraic_mult for p in points)
    checks.append(
        InvariantCheck(
            "multiplicities_sum_to_quotient_dim",
            total == k,
            float(abs(total - k)),
            f"sum {total} vs K {k}",
        )
    )

    worst = 0
    for p in points:
        v = v_spaces[p.alpha]
        worst = max(worst, abs(v.dim - nil.dim - p.algebraic_mult))
    checks.append(
        InvariantCheck(
            "v_dim_equals_nil_plus_multiplicity",
            worst == 0,
            float(worst),
            "dim V(alpha) - dim nil vs algebraic multiplicity",
        )
    )

    worst = 0
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            inter = subspace_intersect(
                v_spaces[points[i].alpha], v_spaces[points[j].alpha], tol
            )
            worst = max(worst, abs(inter.dim - nil.dim))
    checks.append(
        InvariantCheck(
            "pairwise_v_intersections_equal_nil",
            worst == 0,
            float(worst),
            "dim(V(a) ^ V(b)) vs dim nil over all pairs",
        )
    )

    span = nil
    for p in points:
        span = subspace_sum(span, v_spaces[p.alpha])
    checks.append(
        InvariantCheck(
            "v_spaces_span_algebra",
            span.dim == alg.dim,
            float(alg.dim - span.dim),
            f"sum of V(alpha) has dim {span.dim} of {alg.dim}",
        )
    )

    # backward-error normalization: divide by the evaluation magnitude
    # sum_d |c_d| |alpha|^d, since |alpha|^K dwarfs the coefficient norm for
    # large roots even when alpha is a perfect root
    worst_rel = 0.0
    d = np.arange(chi.degree + 1)
    coeff_norm = chi.coefficient_norm()
    for p in points:
        if p.alpha.is_infinite:
            continue
        magnitude = float(np.sum(np.abs(chi.coeffs) * np.abs(p.alpha.value) ** d))
        value = abs(chi.evaluate(1.0, -p.alpha.value))
        # floor by the coefficient norm: at alpha = 0 the evaluation magnitude
        # collapses to |c_0|, which is exactly the quantity under test
        worst_rel = max(worst_rel, value / max(magnitude, coeff_norm, 1e-300))
    checks.append(
        InvariantCheck(
            "char_poly_vanishes_on_spectrum",
            worst_rel < 1e-6,
            worst_rel,
            "max |chi(1, -alpha)| over the evaluation magnitude",
        )
    )

    inf_mult = next((p.algebraic_mult for p in points if p.alpha.is_infinite), 0)
    chi_inf = chi.infinity_multiplicity()
    checks.append(
        InvariantCheck(
            "char_poly_infinity_multiplicity",
            chi_inf == inf_mult,
            float(abs(chi_inf - inf_mult)),
            f"trailing coefficient vanishing order {chi_inf} vs multiplicity {inf_mult}",
        )
    )
    return checks


def decompose(
    alg: Algebra,
    f: Functional,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> Decomposition:
    """Run the full pipeline: kernels, reduced pencil, characteristic
    polynomial, spectrum, and one Jordan filtration per spectral point.

    The result records the shift used, all dimensions, and a list of
    invariant checks (multiplicity counts, directness of the splitting,
    vanishing of the characteristic polynomial)."""
    rp = reduce_pencil(alg, f, tol)
    if rp.K == 0:
        chi = HomogeneousPoly(0, np.array([1.0 + 0.0j]))
        checks = [
            InvariantCheck("multiplicities_sum_to_quotient_dim", True, 0.0, "empty spectrum"),
            InvariantCheck(
                "v_spaces_span_algebra", rp.nil.dim == alg.dim, 0.0, "nil is the whole algebra"
            ),
        ]
        return Decomposition(
            rp.nil, chi, (), {}, {}, None, tol, cluster_tol, tuple(checks)
        )

    alpha0 = choose_alpha0(rp, seed)
    chi = char_poly(rp)
    raw_points = spectrum(rp, alpha0, cluster_tol)

    points: list[SpectrumPoint] = []
    v_spaces: dict[ProjectivePoint, Subspace] = {}
    filtrations: dict[ProjectivePoint, tuple[Subspace, ...]] = {}
    for alpha, mult in raw_points:
        levels = [_lift(rp, w, tol) for w in _filtration_reduced(rp, alpha, alpha0, tol)]
        dims = tuple(s.dim for s in levels)
        points.append(SpectrumPoint(alpha, mult, dims[0] - rp.nil.dim, dims))
        v_spaces[alpha] = levels[-1]
        filtrations[alpha] = tuple(levels)

    checks = _decomposition_checks(alg, rp.nil, chi, points, v_spaces, tol)
    return Decomposition(
        rp.nil,
        chi,
        tuple(points),
        v_spaces,
        filtrations,
        alpha0,
        tol,
        cluster_tol,
        tuple(checks),
    )


def verify_alpha0_independence(
    alg: Algebra,
    f: Functional,
    alpha: ProjectivePoint,
    alpha0_a: complex,
    alpha0_b: complex,
    tol: float = DEFAULT_TOL,
    compare_tol: float = 1e-8,
) -> tuple[bool, float]:
    """Compare every filtration level computed with two different regular
    shifts; returns (all levels equal, max projector distance)."""
    lev_a = jordan_filtration(alg, f, alpha, alpha0_a, tol)
    lev_b = jordan_filtration(alg, f, alpha, alpha0_b, tol)
    if [s.dim for s in lev_a] != [s.dim for s in lev_b]:
        return False, float("inf")
    worst = 0.0
    for sa, sb in zip(lev_a, lev_b):
        worst = max(worst, projector_distance(sa, sb))
        if not subspace_equal(sa, sb, compare_tol):
            return False, worst
    return worst < compare_tol, worst
