"""File formats and report serialization.

All documents are JSON.  Complex numbers serialize as ``[re, im]`` pairs and
the infinite spectral point as the string ``"inf"``, avoiding any locale or
formatting ambiguity.  Structure constants are stored sparsely as
``[i, j, k, re, im]`` rows because the reference tensors are overwhelmingly
zero.  Serialization is deterministic: identical inputs produce byte-identical
documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra
from .errors import ParseError
from .functional import Functional
from .linalg import INFINITY, ProjectivePoint
from .spectral import Decomposition
from .verify import Finding

__all__ = [
    "algebra_to_doc",
    "algebra_from_doc",
    "functional_to_doc",
    "functional_from_doc",
    "load_algebra",
    "load_functional",
    "save_algebra",
    "save_functional",
    "SpectrumRow",
    "ReportDocument",
    "report_from_decomposition",
    "report_from_findings",
    "render_text",
]


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _unpair(value, where: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise ParseError("expected a [re, im] pair", where)
    return complex(float(value[0]), float(value[1]))


def _alpha_out(p: ProjectivePoint):
    return "inf" if p.is_infinite else _pair(p.value)


def _alpha_in(value, where: str) -> ProjectivePoint:
    if value == "inf":
        return INFINITY
    return ProjectivePoint.finite(_unpair(value, where))


# --------------------------------------------------------------------------
# algebra and functional files


def algebra_to_doc(alg: Algebra) -> dict:
    entries = []
    c = alg.structure
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                z = c[i, j, k]
                if z != 0:
                    entries.append([i, j, k, z.real, z.imag])
    doc = {
        "dim": alg.dim,
        "unit": [_pair(z) for z in alg.unit],
        "structure": entries,
    }
    if alg.basis_labels is not None:
        doc["basis"] = list(alg.basis_labels)
    return doc


def algebra_from_doc(doc: dict) -> Algebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be an object")
    try:
        dim = int(doc["dim"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("missing or non-integer value", "dim") from None
    if dim < 1:
        raise ParseError("must be >= 1", "dim")
    unit_raw = doc.get("unit")
    if not isinstance(unit_raw, list) or len(unit_raw) != dim:
        raise ParseError(f"expected a list of {dim} [re, im] pairs", "unit")
    unit = np.array([_unpair(v, f"unit[{i}]") for i, v in enumerate(unit_raw)])
    structure = np.zeros((dim, dim, dim), dtype=complex)
    entries = doc.get("structure", [])
    if not isinstance(entries, list):
        raise ParseError("expected a list of [i, j, k, re, im] rows", "structure")
    seen: set[tuple[int, int, int]] = set()
    for row_no, row in enumerate(entries):
        where = f"structure[{row_no}]"
        if not isinstance(row, (list, tuple)) or len(row) != 5:
            raise ParseError("expected [i, j, k, re, im]", where)
        i, j, k = row[:3]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
            raise ParseError("indices must be integers", where)
        if not all(0 <= x < dim for x in (i, j, k)):
            raise ParseError(f"indices out of range [0, {dim})", where)
        if (i, j, k) in seen:
            raise ParseError(f"duplicate entry for ({i}, {j}, {k})", where)
        seen.add((i, j, k))
        structure[i, j, k] = complex(float(row[3]), float(row[4]))
    labels = doc.get("basis")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != dim:
            raise ParseError(f"expected {dim} labels", "basis")
        labels = tuple(str(s) for s in labels)
    return Algebra(dim, structure, unit, labels)


def functional_to_doc(f: Functional) -> dict:
    return {"coords": [_pair(z) for z in f.coords]}


def functional_from_doc(doc: dict) -> Functional:
    if not isinstance(doc, dict) or "coords" not in doc:
        raise ParseError("functional document needs a 'coords' list", "coords")
    coords = doc["coords"]
    if not isinstance(coords, list) or not coords:
        raise ParseError("expected a non-empty list of [re, im] pairs", "coords")
    return Functional(np.array([_unpair(v, f"coords[{i}]") for i, v in enumerate(coords)]))


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(str(exc), path) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}", path) from None


def load_algebra(path: str) -> Algebra:
    return algebra_from_doc(_load_json(path))


def load_functional(path: str) -> Functional:
    return functional_from_doc(_load_json(path))


def _dump_json(doc: dict, path: str):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(json.dumps(doc, indent=2))
        handle.write("\n")


def save_algebra(alg: Algebra, path: str):
    _dump_json(algebra_to_doc(alg), path)


def save_functional(f: Functional, path: str):
    _dump_json(functional_to_doc(f), path)


# --------------------------------------------------------------------------
# report documents


@dataclass(frozen=True)
class SpectrumRow:
    alpha: ProjectivePoint
    algebraic_mult: int
    stab_dim: int
    filtration_dims: tuple[int, ...]


@dataclass(frozen=True)
class ReportDocument:
    """Machine-readable analysis or verification report.

    Round-trips losslessly through :meth:`to_json` / :meth:`from_json`.
    """

    kind: str  # "analyze" or "verify"
    tol: float
    cluster_tol: float
    seed: int
    alpha0: complex | None = None
    nil_dim: int | None = None
    chi: tuple[complex, ...] | None = None
    spectrum: tuple[SpectrumRow, ...] = ()
    v_frames: tuple[tuple[tuple[complex, ...], ...], ...] | None = None
    findings: tuple[Finding, ...] = ()
    checks: tuple[tuple[str, bool, float, str], ...] = ()

    @property
    def all_checks_passed(self) -> bool:
        return all(passed for _, passed, _, _ in self.checks)

    def to_doc(self) -> dict:
        doc: dict = {
            "kind": self.kind,
            "tolerances": {"tol": self.tol, "cluster_tol": self.cluster_tol},
            "seed": self.seed,
        }
        if self.alpha0 is not None:
            doc["alpha0"] = _pair(self.alpha0)
        if self.nil_dim is not None:
            doc["nil_dim"] = self.nil_dim
        if self.chi is not None:
            doc["chi"] = [_pair(z) for z in self.chi]
        if self.spectrum:
            doc["spectrum"] = [
                {
                    "alpha": _alpha_out(row.alpha),
                    "algebraic_mult": row.algebraic_mult,
                    "stab_dim": row.stab_dim,
                    "filtration_dims": list(row.filtration_dims),
                }
                for row in self.spectrum
            ]
        if self.v_frames is not None:
            doc["v_frames"] = [
                [[_pair(z) for z in col] for col in frame] for frame in self.v_frames
            ]
        if self.findings:
            doc["findings"] = [
                {
                    "theorem_id": f.theorem_id,
                    "passed": f.passed,
                    "max_residual": f.max_residual,
                    "witness": (
                        f.witness
                        if f.witness is None or isinstance(f.witness, str)
                        else repr(f.witness)
                    ),
                    "samples": f.samples,
                    "notes": list(f.notes),
                }
                for f in self.findings
            ]
        if self.checks:
            doc["checks"] = [
                {"name": n, "passed": p, "residual": r, "detail": d} for n, p, r, d in self.checks
            ]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), indent=2) + "\n"

    @classmethod
    def from_doc(cls, doc: dict) -> "ReportDocument":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise ParseError("report document needs a 'kind'", "kind")
        tolerances = doc.get("tolerances", {})
        spectrum = tuple(
            SpectrumRow(
                _alpha_in(row.get("alpha"), "spectrum.alpha"),
                int(row["algebraic_mult"]),
                int(row["stab_dim"]),
                tuple(int(d) for d in row["filtration_dims"]),
            )
            for row in doc.get("spectrum", [])
        )
        findings = tuple(
            Finding(
                str(f["theorem_id"]),
                bool(f["passed"]),
                float(f["max_residual"]),
                f.get("witness"),
                int(f.get("samples", 0)),
                tuple(f.get("notes", ())),
            )
            for f in doc.get("findings", [])
        )
        checks = tuple(
            (str(c["name"]), bool(c["passed"]), float(c["residual"]), str(c.get("detail", "")))
            for c in doc.get("checks", [])
        )
        v_frames = None
        if "v_frames" in doc:
            v_frames = tuple(
                tuple(tuple(_unpair(z, "v_frames") for z in col) for col in frame)
                for frame in doc["v_frames"]
            )
        chi = None
        if "chi" in doc:
            chi = tuple(_unpair(z, "chi") for z in doc["chi"])
        return cls(
            kind=str(doc["kind"]),
            tol=float(tolerances.get("tol", 1e-9)),
            cluster_tol=float(tolerances.get("cluster_tol", 1e-6)),
            seed=int(doc.get("seed", 0)),
            alpha0=_unpair(doc["alpha0"], "alpha0") if "alpha0" in doc else None,
            nil_dim=int(doc["nil_dim"]) if "nil_dim" in doc else None,
            chi=chi,
            spectrum=spectrum,
            v_frames=v_frames,
            findings=findings,
            checks=checks,
        )

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}") from None
        return cls.from_doc(doc)


def report_from_decomposition(
    dec: Decomposition, seed: int, include_frames: bool = False
) -> ReportDocument:
    spectrum = tuple(
        SpectrumRow(p.alpha, p.algebraic_mult, p.stab_dim, p.filtration_dims) for p in dec.points
    )
    v_frames = None
    if include_frames:
        v_frames = tuple(
            tuple(tuple(complex(z) for z in col) for col in dec.v_spaces[p.alpha].frame.T)
            for p in dec.points
        )
    return ReportDocument(
        kind="analyze",
        tol=dec.tol,
        cluster_tol=dec.cluster_tol,
        seed=seed,
        alpha0=dec.alpha0_used,
        nil_dim=dec.nil.dim,
        chi=tuple(complex(z) for z in dec.chi.coeffs),
        spectrum=spectrum,
        v_frames=v_frames,
        findings=(),
        checks=tuple((c.name, c.passed, c.residual, c.detail) for c in dec.checks),
    )


def _stringify_witness(f: Finding) -> Finding:
    if f.witness is None or isinstance(f.witness, str):
        return f
    return Finding(f.theorem_id, f.passed, f.max_residual, repr(f.witness), f.samples, f.notes)


def report_from_findings(
    findings, seed: int, tol: float, cluster_tol: float
) -> ReportDocument:
    return ReportDocument(
        kind="verify",
        tol=tol,
        cluster_tol=cluster_tol,
        seed=seed,
        findings=tuple(_stringify_witness(f) for f in findings),
    )


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.6g}{z.imag:+.6g}i"


def render_text(report: ReportDocument) -> str:
    """Human-readable table rendering of a report."""
    lines = [f"report: {report.kind}"]
    lines.append(
        f"tol={report.tol:g}  cluster_tol={report.cluster_tol:g}  seed={report.seed}"
    )
    if report.alpha0 is not None:
        lines.append(f"alpha0 = {_fmt_complex(report.alpha0)}")
    if report.nil_dim is not None:
        lines.append(f"dim nil = {report.nil_dim}")
    if report.chi is not None:
        lines.append("chi coefficients (lam^K .. mu^K):")
        lines.append("  " + "  ".join(_fmt_complex(z) for z in report.chi))
    if report.spectrum:
        lines.append("spectrum:")
        lines.append(f"  {'alpha':>24}  {'mult':>4}  {'stab':>4}  filtration dims")
        for row in report.spectrum:
            alpha = "inf" if row.alpha.is_infinite else _fmt_complex(row.alpha.value)
            dims = " <= ".join(str(d) for d in row.filtration_dims)
            lines.append(
                f"  {alpha:>24}  {row.algebraic_mult:>4}  {row.stab_dim:>4}  {dims}"
            )
    if report.findings:
        lines.append("findings:")
        for f in report.findings:
            status = "pass" if f.passed else "FAIL"
            note = f"  ({'; '.join(f.notes)})" if f.notes else ""
            lines.append(
                f"  [{status}] {f.theorem_id}: max residual {f.max_residual:.3e}"
                f" over {f.samples} samples{note}"
            )
    if report.checks:
        lines.append("invariant checks:")
        for name, passed, residual, detail in report.checks:
            status = "pass" if passed else "FAIL"
            extra = f" ({detail})" if detail else ""
            lines.append(f"  [{status}] {name}: residual {residual:.3e}{extra}")
    return "\n".join(lines) + "\n"
