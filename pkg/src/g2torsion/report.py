"""Bracket input documents and torsion reports, with exact JSON serialization.

External matrices are written row by row, row ``i`` holding the coordinates of
``A e_i``; this coincides with the array ``M[i][j] = M(e_i, e_j)`` used for
bilinear objects (2-forms, T, j(τ₃), Ricci).  Rationals are strings such as
``"2/3"``; forms are maps from multi-index strings to coefficients, for example
``{"36": "2/3"}`` for (2/3)e³⁶.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import classifier, engine, identities, su3
from .exterior import KForm, is_zero_matrix, sharp, to_fraction, trace, transpose

__all__ = [
    "InputError",
    "BracketInput",
    "TorsionReportDoc",
    "parse_bracket_input",
    "load_bracket_input",
    "build_report",
    "format_scalar",
    "format_form",
]


class InputError(ValueError):
    """Malformed bracket input; the message says where and why."""


def format_scalar(x: Fraction) -> str:
    return str(Fraction(x))


def _parse_scalar(x, where: str) -> Fraction:
    if isinstance(x, bool) or x is None:
        raise InputError(f"{where}: expected a rational number, got {json.dumps(x)}")
    try:
        return to_fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: cannot read {x!r} as a rational number ({exc})") from None


def _rows_out(M: np.ndarray) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in M]


def _rows_in(rows, n: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != n:
        size = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise InputError(f"{where}: expected {n} rows, got {size}")
    out = np.full((n, n), Fraction(0), dtype=object)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            size = len(row) if isinstance(row, list) else type(row).__name__
            raise InputError(f"{where}: row {i + 1} must have {n} entries, got {size}")
        for j, x in enumerate(row):
            out[i, j] = _parse_scalar(x, f"{where}[{i + 1}][{j + 1}]")
    return out


def _form_out(a: KForm) -> dict[str, str]:
    return {"".join(map(str, k)): format_scalar(c) for k, c in sorted(a.coeffs.items())}


def _form_in(data, dim: int, degree: int, where: str) -> KForm:
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected a map from multi-indices to coefficients")
    coeffs = {}
    for key, c in data.items():
        if len(key) != degree or not key.isdigit():
            raise InputError(f"{where}: bad multi-index {key!r} for a {degree}-form")
        coeffs[tuple(int(ch) for ch in key)] = _parse_scalar(c, f"{where}[{key}]")
    return KForm(dim, degree, coeffs)


def format_form(a: KForm) -> str:
    """Readable rendering such as ``2/3 e^36 - 4/3 e^17``."""
    if a.is_zero():
        return "0"
    parts = []
    for k, c in sorted(a.coeffs.items(), key=lambda kv: kv[0]):
        label = "e^" + "".join(map(str, k)) if k else "1"
        mag = abs(c)
        term = label if mag == 1 else f"{mag} {label}"
        parts.append(("- " if c < 0 else "+ ") + term)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass
class BracketInput:
    """A bracket ``[e_7, u] = A u`` as supplied on disk.

    ``rows`` is the matrix in the external layout; :attr:`A` is the same map in
    the library's column-vector convention.
    """

    rows: np.ndarray
    label: str | None = None

    @classmethod
    def from_matrix(cls, A: np.ndarray, label: str | None = None) -> "BracketInput":
        return cls(transpose(A), label)

    @property
    def A(self) -> np.ndarray:
        return transpose(self.rows)

    def to_dict(self) -> dict:
        out = {} if self.label is None else {"label": self.label}
        out["A"] = _rows_out(self.rows)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


def parse_bracket_input(text: str, source: str = "<input>") -> BracketInput:
    try:
        data = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{source}: expected a JSON object with key 'A'")
    if "A" not in data:
        raise InputError(f"{source}: missing key 'A' (a 6x6 matrix)")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise InputError(f"{source}: 'label' must be a string")
    rows = data["A"]
    if not (isinstance(rows, list) and len(rows) == 6 and all(isinstance(r, list) and len(r) == 6 for r in rows)):
        shape = (
            f"{len(rows)} rows with lengths {[len(r) if isinstance(r, list) else '-' for r in rows]}"
            if isinstance(rows, list)
            else type(rows).__name__
        )
        raise InputError(f"{source}: 'A' must be a 6x6 matrix, got {shape}")
    return BracketInput(_rows_in(rows, 6, f"{source}: A"), label)


def load_bracket_input(path: str | Path) -> BracketInput:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{p}: cannot read file ({exc.strerror})") from None
    return parse_bracket_input(text, str(p))


_SPLIT_MATRICES = ("s_plus", "s_minus", "c_plus", "c_minus")


@dataclass(eq=False)
class TorsionReportDoc:
    """Everything computed for one bracket, in exact arithmetic."""

    label: str | None
    A: np.ndarray
    split: su3.SU3Split
    trace: Fraction
    alpha: KForm
    J_alpha_sharp: list[Fraction]
    tau0: Fraction
    tau1: KForm
    tau2: KForm
    j_tau3: np.ndarray
    T: np.ndarray
    div_T: KForm
    ricci: np.ndarray
    torsion_norm_sq: Fraction
    torsion_class: str
    admissible: bool
    unimodular: bool
    harmonic: bool
    harmonic_guaranteed_by_class: bool
    checks: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v == "pass" for v in self.checks.values())

    @property
    def failed_checks(self) -> list[str]:
        return [k for k, v in self.checks.items() if v != "pass"]

    def to_dict(self) -> dict:
        s = self.split
        return {
            "label": self.label,
            "A": _rows_out(transpose(self.A)),
            "split": {
                "tr_part": format_scalar(s.tr_part),
                "j_part": format_scalar(s.j_part),
                **{name: _rows_out(transpose(getattr(s, name))) for name in _SPLIT_MATRICES},
            },
            "trace": format_scalar(self.trace),
            "alpha": _form_out(self.alpha),
            "J_alpha_sharp": [format_scalar(x) for x in self.J_alpha_sharp],
            "tau0": format_scalar(self.tau0),
            "tau1": _form_out(self.tau1),
            "tau2": _form_out(self.tau2),
            "j_tau3": _rows_out(self.j_tau3),
            "T": _rows_out(self.T),
            "div_T": _form_out(self.div_T),
            "ricci": _rows_out(self.ricci),
            "torsion_norm_sq": format_scalar(self.torsion_norm_sq),
            "class": self.torsion_class,
            "admissible": self.admissible,
            "unimodular": self.unimodular,
            "harmonic": self.harmonic,
            "harmonic_guaranteed_by_class": self.harmonic_guaranteed_by_class,
            "checks": [{"name": k, "result": v} for k, v in self.checks.items()],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "TorsionReportDoc":
        def rows(key, n, src=data):
            return _rows_in(src[key], n, key)

        sp = data["split"]
        split = su3.SU3Split(
            tr_part=_parse_scalar(sp["tr_part"], "split.tr_part"),
            s_plus=transpose(rows("s_plus", 6, sp)),
            s_minus=transpose(rows("s_minus", 6, sp)),
            j_part=_parse_scalar(sp["j_part"], "split.j_part"),
            c_plus=transpose(rows("c_plus", 6, sp)),
            c_minus=transpose(rows("c_minus", 6, sp)),
        )
        return cls(
            label=data["label"],
            A=transpose(rows("A", 6)),
            split=split,
            trace=_parse_scalar(data["trace"], "trace"),
            alpha=_form_in(data["alpha"], 6, 1, "alpha"),
            J_alpha_sharp=[_parse_scalar(x, "J_alpha_sharp") for x in data["J_alpha_sharp"]],
            tau0=_parse_scalar(data["tau0"], "tau0"),
            tau1=_form_in(data["tau1"], 7, 1, "tau1"),
            tau2=_form_in(data["tau2"], 7, 2, "tau2"),
            j_tau3=rows("j_tau3", 7),
            T=rows("T", 7),
            div_T=_form_in(data["div_T"], 7, 1, "div_T"),
            ricci=rows("ricci", 7),
            torsion_norm_sq=_parse_scalar(data["torsion_norm_sq"], "torsion_norm_sq"),
            torsion_class=data["class"],
            admissible=bool(data["admissible"]),
            unimodular=bool(data["unimodular"]),
            harmonic=bool(data["harmonic"]),
            harmonic_guaranteed_by_class=bool(data["harmonic_guaranteed_by_class"]),
            checks={c["name"]: c["result"] for c in data["checks"]},
        )

    @classmethod
    def from_json(cls, text: str) -> "TorsionReportDoc":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorsionReportDoc):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def to_text(self) -> str:
        def mat(M):
            width = max(len(format_scalar(x)) for x in M.flat)
            return "\n".join("    " + " ".join(format_scalar(x).rjust(width) for x in row) for row in M)

        s = self.split
        lines = [
            f"bracket: {self.label or '(unnamed)'}",
            "  A (row i = A e_i):",
            mat(transpose(self.A)),
            f"  tr A = {self.trace}   tr-part = {s.tr_part}   J-part = {s.j_part}",
            "  nonzero SU(3)-components: " + (", ".join(sorted(s.nonzero())) or "none"),
            f"  alpha = {format_form(self.alpha)}",
            f"  tau0 = {self.tau0}",
            f"  tau1 = {format_form(self.tau1)}",
            f"  tau2 = {format_form(self.tau2)}",
            "  j(tau3):",
            mat(self.j_tau3),
            "  T (T[i][j] = T(e_i, e_j)):",
            mat(self.T),
            f"  |T|^2 = {self.torsion_norm_sq}",
            f"  div T = {format_form(self.div_T)}",
            "  Ricci:",
            mat(self.ricci),
            f"  class: {self.torsion_class}",
            f"  admissible: {self.admissible}   unimodular: {self.unimodular}",
            f"  harmonic: {self.harmonic}   guaranteed by class: {self.harmonic_guaranteed_by_class}",
        ]
        if self.checks:
            lines.append("  checks:")
            lines.extend(f"    {k}: {v}" for k, v in self.checks.items())
        return "\n".join(lines)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def build_report(A: np.ndarray, label: str | None = None, oracle: bool = True) -> TorsionReportDoc:
    """Compute the full report for a bracket given in column-vector convention.

    With ``oracle`` the closed-form values are cross-checked against the
    definitional computation, the three torsion-tensor routes and the direct
    divergence; otherwise only the cheap consistency checks run.
    """
    if getattr(A, "shape", None) != (6, 6):
        raise InputError(f"expected a 6x6 bracket, got shape {getattr(A, 'shape', None)}")
    J = su3.constants().J
    parts = su3.split(A)
    t = engine.torsion_closed_form(A)
    T = engine.full_torsion_closed(A)
    div = engine.divergence_closed(A)
    a = su3.alpha(A)

    checks: dict[str, str] = {}
    from_tau = classifier.classify_from_tau(t)
    from_bracket = classifier.classify_from_bracket(A)
    checks["class_two_path"] = _verdict(from_tau == from_bracket)
    checks["split_reconstruction"] = _verdict(is_zero_matrix(parts.reconstruct() - A))
    try:
        harmonic = classifier.harmonicity(A)
        checks["harmonic_conditions_vs_divergence"] = "pass"
    except ArithmeticError:
        harmonic = engine.divergence_direct(A).is_zero()
        checks["harmonic_conditions_vs_divergence"] = "fail"
    if oracle:
        for name, ok in identities.torsion_agreement(A).items():
            checks[name] = _verdict(ok)

    return TorsionReportDoc(
        label=label,
        A=A,
        split=parts,
        trace=trace(A),
        alpha=a,
        J_alpha_sharp=list(J @ sharp(a)),
        tau0=t.tau0,
        tau1=t.tau1,
        tau2=t.tau2,
        j_tau3=t.j_tau3,
        T=T,
        div_T=div,
        ricci=engine.ricci(A),
        torsion_norm_sq=engine.torsion_norm_sq(A),
        torsion_class=from_tau.label,
        admissible=classifier.admissibility(from_tau),
        unimodular=classifier.unimodular_check(A),
        harmonic=harmonic,
        harmonic_guaranteed_by_class=classifier.harmonic_class_guarantee(from_tau),
        checks=checks,
    )
