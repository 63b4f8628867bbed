"""Exact torsion of invariant G2-structures on almost Abelian Lie algebras.

The Lie algebra is R^6 ⋊_A R with [e_7, u] = A u, carrying the canonical
G2-structure φ = ω ∧ e^7 + ρ⁺.  Everything is computed over the rationals.

Submodules:

``exterior``   exact forms on R^n: wedge, interior, Hodge star, θ, pullback
``su3``        the SU(3)-structure (ω, ρ±, J) on R^6 and the splitting of gl(6)
``engine``     dφ, dψ, torsion forms, full torsion tensor, divergence, Ricci
``classifier`` Fernández-Gray classes, admissibility, unimodularity, harmonicity
``report``     JSON input and report documents
``verify``     seeded identity suites behind ``g2torsion verify``
"""

from . import builtin, classifier, engine, exterior, identities, report, su3, verify
from .classifier import TorsionClass, class_report, classify_from_bracket, sample_bracket
from .engine import (
    TorsionForms,
    divergence_direct,
    full_torsion_closed,
    phi,
    psi,
    ricci,
    torsion_closed_form,
    torsion_oracle,
)
from .exterior import KForm, hodge, interior, matrix, theta, wedge
from .report import BracketInput, TorsionReportDoc, build_report, parse_bracket_input
from .su3 import alpha, split

__all__ = [
    "builtin",
    "classifier",
    "engine",
    "exterior",
    "identities",
    "report",
    "su3",
    "verify",
    "KForm",
    "matrix",
    "wedge",
    "interior",
    "hodge",
    "theta",
    "split",
    "alpha",
    "phi",
    "psi",
    "TorsionForms",
    "torsion_closed_form",
    "torsion_oracle",
    "full_torsion_closed",
    "divergence_direct",
    "ricci",
    "TorsionClass",
    "classify_from_bracket",
    "class_report",
    "sample_bracket",
    "BracketInput",
    "TorsionReportDoc",
    "build_report",
    "parse_bracket_input",
    "bracket_from_rows",
]


def bracket_from_rows(rows):
    """Bracket matrix from rows in the external layout (row i = coordinates of A e_i)."""
    return exterior.transpose(matrix(rows))
