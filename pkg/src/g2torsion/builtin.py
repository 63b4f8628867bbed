"""Three worked brackets with published torsion values, and the stated values.

Matrices are written row by row in the report layout: row ``i`` lists the
coordinates of ``A e_i``.  :func:`bracket` converts to the library's
column-vector convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .exterior import KForm, matrix, transpose

__all__ = ["Expectation", "BUILTIN_ROWS", "bracket", "EXPECTATIONS"]


BUILTIN_ROWS: dict[str, list[list[int]]] = {
    # flat unimodular example, torsion in W2+W3+W4
    "A": [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0],
    ],
    # same rotation block plus the identity on span(e1, e2): not harmonic
    "B": [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0],
    ],
    # harmonic, all four torsion components present
    "D": [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, -1, -1, 0],
        [0, 0, 1, 0, 0, 1],
        [0, 0, 1, 0, 0, -1],
        [0, 0, 0, -1, 1, 0],
    ],
}


def bracket(name: str) -> np.ndarray:
    return transpose(matrix(BUILTIN_ROWS[name]))


def _sym(i: int, j: int, c) -> np.ndarray:
    M = np.full((7, 7), Fraction(0), dtype=object)
    M[i - 1, j - 1] += Fraction(c)
    M[j - 1, i - 1] += Fraction(c)
    return M


@dataclass(frozen=True)
class Expectation:
    """A published value for one built-in bracket.

    ``actual`` pulls the quantity out of a report document; ``expected`` is
    the stated value; ``equal`` compares them exactly.
    """

    bracket: str
    name: str
    expected: object
    actual: Callable

    def check(self, doc) -> tuple[bool, object]:
        got = self.actual(doc)
        if isinstance(self.expected, np.ndarray):
            ok = bool(np.all(np.asarray(got, dtype=object) == self.expected))
        else:
            ok = got == self.expected
        return ok, got


def _vec(*coords) -> list[Fraction]:
    return [Fraction(c) for c in coords]


EXPECTATIONS: tuple[Expectation, ...] = (
    Expectation("A", "tau0", Fraction(0), lambda d: d.tau0),
    Expectation("A", "tau1", KForm(7, 1, {(2,): Fraction(1, 3)}), lambda d: d.tau1),
    Expectation(
        "A",
        "tau2",
        KForm(7, 2, {(3, 6): Fraction(2, 3), (4, 5): Fraction(2, 3), (1, 7): Fraction(-4, 3)}),
        lambda d: d.tau2,
    ),
    Expectation("A", "j_tau3", _sym(1, 7, 4), lambda d: d.j_tau3),
    Expectation("A", "ricci", np.full((7, 7), Fraction(0), dtype=object), lambda d: d.ricci),
    Expectation("A", "class", "W2⊕W3⊕W4", lambda d: d.torsion_class),
    Expectation("A", "alpha_sharp", _vec(0, 4, 0, 0, 0, 0), lambda d: list(d.alpha.to_vector())),
    Expectation("A", "trace", Fraction(0), lambda d: d.trace),
    Expectation("A", "div_T", KForm.zero(7, 1), lambda d: d.div_T),
    Expectation("A", "unimodular", True, lambda d: d.unimodular),
    Expectation("B", "alpha_sharp", _vec(0, 4, 0, 0, 0, 0), lambda d: list(d.alpha.to_vector())),
    Expectation("B", "trace", Fraction(2), lambda d: d.trace),
    Expectation("B", "div_T_sharp", _vec(-4, 0, 0, 0, 0, 0, 0), lambda d: list(d.div_T.to_vector())),
    Expectation("B", "harmonic", False, lambda d: d.harmonic),
    Expectation("D", "J_alpha_sharp", _vec(-4, 0, 0, 0, 0, 0), lambda d: d.J_alpha_sharp),
    Expectation("D", "trace", Fraction(0), lambda d: d.trace),
    Expectation("D", "div_T", KForm.zero(7, 1), lambda d: d.div_T),
    Expectation("D", "harmonic", True, lambda d: d.harmonic),
)
