"""The canonical SU(3)-structure on R^6 and the SU(3)-splitting of gl(6)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exterior import (
    KForm,
    anticomm,
    comm,
    endo_contract,
    hodge,
    identity,
    interior,
    is_zero_matrix,
    pullback,
    sharp,
    skew_part,
    sym_part,
    theta,
    trace,
    transpose,
    wedge,
    zeros,
)

__all__ = [
    "SU3Constants",
    "SU3Split",
    "constants",
    "split",
    "alpha",
    "alpha_via_rho",
    "alpha_sharp_contractions",
    "theta_component_laws",
    "in_lambda2_8",
    "in_lambda2_6",
]

HALF = Fraction(1, 2)
SIXTH = Fraction(1, 6)


@dataclass(frozen=True)
class SU3Constants:
    omega: KForm
    rho_plus: KForm
    rho_minus: KForm
    J: np.ndarray
    vol6: KForm


@lru_cache(maxsize=1)
def constants() -> SU3Constants:
    omega = KForm(6, 2, {(1, 2): 1, (3, 4): 1, (5, 6): 1})
    rho_plus = KForm(6, 3, {(1, 3, 5): 1, (1, 4, 6): -1, (2, 4, 5): -1, (2, 3, 6): -1})
    # omega(u, v) = <Ju, v>: J e1 = e2, J e2 = -e1, and likewise on (3,4), (5,6)
    J = zeros(6)
    for a in (0, 2, 4):
        J[a + 1, a] = Fraction(1)
        J[a, a + 1] = Fraction(-1)
    J.flags.writeable = False
    rho_minus = pullback(J, rho_plus)
    return SU3Constants(omega, rho_plus, rho_minus, J, KForm.volume(6))


def _J() -> np.ndarray:
    return constants().J


@dataclass(frozen=True)
class SU3Split:
    """A = tr_part I + s_plus + s_minus + j_part J + c_plus + c_minus."""

    tr_part: Fraction
    s_plus: np.ndarray
    s_minus: np.ndarray
    j_part: Fraction
    c_plus: np.ndarray
    c_minus: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (
            identity(6) * self.tr_part
            + self.s_plus
            + self.s_minus
            + _J() * self.j_part
            + self.c_plus
            + self.c_minus
        )

    def components(self) -> dict[str, np.ndarray]:
        """The six summands as matrices, keyed by name."""
        return {
            "tr_part": identity(6) * self.tr_part,
            "s_plus": self.s_plus,
            "s_minus": self.s_minus,
            "j_part": _J() * self.j_part,
            "c_plus": self.c_plus,
            "c_minus": self.c_minus,
        }

    def nonzero(self) -> frozenset[str]:
        return frozenset(name for name, M in self.components().items() if not is_zero_matrix(M))


def _check6(A: np.ndarray) -> None:
    if getattr(A, "shape", None) != (6, 6):
        raise ValueError(f"expected a 6x6 matrix, got shape {getattr(A, 'shape', None)}")


def split(A: np.ndarray) -> SU3Split:
    _check6(A)
    J = _J()
    S = sym_part(A)
    C = skew_part(A)
    tr = trace(A) * SIXTH
    # coefficient of J is <J, A> / <J, J> = -tr(JA) / 6
    tj = -trace(J @ A) * SIXTH
    s_plus = -HALF * (J @ anticomm(S, J)) - identity(6) * tr
    s_minus = HALF * (J @ comm(S, J))
    c_plus = -HALF * (J @ anticomm(C, J)) - J * tj
    c_minus = HALF * (J @ comm(C, J))
    return SU3Split(tr, s_plus, s_minus, tj, c_plus, c_minus)


def alpha(A: np.ndarray) -> KForm:
    """α(A) = ⋆(ω ∧ θ(Aᵗ)ρ⁻)."""
    _check6(A)
    c = constants()
    return hodge(wedge(c.omega, theta(transpose(A), c.rho_minus)))


def alpha_via_rho(A: np.ndarray) -> KForm:
    """Same 1-form as :func:`alpha`, computed as ½[J, C(A)] ⌟ ρ⁺."""
    _check6(A)
    c = constants()
    return endo_contract(HALF * comm(c.J, skew_part(A)), c.rho_plus)


def alpha_sharp_contractions(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Skew matrices of the 2-forms α♯ ⌟ ρ⁺ and α♯ ⌟ ρ⁻."""
    c = constants()
    v = sharp(alpha(A))
    return interior(v, c.rho_plus).to_matrix(), interior(v, c.rho_minus).to_matrix()


def in_lambda2_8(sigma: KForm) -> bool:
    """J-invariant 2-form with σ ∧ ω² = 0."""
    c = constants()
    return pullback(c.J, sigma) == sigma and wedge(sigma, wedge(c.omega, c.omega)).is_zero()


def in_lambda2_6(sigma: KForm) -> bool:
    return pullback(constants().J, sigma) == -sigma


def theta_component_laws(B: np.ndarray) -> dict[str, bool]:
    """How θ(·)ω acts on each SU(3)-component of B."""
    c = constants()
    parts = split(B)
    return {
        "s_minus_kills_omega": theta(parts.s_minus, c.omega).is_zero(),
        "c_plus_kills_omega": theta(parts.c_plus, c.omega).is_zero(),
        "j_part_kills_omega": theta(c.J * parts.j_part, c.omega).is_zero(),
        "s_plus_into_lambda2_8": in_lambda2_8(theta(parts.s_plus, c.omega)),
        "c_minus_into_lambda2_6": in_lambda2_6(theta(parts.c_minus, c.omega)),
    }
