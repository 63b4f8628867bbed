"""Invariant G2-structure on a 7-dimensional almost Abelian Lie algebra.

The algebra is g = h ⊕ R e_7 with h = span(e_1, ..., e_6) Abelian and
[e_7, u] = A u.  All 7x7 outputs describing bilinear objects (torsion tensor,
2-forms, j(τ_3)) are arrays ``M[i, j] = M(e_i, e_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import itertools

import numpy as np

from . import su3
from .exterior import (
    KForm,
    comm,
    hodge,
    identity,
    interior,
    is_zero_matrix,
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
    "TorsionForms",
    "phi",
    "psi",
    "e7",
    "embed_matrix",
    "split_h",
    "d",
    "hodge7_split",
    "torsion_oracle",
    "torsion_closed_form",
    "reconstruction_residuals",
    "j_map",
    "full_torsion_closed",
    "full_torsion_from_tau",
    "connection",
    "nabla_phi",
    "contraction_constant",
    "full_torsion_from_nabla",
    "divergence_direct",
    "divergence_closed",
    "divergence_closed_vector",
    "ricci",
    "torsion_norm_sq",
]


@dataclass(frozen=True, eq=False)
class TorsionForms:
    tau0: Fraction
    tau1: KForm
    tau2: KForm
    tau3: KForm | None
    j_tau3: np.ndarray = field(repr=False)

    def same_as(self, other: "TorsionForms") -> bool:
        """Exact equality of τ₀, τ₁, τ₂ and j(τ₃); τ₃ itself is compared when both carry it."""
        same = (
            self.tau0 == other.tau0
            and self.tau1 == other.tau1
            and self.tau2 == other.tau2
            and is_zero_matrix(self.j_tau3 - other.j_tau3)
        )
        if self.tau3 is not None and other.tau3 is not None:
            same = same and self.tau3 == other.tau3
        return same


@lru_cache(maxsize=1)
def phi() -> KForm:
    c = su3.constants()
    return wedge(c.omega.embed(7), e7()) + c.rho_plus.embed(7)


@lru_cache(maxsize=1)
def psi() -> KForm:
    return hodge(phi())


@lru_cache(maxsize=1)
def e7() -> KForm:
    return KForm.basis(7, 7)


def _unit(i: int, n: int = 7) -> np.ndarray:
    v = np.full(n, Fraction(0), dtype=object)
    v[i - 1] = Fraction(1)
    return v


def embed_matrix(M: np.ndarray, corner=0) -> np.ndarray:
    """6x6 block into the upper-left of a 7x7 matrix."""
    out = zeros(7)
    out[:6, :6] = M
    out[6, 6] = Fraction(corner)
    return out


def split_h(a: KForm) -> tuple[KForm, KForm]:
    """Write a form on g as γ₁ + γ₂ ∧ e⁷ with γ₁, γ₂ forms on h."""
    if a.dim != 7:
        raise ValueError("split_h needs a form on R^7")
    g1 = {k: c for k, c in a.coeffs.items() if 7 not in k}
    g2 = {k[:-1]: c for k, c in a.coeffs.items() if 7 in k}
    deg = a.degree
    first = KForm(6, deg, g1) if deg <= 6 else KForm.zero(6, 6)
    second = KForm(6, deg - 1, g2) if deg >= 1 else KForm.zero(6, 0)
    return first, second


def d(a: KForm, A: np.ndarray) -> KForm:
    """Exterior derivative of an invariant form: dγ = (-1)^k θ(A)γ ∧ e⁷ on h, de⁷ = 0."""
    if a.dim == 6:
        a = a.embed(7)
    k = a.degree
    if k == 7:
        return KForm.zero(7, 7)
    g1, _ = split_h(a)
    if g1.degree > 6 or g1.is_zero():
        return KForm.zero(7, k + 1)
    return wedge(theta(A, g1).embed(7), e7()) * (-1) ** k


def hodge7_split(a: KForm) -> KForm:
    """Hodge star on R^7 assembled from the star ⋆ of h: ∗γ = ⋆γ∧e⁷, ∗(γ∧e⁷) = (-1)^k ⋆γ."""
    g1, g2 = split_h(a)
    out = KForm.zero(7, 7 - a.degree)
    if a.degree <= 6:
        out = out + wedge(hodge(g1).embed(7), e7())
    if a.degree >= 1:
        out = out + hodge(g2).embed(7) * (-1) ** g2.degree
    return out


def j_map(t: KForm) -> np.ndarray:
    """Symmetric matrix j(τ)(e_a, e_b) = ∗(e_a⌟φ ∧ e_b⌟φ ∧ τ)."""
    p = phi()
    contracted = [interior(_unit(a), p) for a in range(1, 8)]
    M = zeros(7)
    for a in range(7):
        for b in range(a, 7):
            val = hodge(wedge(wedge(contracted[a], contracted[b]), t)).value()
            M[a, b] = M[b, a] = val
    return M


def torsion_oracle(A: np.ndarray) -> TorsionForms:
    """Torsion forms from dφ and dψ alone, without any closed-form shortcut."""
    p, q = phi(), psi()
    dphi, dpsi = d(p, A), d(q, A)
    tau0 = hodge(wedge(p, dphi)).value() / 7
    tau1 = hodge(wedge(p, hodge(dphi))) * Fraction(1, 12)
    tau2 = hodge(wedge(tau1, q)) * 4 - hodge(dpsi)
    tau3 = hodge(dphi) - p * tau0 - hodge(wedge(tau1, p)) * 3
    return TorsionForms(tau0, tau1, tau2, tau3, j_map(tau3))


def reconstruction_residuals(A: np.ndarray, t: TorsionForms) -> tuple[KForm, KForm]:
    """dφ - (τ₀ψ + 3τ₁∧φ + ∗τ₃) and dψ - (4τ₁∧ψ + τ₂∧φ)."""
    p, q = phi(), psi()
    r1 = d(p, A) - (q * t.tau0 + wedge(t.tau1, p) * 3 + hodge(t.tau3))
    r2 = d(q, A) - (wedge(t.tau1, q) * 4 + wedge(t.tau2, p))
    return r1, r2


def _bilinear(M: np.ndarray) -> np.ndarray:
    """Bilinear-form array h(M e_i, e_j) of an endomorphism M."""
    return transpose(M)


def _block7(upper: np.ndarray, column, row, corner) -> np.ndarray:
    """Endomorphism with the given 6x6 block, last column, last row and corner."""
    out = embed_matrix(upper, corner)
    for i in range(6):
        out[i, 6] = column[i]
        out[6, i] = row[i]
    return out


def _alpha_sharp(A: np.ndarray) -> np.ndarray:
    return sharp(su3.alpha(A))


def torsion_closed_form(A: np.ndarray) -> TorsionForms:
    """Torsion forms evaluated from the SU(3)-data of A."""
    c = su3.constants()
    J = c.J
    trA, trJA = trace(A), trace(J @ A)
    a_sharp = _alpha_sharp(A)
    Ja = J @ a_sharp
    tau0 = Fraction(2, 7) * trJA
    tau1 = su3.alpha(A).embed(7) * Fraction(-1, 12) - e7() * (trA / 6)

    At = transpose(A)
    upper2 = comm(J, skew_part(A)) * 2 - J * trA + (J @ At + A @ J) * 3
    tau2_endo = _block7(upper2, -Ja, Ja, 0) * Fraction(-1, 3)
    tau2 = KForm.from_matrix(_bilinear(tau2_endo))

    upper3 = identity(6) * (trJA / 14) - comm(J, sym_part(A)) * Fraction(1, 2)
    quarter_j = _block7(upper3, Ja / 4, Ja / 4, Fraction(-3, 7) * trJA)
    return TorsionForms(tau0, tau1, tau2, None, _bilinear(quarter_j) * 4)


def full_torsion_closed(A: np.ndarray) -> np.ndarray:
    """Full torsion tensor as a bilinear-form array T[i, j] = T(e_i, e_j)."""
    J = su3.constants().J
    At = transpose(A)
    upper = comm(J, sym_part(A)) + comm(J, skew_part(A)) + J @ At + A @ J
    Ja = J @ _alpha_sharp(A)
    zero = [Fraction(0)] * 6
    endo = _block7(upper, -Ja, zero, trace(J @ A)) * Fraction(1, 2)
    return _bilinear(endo)


def _two_form_matrix(a: KForm) -> np.ndarray:
    return a.to_matrix()


def full_torsion_from_tau(t: TorsionForms) -> np.ndarray:
    """T = (τ₀/4) g - ¼ j(τ₃) - τ₁♯⌟φ - ½ τ₂."""
    return (
        identity(7) * (t.tau0 / 4)
        - t.j_tau3 * Fraction(1, 4)
        - _two_form_matrix(interior(sharp(t.tau1), phi()))
        - _two_form_matrix(t.tau2) * Fraction(1, 2)
    )


def connection(A: np.ndarray) -> list[np.ndarray]:
    """Levi-Civita connection as matrices Γ_i with Γ_i e_j = ∇_{e_i} e_j, i = 1..7."""
    S, C = sym_part(A), skew_part(A)
    gammas = []
    for i in range(6):
        G = zeros(7)
        # ∇_i e_j = <S e_i, e_j> e_7 and ∇_i e_7 = -S e_i
        for j in range(6):
            G[6, j] = S[j, i]
            G[j, 6] = -S[j, i]
        gammas.append(G)
    gammas.append(embed_matrix(C))  # ∇_7 e_i = C e_i, ∇_7 e_7 = 0
    return gammas


def nabla_phi(A: np.ndarray) -> list[KForm]:
    """∇_{e_i} φ for i = 1..7 by Leibniz over the slots of φ."""
    p = phi()
    # (∇_i φ)(u, v, w) = -φ(∇_i u, v, w) - ..., i.e. θ(Γ_i)φ
    return [theta(G, p) for G in connection(A)]


@lru_cache(maxsize=1)
def contraction_constant() -> Fraction:
    """κ with Σ_{jkl} ψ_{qjkl} ψ_{q'jkl} = κ δ_{qq'}, by brute force over ordered triples."""
    q = psi()
    gram = zeros(7)
    for a in range(1, 8):
        for b in range(1, 8):
            gram[a - 1, b - 1] = sum(
                (q[(a, j, k, l)] * q[(b, j, k, l)] for j, k, l in itertools.product(range(1, 8), repeat=3)),
                Fraction(0),
            )
    kappa = gram[0, 0]
    if not is_zero_matrix(gram - identity(7) * kappa):
        raise ArithmeticError("ψ does not contract to a multiple of the identity")
    return kappa


def full_torsion_from_nabla(A: np.ndarray) -> np.ndarray:
    """T_{iq} = (1/κ) Σ_{jkl} ∇_iφ_{jkl} ψ_{qjkl}."""
    kappa = contraction_constant()
    q = psi()
    T = zeros(7)
    for i, nphi in enumerate(nabla_phi(A)):
        for qi in range(1, 8):
            total = Fraction(0)
            for key, c in nphi.coeffs.items():
                # each increasing key stands for 3! ordered triples with equal products
                total += 6 * c * q[(qi,) + key]
            T[i, qi - 1] = total / kappa
    return T


def divergence_direct(A: np.ndarray, T: np.ndarray | None = None) -> KForm:
    """div T = Σ_i (∇_{e_i} T)(e_i, ·) for the invariant tensor T."""
    if T is None:
        T = full_torsion_closed(A)
    gammas = connection(A)
    div = [Fraction(0)] * 7
    for i, G in enumerate(gammas):
        # (∇_i T)(e_a, e_b) = -T(∇_i e_a, e_b) - T(e_a, ∇_i e_b)
        GT = transpose(G)
        nabla_T = -(GT @ T) - T @ G
        for j in range(7):
            div[j] += nabla_T[i, j]
    return KForm.from_vector(div)


def divergence_closed(A: np.ndarray) -> KForm:
    """-½ tr(A) J*α + ½ θ(C(A)) J*α - ½ tr(A) tr(JA) e⁷."""
    from .exterior import pullback

    J = su3.constants().J
    trA, trJA = trace(A), trace(J @ A)
    Jstar_alpha = pullback(J, su3.alpha(A))
    h_part = Jstar_alpha * (-trA / 2) + theta(skew_part(A), Jstar_alpha) * Fraction(1, 2)
    return h_part.embed(7) - e7() * (trA * trJA / 2)


def divergence_closed_vector(A: np.ndarray) -> np.ndarray:
    """div T♯ = ½ tr(A) J α♯ - ½ C(A) J α♯ - ½ tr(A) tr(JA) e_7."""
    J = su3.constants().J
    trA, trJA = trace(A), trace(J @ A)
    Ja = J @ _alpha_sharp(A)
    upper = Ja * (trA / 2) - (skew_part(A) @ Ja) * Fraction(1, 2)
    return np.concatenate([upper, np.array([-trA * trJA / 2], dtype=object)])


def ricci(A: np.ndarray) -> np.ndarray:
    """Ricci operator of the left-invariant metric."""
    At = transpose(A)
    upper = (comm(A, At) - (A + At) * trace(A)) * Fraction(1, 2)
    corner = -trace((A + At) @ (A + At)) / 4
    return embed_matrix(upper, corner)


def torsion_norm_sq(A: np.ndarray) -> Fraction:
    T = full_torsion_closed(A)
    return sum((x * x for x in T.flat), Fraction(0))
