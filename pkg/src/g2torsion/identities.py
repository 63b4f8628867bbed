"""Named algebraic identities used as self-checks.

Every function returns a ``dict`` mapping an identity name to ``True`` when it
holds exactly for the given inputs.  ``g2torsion verify`` and the test-suite
drive these over seeded random data.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from . import engine, su3
from .exterior import (
    KForm,
    comm,
    endo_contract,
    hodge,
    interior,
    is_zero_matrix,
    pullback,
    sharp,
    skew_part,
    theta,
    trace,
    transpose,
    wedge,
    wedge_all,
)

__all__ = [
    "fino_identities",
    "su3_contractions",
    "theta_omega_laws",
    "alpha_identities",
    "lauret_identities",
    "ce_differential",
    "d_squared_zero",
    "torsion_agreement",
    "freibert",
]


def fino_identities(beta: KForm) -> dict[str, bool]:
    """Identities for a 1-form β on R^6 against the SU(3)-structure."""
    c = su3.constants()
    om, rp, rm, J = c.omega, c.rho_plus, c.rho_minus, c.J
    om2 = wedge(om, om)
    Jb = pullback(J, beta)
    s_m = hodge(wedge(beta, rm))
    s_p = hodge(wedge(beta, rp))
    b_sharp = sharp(beta)
    return {
        "i_minus": wedge(s_m, om) == wedge(Jb, rp),
        "i_plus": wedge(s_p, om) == -wedge(Jb, rm),
        "ii": wedge(s_m, om2).is_zero() and wedge(s_p, om2).is_zero(),
        "iii": wedge(s_m, rp) == -wedge(s_p, rm) == wedge(beta, om2) == hodge(Jb) * 2,
        "iv": (
            wedge(s_m, rm)
            == wedge(s_p, rp)
            == wedge(hodge(wedge(beta, om)), om)
            == -wedge(Jb, om2)
            == hodge(beta) * 2
        ),
        "v_pullback_sharp": list(sharp(Jb)) == list(-(J @ b_sharp)),
        "v_omega_sharp": list(sharp(interior(b_sharp, om))) == list(J @ b_sharp),
    }


def _tensor(form: KForm) -> np.ndarray:
    """Full antisymmetric coefficient array of a form (0-based axes)."""
    n, k = form.dim, form.degree
    out = np.full((n,) * k, Fraction(0), dtype=object)
    for idx in itertools.product(range(1, n + 1), repeat=k):
        out[tuple(i - 1 for i in idx)] = form[idx]
    return out


def su3_contractions() -> dict[str, bool]:
    """Index contractions of ω, ρ± with h = δ."""
    c = su3.constants()
    w = _tensor(c.omega)
    rp = _tensor(c.rho_plus)
    rm = _tensor(c.rho_minus)
    h = np.eye(6, dtype=int)
    rng = range(6)

    def ein(expr, *ops):
        return np.einsum(expr, *ops)

    quad = np.empty((6, 6, 6, 6), dtype=object)
    mixed = np.empty((6, 6, 6, 6), dtype=object)
    for i, j, a, b in itertools.product(rng, repeat=4):
        quad[i, j, a, b] = -w[i, a] * w[j, b] + w[i, b] * w[j, a] + h[i, a] * h[j, b] - h[j, a] * h[i, b]
        mixed[i, j, a, b] = -w[i, a] * h[j, b] + w[j, a] * h[i, b] + w[i, b] * h[j, a] - w[j, b] * h[i, a]

    def eq(x, y):
        return is_zero_matrix(np.asarray(x, dtype=object) - np.asarray(y, dtype=object))

    return {
        "omega_omega": eq(ein("ip,pj->ij", w, w), -h),
        "rho_plus_rho_plus_1": eq(ein("ijk,abk->ijab", rp, rp), quad),
        "rho_minus_rho_minus_1": eq(ein("ijk,abk->ijab", rm, rm), quad),
        "rho_plus_rho_plus_2": eq(ein("ijk,ajk->ia", rp, rp), 4 * h),
        "rho_minus_rho_minus_2": eq(ein("ijk,ajk->ia", rm, rm), 4 * h),
        "rho_minus_rho_plus_1": eq(ein("ijk,abk->ijab", rm, rp), mixed),
        "rho_plus_rho_minus_2": eq(ein("ijk,ajk->ia", rp, rm), 4 * w),
        "rho_plus_omega": eq(ein("ijp,pk->ijk", rp, w), rm),
        "rho_minus_omega": eq(ein("ijp,pk->ijk", rm, w), -rp),
        "rho_plus_omega_trace": eq(ein("ijk,jk->i", rp, w), np.zeros(6, dtype=int)),
    }


def theta_omega_laws(A: np.ndarray) -> dict[str, bool]:
    c = su3.constants()
    laws = su3.theta_component_laws(A)
    parts = su3.split(A)
    laws["identity_scales_omega"] = theta(np.eye(6, dtype=int) * parts.tr_part, c.omega) == c.omega * (
        -2 * parts.tr_part
    )
    laws["rho_plus_vs_rho_minus"] = theta(A, c.rho_plus) == theta(c.J @ A, c.rho_minus)
    laws["c_minus_anti_invariant"] = pullback(c.J, theta(parts.c_minus, c.omega)) == -theta(
        parts.c_minus, c.omega
    )
    laws["lambda2_8_second_form"] = _lambda2_8_alt(theta(parts.s_plus, c.omega))
    return laws


def _lambda2_8_alt(sigma: KForm) -> bool:
    """σ ∧ ρ⁺ = 0 and J*σ = -⋆(σ ∧ ω)."""
    c = su3.constants()
    return wedge(sigma, c.rho_plus).is_zero() and pullback(c.J, sigma) == -hodge(wedge(sigma, c.omega))


def alpha_identities(A: np.ndarray) -> dict[str, bool]:
    c = su3.constants()
    J = c.J
    a = su3.alpha(A)
    JC = comm(J, skew_part(A))
    parts = su3.split(A)
    plus, minus = su3.alpha_sharp_contractions(A)
    # 2[J,C] as a bilinear form h(2[J,C]u, v)
    return {
        "alpha_via_rho": a == su3.alpha_via_rho(A),
        "alpha_via_c_minus": a == endo_contract(J @ parts.c_minus, c.rho_plus),
        "sharp_rho_plus": is_zero_matrix(plus - transpose(JC) * 2),
        "sharp_rho_minus": is_zero_matrix(minus - transpose(J @ JC) * 2),
        "kernel": a.is_zero() == is_zero_matrix(parts.c_minus),
        "second_expression": a == -hodge(wedge(theta(transpose(A), c.omega), c.rho_minus)),
    }


def lauret_identities(A: np.ndarray, gamma: KForm) -> dict[str, bool]:
    """Star splitting, the differential and the θ/⋆ relation for γ on h."""
    k = gamma.degree
    g7 = gamma.embed(7)
    e7 = engine.e7()
    out = {
        "star_gamma": hodge(g7) == wedge(hodge(gamma).embed(7), e7),
        "hodge7_split": hodge(g7) == engine.hodge7_split(g7),
        "d_matches_ce": engine.d(gamma, A) == ce_differential(g7, A),
        "d_e7": engine.d(e7, A).is_zero(),
        "theta_star": theta(A, hodge(gamma)) + hodge(theta(transpose(A), gamma)) == hodge(gamma) * (-trace(A)),
    }
    if k <= 6:
        out["star_gamma_e7"] = hodge(wedge(g7, e7)) == hodge(gamma).embed(7) * (-1) ** k
    return out


def _bracket(A: np.ndarray, x: int, y: int) -> np.ndarray:
    """[e_x, e_y] (1-based) as a vector in R^7."""
    v = np.full(7, Fraction(0), dtype=object)
    if x == 7 and y <= 6:
        v[:6] = A[:, y - 1]
    elif y == 7 and x <= 6:
        v[:6] = -A[:, x - 1]
    return v


def ce_differential(a: KForm, A: np.ndarray) -> KForm:
    """Chevalley-Eilenberg differential from the bracket, term by term.

    dγ(x_0, ..., x_k) = Σ_{i<j} (-1)^{i+j} γ([x_i, x_j], x_0, ..., x̂_i, ..., x̂_j, ..., x_k).
    """
    if a.dim != 7:
        a = a.embed(7)
    k = a.degree
    out = {}
    for key in itertools.combinations(range(1, 8), k + 1):
        total = Fraction(0)
        for i, j in itertools.combinations(range(k + 1), 2):
            br = _bracket(A, key[i], key[j])
            rest = [key[m] for m in range(k + 1) if m not in (i, j)]
            for l in range(7):
                if br[l]:
                    total += (-1) ** (i + j) * br[l] * a[(l + 1, *rest)]
        if total:
            out[key] = total
    return KForm(7, k + 1, out)


def d_squared_zero(A: np.ndarray, gamma: KForm) -> bool:
    if gamma.degree >= 6:
        return True
    return engine.d(engine.d(gamma, A), A).is_zero()


def torsion_agreement(A: np.ndarray) -> dict[str, bool]:
    oracle = engine.torsion_oracle(A)
    closed = engine.torsion_closed_form(A)
    r1, r2 = engine.reconstruction_residuals(A, oracle)
    t_closed = engine.full_torsion_closed(A)
    t_tau = engine.full_torsion_from_tau(oracle)
    t_nabla = engine.full_torsion_from_nabla(A)
    return {
        "tau0": oracle.tau0 == closed.tau0,
        "tau1": oracle.tau1 == closed.tau1,
        "tau2": oracle.tau2 == closed.tau2,
        "j_tau3": is_zero_matrix(oracle.j_tau3 - closed.j_tau3),
        "d_phi_reconstruction": r1.is_zero(),
        "d_psi_reconstruction": r2.is_zero(),
        "T_closed_vs_tau": is_zero_matrix(t_closed - t_tau),
        "T_closed_vs_nabla": is_zero_matrix(t_closed - t_nabla),
        "T_tau_vs_nabla": is_zero_matrix(t_tau - t_nabla),
        "divergence": engine.divergence_closed(A) == engine.divergence_direct(A),
        "divergence_vector": list(engine.divergence_closed_vector(A))
        == list(sharp(engine.divergence_direct(A))),
    }


def freibert(A: np.ndarray) -> dict[str, bool]:
    """Closed ⇔ A ∈ sym⁰₊ ⊕ su(3); coclosed ⇔ A ∈ sym⁰₋ ⊕ R·J ⊕ su(3)."""
    nz = su3.split(A).nonzero()
    closed = engine.d(engine.phi(), A).is_zero()
    coclosed = engine.d(engine.psi(), A).is_zero()
    return {
        "closed": closed == (nz <= {"s_plus", "c_plus"}),
        "coclosed": coclosed == (nz <= {"s_minus", "j_part", "c_plus"}),
    }
