"""Seeded randomized verification of every exact identity the library relies on.

Sample ``i`` of suite ``k`` in a run with seed ``s`` draws from
``numpy.random.default_rng([s, i, k])``, so results do not depend on evaluation order and a run can be sharded.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import classifier, engine, identities, su3
from .classifier import random_matrix, random_rational
from .exterior import KForm, identity, is_zero_matrix, trace

__all__ = [
    "SUITES",
    "Failure",
    "VerifyResult",
    "random_rational",
    "random_matrix",
    "random_bracket",
    "random_form",
    "run_sample",
    "run",
]


def random_bracket(rng: np.random.Generator) -> np.ndarray:
    """Random A whose SU(3)-components are each kept with probability 2/3.

    Dropping components makes every torsion class reachable, which a dense
    random matrix (always the full class) would not exercise.
    """
    parts = su3.split(random_matrix(rng))
    keep = rng.random(6) < 2 / 3
    comps = list(parts.components().values())
    A = np.full((6, 6), Fraction(0), dtype=object)
    for M, k in zip(comps, keep):
        if k:
            A = A + M
    return A


def random_form(rng: np.random.Generator, dim: int, degree: int) -> KForm:
    keys = itertools.combinations(range(1, dim + 1), degree)
    coeffs = {k: random_rational(rng) for k in keys if rng.random() < 0.6}
    return KForm(dim, degree, coeffs)


def _freibert_samples(rng):
    """A closed, a coclosed and a generic bracket."""
    base = su3.split(random_matrix(rng))
    closed = base.s_plus + base.c_plus
    coclosed = base.s_minus + su3.constants().J * base.j_part + base.c_plus
    return [closed, coclosed, random_bracket(rng)]


def _suite_freibert(rng) -> dict[str, bool]:
    out = {}
    for tag, A in zip(("closed_sample", "coclosed_sample", "random"), _freibert_samples(rng)):
        for name, ok in identities.freibert(A).items():
            out[f"{tag}.{name}"] = ok
    base = su3.split(random_matrix(rng))
    out["closed_sample_is_closed"] = engine.d(engine.phi(), base.s_plus + base.c_plus).is_zero()
    out["coclosed_sample_is_coclosed"] = engine.d(
        engine.psi(), base.s_minus + su3.constants().J * base.j_part + base.c_plus
    ).is_zero()
    return out


def _suite_grigorian(rng) -> dict[str, bool]:
    """τ₁ = 0, or τ₀ = τ₂ = τ₃ = 0, forces div T = 0."""
    p = su3.split(random_matrix(rng))
    J = su3.constants().J
    # τ₁ = 0 exactly when tr A = 0 and c_minus = 0
    case_i = p.s_plus + p.s_minus + J * p.j_part + p.c_plus
    case_ii = identity(6) * p.tr_part + p.c_plus
    t_i = engine.torsion_closed_form(case_i)
    t_ii = engine.torsion_closed_form(case_ii)
    return {
        "case_i_tau1_zero": t_i.tau1.is_zero(),
        "case_i_div_free": engine.divergence_direct(case_i).is_zero(),
        "case_ii_pattern": t_ii.tau0 == 0 and t_ii.tau2.is_zero() and is_zero_matrix(t_ii.j_tau3),
        "case_ii_div_free": engine.divergence_direct(case_ii).is_zero(),
    }


def _suite_classes(rng) -> dict[str, bool]:
    A = random_bracket(rng)
    t = engine.torsion_closed_form(A)
    c = classifier.classify_from_tau(t)
    out = {
        "tau_vs_bracket": c == classifier.classify_from_bracket(A),
        "admissible": classifier.admissibility(c),
        "j_tau3_zero_forces_tau0_zero": not is_zero_matrix(t.j_tau3) or t.tau0 == 0,
    }
    traceless = A - identity(6) * (trace(A) / 6)
    out["traceless_in_unimodular_table"] = classifier.unimodular_class_table(
        classifier.classify_from_bracket(traceless)
    )
    return out


def _with_bracket(fn):
    return lambda rng: fn(random_bracket(rng))


def _suite_lauret(rng) -> dict[str, bool]:
    A = random_bracket(rng)
    gamma = random_form(rng, 6, int(rng.integers(0, 7)))
    out = identities.lauret_identities(A, gamma)
    out["d_squared_zero"] = identities.d_squared_zero(A, gamma)
    return out


SUITES = {
    "fino": lambda rng: identities.fino_identities(random_form(rng, 6, 1)),
    "theta_omega": _with_bracket(identities.theta_omega_laws),
    "alpha": _with_bracket(identities.alpha_identities),
    "lauret": _suite_lauret,
    "torsion": _with_bracket(identities.torsion_agreement),
    "classes": _suite_classes,
    "freibert": _suite_freibert,
    "grigorian": _suite_grigorian,
}


@dataclass(frozen=True)
class Failure:
    suite: str
    index: int
    identity: str
    A: np.ndarray | None


@dataclass
class VerifyResult:
    seed: int
    count: int
    suites: tuple[str, ...] = tuple(SUITES)
    passed: Counter = field(default_factory=Counter)
    failures: list[Failure] = field(default_factory=list)
    constant_checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and all(self.constant_checks.values())

    def summary_lines(self) -> list[str]:
        lines = [f"verify seed={self.seed} count={self.count}"]
        for name in self.suites:
            lines.append(f"  {name:<17} {self.passed[name]}/{self.count} pass")
        for name, ok in self.constant_checks.items():
            lines.append(f"  {name:<17} {'pass' if ok else 'FAIL'}")
        lines.append("result: " + ("all pass" if self.ok else f"{len(self.failures)} failure(s)"))
        return lines


def _sample_rng(seed: int, index: int, suite: str) -> np.random.Generator:
    return np.random.default_rng([seed, index, list(SUITES).index(suite)])


def _probe_bracket(seed: int, index: int, suite: str) -> np.ndarray | None:
    """Re-draw the first bracket a suite used, for replay output."""
    if suite == "fino":
        return None
    rng = _sample_rng(seed, index, suite)
    if suite in ("freibert", "grigorian"):
        return random_matrix(rng)
    return random_bracket(rng)


def run_sample(seed: int, index: int, suite: str) -> dict[str, bool]:
    return SUITES[suite](_sample_rng(seed, index, suite))


def run(seed: int, count: int, suites=None) -> VerifyResult:
    if count < 1:
        raise ValueError("count must be at least 1")
    names = tuple(suites or SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    result = VerifyResult(seed, count, names)
    result.constant_checks["su3_contractions"] = all(identities.su3_contractions().values())
    result.constant_checks["kappa"] = engine.contraction_constant() == 24
    for name in names:
        for i in range(count):
            checks = run_sample(seed, i, name)
            bad = [k for k, ok in checks.items() if not ok]
            if bad:
                A = _probe_bracket(seed, i, name)
                result.failures.extend(Failure(name, i, k, A) for k in bad)
            else:
                result.passed[name] += 1
    return result
