"""Fernández-Gray torsion classes, unimodularity and harmonicity."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import engine, su3
from .engine import TorsionForms
from .exterior import identity, is_zero_matrix, sharp, skew_part, trace

__all__ = [
    "TorsionClass",
    "ClassReport",
    "InadmissibleClassError",
    "SamplingError",
    "ALL_CLASSES",
    "INADMISSIBLE",
    "TABLE1",
    "TABLE2",
    "HARMONIC_CLASSES",
    "classify_from_tau",
    "classify_from_bracket",
    "admissibility",
    "unimodular_check",
    "unimodular_class_table",
    "harmonicity",
    "harmonic_class_guarantee",
    "harmonic_refinement",
    "class_report",
    "random_rational",
    "random_matrix",
    "random_component",
    "sample_bracket",
]


class InadmissibleClassError(ValueError):
    pass


class SamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class TorsionClass:
    components: frozenset[int]

    def __init__(self, components=()):
        comps = frozenset(int(c) for c in components)
        if not comps <= {1, 2, 3, 4}:
            raise ValueError(f"torsion components must lie in 1..4, got {sorted(comps)}")
        object.__setattr__(self, "components", comps)

    @property
    def label(self) -> str:
        if not self.components:
            return "{0}"
        return "⊕".join(f"W{c}" for c in sorted(self.components))

    def __str__(self) -> str:
        return self.label

    def __contains__(self, item: int) -> bool:
        return item in self.components

    @classmethod
    def parse(cls, text: str) -> "TorsionClass":
        """Parse labels such as ``W1⊕W3``, ``W2+W4``, ``W1,W3`` or ``{0}``."""
        s = text.strip().replace(" ", "")
        if s in {"{0}", "0", "", "{}"}:
            return cls()
        parts = re.split(r"[⊕+,]", s)
        comps = []
        for p in parts:
            m = re.fullmatch(r"[Ww]([1-4])", p)
            if not m:
                raise ValueError(f"cannot parse torsion class {text!r}")
            comps.append(int(m.group(1)))
        return cls(comps)


def _c(*comps: int) -> TorsionClass:
    return TorsionClass(comps)


ALL_CLASSES = tuple(
    TorsionClass(s) for r in range(5) for s in itertools.combinations(range(1, 5), r)
)
INADMISSIBLE = frozenset({_c(1), _c(1, 4), _c(1, 2), _c(1, 2, 4)})

# class -> SU(3)-components of the bracket that realise it (c_plus is always allowed)
TABLE1 = {
    _c(): frozenset(),
    _c(4): frozenset({"tr_part"}),
    _c(2): frozenset({"s_plus"}),
    _c(3): frozenset({"s_minus"}),
    _c(1, 3): frozenset({"s_minus", "j_part"}),
    _c(2, 4): frozenset({"tr_part", "s_plus"}),
    _c(3, 4): frozenset({"tr_part", "s_minus"}),
    _c(2, 3): frozenset({"s_plus", "s_minus"}),
    _c(1, 3, 4): frozenset({"tr_part", "s_minus", "j_part"}),
    _c(1, 2, 3): frozenset({"s_plus", "s_minus", "j_part"}),
    _c(2, 3, 4): frozenset({"tr_part", "s_plus", "s_minus", "c_minus"}),
    _c(1, 2, 3, 4): frozenset({"tr_part", "s_plus", "s_minus", "j_part", "c_minus"}),
}
TABLE2 = frozenset(
    {_c(), _c(2), _c(3), _c(1, 3), _c(2, 3), _c(1, 2, 3), _c(2, 3, 4), _c(1, 2, 3, 4)}
)
HARMONIC_CLASSES = frozenset(
    {_c(), _c(2), _c(3), _c(4), _c(1, 3), _c(2, 4), _c(3, 4), _c(2, 3), _c(1, 2, 3)}
)


def classify_from_tau(t: TorsionForms) -> TorsionClass:
    comps = []
    if t.tau0 != 0:
        comps.append(1)
    if not t.tau2.is_zero():
        comps.append(2)
    if not is_zero_matrix(t.j_tau3):
        comps.append(3)
    if not t.tau1.is_zero():
        comps.append(4)
    return TorsionClass(comps)


def _class_from_components(nz: frozenset[str]) -> TorsionClass:
    comps = []
    if "j_part" in nz:
        comps.append(1)
    if nz & {"s_plus", "c_minus"}:
        comps.append(2)
    if nz & {"j_part", "s_minus", "c_minus"}:
        comps.append(3)
    if nz & {"tr_part", "c_minus"}:
        comps.append(4)
    return TorsionClass(comps)


def classify_from_bracket(A: np.ndarray) -> TorsionClass:
    return _class_from_components(su3.split(A).nonzero())


def admissibility(c: TorsionClass) -> bool:
    return not (1 in c and 3 not in c)


def unimodular_check(A: np.ndarray) -> bool:
    return trace(A) == 0


def unimodular_class_table(c: TorsionClass) -> bool:
    return c in TABLE2


def _harmonic_conditions(A: np.ndarray) -> bool:
    J = su3.constants().J
    trA, trJA = trace(A), trace(J @ A)
    a = su3.alpha(A)
    Ja = J @ sharp(a)
    cja = skew_part(A) @ Ja
    return trA * trJA == 0 and (trA == 0 or a.is_zero()) and all(x == 0 for x in cja)


def harmonicity(A: np.ndarray) -> bool:
    """div T = 0, decided algebraically and confirmed against the direct divergence."""
    algebraic = _harmonic_conditions(A)
    direct = engine.divergence_direct(A).is_zero()
    if algebraic != direct:
        raise ArithmeticError("algebraic harmonicity test disagrees with the direct divergence")
    return algebraic


def harmonic_class_guarantee(c: TorsionClass) -> bool:
    return c in HARMONIC_CLASSES


def harmonic_refinement(c: TorsionClass) -> frozenset[TorsionClass]:
    """Classes a harmonic structure of nominal type ``c`` can actually have."""
    if c == _c(1, 3, 4):
        return frozenset({_c(1, 3), _c(3, 4)})
    return frozenset({c})


@dataclass(frozen=True)
class ClassReport:
    class_from_tau: TorsionClass
    class_from_bracket: TorsionClass
    admissible: bool
    unimodular: bool
    harmonic: bool
    harmonic_guaranteed_by_class: bool


def class_report(A: np.ndarray, t: TorsionForms | None = None) -> ClassReport:
    if t is None:
        t = engine.torsion_closed_form(A)
    from_tau = classify_from_tau(t)
    from_bracket = classify_from_bracket(A)
    if from_tau != from_bracket:
        raise ArithmeticError(f"class mismatch: {from_tau} from τ vs {from_bracket} from A")
    return ClassReport(
        from_tau,
        from_bracket,
        admissibility(from_tau),
        unimodular_check(A),
        harmonicity(A),
        harmonic_class_guarantee(from_tau),
    )


def random_rational(rng: np.random.Generator) -> Fraction:
    """Small random rational p/q with |p| <= 3, 1 <= q <= 5."""
    return Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 6)))


def random_matrix(rng: np.random.Generator, n: int = 6) -> np.ndarray:
    return np.array([[random_rational(rng) for _ in range(n)] for _ in range(n)], dtype=object)


def random_component(name: str, rng: np.random.Generator, max_tries: int = 50) -> np.ndarray:
    """A random nonzero element of one SU(3)-summand of gl(6)."""
    for _ in range(max_tries):
        if name == "tr_part":
            M = identity(6) * random_rational(rng)
        elif name == "j_part":
            M = su3.constants().J * random_rational(rng)
        else:
            M = getattr(su3.split(random_matrix(rng)), name)
        if not is_zero_matrix(M):
            return M
    raise SamplingError(f"could not draw a nonzero {name} component")


def sample_bracket(target: TorsionClass | str, rng_seed=None, max_tries: int = 20) -> np.ndarray:
    """Random bracket whose torsion class is exactly ``target``."""
    if isinstance(target, str):
        target = TorsionClass.parse(target)
    if not admissibility(target):
        raise InadmissibleClassError(
            f"inadmissible class {target}: on almost Abelian algebras j(τ₃) = 0 forces τ₀ = 0"
        )
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    needed = TABLE1[target]
    for _ in range(max_tries):
        A = random_component("c_plus", rng)
        for name in needed:
            A = A + random_component(name, rng)
        if classify_from_bracket(A) == target:
            return A
    raise SamplingError(f"no witness for {target} after {max_tries} draws")
