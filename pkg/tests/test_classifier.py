import itertools

import pytest

import oracles
from g2torsion import builtin, classifier, engine, identities, su3, verify
from g2torsion.classifier import (
    ALL_CLASSES,
    HARMONIC_CLASSES,
    INADMISSIBLE,
    TABLE1,
    TABLE2,
    InadmissibleClassError,
    SamplingError,
    TorsionClass,
    admissibility,
    class_report,
    classify_from_bracket,
    classify_from_tau,
    harmonic_class_guarantee,
    harmonic_refinement,
    harmonicity,
    random_component,
    random_matrix,
    sample_bracket,
    unimodular_check,
    unimodular_class_table,
)
from g2torsion.exterior import elementary, identity, is_zero_matrix, transpose, zeros

W = TorsionClass.parse
COMPONENTS = ("tr_part", "s_plus", "s_minus", "j_part", "c_plus", "c_minus")


def build(names, rng):
    A = zeros(6)
    for n in names:
        A = A + random_component(n, rng)
    return A


class TestTorsionClass:
    def test_labels(self):
        assert TorsionClass().label == "{0}"
        assert TorsionClass([3, 1]).label == "W1⊕W3"

    @pytest.mark.parametrize("text", ["W1⊕W3", "W1+W3", "w3,w1", " W1 ⊕ W3 "])
    def test_parse(self, text):
        assert W(text) == TorsionClass([1, 3])

    def test_parse_zero(self):
        assert W("{0}") == TorsionClass()

    @pytest.mark.parametrize("text", ["W5", "X1", "W1⊕"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            W(text)

    def test_sixteen_classes(self):
        assert len(set(ALL_CLASSES)) == 16

    def test_round_trip(self):
        for c in ALL_CLASSES:
            assert W(c.label) == c


class TestClassifyFromTau:
    def test_zero(self):
        assert classify_from_tau(engine.torsion_oracle(zeros(6))) == TorsionClass()

    def test_unimodular_example(self):
        assert classify_from_tau(engine.torsion_oracle(builtin.bracket("A"))) == W("W2⊕W3⊕W4")

    def test_J(self):
        assert classify_from_tau(engine.torsion_oracle(su3.constants().J)) == W("W1⊕W3")

    def test_j_tau3_detects_tau3(self, rng):
        for _ in range(30):
            t = engine.torsion_oracle(build([n for n in COMPONENTS if rng.random() < 0.5], rng))
            assert t.tau3.is_zero() == is_zero_matrix(t.j_tau3)


class TestClassifyFromBracket:
    def test_su3(self, rng):
        assert classify_from_bracket(random_component("c_plus", rng)) == TorsionClass()

    def test_trace_part(self, rng):
        assert classify_from_bracket(build(["tr_part", "c_plus"], rng)) == W("W4")

    def test_coclosed_family(self, rng):
        assert classify_from_bracket(build(["s_minus", "j_part", "c_plus"], rng)) == W("W1⊕W3")

    def test_agrees_with_tau(self, rng):
        for _ in range(100):
            A = build([n for n in COMPONENTS if rng.random() < 0.6], rng)
            assert classify_from_bracket(A) == classify_from_tau(engine.torsion_oracle(A))

    def test_report_consistency(self, rng):
        r = class_report(builtin.bracket("D"))
        assert r.class_from_tau == r.class_from_bracket == W("W1⊕W2⊕W3⊕W4")
        assert r.harmonic and r.unimodular and r.admissible


class TestTables:
    def test_twelve_rows(self):
        assert len(TABLE1) == 12
        assert set(TABLE1) == set(ALL_CLASSES) - INADMISSIBLE

    def test_table1_rows_realise_their_class(self, rng):
        for c, names in TABLE1.items():
            assert classify_from_bracket(build(list(names) + ["c_plus"], rng)) == c

    def test_exhaustive_by_enumeration(self, rng):
        """Every component pattern lands in TABLE1, and the four missing classes never occur."""
        seen = set()
        for r in range(len(COMPONENTS) + 1):
            for names in itertools.combinations(COMPONENTS, r):
                c = classify_from_bracket(build(names, rng))
                assert c == classifier._class_from_components(frozenset(names) - {"c_plus"})
                seen.add(c)
        assert seen == set(TABLE1)
        assert seen.isdisjoint(INADMISSIBLE)

    def test_table2_is_what_traceless_patterns_reach(self):
        traceless = COMPONENTS[1:]
        reached = {
            classifier._class_from_components(frozenset(names) - {"c_plus"})
            for r in range(len(traceless) + 1)
            for names in itertools.combinations(traceless, r)
        }
        assert TABLE2 == reached
        assert len(TABLE2) == 8


class TestAdmissibility:
    @pytest.mark.parametrize("label", ["W1", "W1⊕W4", "W1⊕W2", "W1⊕W2⊕W4"])
    def test_inadmissible(self, label):
        assert not admissibility(W(label))

    @pytest.mark.parametrize("label", ["W1⊕W3", "{0}", "W2⊕W4", "W1⊕W2⊕W3⊕W4"])
    def test_admissible(self, label):
        assert admissibility(W(label))

    def test_rule(self):
        for c in ALL_CLASSES:
            assert admissibility(c) == (c not in INADMISSIBLE)

    def test_j_tau3_zero_forces_tau0_zero(self, rng):
        for _ in range(200):
            t = engine.torsion_closed_form(build([n for n in COMPONENTS if rng.random() < 0.5], rng))
            if is_zero_matrix(t.j_tau3):
                assert t.tau0 == 0


class TestUnimodular:
    def test_example(self):
        A = builtin.bracket("A")
        assert unimodular_check(A)
        assert unimodular_class_table(classify_from_bracket(A))
        assert classify_from_bracket(A) == W("W2⊕W3⊕W4")

    def test_identity(self):
        assert not unimodular_check(identity(6))

    def test_traceless_lands_in_table2(self, rng):
        for _ in range(100):
            A = build([n for n in COMPONENTS[1:] if rng.random() < 0.6], rng)
            assert unimodular_check(A)
            assert unimodular_class_table(classify_from_bracket(A))


class TestHarmonicity:
    def test_full_class_example(self):
        assert harmonicity(builtin.bracket("D"))

    def test_nonharmonic_example(self):
        assert not harmonicity(builtin.bracket("B"))

    def test_symmetric(self, rng):
        M = random_matrix(rng)
        assert harmonicity(M + transpose(M))

    @pytest.mark.parametrize("label, expected", [("W2⊕W4", True), ("W2⊕W3⊕W4", False), ("{0}", True)])
    def test_class_guarantee(self, label, expected):
        assert harmonic_class_guarantee(W(label)) is expected

    def test_nine_classes(self):
        assert len(HARMONIC_CLASSES) == 9
        assert HARMONIC_CLASSES <= set(TABLE1)

    def test_guaranteed_classes_are_harmonic(self, rng):
        for c in HARMONIC_CLASSES:
            for _ in range(20):
                assert harmonicity(sample_bracket(c, rng))

    def test_unguaranteed_classes_have_both_outcomes(self, rng):
        # W2⊕W3⊕W4: the built-in "A" is harmonic and "B" is not
        assert classify_from_bracket(builtin.bracket("A")) == classify_from_bracket(builtin.bracket("B"))
        assert harmonicity(builtin.bracket("A")) and not harmonicity(builtin.bracket("B"))

    def test_refinement_of_w134(self, rng):
        target = W("W1⊕W3⊕W4")
        allowed = harmonic_refinement(target)
        assert allowed == {W("W1⊕W3"), W("W3⊕W4")}
        for _ in range(10):
            assert not harmonicity(sample_bracket(target, rng))
        seen = set()
        names = ("tr_part", "s_minus", "j_part")
        for r in range(4):
            for keep in itertools.combinations(names, r):
                for _ in range(3):
                    A = build(list(keep) + ["c_plus"], rng)
                    if harmonicity(A):
                        c = classify_from_bracket(A)
                        assert c != target
                        assert any(c.components <= a.components for a in allowed)
                        seen.add(c)
        assert allowed <= seen


class TestSampling:
    @pytest.mark.parametrize("c", sorted(TABLE1, key=lambda c: c.label), ids=lambda c: c.label)
    def test_every_admissible_class(self, c):
        A = sample_bracket(c, 7)
        assert classify_from_tau(engine.torsion_oracle(A)) == c

    def test_zero_class_is_torsion_free(self):
        t = engine.torsion_oracle(sample_bracket("{0}", 3))
        assert t.tau0 == 0 and t.tau1.is_zero() and t.tau2.is_zero() and t.tau3.is_zero()

    def test_w134_components(self):
        nz = su3.split(sample_bracket("W1⊕W3⊕W4", 1)).nonzero()
        assert {"tr_part", "s_minus", "j_part"} <= nz

    @pytest.mark.parametrize("label", ["W1", "W1⊕W4", "W1⊕W2", "W1⊕W2⊕W4"])
    def test_inadmissible_rejected(self, label):
        with pytest.raises(InadmissibleClassError, match="inadmissible"):
            sample_bracket(label, 0)

    def test_deterministic(self):
        a, b = sample_bracket("W2⊕W3", 11), sample_bracket("W2⊕W3", 11)
        assert is_zero_matrix(a - b)

    def test_retry_exhaustion(self, monkeypatch):
        monkeypatch.setattr(classifier, "classify_from_bracket", lambda A: TorsionClass([2]))
        with pytest.raises(SamplingError):
            sample_bracket("W3", 0, max_tries=3)


def _d_coefficients(form, k):
    """Coefficient vector of d(form) for the k-th elementary matrix of gl(6)."""
    i, j = divmod(k, 6)
    out = engine.d(form, elementary(6, i + 1, j + 1))
    keys = list(itertools.combinations(range(1, 8), form.degree + 1))
    return [out.coeffs.get(key, 0) for key in keys]


class TestFreibert:
    def test_closed_kernel(self):
        # sym⁰₊ ⊕ su(3): 8 + 8
        assert oracles.kernel_dim(lambda k: _d_coefficients(engine.phi(), k), 36) == 16

    def test_coclosed_kernel(self):
        # sym⁰₋ ⊕ R·J ⊕ su(3): 12 + 1 + 8
        assert oracles.kernel_dim(lambda k: _d_coefficients(engine.psi(), k), 36) == 21

    def test_both_directions(self, rng):
        for _ in range(15):
            A = build([n for n in COMPONENTS if rng.random() < 0.4], rng)
            assert all(identities.freibert(A).values())

    def test_closed_sample(self, rng):
        A = build(["s_plus", "c_plus"], rng)
        assert engine.d(engine.phi(), A).is_zero()
        assert not engine.d(engine.phi(), A + random_component("j_part", rng)).is_zero()

    def test_coclosed_sample(self, rng):
        A = build(["s_minus", "j_part", "c_plus"], rng)
        assert engine.d(engine.psi(), A).is_zero()
        assert not engine.d(engine.psi(), A + random_component("s_plus", rng)).is_zero()


class TestGrigorian:
    def test_tau1_zero_is_divergence_free(self, rng):
        for _ in range(10):
            A = build([n for n in ("s_plus", "s_minus", "j_part", "c_plus") if rng.random() < 0.7], rng)
            assert engine.torsion_closed_form(A).tau1.is_zero()
            assert engine.divergence_direct(A).is_zero()

    def test_pure_tau1_is_divergence_free(self, rng):
        for _ in range(10):
            A = build(["tr_part", "c_plus"], rng)
            t = engine.torsion_closed_form(A)
            assert t.tau0 == 0 and t.tau2.is_zero() and is_zero_matrix(t.j_tau3)
            assert engine.divergence_direct(A).is_zero()

    def test_suite_passes(self):
        result = verify.run(5, 10, ["grigorian"])
        assert result.ok and result.passed["grigorian"] == 10
