import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gmineq import errors
from gmineq.generate import haar_unitary, random_spd
from gmineq.lemmas import LEMMA_IDS, LemmaCase, eval_lemma, random_case
from gmineq.norms import NormSpec

NORMS = [NormSpec.ky_fan(1), NormSpec.ky_fan(2), NormSpec.trace(),
         NormSpec.schatten(2), NormSpec.operator()]


class TestRandomCases:
    @pytest.mark.parametrize("lemma_id", LEMMA_IDS)
    def test_deterministic(self, lemma_id):
        c1 = random_case(lemma_id, seed=99)
        c2 = random_case(lemma_id, seed=99)
        for key, val in c1.operands.items():
            if isinstance(val, list):
                for a, b in zip(val, c2.operands[key]):
                    np.testing.assert_array_equal(a, b)
            else:
                np.testing.assert_array_equal(val, c2.operands[key])
        assert c1.params == c2.params

    def test_rejects_unknown_id(self):
        with pytest.raises(errors.ConfigError):
            random_case("Cauchy", seed=0)
        with pytest.raises(errors.ConfigError):
            LemmaCase("Cauchy", {}, {})


@pytest.mark.parametrize("lemma_id", LEMMA_IDS)
@given(seed=st.integers(0, 5000))
@settings(max_examples=20, deadline=None)
def test_lemma_holds_on_admissible_cases(lemma_id, seed):
    case = random_case(lemma_id, seed, n=3, m=2)
    for norm in NORMS:
        rep = eval_lemma(case, norm)
        assert rep.passed, (lemma_id, seed, norm.label, rep.margin)


class TestEquality:
    def test_gram_swap_is_flagged_equality(self):
        rep = eval_lemma(random_case("GramSwap", 1), NormSpec.trace())
        assert rep.equality and rep.passed
        assert abs(rep.margin) <= 1e-8 * max(1.0, rep.rhs)

    def test_normal_product_commuting_is_equality_in_value(self):
        rep = eval_lemma(random_case("NormalProduct", 2), NormSpec.operator())
        assert rep.lhs == pytest.approx(rep.rhs, rel=1e-9)


class TestHypothesisChecks:
    def test_araki_bad_exponents(self):
        case = random_case("Araki", 0)
        bad = LemmaCase("Araki", case.operands, {"p": 1.0, "q": 0.5})
        with pytest.raises(errors.HypothesisViolation):
            eval_lemma(bad, NormSpec.trace())

    def test_hoelder_non_conjugate(self):
        case = random_case("Hoelder", 0)
        bad = LemmaCase("Hoelder", case.operands, {"q": 2.0, "s": 3.0})
        with pytest.raises(errors.HypothesisViolation):
            eval_lemma(bad, NormSpec.trace())

    def test_normal_product_premise(self):
        rng = np.random.default_rng(0)
        A = random_spd(3, rng)
        B = random_spd(3, rng)  # generic pair: AB is not normal
        with pytest.raises(errors.HypothesisViolation):
            eval_lemma(LemmaCase("NormalProduct", {"A": A, "B": B}, {}), NormSpec.trace())

    def test_power_monotone_premise(self):
        case = LemmaCase(
            "PowerMonotoneFamily",
            {"A": np.diag([5.0, 1.0]), "B": np.diag([1.0, 1.0])},
            {"r": 2.0},
        )
        with pytest.raises(errors.HypothesisViolation):
            eval_lemma(case, NormSpec.trace())

    def test_concave_theta_out_of_range(self):
        case = random_case("ConcaveSubaddBU", 0)
        bad = LemmaCase("ConcaveSubaddBU", case.operands, {"theta": 1.5})
        with pytest.raises(errors.HypothesisViolation):
            eval_lemma(bad, NormSpec.trace())

    def test_aub_power_requires_unitary(self):
        rng = np.random.default_rng(1)
        case = LemmaCase(
            "AUBPower",
            {"A": random_spd(2, rng), "B": random_spd(2, rng), "U": np.diag([1.0, 2.0])},
            {"q": 2.0},
        )
        with pytest.raises(errors.NotUnitary):
            eval_lemma(case, NormSpec.trace())

    def test_block_normal_rejects_bad_blocks(self):
        # not Hermitian overall and blocks not normal
        rng = np.random.default_rng(2)
        G = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        case = LemmaCase("BlockNormal", {"Z": G}, {"n": 2})
        with pytest.raises(errors.HypothesisViolation):
            eval_lemma(case, NormSpec.trace())


class TestClosedForms:
    def test_convex_subadd_scalar_equality_boundary(self):
        # r = 1: both sides are the same matrix
        case = LemmaCase("ConvexSubadd", {"A_list": [np.diag([1.0, 2.0]), np.diag([3.0, 4.0])]},
                         {"r": 1.0})
        rep = eval_lemma(case, NormSpec.trace())
        assert rep.margin == pytest.approx(0.0, abs=1e-12)

    def test_araki_commuting_equality(self):
        D1, D2 = np.diag([1.0, 2.0]), np.diag([3.0, 4.0])
        rep = eval_lemma(LemmaCase("Araki", {"A": D1, "B": D2}, {"p": 0.5, "q": 2.0}),
                         NormSpec.trace())
        assert rep.margin == pytest.approx(0.0, abs=1e-10 * rep.rhs)

    def test_aub_power_identity_unitary_diag(self):
        A, B = np.diag([2.0, 1.0]), np.diag([1.0, 3.0])
        rep = eval_lemma(LemmaCase("AUBPower", {"A": A, "B": B, "U": np.eye(2)}, {"q": 2.0}),
                         NormSpec.operator())
        # diagonal case: |AUB|^q = |A^q U B^q| exactly
        assert rep.margin == pytest.approx(0.0, abs=1e-10 * max(1.0, rep.rhs))

    def test_block_normal_unitary_blocks(self):
        rng = np.random.default_rng(3)
        U1, U2 = haar_unitary(2, rng), haar_unitary(2, rng)
        Z = np.zeros((4, 4), dtype=np.complex128)
        Z[:2, 2:] = U1
        Z[2:, :2] = U2  # normal blocks, non-Hermitian Z
        rep = eval_lemma(LemmaCase("BlockNormal", {"Z": Z}, {"n": 2}), NormSpec.operator())
        assert rep.passed
