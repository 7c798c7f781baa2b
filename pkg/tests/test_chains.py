import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gmineq import errors
from gmineq.chains import (
    ChainParams,
    commuting_terms,
    condition_max,
    eval_commuting_chain,
    eval_geo_vs_Z,
    eval_main_chain,
    eval_t_chain,
    expand_norm_tokens,
    geo_z_terms,
    main_chain_terms,
    report_from_terms,
    t_chain_status,
    t_chain_terms,
)
from gmineq.generate import generate_instance
from gmineq.norms import NormSpec

NORMS = [NormSpec.ky_fan(1), NormSpec.ky_fan(2), NormSpec.schatten(1),
         NormSpec.schatten(2), NormSpec.schatten(np.inf)]


class TestMainChain:
    def test_hypothesis_violations(self):
        inst = generate_instance("generic", 2, 2, 0)
        for params in (ChainParams(s=1.5), ChainParams(s=2, r=0.5),
                       ChainParams(s=2, r=1, p=0.5)):
            with pytest.raises(errors.HypothesisViolation):
                main_chain_terms(inst, params)

    def test_boundary_params_accepted(self):
        inst = generate_instance("generic", 2, 2, 0)
        terms = main_chain_terms(inst, ChainParams(s=2.0, r=1.0, p=1.0))
        assert terms.status == "proven"

    @given(st.integers(0, 2000), st.sampled_from([2.0, 3.0]),
           st.sampled_from([1.0, 2.0]), st.sampled_from([0.5, 1.0, 2.0]))
    @settings(max_examples=30, deadline=None)
    def test_chain_holds(self, seed, s, r, p):
        if r * p < 1.0:
            return
        inst = generate_instance("generic", 2, 2, seed)
        params = ChainParams(s=s, r=r, p=p)
        for norm in NORMS:
            rep = eval_main_chain(inst, params, norm)
            if not rep.gated:
                assert rep.passed, (seed, s, r, p, norm.label, rep.margins)

    def test_middle_term_ordered(self):
        inst = generate_instance("generic", 3, 2, 17)
        rep = eval_main_chain(inst, ChainParams(s=2, r=1, p=1), NormSpec.trace())
        assert rep.mid is not None
        assert rep.lhs <= rep.mid + 1e-8 * rep.scale
        assert rep.mid <= rep.rhs + 1e-8 * rep.scale

    def test_scalar_collapse_is_equality(self):
        inst = generate_instance("generic", 1, 1, 23)
        rep = eval_main_chain(inst, ChainParams(s=3, r=2, p=0.5), NormSpec.operator())
        assert max(abs(v) for v in rep.margins) <= 1e-12 * rep.scale


class TestGeoZ:
    def test_rejects_small_s(self):
        inst = generate_instance("generic", 2, 2, 0)
        with pytest.raises(errors.HypothesisViolation):
            geo_z_terms(inst, 0.5)

    @given(st.integers(0, 2000), st.sampled_from([1.0, 1.25, 1.5, 1.75]))
    @settings(max_examples=30, deadline=None)
    def test_left_step_holds_below_two(self, seed, s):
        inst = generate_instance("generic", 2, 2, seed)
        for norm in NORMS:
            rep = eval_geo_vs_Z(inst, s, norm)
            if not rep.gated:
                assert rep.passed, (seed, s, norm.label, rep.margins)


class TestTChain:
    def test_status_table(self):
        assert t_chain_status(ChainParams(s=1.0, r=2.0, p=0.5, t=0.3)) == "proven"
        assert t_chain_status(ChainParams(s=2.5, r=1.0, p=1.0, t=0.5)) == "proven"
        assert t_chain_status(ChainParams(s=2.0, r=0.75, p=2.0, t=0.5)) == "proven"
        assert t_chain_status(ChainParams(s=1.5, r=1.0, p=1.0, t=0.5)) == "conjectured"
        assert t_chain_status(ChainParams(s=2.5, r=1.0, p=1.0, t=0.3)) == "conjectured"

    def test_rejects_bad_params(self):
        inst = generate_instance("generic", 2, 2, 0)
        with pytest.raises(errors.HypothesisViolation):
            t_chain_terms(inst, ChainParams(s=1.0, t=1.5))
        with pytest.raises(errors.HypothesisViolation):
            t_chain_terms(inst, ChainParams(s=-1.0))

    @given(st.integers(0, 2000), st.sampled_from([0.0, 0.3, 0.5, 0.7, 1.0]),
           st.sampled_from([1.0, 2.0]), st.sampled_from([0.5, 1.0, 2.0]))
    @settings(max_examples=30, deadline=None)
    def test_proven_regime_s1_holds(self, seed, t, r, p):
        inst = generate_instance("generic", 2, 2, seed)
        params = ChainParams(s=1.0, r=r, p=p, t=t)
        assert t_chain_status(params) == "proven"
        for norm in NORMS:
            rep = eval_t_chain(inst, params, norm)
            if not rep.gated:
                assert rep.passed, (seed, t, r, p, norm.label, rep.margins)

    def test_conjectured_negative_margin_is_recorded_not_raised(self):
        inst = generate_instance("generic", 2, 2, 3)
        rep = eval_t_chain(inst, ChainParams(s=1.5, t=0.5), NormSpec.trace())
        assert rep.status == "conjectured"
        assert isinstance(rep.passed, bool)  # no exception either way


class TestCommuting:
    def test_requires_commuting_instance(self):
        inst = generate_instance("generic", 2, 2, 0)
        with pytest.raises(errors.NotCommuting):
            commuting_terms(inst, "product")

    def test_rejects_unknown_variant(self):
        inst = generate_instance("commuting", 2, 2, 0)
        with pytest.raises(errors.ConfigError):
            commuting_terms(inst, "harmonic")

    @given(st.integers(0, 2000), st.sampled_from(["product", "symmetrized"]))
    @settings(max_examples=30, deadline=None)
    def test_chain_holds(self, seed, variant):
        inst = generate_instance("commuting", 2, 3, seed)
        for norm in NORMS:
            rep = eval_commuting_chain(inst, variant, norm)
            if not rep.gated:
                assert rep.passed, (seed, variant, norm.label, rep.margins)


class TestReporting:
    def test_condition_gating(self):
        inst = generate_instance("generic", 3, 2, 5)
        terms = main_chain_terms(inst, ChainParams())
        rep = report_from_terms(terms, inst, ChainParams(), NormSpec.trace(),
                                condition_cap=1.5)
        assert rep.gated
        assert rep.condition_max == pytest.approx(condition_max(inst))

    def test_expand_norm_tokens(self):
        specs = expand_norm_tokens(["kyfan:all", "schatten:2", NormSpec.trace()], 3)
        assert specs[:3] == [NormSpec.ky_fan(1), NormSpec.ky_fan(2), NormSpec.ky_fan(3)]
        assert specs[3:] == [NormSpec.schatten(2), NormSpec.trace()]
