import numpy as np
import pytest

from oracles import tsp_enumerate
from wreathwalk import lemma
from wreathwalk.base import FreeGroup
from wreathwalk.errors import LemmaHypothesisError

F2 = FreeGroup(2)
w = F2.parse


def make(A, B, C, L1=(), L2=(), D=1):
    A, B, C = w(A), w(B), w(C)
    return lemma.LemmaInstance(F2, A, B, C, F2.geodesic(A, C), {w(x) for x in L1}, {w(y) for y in L2}, D)


def axis_instance(D=1):
    return make("", "a" * 5, "a" * 10, ["aab"], ["a" * 7 + "b"], D)


class TestCertification:
    def test_empty_sets(self):
        rep = lemma.certify_hypotheses(make("", "a" * 8, "a" * 16))
        assert rep.ok and rep.N == 0

    def test_axis_instance(self):
        rep = lemma.certify_hypotheses(axis_instance())
        assert rep.ok and rep.R == 5 and rep.N == 2
        assert rep.B1 == w("a") and rep.B2 == w("a" * 9)

    def test_violation_reported(self):
        rep = lemma.certify_hypotheses(axis_instance(D=2))
        assert not rep.ok and "R_at_least_4D" in rep.failures

    def test_point_far_from_gamma(self):
        rep = lemma.certify_hypotheses(make("", "a" * 5, "a" * 10, ["aabb"], []))
        assert "points_near_gamma" in rep.failures

    def test_L1_too_far(self):
        rep = lemma.certify_hypotheses(make("", "a" * 5, "a" * 20, ["a" * 10], []))
        assert "L1_within_R_plus_4D" in rep.failures


class TestRegions:
    def test_examples(self):
        inst = axis_instance()
        assert lemma.region_of(inst, w("")) == "I"
        assert lemma.region_of(inst, w("a" * 5)) == "M"
        assert lemma.region_of(inst, w("aab")) == "M"
        assert lemma.region_of(inst, w("a" * 7 + "b")) == "M"
        assert lemma.region_of(inst, w("a")) == "I"
        assert lemma.region_of(inst, w("a" * 9)) == "T"

    def test_classify(self):
        inst = axis_instance()
        parts = lemma.classify_regions(inst, [w(""), w("aab"), w("a" * 10)])
        assert parts.initial == (w(""),) and parts.middle == (w("aab"),) and parts.terminal == (w("a" * 10),)
        with pytest.raises(ValueError):
            lemma.classify_regions(inst, [w("abb")])


class TestSandwich:
    def test_empty_sets(self):
        res = lemma.defect_sandwich(make("", "a" * 8, "a" * 16), set())
        assert res.defect == 0 and res.bound == 24 and res.verdict

    def test_axis_instance(self):
        inst = axis_instance()
        res = lemma.defect_sandwich(inst, inst.L1 | inst.L2)
        assert (res.t1, res.t2, res.t3, res.defect, res.bound) == (7, 7, 14, 0, 72)
        assert res.t1 == tsp_enumerate(F2.distance, inst.A, inst.L1, inst.B)

    def test_bad_L3(self):
        inst = axis_instance()
        with pytest.raises(ValueError):
            lemma.defect_sandwich(inst, set())

    def test_uncertified_raises(self):
        inst = axis_instance(D=2)
        with pytest.raises(LemmaHypothesisError):
            lemma.defect_sandwich(inst, inst.L1 | inst.L2)


class TestSurgery:
    def test_trivial(self):
        inst = make("", "a" * 8, "a" * 16)
        alpha = lemma.optimal_alpha(inst)
        beta = lemma.surgery(inst, alpha)
        assert beta.nodes == (inst.A, inst.B1, inst.B, inst.C) or beta.length == alpha.length
        assert beta.length == alpha.length
        assert lemma.check_visit_contract(inst, beta)

    def test_rejects_suboptimal_alpha(self):
        inst = make("", "a" * 5, "a" * 10, ["b"], ["a" * 10 + "b"])
        bad = lemma.NodePath(F2, (inst.A, w("a" * 10 + "b"), w("b"), inst.C))
        with pytest.raises(ValueError):
            lemma.surgery(inst, bad)

    def test_axis_instance(self):
        inst = axis_instance()
        alpha = lemma.optimal_alpha(inst)
        beta = lemma.surgery(inst, alpha)
        assert lemma.check_visit_contract(inst, beta)
        assert beta.length <= alpha.length + inst.bound


class TestRandomInstances:
    @pytest.mark.parametrize("seed", range(40))
    def test_properties(self, seed):
        rng = np.random.default_rng(seed)
        D = int(rng.integers(1, 4))
        inst, L3 = lemma.random_instance(rng, F2, D, int(rng.integers(8 * D, 80)), int(rng.integers(0, 8)))
        assert lemma.certify_hypotheses(inst).ok
        v = lemma.verify_instance(inst, L3)
        assert v.ok
        s = v.sandwich
        assert 0 <= s.defect <= s.bound
        # L3 monotonicity and the concatenation lower bound
        t_union = lemma.defect_sandwich(inst, inst.L1 | inst.L2).t3
        assert s.t3 <= t_union <= s.t1 + s.t2
        for _ in range(5):
            P = lemma.sample_region_point(inst, rng, "I")
            Q = lemma.sample_region_point(inst, rng, "T")
            M = lemma.sample_region_point(inst, rng, "M")
            lhs, rhs = lemma.claim_leap(inst, P, Q)
            assert lhs <= rhs
            for X in (P, Q):
                lhs, rhs = lemma.claim_step(inst, X, M)
                assert lhs <= rhs

    def test_small_axis_rejected(self):
        with pytest.raises(ValueError):
            lemma.random_instance(np.random.default_rng(0), F2, 3, 10, 2)
