import pytest

from fixture_builders import build_toyb, build_toyc
from wrapcat.ainf import cohomology_category
from wrapcat.errors import NotStabilized, RestrictionMismatch
from wrapcat.floer import WeakFloerSetup, canonical_envelope
from wrapcat.linalg import GradedModule
from wrapcat.localization import CSet
from wrapcat.rings import CoefficientRing
from wrapcat.wrap import (WrappingCategory, check_localization_agreement,
                          check_wawfs_morphism, continuation_cset,
                          generating_subset, validate_continuation_system,
                          wrapped_df_category)

F2 = CoefficientRing.prime_field(2)


def prepare(build):
    s = build()
    env = canonical_envelope(s)
    h = cohomology_category(env, check_arity=0)
    return s, env, h, continuation_cset(s, h)


class TestContinuationValidation:
    def test_toyb_strict_fails_v_at_outermost(self):
        s, env, h, cset = prepare(build_toyb)
        rep = validate_continuation_system(s, h, cset, "strict")
        assert not rep["passed"]
        failed = {f["object"] for f in rep["conditions"]["v"]["failures"]}
        assert failed == {"Lp", "Kp"}
        for key in ("i", "ii", "iii", "iv", "vi"):
            assert rep["conditions"][key]["passed"]

    def test_toyb_finite_waives(self):
        s, env, h, cset = prepare(build_toyb)
        rep = validate_continuation_system(s, h, cset, "finite")
        assert rep["passed"]
        assert len(rep["waivers"]) == 2

    def test_toyc_strict_v_fails_at_top(self):
        s, env, h, cset = prepare(build_toyc)
        rep = validate_continuation_system(s, h, cset, "strict")
        assert not rep["passed"]
        failed = {f["object"] for f in rep["conditions"]["v"]["failures"]}
        assert "L3" in failed

    def test_missing_composite_fails_ii(self):
        s, env, h, _ = prepare(build_toyc)
        classes = [(a, b, h.project_dict(a, b, 0, combo))
                   for (a, b, combo) in s.continuation if "c01" not in combo]
        cset = CSet(h, classes)
        rep = validate_continuation_system(s, h, cset, "finite")
        assert not rep["passed"]
        assert rep["conditions"]["ii"]["failures"]


class TestWrappingCategory:
    def test_identities_only_single_object(self):
        s, env, h, _ = prepare(build_toyb)
        w = WrappingCategory(h, CSet(h, []), "L", depth=2)
        assert len(w.slice.objects) == 1

    def test_toyb_slice_objects(self):
        s, env, h, cset = prepare(build_toyb)
        w = WrappingCategory(h, cset, "L", depth=3)
        sources = {c.src for c in w.slice.objects}
        assert sources == {"L", "Lp"}
        assert w.cofinal_certified

    def test_toyc_chain_linear(self):
        s, env, h, cset = prepare(build_toyc)
        w = WrappingCategory(h, cset, "L0", depth=3,
                             chain_hint=s.wrap_chains["L0"])
        assert w.chain_sources() == ["L0", "L1", "L2", "L3"]
        assert w.cofinal_certified

    def test_hw_modules(self):
        s, env, h, cset = prepare(build_toyb)
        w = WrappingCategory(h, cset, "L", depth=3)
        colim, _, stab = w.hw_module("K")
        assert colim.rank(0) == 1 and stab
        s2, env2, h2, cset2 = prepare(build_toyc)
        w2 = WrappingCategory(h2, cset2, "L0", depth=3,
                              chain_hint=s2.wrap_chains["L0"])
        colim2, _, stab2 = w2.hw_module("K")
        assert colim2.rank(0) == 2 and stab2

    def test_identities_only_hw_equals_hf(self):
        s, env, h, _ = prepare(build_toyb)
        wdf = wrapped_df_category(s, env, h, CSet(h, []), depth=2)
        for a in env.objects:
            for b in env.objects:
                assert wdf.hw_rank_map(a, b) == \
                    {d: h.pres(a, b).rank(d) for d in h.pres(a, b).degrees()
                     if h.pres(a, b).rank(d)}


class TestWrappedDF:
    def test_toyb_table_and_axioms(self):
        s, env, h, cset = prepare(build_toyb)
        wdf = wrapped_df_category(s, env, h, cset, depth=4)
        for a in env.objects:
            for b in env.objects:
                ranks = wdf.hw_rank_map(a, b)
                assert set(ranks.values()) <= {1}
        assert wdf.hw_rank_map("L", "K") == {0: 1}
        assert wdf.hw_rank_map("K", "L") == {}
        assert wdf.verify_category_axioms()["passed"]
        assert wdf.check_right_locality()["passed"]
        assert wdf.check_canonical_functor()["passed"]

    def test_toyc_right_locality_on_stabilized(self):
        s, env, h, cset = prepare(build_toyc)
        wdf = wrapped_df_category(s, env, h, cset, depth=4)
        assert wdf.check_right_locality()["passed"]
        assert not wdf.stabilized("L0", "L3")

    def test_not_stabilized_error(self):
        s, env, h, cset = prepare(build_toyc)
        with pytest.raises(NotStabilized):
            wrapped_df_category(s, env, h, cset, depth=4,
                                require_stabilized=True)

    def test_generating_subset(self):
        s, env, h, cset = prepare(build_toyc)
        gens = {(c.src, c.tgt) for c in generating_subset(h, cset)}
        assert gens == {("L1", "L0"), ("L2", "L1"), ("L3", "L2")}


class TestAgreement:
    def test_toyb(self):
        s, env, h, cset = prepare(build_toyb)
        wdf = wrapped_df_category(s, env, h, cset, depth=4)
        ag = check_localization_agreement(s, env, h, cset, depth=4, wdf=wdf)
        assert ag["passed"]
        assert all(r["agree"] for r in ag["pairs"] if r["agree"] is not None)
        assert all(r["kernels_match"] for r in ag["comparison_maps"])

    def test_toyc(self):
        s, env, h, cset = prepare(build_toyc)
        wdf = wrapped_df_category(s, env, h, cset, depth=4)
        ag = check_localization_agreement(s, env, h, cset, depth=4, wdf=wdf)
        assert ag["passed"]
        compared = [r for r in ag["pairs"] if r["agree"] is not None]
        assert len(compared) >= 24


def extend_toyb_with_disjoint_pair():
    s = build_toyb()
    ring = s.ring
    lag = list(s.lagrangians) + ["N", "Np"]
    cf = dict(s.cf)
    cf[("Np", "N")] = GradedModule.from_generators(ring, [("en", 0)])
    cont = list(s.continuation) + [("Np", "N", {"en": ring.one()})]
    return WeakFloerSetup(ring, lag, composable_mode="all-distinct",
                          max_arity=3, cf=cf, profile="envelope",
                          envelope_ops=dict(s.envelope_ops),
                          continuation=cont, name="toyb_ext")


class TestSetupMorphisms:
    def test_identity_morphism(self):
        s, env, h, cset = prepare(build_toyb)
        rep = check_wawfs_morphism(s, env, h, cset, s, env, h, cset, depth=3)
        assert rep["passed"]

    def test_extension_by_disjoint_pair(self):
        s, env, h, cset = prepare(build_toyb)
        t = extend_toyb_with_disjoint_pair()
        tenv = canonical_envelope(t)
        th = cohomology_category(tenv, check_arity=0)
        tcset = continuation_cset(t, th)
        rep = check_wawfs_morphism(s, env, h, cset, t, tenv, th, tcset, depth=3)
        assert rep["passed"]
        assert rep["induced_hw"]

    def test_restriction_mismatch(self):
        s, env, h, cset = prepare(build_toyb)
        t = build_toyb()
        tenv = canonical_envelope(t)
        th = cohomology_category(tenv, check_arity=0)
        extra = [(a, b, th.project_dict(a, b, 0, combo))
                 for (a, b, combo) in t.continuation]
        extra.append(("L", "K", th.project_dict("L", "K", 0, {"y": 1})))
        tcset = CSet(th, extra)
        with pytest.raises(RestrictionMismatch):
            check_wawfs_morphism(s, env, h, cset, t, tenv, th, tcset, depth=3)
