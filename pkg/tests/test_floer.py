import pytest

from fixture_builders import (build_dsq_break, build_micro2_break_beta,
                              build_micro2datum, build_toyb,
                              build_toyb_break_permutation, build_toyc)
from wrapcat.ainf import check_ainf_relations, classify_unitality, cohomology_category
from wrapcat.errors import AlphaMissing, NoSection
from wrapcat.floer import (CompatibleCollection, WeakFloerSetup,
                           canonical_envelope, check_collection_compatible,
                           check_envelope_independence,
                           choose_compatible_collection, df_precategory,
                           validate_setup)
from wrapcat.linalg import GradedModule
from wrapcat.rings import CoefficientRing

F2 = CoefficientRing.prime_field(2)


class TestValidation:
    def test_toyb_passes(self):
        rep = validate_setup(build_toyb())
        assert rep["passed"]

    def test_toyc_passes(self):
        assert validate_setup(build_toyc())["passed"]

    def test_micro2_full_profile_passes(self):
        rep = validate_setup(build_micro2datum())
        assert rep["passed"]
        assert rep["axioms"]["viii-homotopy-data"]["passed"]
        assert rep["axioms"]["ix-diagonal"]["passed"]

    def test_permutation_closure_failure_names_pair(self):
        rep = validate_setup(build_toyb_break_permutation())
        assert not rep["passed"]
        fails = rep["axioms"]["ii-composability"]["failures"]
        assert any("missing-permutation" in f for f in fails)

    def test_dsq_break_fails_relations(self):
        rep = validate_setup(build_dsq_break())
        assert not rep["passed"]
        assert rep["axioms"]["vi-relations"]["failures"]

    def test_beta_break_fails(self):
        rep = validate_setup(build_micro2_break_beta())
        assert not rep["passed"]
        assert rep["axioms"]["viii-homotopy-data"]["failures"]

    def test_validation_monotone_on_subsetup(self):
        s = build_toyb()
        sub = WeakFloerSetup(
            s.ring, ["L", "Lp"], composable_mode="all-distinct", max_arity=1,
            cf={k: v for k, v in s.cf.items() if set(k) <= {"L", "Lp"}},
            profile="envelope",
            envelope_ops={},
            continuation=[c for c in s.continuation
                          if {c[0], c[1]} <= {"L", "Lp"}],
            name="toyb_sub")
        assert validate_setup(sub)["passed"]

    def test_strict_mode_notes_reinterpretation(self):
        rep = validate_setup(build_toyb(), mode="strict")
        assert any("finiteness" in n for n in rep.get("notes", []))


class TestCompatibleCollections:
    def test_unique_collection_when_singleton(self):
        col = choose_compatible_collection(build_toyb())
        assert col.datum(("Lp", "L")) is None  # envelope profile: unique

    def test_lexicographic_and_seeded(self):
        m2 = build_micro2datum()
        lex = choose_compatible_collection(m2, "lexicographic")
        s1 = choose_compatible_collection(m2, "seeded", seed=1)
        s2 = choose_compatible_collection(m2, "seeded", seed=2)
        assert lex.datum(("A", "B")) == "d1"
        assert s1.datum(("A", "B")) == "d2"
        assert s2.datum(("A", "B")) == "d1"
        assert check_collection_compatible(m2, s1)
        assert check_collection_compatible(m2, s2)

    def test_no_section_raises(self):
        m2 = build_micro2datum()
        m2.data_system.D[("B", "A")] = []
        with pytest.raises(NoSection):
            choose_compatible_collection(m2)


class TestCanonicalEnvelope:
    def test_hom_rules(self):
        env = canonical_envelope(build_toyb())
        assert env.hom("L", "L").rank(0) == 1
        assert env.hom("L", "L").total_rank() == 1
        assert env.hom("K", "L").is_zero()  # zero CF on a composable pair
        assert env.hom("L", "K").rank(0) == 1

    def test_envelope_strict_and_sound(self):
        for build in (build_toyb, build_toyc, build_micro2datum):
            env = canonical_envelope(build())
            assert check_ainf_relations(env, 4)["passed"]
            assert classify_unitality(env)["global"] == "strict"

    def test_toyb_h_composition(self):
        env = canonical_envelope(build_toyb())
        h = cohomology_category(env)
        got = h.compose("Lp", "L", "K", 0,
                        h.project_dict("Lp", "L", 0, {"c": 1}),
                        0, h.project_dict("L", "K", 0, {"y": 1}))
        assert got == h.project_dict("Lp", "K", 0, {"x": 1})


class TestIndependence:
    def test_equal_collections_give_identity(self):
        m2 = build_micro2datum()
        col = choose_compatible_collection(m2)
        rep = check_envelope_independence(m2, col, col)
        assert rep["passed"]
        assert all(p["iso"] for p in rep["pairs"])

    def test_distinct_collections_alpha_iso_and_beta(self):
        m2 = build_micro2datum()
        col1 = choose_compatible_collection(m2, "seeded", seed=0)
        col2 = choose_compatible_collection(m2, "seeded", seed=1)
        assert col1.delta != col2.delta
        rep = check_envelope_independence(m2, col1, col2)
        assert rep["passed"]
        assert all(p["iso"] for p in rep["pairs"])
        assert all(b["passed"] for b in rep["beta"])
        assert any(p["alpha"] == "a12" for p in rep["pairs"])

    def test_alpha_missing(self):
        m2 = build_micro2datum()
        m2.data_system.Dprime[("A", "B")] = [
            x for x in m2.data_system.Dprime[("A", "B")] if x[0] != "a12"]
        col1 = choose_compatible_collection(m2, "seeded", seed=0)
        col2 = choose_compatible_collection(m2, "seeded", seed=1)
        with pytest.raises(AlphaMissing):
            check_envelope_independence(m2, col1, col2)


class TestDFPreCategory:
    def test_micro2(self):
        m2 = build_micro2datum()
        dfp = df_precategory(m2)
        assert dfp.alpha_certificates_pass()
        hf = dfp.hF("A", "B")
        assert hf.rank(0) == 1 and hf.rank(1) == 0

    def test_singleton_data_reduces_to_h(self):
        s = build_toyb()
        # envelope-profile setups have no full data system
        with pytest.raises(Exception):
            df_precategory(s)
