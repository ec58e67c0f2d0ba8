from fractions import Fraction

import pytest

from orbitmesy import (
    CARDINALITY,
    PROMOTION,
    TOTAL_SUM,
    ArityError,
    EmptySetError,
    IncLabeling,
    NotHomomesicError,
    SymmetryError,
    TypeMismatchError,
    WrongPosetError,
    all_orbits,
    antipodal_sum,
    canonical_involution,
    census,
    classify_z4_orbit,
    covered_orbitmesy_check,
    enumerate_inc,
    enumerate_order_ideals,
    exterior_sum,
    global_average,
    interior_sum,
    is_homomesic,
    is_orbitmesic,
    orbit_average,
    orbit_of,
    orbitmesy_certificates,
    promotion_orbits,
    rowmotion_action,
    dual_ideal_action,
    swap_action,
    z4_exterior_sum_closed_form,
    z4_gap_profile,
    z4_interior_sum_closed_form,
    zigzag,
)
from orbitmesy.dynamics import IDENTITY
from orbitmesy.labeling import ContentWord
from orbitmesy.mesy import Z4GapProfile, eval_statistic, is_x_stable
from orbitmesy.poset import OrderIdeal


@pytest.fixture(scope="module")
def z6():
    return zigzag(6)


class TestStatistics:
    def test_antipodal_sums(self, lab, k4):
        f = lab(1, 3, 2, 6, q=6)
        assert exterior_sum(k4)(f) == 7
        assert interior_sum(k4)(f) == 5
        assert TOTAL_SUM(f) == 12

    def test_z6_exterior(self, z6):
        g = IncLabeling(z6, 5, (1, 5, 2, 3, 2, 4))
        assert exterior_sum(canonical_involution(z6))(g) == 5

    def test_type_mismatch(self, z4, lab):
        with pytest.raises(TypeMismatchError):
            eval_statistic(CARDINALITY, lab(1, 2, 1, 2, q=2))
        with pytest.raises(TypeMismatchError):
            eval_statistic(TOTAL_SUM, OrderIdeal.from_members(z4, [0]))

    def test_cardinality(self, z4):
        assert CARDINALITY(OrderIdeal.from_members(z4, [0, 2])) == 2

    def test_names(self, k4):
        assert exterior_sum(k4).name == "A_e"
        assert interior_sum(k4).name == "A_i"
        assert antipodal_sum(0, k4).name == "A_0"


class TestAverages:
    def test_bad_orbit(self, lab, k4):
        o = orbit_of(lab(1, 4, 2, 6, q=6))
        assert orbit_average(o, exterior_sum(k4)) == Fraction(41, 6)
        assert orbit_average(o, interior_sum(k4)) == Fraction(43, 6)
        assert not is_orbitmesic(o, exterior_sum(k4), Fraction(7))

    def test_balanced_orbit(self, lab, k4):
        o = orbit_of(lab(1, 3, 2, 6, q=6))
        assert len(o) == 6
        assert sum(exterior_sum(k4)(f) for f in o) == 42
        assert is_orbitmesic(o, exterior_sum(k4), Fraction(7))

    def test_swap_two_cycle(self, lab, k4):
        f = lab(1, 4, 2, 6, q=6)
        o = all_orbits(swap_action(k4), [f, swap_action(k4)(f)])[0]
        assert len(o) == 2
        assert orbit_average(o, exterior_sum(k4)) == 7

    def test_global(self, z4, k4, z6):
        states = enumerate_inc(z4, 6)
        assert global_average(states, exterior_sum(k4)) == 7
        assert global_average(states, TOTAL_SUM) == 14
        assert global_average(enumerate_inc(z6, 5), TOTAL_SUM) == 18

    def test_global_empty(self):
        with pytest.raises(EmptySetError):
            global_average([], TOTAL_SUM)

    def test_single_orbit(self, lab):
        states = list(orbit_of(lab(1, 2, 1, 3, q=3)))
        g = global_average(states, TOTAL_SUM)
        assert is_orbitmesic(all_orbits(PROMOTION, states)[0], TOTAL_SUM, g)


class TestHomomesy:
    @pytest.mark.parametrize("q", range(2, 9))
    def test_swap_antipodal(self, z4, k4, q):
        states = enumerate_inc(z4, q)
        for s in (exterior_sum(k4), interior_sum(k4)):
            assert is_homomesic(swap_action(k4), states, s) == q + 1

    @pytest.mark.parametrize("q", range(2, 9))
    def test_promotion_total(self, z4, q):
        assert is_homomesic(PROMOTION, enumerate_inc(z4, q), TOTAL_SUM) == 2 * (q + 1)

    def test_promotion_antipodal_fails_at_six(self, z4, k4):
        assert is_homomesic(PROMOTION, enumerate_inc(z4, 6), exterior_sum(k4)) is None


class TestCovered:
    def test_swap_promotion(self, z4, k4):
        states = enumerate_inc(z4, 6)
        rep = covered_orbitmesy_check(swap_action(k4), PROMOTION, states, exterior_sum(k4))
        assert rep.global_average == 7
        assert all(c.orbitmesic for c in rep.orbits if c.phi_closed)
        assert sum(not c.orbitmesic for c in rep.orbits) == 2

    def test_rowmotion(self, z4, k4):
        rep = covered_orbitmesy_check(
            dual_ideal_action(z4, k4), rowmotion_action(z4), enumerate_order_ideals(z4), CARDINALITY
        )
        assert rep.closed_count >= 1
        assert all(c.orbitmesic for c in rep.orbits if c.phi_closed)

    def test_self_cover_reduces_to_homomesy(self, z4):
        states = enumerate_inc(z4, 4)
        rep = covered_orbitmesy_check(PROMOTION, PROMOTION, states, TOTAL_SUM)
        assert all(c.phi_closed for c in rep.orbits)
        assert all(c.orbitmesic for c in rep.orbits)

    def test_identity_is_not_homomesic(self, z4):
        with pytest.raises(NotHomomesicError):
            covered_orbitmesy_check(IDENTITY, PROMOTION, enumerate_inc(z4, 4), TOTAL_SUM)

    def test_precondition(self, z4, k4):
        with pytest.raises(NotHomomesicError):
            covered_orbitmesy_check(PROMOTION, swap_action(k4), enumerate_inc(z4, 6), exterior_sum(k4))


class TestCertificates:
    def test_x_stable_orbit_b(self, lab, k4):
        o = orbit_of(lab(1, 2, 1, 3, q=3))
        assert sorted([f[0] for f in o] + [f[3] for f in o]) == [1, 1, 1, 2, 2, 2, 2, 3, 3, 3]
        assert is_x_stable(o, 0, k4)

    def test_x_stable_orbit_c(self, lab, k4):
        assert is_x_stable(orbit_of(lab(1, 3, 2, 4, q=4)), 0, k4)

    def test_swap_closed_implies_stable(self, z4, k4):
        from orbitmesy import is_swap_closed
        for o in promotion_orbits(z4, 6):
            if is_swap_closed(o, k4):
                assert is_x_stable(o, 0, k4) and is_x_stable(o, 1, k4)

    def test_linear_extension(self, lab, k4):
        rep = orbitmesy_certificates(lab(1, 6, 2, 4, q=6), k4)
        assert (rep.r, rep.period, rep.tau, rep.orbit_size) == (4, 6, 3, 18)
        assert "linear_extension" in {c.name for c in rep.fired()}
        assert rep.orbitmesic["Tot"]

    def test_x_stable(self, lab, k4):
        rep = orbitmesy_certificates(lab(3, 5, 3, 8, q=8), k4)
        assert {"A_0", "A_1"} <= rep.certified
        assert rep.orbitmesic["A_0"] and rep.orbitmesic["A_1"]

    @pytest.mark.parametrize("q", [2, 4, 7])
    def test_two_label_deflation(self, lab, k4, q):
        rep = orbitmesy_certificates(lab(1, q, 1, q, q=q), k4)
        assert "content_reversal" in {c.name for c in rep.fired()}

    @pytest.mark.parametrize("q", range(2, 7))
    def test_sound(self, z4, k4, q):
        # CounterexampleError would surface here
        g = {s: Fraction(q + 1) for s in ("A_0", "A_1")} | {"Tot": Fraction(2 * (q + 1))}
        for f in enumerate_inc(z4, q):
            orbitmesy_certificates(f, k4, g)


class TestZ4:
    def test_gap_profiles(self):
        assert z4_gap_profile(ContentWord.parse("110101")) == Z4GapProfile(0, 0, 1, 1)
        assert z4_gap_profile(ContentWord.parse("111001")) == Z4GapProfile(0, 0, 0, 2)
        assert z4_gap_profile(ContentWord.parse("1111")) == Z4GapProfile(0, 0, 0, 0)

    def test_gap_profile_arity(self):
        with pytest.raises(ArityError):
            z4_gap_profile(ContentWord.parse("1101"))

    def test_closed_forms(self):
        assert z4_exterior_sum_closed_form(Z4GapProfile(0, 0, 1, 1)) == 41
        assert z4_interior_sum_closed_form(Z4GapProfile(0, 0, 1, 1)) == 43
        assert z4_exterior_sum_closed_form(Z4GapProfile(0, 0, 0, 2)) == 42
        for g in (Z4GapProfile(1, 0, 1, 3), Z4GapProfile(2, 5, 2, 0)):
            assert z4_exterior_sum_closed_form(g) == g.q * (g.q + 1)

    def test_symmetric_content(self):
        with pytest.raises(SymmetryError) as info:
            z4_exterior_sum_closed_form(Z4GapProfile(1, 0, 1, 0))
        assert info.value.value == (2 + 0 + 5) * (1 + 0 + 2)

    def test_classify_bad(self, lab):
        c = classify_z4_orbit(orbit_of(lab(1, 4, 2, 6, q=6)))
        assert not c.avoids_1324 and not c.balanced and not c.predicted_orbitmesic
        assert c.averages == {"A_e": Fraction(41, 6), "A_i": Fraction(43, 6)}

    def test_classify_balanced(self, lab):
        c = classify_z4_orbit(orbit_of(lab(1, 3, 2, 6, q=6)))
        assert not c.avoids_1324 and c.balanced and c.predicted_orbitmesic
        assert c.profile == Z4GapProfile(0, 0, 0, 2)

    def test_classify_small(self, lab):
        c = classify_z4_orbit(orbit_of(lab(1, 2, 1, 2, q=2)))
        assert c.avoids_1324 and c.predicted_orbitmesic

    def test_classify_wrong_poset(self):
        o = orbit_of(IncLabeling(zigzag(3), 3, (1, 2, 1)))
        with pytest.raises(WrongPosetError):
            classify_z4_orbit(o)

    @pytest.mark.parametrize("q", range(2, 9))
    def test_prediction_agrees(self, z4, q):
        for o in promotion_orbits(z4, q):
            c = classify_z4_orbit(o)
            assert all(v == c.predicted_orbitmesic for v in c.orbitmesic.values())


class TestCensus:
    def test_z4(self, z4, k4):
        c = census(z4, 6, [exterior_sum(k4), interior_sum(k4), TOTAL_SUM])
        assert c.summary_line() == "orbits=16 orbitmesic(A_e)=14 orbitmesic(A_i)=14 orbitmesic(Tot)=16"
        assert {r.rep.labels for r in c.exceptional("A_e")} == {(1, 3, 2, 5), (1, 4, 2, 6)}
        assert all(r.averages["Tot"] == 14 for r in c.reports)

    def test_z6(self, z6):
        c = census(z6, 5, [TOTAL_SUM], certificates=False)
        assert len(c.reports) == 31
        assert sum(r.averages["Tot"] == 18 for r in c.reports) == 27
        bad = sorted((r.size, r.averages["Tot"]) for r in c.exceptional("Tot"))
        assert bad == sorted([(35, Fraction(628, 35)), (35, Fraction(632, 35)),
                              (22, Fraction(391, 22)), (22, Fraction(401, 22))])

    def test_q4_all_orbitmesic(self, z4, k4):
        c = census(z4, 4, [exterior_sum(k4), interior_sum(k4)])
        assert not c.exceptional("A_e") and not c.exceptional("A_i")

    def test_parallel_matches_serial(self, z4, k4):
        stats = [exterior_sum(k4), TOTAL_SUM]
        assert census(z4, 6, stats, jobs=2).to_json() == census(z4, 6, stats, jobs=1).to_json()

    def test_formats(self, z4, k4):
        c = census(z4, 5, [exterior_sum(k4)])
        assert c.to_csv().splitlines()[0].startswith("rep,size,avg(A_e)")
        assert c.to_text().endswith(c.summary_line() + "\n")

    def test_empty(self, z4):
        with pytest.raises(EmptySetError):
            census(z4, 1, [TOTAL_SUM])

    def test_not_self_dual_skips_certificates(self):
        c = census(zigzag(3), 4, [TOTAL_SUM])
        assert all(not r.certificates for r in c.reports)
