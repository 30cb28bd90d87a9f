from fractions import Fraction as F

import pytest

from hatvol import geometry as G
from hatvol import invariants as I
from hatvol import models as MD
from hatvol import monomials as M
from hatvol.errors import InvariantViolationError, ValidationError

AN2 = MD.MonomialPair(2, (0, 0))
AN3 = MD.MonomialPair(3, (0, 0, 0))


def fano(vertices, r=1):
    return MD.FanoConeInput(G.convex_hull(vertices), r)


def orthant(n):
    return MD.ToricSingularity(G.Cone([tuple(int(i == j) for j in range(n)) for i in range(n)]))


class TestLct:
    def test_maximal_ideal(self):
        result = I.lct(AN2, M.maximal_ideal(2))
        assert result.value == 2
        assert result.minimizing_weight == (F(1), F(1))

    def test_plane_curve(self):
        result = I.lct(AN2, M.MonomialIdeal(2, [(2, 0), (0, 3)]))
        assert result.value == F(5, 6)
        assert result.minimizing_weight == (F(1, 2), F(1, 3))

    def test_three_generators(self):
        result = I.lct(AN2, M.MonomialIdeal(2, [(2, 0), (1, 2), (0, 4)]))
        assert result.value == F(3, 4)
        assert result.minimizing_weight == (F(1, 2), F(1, 4))
        assert set(result.active_constraints) == {(2, 0), (1, 2), (0, 4)}

    def test_maximal_ideal_n3(self):
        assert I.lct(AN3, M.maximal_ideal(3)).value == 3

    def test_with_boundary(self):
        pair = MD.MonomialPair(2, (F(1, 2), 0))
        assert I.lct(pair, M.MonomialIdeal(2, [(2, 0), (0, 3)])).value == F(1, 4) + F(1, 3)

    def test_unit_ideal_rejected(self):
        with pytest.raises(ValidationError) as info:
            I.lct(AN2, M.MonomialIdeal(2, [(0, 0)]))
        assert info.value.code == "lct-undefined"

    def test_membership_value_agrees_on_corpus(self):
        for ideal in M.enumerate_staircases(2, 5):
            # lct() itself cross-checks; verify the membership value directly too
            assert I.howald_membership_value(ideal) == I.lct(AN2, ideal).value

    def test_membership_value_3d(self):
        assert I.howald_membership_value(M.maximal_power(3, 2)) == F(3, 2)

    def test_non_primary_ideals(self):
        # threshold is defined for any nonzero proper monomial ideal
        assert I.lct(AN2, M.MonomialIdeal(2, [(1, 1)])).value == 1
        assert I.lct(AN2, M.MonomialIdeal(2, [(1, 0)])).value == 1
        assert I.lct(AN2, M.MonomialIdeal(2, [(2, 3)])).value == F(1, 3)
        assert I.lct(AN2, M.MonomialIdeal(2, [(3, 0), (1, 2)])).value == F(2, 3)

    def test_non_primary_matches_generic_path(self):
        import random

        rng = random.Random(13)
        for _ in range(30):
            gens = [(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(rng.randint(1, 4))]
            gens = [g for g in gens if g != (0, 0)] or [(1, 2)]
            ideal = M.MonomialIdeal(2, gens)
            generic = min(
                F(n[0] + n[1]) / c for n, c in ideal.newton_polyhedron().facets if c > 0
            )
            assert I.howald_membership_value(ideal) == generic


class TestNormalizedMultiplicity:
    def test_maximal(self):
        assert I.normalized_multiplicity(AN2, M.maximal_ideal(2)) == 4

    @pytest.mark.parametrize("k", [1, 2, 3, 7])
    def test_powers_attain_four(self, k):
        assert I.normalized_multiplicity(AN2, M.maximal_power(2, k)) == 4

    def test_plane_curve(self):
        assert I.normalized_multiplicity(AN2, M.MonomialIdeal(2, [(2, 0), (0, 3)])) == F(25, 6)


class TestClosedForm:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_smooth(self, n):
        result = I.hvol_closed_form(MD.MonomialPair(n, (0,) * n))
        assert result.exact and result.value == F(n) ** n
        assert result.method == "closed_form"

    def test_single_boundary(self):
        result = I.hvol_closed_form(MD.MonomialPair(3, (F(1, 2), 0, 0)))
        assert result.value == F(27, 2)

    def test_balanced_boundary(self):
        result = I.hvol_closed_form(MD.MonomialPair(2, (F(1, 2), F(1, 2))))
        assert result.value == 1
        assert result.minimizer.weights == (F(1), F(1))

    def test_minimizer_normalized(self):
        result = I.hvol_closed_form(MD.MonomialPair(3, (F(1, 3), F(1, 2), 0)))
        model = MD.MonomialPair(3, (F(1, 3), F(1, 2), 0))
        assert MD.log_discrepancy(model, result.minimizer) == 1

    def test_closed_form_is_minimum_over_grid(self):
        # numeric sanity: no rational grid point beats the closed form
        model = MD.MonomialPair(2, (F(1, 2), F(1, 4)))
        best = I.hvol_closed_form(model).value
        for w1 in range(1, 30):
            for w2 in range(1, 30):
                v = MD.WeightValuation((F(w1, 8), F(w2, 8)))
                assert MD.normalized_volume_of_valuation(model, v) >= best


class TestHvolToric:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_orthant(self, n):
        result = I.hvol_toric(orthant(n))
        assert result.exact and result.value == F(n) ** n
        assert abs(result.numeric_value - float(n) ** n) <= 1e-9 * float(n) ** n
        assert result.minimizer.weights == tuple(F(1, n) for _ in range(n))
        assert result.warnings

    def test_a1_cone(self):
        result = I.hvol_toric(MD.ToricSingularity(G.Cone([(0, 1), (2, -1)])))
        assert result.exact and result.value == 2
        assert result.minimizer.weights == (F(1), F(0))

    def test_plane_cone(self):
        result = I.hvol(fano([(0, 0), (3, 0), (0, 3)]))
        assert result.exact and result.value == 9

    def test_weighted_plane_cone(self):
        result = I.hvol(fano([(-1, -1), (-1, 1), (3, -1)]))
        assert result.exact and result.value == F(27, 4)
        assert result.minimizer.weights == (F(0), F(-1, 3), F(1))

    def test_matches_closed_form_on_pairs(self):
        # the orthant viewed as a toric cone reproduces the smooth value
        for n in (2, 3):
            closed = I.hvol_closed_form(MD.MonomialPair(n, (0,) * n))
            numeric = I.hvol_toric(orthant(n))
            assert numeric.value == closed.value

    def test_deterministic(self):
        model = MD.ToricSingularity(G.Cone([(0, 1), (2, -1)]))
        payloads = {str(I.hvol_toric(model).to_payload()) for _ in range(3)}
        assert len(payloads) == 1

    def test_minimizer_normalized_to_unit_discrepancy(self):
        for model in (orthant(3), MD.ToricSingularity(G.Cone([(0, 1), (2, -1)]))):
            result = I.hvol_toric(model)
            assert MD.log_discrepancy(model, result.minimizer) == 1

    def test_irrational_minimizer_stays_numeric(self):
        # cone over the blown-up plane: on the slice the optimum sits at
        # weights (0, b, 1) with 3 b^2 + 8 b + 1 = 0, so the value is the
        # algebraic number (46 + 13 sqrt(13)) / 12 and no rational upgrade
        # can apply
        blowup = fano([(-1, -1), (-1, 1), (0, 1), (2, -1)])
        result = I.hvol(blowup)
        assert not result.exact
        reference = (46 + 13 * 13**0.5) / 12
        assert abs(result.value - reference) <= 1e-9 * reference
        # the reported value is reproduced by exact evaluation at the
        # reported rational minimizer
        toric = MD.cone_construction(blowup)
        at_minimizer = MD.normalized_volume_of_valuation(toric, result.minimizer)
        assert abs(float(at_minimizer) - result.value) <= 1e-9 * result.value

    def test_blowup_cone_unstable(self):
        verdict = I.kss_via_cone(fano([(-1, -1), (-1, 1), (0, 1), (2, -1)]))
        assert verdict.verdict == "UNSTABLE" and verdict.oracle is False
        assert verdict.bound == 8

    def test_weighted_123_cone(self):
        result = I.hvol(fano([(-1, -1), (-1, 1), (2, -1)]))
        assert result.exact and result.value == F(9, 2)


class TestNormalizedColength:
    def test_exact_k4(self):
        value, argmin = I.normalized_colength(AN2, F(1, 8), 4)
        assert value == 5
        assert argmin == M.maximal_power(2, 4)

    def test_exact_small_k(self):
        assert I.normalized_colength(AN2, F(1, 8), 2)[0] == 6
        assert I.normalized_colength(AN2, F(1, 8), 3)[0] == F(16, 3)

    def test_upper_mode_bounds_exact(self):
        for k in (3, 4, 5):
            exact, _ = I.normalized_colength(AN2, F(1, 8), k, mode="exact")
            upper, _ = I.normalized_colength(AN2, F(1, 8), k, mode="upper")
            assert upper >= exact

    def test_upper_mode_beyond_budget(self):
        # valuation-ideal scan has no enumeration budget
        value, _ = I.normalized_colength(AN2, F(1, 8), 20, mode="upper")
        assert value >= 4

    def test_monotone_in_c(self):
        k = 5
        values = [I.normalized_colength(AN2, c, k)[0] for c in (F(1, 16), F(1, 8), F(1, 4), F(2, 5))]
        assert values == sorted(values)

    def test_infeasible_c(self):
        with pytest.raises(ValidationError) as info:
            I.normalized_colength(AN2, F(9, 10), 4)
        assert info.value.code == "infeasible-c"

    def test_default_constant(self):
        assert I.default_scan_constant(2) == F(1, 8)
        assert I.default_scan_constant(3) == F(1, 24)


class TestConvergenceScan:
    def test_rows_match_power_formula(self):
        scan = I.colength_convergence_scan(AN2, F(1, 8), range(2, 8))
        for k, value, argmin in scan.rows:
            assert value == F(4 * (k + 1), k)
            assert argmin == M.maximal_power(2, k)
        assert scan.reference_hvol == 4
        assert scan.approaches_from_above
        assert scan.liminf_estimate == F(32, 7)

    def test_all_rows_at_least_volume(self):
        scan = I.colength_convergence_scan(AN2, F(1, 8), range(2, 7))
        assert all(value >= 4 for _, value, _ in scan.rows)

    def test_n3_scan(self):
        scan = I.colength_convergence_scan(AN3, F(1, 24), range(2, 4))
        values = [value for _, value, _ in scan.rows]
        assert values == [81, 60]
        assert all(v >= 27 for v in values)

    def test_csv_shape(self):
        scan = I.colength_convergence_scan(AN2, F(1, 8), range(2, 5))
        rows = scan.csv_rows()
        assert rows[0] == ("k", "value_num", "value_den", "argmin_gens", "mode")
        assert rows[1][0] == 2 and rows[1][1] == 6 and rows[1][2] == 1

    def test_rows_recomputable_from_argmin(self):
        import math

        scan = I.colength_convergence_scan(AN2, F(1, 8), range(2, 6))
        for k, value, argmin in scan.rows:
            recomputed = math.factorial(2) * I.lct(AN2, argmin).value ** 2 * argmin.colength()
            assert recomputed == value


class TestLechProbe:
    def test_strip_ideal_ratio(self):
        for m in (2, 5, 9):
            ideal = M.MonomialIdeal(2, [(1, 0), (0, m)])
            assert ideal.colength() == m and ideal.multiplicity() == m
            assert F(2 * ideal.colength()) / ideal.multiplicity() == 2

    @pytest.mark.parametrize("k", [2, 4, 6])
    def test_power_ratio(self, k):
        ideal = M.maximal_power(2, k)
        assert F(2 * ideal.colength()) / ideal.multiplicity() == F(k + 1, k)

    def test_probe_exact(self):
        report = I.lech_gap_probe(2, 6, F(1, 2), F(1, 10))
        assert report.holds_exactly and report.holds_with_epsilon
        assert report.min_ratio == F(7, 6)
        assert report.witness == M.maximal_power(2, 6)

    def test_probe_3d(self):
        report = I.lech_gap_probe(3, 3, F(1, 2), F(1, 10))
        assert report.holds_exactly

    def test_bad_parameters(self):
        with pytest.raises(ValidationError):
            I.lech_gap_probe(2, 4, F(3, 2), F(1, 10))


class TestKssViaCone:
    def test_line(self):
        verdict = I.kss_via_cone(fano([(0,), (2,)]))
        assert verdict.verdict == "K-SEMISTABLE"
        assert verdict.hvol_result.exact and verdict.hvol_result.value == 2
        assert verdict.bound == 2 and verdict.oracle is True

    def test_plane(self):
        verdict = I.kss_via_cone(fano([(0, 0), (3, 0), (0, 3)]))
        assert verdict.verdict == "K-SEMISTABLE" and verdict.oracle is True

    def test_weighted_plane(self):
        verdict = I.kss_via_cone(fano([(-1, -1), (-1, 1), (3, -1)]))
        assert verdict.verdict == "UNSTABLE" and verdict.oracle is False
        assert verdict.margin == F(8) - F(27, 4)

    def test_oracle_disagreement_is_hard_error(self, monkeypatch):
        # force the barycenter criterion to lie; the verdict must not be softened
        monkeypatch.setattr(I, "toric_kss_oracle", lambda polytope: False)
        with pytest.raises(InvariantViolationError) as info:
            I.kss_via_cone(fano([(0,), (2,)]))
        assert info.value.code == "oracle-disagreement"

    def test_oracle_skippable_for_log_pairs(self):
        verdict = I.kss_via_cone(fano([(0,), (2,)]), check_oracle=False)
        assert verdict.oracle is None


class TestQBound:
    def test_plane(self):
        report = I.q_bound_check(fano([(0, 0), (3, 0), (0, 3)]), 3)
        assert report.value == 27 and report.limit == 27 and report.holds and report.asserted

    def test_line(self):
        report = I.q_bound_check(fano([(0,), (2,)]), 2)
        assert report.value == 4 and report.limit == 4 and report.holds

    def test_product(self):
        report = I.q_bound_check(fano([(0, 0), (2, 0), (0, 2), (2, 2)]), 2)
        assert report.value == 16 and report.limit == 27 and report.holds


class TestWitnessCheck:
    def test_half(self):
        report = I.maxhvol_witness_check(MD.MonomialPair(2, (F(1, 2), 0)))
        assert report.log_discrepancy == 2
        assert report.volume == F(1, 2)
        assert report.value == report.closed_form == 2

    def test_three_dimensional(self):
        report = I.maxhvol_witness_check(MD.MonomialPair(3, (F(1, 2), 0, 0)))
        assert report.value == F(27, 2)

    def test_zero_coefficient(self):
        report = I.maxhvol_witness_check(MD.MonomialPair(3, (0, 0, 0)))
        assert report.weights == (F(1), F(1), F(1))
        assert report.value == 27

    def test_two_nonzero_rejected(self):
        with pytest.raises(ValidationError):
            I.maxhvol_witness_check(MD.MonomialPair(2, (F(1, 2), F(1, 3))))


class TestVolumeLowerBound:
    def test_normalized_multiplicity_dominates_volume(self):
        # every ideal in a small exhaustive corpus sits above the volume,
        # sharply at powers of the maximal ideal
        least = None
        for ideal in M.enumerate_staircases(2, 5):
            value = I.normalized_multiplicity(AN2, ideal)
            assert value >= 4
            least = value if least is None else min(least, value)
        assert least == 4

    def test_on_pair_model(self):
        pair = MD.MonomialPair(2, (F(1, 2), 0))
        reference = I.hvol_closed_form(pair).value
        for ideal in M.enumerate_staircases(2, 4):
            assert I.normalized_multiplicity(pair, ideal) >= reference
