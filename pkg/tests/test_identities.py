"""Identity checks: exact residuals and empirical convention resolution."""

import pytest

from qmb.algebra import Element, commutator
from qmb.identities import (
    FAILED,
    NOT_APPLICABLE,
    VERIFIED,
    check_centrality,
    check_E0_membership,
    check_gap_one,
    check_gap_r,
    check_muir,
    check_qcommutation,
    gap_correction_terms,
    run_suite,
)
from qmb.minors import quantum_minor
from qmb.scalars import ONE, QINV, LaurentQ


class TestCentrality:
    @pytest.mark.parametrize(
        "n,K,L,k,l",
        [
            (2, (1, 2), (1, 2), 1, 1),
            (3, (1, 3), (2, 3), 3, 2),
            (2, (2,), (2,), 2, 2),
        ],
    )
    def test_verified(self, n, K, L, k, l):
        res = check_centrality(n, K, L, k, l)
        assert res.status == VERIFIED
        assert res.residual.is_zero()

    def test_not_applicable(self):
        assert check_centrality(2, (1,), (1,), 2, 2).status == NOT_APPLICABLE


class TestQCommutation:
    def test_outside_above_row(self):
        res = check_qcommutation(3, (1, 2), (1, 2), 3, 1)
        assert res.status == VERIFIED
        assert res.convention["exponent"] == -1
        assert res.convention["geometry"] == "row-outside-above"

    def test_outside_below_row(self):
        res = check_qcommutation(3, (2, 3), (2, 3), 1, 2)
        assert res.status == VERIFIED
        assert res.convention["exponent"] == 1
        assert res.convention["geometry"] == "row-outside-below"

    def test_column_sides(self):
        above = check_qcommutation(3, (1, 2), (1, 2), 1, 3)
        below = check_qcommutation(3, (2, 3), (2, 3), 2, 1)
        assert above.convention == {"geometry": "col-outside-above", "exponent": -1}
        assert below.convention == {"geometry": "col-outside-below", "exponent": 1}

    def test_central_configuration_not_applicable(self):
        assert check_qcommutation(2, (1, 2), (1, 2), 1, 1).status == NOT_APPLICABLE

    def test_gap_configuration_not_applicable(self):
        # the outside label falls inside the range of its set
        assert check_qcommutation(3, (1, 3), (1, 3), 2, 1).status == NOT_APPLICABLE


class TestMuir:
    def test_single_interchange(self):
        res = check_muir(3, (1, 2), (1, 3), (2, 3))
        assert res.status == VERIFIED
        assert res.convention["exponent"] in (1, -1)

    def test_identical_sets_commute(self):
        res = check_muir(3, (1, 2), (1, 3), (1, 3))
        assert res.status == VERIFIED
        assert res.convention["exponent"] == 0

    def test_larger_instance(self):
        res = check_muir(4, (1, 2), (1, 4), (3, 4))
        assert res.status == VERIFIED
        assert res.convention["exponent"] in (1, -1)

    def test_two_label_difference_not_applicable(self):
        assert check_muir(4, (1, 2), (1, 2), (3, 4)).status == NOT_APPLICABLE

    def test_sign_depends_only_on_label_order(self):
        res1 = check_muir(3, (1, 2), (1, 3), (2, 3))   # removed 1 < added 2
        res2 = check_muir(4, (1, 3), (2, 4), (1, 4))   # removed 2 > added 1
        assert res1.convention["exponent"] == 1
        assert res2.convention["exponent"] == -1


class TestGapOne:
    @pytest.mark.parametrize(
        "n,K,L,k,l",
        [
            (3, (1, 2), (1, 3), 1, 2),
            (3, (1, 2), (1, 3), 2, 2),
            (4, (2, 3), (1, 4), 3, 3),
        ],
    )
    def test_verified_with_recorded_order(self, n, K, L, k, l):
        res = check_gap_one(n, K, L, k, l)
        assert res.status == VERIFIED
        assert res.convention["factor_order"] == "generator-first"

    def test_gap_condition_violated(self):
        assert check_gap_one(3, (1, 2), (1, 3), 1, 3).status == NOT_APPLICABLE
        assert check_gap_one(3, (1, 2), (2, 3), 1, 1).status == NOT_APPLICABLE

    def test_explicit_instance(self):
        # D t - q^-1 t D == (1 - q^-2) t[1,1] D' with D' over columns {2,3}
        n = 3
        D = quantum_minor(n, (1, 2), (1, 3))
        Dp = quantum_minor(n, (1, 2), (2, 3))
        tt = Element.generator(n, 1, 2)
        t11 = Element.generator(n, 1, 1)
        lhs = D * tt - QINV * (tt * D)
        rhs = (t11 * Dp).scale(ONE - LaurentQ.q_power(-2))
        assert lhs == rhs


class TestGapR:
    def test_r1_matches_gap_one_reading(self):
        n, K, L, k, l = 3, (1, 2), (1, 3), 1, 2
        res = check_gap_r(n, K, L, k, l, 1)
        assert res.status == VERIFIED
        assert res.convention == {"row_reading": "same-row", "column_reading": "sorted"}
        res1 = check_gap_one(n, K, L, k, l)
        assert res1.status == VERIFIED

    def test_depth_two_instance(self):
        res = check_gap_r(4, (1, 2, 4), (1, 2, 4), 4, 3, 2)
        assert res.status == VERIFIED
        assert res.convention == {"row_reading": "same-row", "column_reading": "sorted"}

    def test_general_row_not_max(self):
        res = check_gap_r(4, (1, 2, 4), (1, 2, 4), 1, 3, 2)
        assert res.status == VERIFIED
        assert res.convention["row_reading"] == "same-row"

    def test_inside_label_not_applicable(self):
        assert check_gap_r(4, (1, 2, 4), (1, 2, 4), 1, 2, 1).status == NOT_APPLICABLE

    def test_wrong_r_not_applicable(self):
        assert check_gap_r(4, (1, 2, 4), (1, 2, 4), 4, 3, 1).status == NOT_APPLICABLE

    def test_correction_terms_replay(self):
        n, K, L, k, l = 4, (1, 2, 4), (1, 2, 4), 4, 3
        terms = gap_correction_terms(n, K, L, k, l)
        assert len(terms) == 2
        D = quantum_minor(n, K, L)
        t = Element.generator(n, k, l)
        lhs = D * t - QINV * (t * D)
        rhs = Element.zero(n)
        for coeff, (row, col), Lp in terms:
            rhs = rhs + (Element.generator(n, row, col) * quantum_minor(n, K, Lp)).scale(coeff)
        assert lhs == rhs


class TestMembership:
    def test_single_inner_letter(self):
        res = check_E0_membership(3, (1,), (2,), (3, 3), [(ONE, ((1, 2),))])
        assert res.status == VERIFIED
        assert res.convention["leaf_count"] == 1

    def test_unit_element(self):
        res = check_E0_membership(3, (1,), (1,), (3, 3), [(ONE, ())])
        assert res.status == VERIFIED
        assert res.convention["leaf_count"] == 0

    def test_inner_word_certified(self):
        res = check_E0_membership(3, (1,), (1,), (3, 3), [(ONE, ((1, 1), (1, 1)))])
        assert res.status == VERIFIED

    def test_mixed_word_obstruction_is_detected(self):
        # letters lie in the subalgebra but wander outside the inner block;
        # the commutator genuinely leaves the subalgebra here and the
        # obstruction term is reported exactly
        res = check_E0_membership(3, (1,), (1,), (3, 3), [(ONE, ((1, 2), (2, 1)))])
        assert res.status == FAILED
        assert not res.residual.is_zero()
        # the obstruction equals the full commutator in this configuration
        n = 3
        e = Element.generator(n, 1, 2) * Element.generator(n, 2, 1)
        assert res.residual == commutator(Element.generator(n, 3, 3), e)

    def test_letter_outside_subalgebra_rejected(self):
        with pytest.raises(ValueError):
            check_E0_membership(3, (1,), (1,), (3, 3), [(ONE, ((2, 2),))])

    def test_outside_generator_precondition(self):
        res = check_E0_membership(3, (1,), (1,), (1, 2), [(ONE, ())])
        assert res.status == NOT_APPLICABLE


class TestSuite:
    def test_n2_full_sweep(self):
        report = run_suite(n_max=2, size_cap=None)
        assert report.all_verified()
        counts = report.counts()
        assert counts["centrality"][VERIFIED] > 0
        assert counts["q-commutation"][VERIFIED] > 0

    def test_n3_sweep(self):
        report = run_suite(n_max=3, size_cap=2)
        assert report.all_verified()
        assert report.counts()["gap-one"][VERIFIED] > 0
        assert report.counts()["gap-r"][VERIFIED] > 0

    def test_vacuous_at_n1(self):
        report = run_suite(n_max=1, size_cap=None)
        assert report.all_verified()
        assert not report.results

    def test_convention_consistency(self):
        report = run_suite(n_max=3, size_cap=2)
        conv = report.conventions
        assert conv["q-commutation"] == {
            "col-outside-above": -1,
            "col-outside-below": 1,
            "row-outside-above": -1,
            "row-outside-below": 1,
        }
        assert conv["muir"] == {"removed<added": 1, "removed>added": -1}
        assert conv["gap-one-factor-order"] == ["generator-first"]
        assert conv["gap-r-reading"] == [["same-row", "sorted"]]

    def test_report_json_shape(self):
        report = run_suite(n_max=2, size_cap=None, include_membership=False)
        data = report.to_json()
        assert data["schema"] == "qmb-suite-report-v1"
        assert data["all_verified"] is True
        assert all("residual" in r for r in data["results"])


class TestTransposeCovariance:
    def test_symmetric_checks_survive_index_swap(self):
        configs = [
            ("centrality", (3, (1, 3), (2, 3), 3, 2)),
            ("q-commutation", (3, (1, 2), (1, 2), 3, 1)),
        ]
        checkers = {"centrality": check_centrality, "q-commutation": check_qcommutation}
        for name, (n, K, L, k, l) in configs:
            assert checkers[name](n, K, L, k, l).status == VERIFIED
            assert checkers[name](n, L, K, l, k).status == VERIFIED

    def test_gap_identity_transposes_to_the_row_sided_identity(self):
        # applying the index-swap homomorphism to the verified column-gap
        # identity yields the row-gap identity, with replaced ROW sets
        n = 3
        D = quantum_minor(n, (1, 3), (1, 2))       # transpose of D over (1,2),(1,3)
        Dp = quantum_minor(n, (2, 3), (1, 2))      # transpose of the replaced minor
        tt = Element.generator(n, 2, 1)            # transpose of t[1,2]
        t11 = Element.generator(n, 1, 1)
        lhs = D * tt - QINV * (tt * D)
        rhs = (t11 * Dp).scale(ONE - LaurentQ.q_power(-2))
        assert lhs == rhs
