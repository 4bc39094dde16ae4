import json
from fractions import Fraction

import pytest

from boxcount.algebra.lattice import Substitution
from boxcount.algebra.polynomial import LaurentPolynomial
from boxcount.algebra.series import z_series
from boxcount.dtcount import (builtin, clear_cache, dtpt_divide,
                              z_partition_function)
from boxcount.dtcount.vertex import degree0_series
from boxcount.exceptions import BoxcountUsageError, InsufficientOrderError
from boxcount.partitions import mcmahon_coefficients
from boxcount.verify import (EDGE_DEGREES, SUITES, RationalFit,
                             check_cy_vertex, check_edge_chars,
                             check_ext1_forms, check_hilbC3, check_mcmahon,
                             check_nekrasov_degree0, check_vertex_chars,
                             denominator_coefficients, expand_fit,
                             fit_search, parity_check, rational_fit,
                             run_suite)


@pytest.mark.usefixtures("fresh_cache")
class IdentityTest(object):
    def test_mcmahon(self):
        report = check_mcmahon(8)
        assert report.passed
        assert report.details["coefficients"] == mcmahon_coefficients(8)

    def test_corrupted_count_fails(self):
        report = check_mcmahon(5, corrupt=3)
        assert not report.passed
        assert report.witness["n"] == 3
        assert report.witness["enumerated"] == 7

    def test_ext1_forms(self):
        assert check_ext1_forms(3).passed
        assert not check_ext1_forms(2, transposed=True).passed

    def test_edge_chars(self):
        assert check_edge_chars(2).passed

    def test_vertex_chars(self):
        report = check_vertex_chars(1, 2)
        assert report.passed
        assert report.details["partitions"] > 0

    def test_cy_vertex(self):
        report = check_cy_vertex(3)
        assert report.passed
        assert set(report.details) == {"1;;", "2,1;;"}

    def test_hilb_c3(self):
        assert check_hilbC3(3).passed

    def test_nekrasov_degree0_exact(self):
        assert check_nekrasov_degree0(2).passed

    def test_wrong_kappa_sign_fails(self):
        report = check_nekrasov_degree0(2, flip_kappa=True)
        assert not report.passed
        assert report.witness["n"] == 2

    def test_nekrasov_degree0_random(self):
        report = check_nekrasov_degree0(2, mode="random-eval", seed=7,
                                        points=3)
        assert report.passed
        assert report.seed == 7
        assert len(report.details["points"]) == 3

    def test_nekrasov_degree0_rejects(self):
        with pytest.raises(BoxcountUsageError):
            check_nekrasov_degree0(0)
        with pytest.raises(BoxcountUsageError):
            check_nekrasov_degree0(1, mode="guess")

    @pytest.mark.slow
    @pytest.mark.parametrize("order", [3, 4])
    def test_nekrasov_degree0_exact_slow(self, order):
        assert check_nekrasov_degree0(order).passed


@pytest.mark.slow
@pytest.mark.timeout(3600)
@pytest.mark.usefixtures("fresh_cache")
class AcceptanceTest(object):
    def test_ext1_forms(self):
        report = check_ext1_forms(6)
        assert report.passed
        assert report.details["pairs"] == 30 ** 2

    def test_nekrasov_degree0_random(self):
        report = check_nekrasov_degree0(6, mode="random-eval", seed=2024,
                                        points=20)
        assert report.passed
        assert len(report.details["points"]) == 20

    def test_hilb_c3(self):
        assert check_hilbC3(4).passed

    def test_cy_vertex(self):
        report = check_cy_vertex(6)
        assert report.passed
        assert set(report.details) == {"1;;", "2,1;;"}

    def test_edge_chars(self):
        report = check_edge_chars(4)
        assert report.passed
        assert report.details["characters"] == 12 * len(EDGE_DEGREES)

    def test_vertex_chars(self):
        report = check_vertex_chars(2, 3)
        assert report.passed
        assert report.details["max_leg"] == 2


class DeterminismTest(object):
    @staticmethod
    def dump(series):
        return [(key, str(coeff)) for key, coeff in series.items()]

    def test_degree0_series(self):
        results = []
        for jobs in (1, 8):
            clear_cache()
            results.append(self.dump(degree0_series(3, jobs=jobs)))
        clear_cache()
        assert results[0] == results[1]

    def test_random_eval_report(self):
        reports = [check_nekrasov_degree0(2, mode="random-eval", seed=5,
                                          points=4, jobs=jobs).to_dict()
                   for jobs in (1, 8)]
        assert reports[0] == reports[1]

    @pytest.mark.slow
    @pytest.mark.timeout(3600)
    @pytest.mark.parametrize("suite", ["cy-vertex", "nekrasov-degree0"])
    def test_suites(self, suite):
        reports = []
        for jobs in (1, 8):
            clear_cache()
            reports.append(run_suite(suite, 4, seed=9, jobs=jobs).to_dict())
        clear_cache()
        assert reports[0] == reports[1]
        assert reports[0]["status"] == "pass"


class SuiteTest(object):
    def test_unknown_suite(self):
        with pytest.raises(BoxcountUsageError):
            run_suite("nosuch", 2)

    def test_report_is_json(self):
        report = run_suite("mcmahon", 4)
        data = json.loads(json.dumps(report.to_dict()))
        assert data["status"] == "pass"
        assert data["check"] == "mcmahon"

    def test_suite_names(self):
        assert set(SUITES) == {"mcmahon", "nekrasov-degree0", "hilbC3",
                               "ext1", "cy-vertex", "edge-char",
                               "vertex-char"}


class RationalFitTest(object):
    def test_denominator(self):
        assert denominator_coefficients({1: 1}) == [1, 1]
        assert denominator_coefficients({2: 1}) == [1, 0, -1]
        assert denominator_coefficients({1: 1, 2: 1}) == [1, 1, -1, -1]

    def test_geometric_series(self):
        fit = fit_search(z_series([1] * 10, 9))
        assert fit.shape == {2: 1}
        assert fit.numerator == [1, 1]

    def test_linear_growth(self):
        series = z_series(range(10), 9)
        fit = fit_search(series)
        assert fit.shape == {2: 2}
        assert fit.numerator == [1, 2, 1]
        assert fit.shift == 1
        assert expand_fit(fit, 12).coefficients(start=0) == list(range(13))

    def test_alternating(self):
        series = z_series([(-1) ** (n + 1) * n for n in range(8)], 7)
        fit = fit_search(series)
        assert fit.shape == {1: 2}
        assert fit.numerator == [1]
        assert fit.shift == 1

    def test_two_extra_coefficients_suffice(self):
        # -z / (1 - z)^2 known through z^6
        series = z_series([-n for n in range(7)], 6)
        fit = fit_search(series)
        assert fit.shape == {2: 2}
        assert fit.numerator == [-1, -2, -1]
        assert fit.shift == 1
        assert parity_check(fit, 0).passed
        assert expand_fit(fit, 9).coefficients() == [-n for n in range(1, 10)]

    def test_zero_series(self):
        fit = rational_fit(z_series([0, 0, 0], 2), {})
        assert fit.numerator == [0]

    def test_mcmahon_has_no_fit(self):
        series = z_series(mcmahon_coefficients(8), 8)
        assert fit_search(series, max_budget=3) is None

    def test_too_short(self):
        with pytest.raises(InsufficientOrderError):
            rational_fit(z_series([1, 2, 3], 2), {2: 2}, degree=2)
        with pytest.raises(InsufficientOrderError):
            rational_fit(z_series([1, 2], 1), {1: 1})

    def test_needs_numbers(self):
        series = z_series([1, LaurentPolynomial.variable(("t1",), "t1")], 1)
        with pytest.raises(BoxcountUsageError):
            rational_fit(series, {})

    def test_text(self):
        fit = RationalFit([Fraction(1)], {1: 2}, 1)
        assert fit.to_text() == "z^1 * (1) / (1 + z)^2"


class ParityTest(object):
    def test_symmetric(self):
        # z / (1 + z)^2
        assert parity_check(RationalFit([1], {1: 2}, 1), 0).passed
        # z / (1 - z)^2
        assert parity_check(RationalFit([0, 1, 2, 1], {2: 2}), 0).passed

    def test_asymmetric(self):
        report = parity_check(RationalFit([1], {1: 1}), 0)
        assert not report.passed
        assert "residual" in report.witness

    def test_odd_virtual_dimension(self):
        # z^(-1/2) z / (1 + z)^2 changes sign
        assert not parity_check(RationalFit([1], {1: 2}, 1), 1).passed


@pytest.mark.slow
@pytest.mark.usefixtures("fresh_cache")
def test_conifold_degree_one_is_rational():
    series = z_partition_function(builtin("conifold"), 1, 6,
                                  Substitution.calabi_yau())
    reduced = dtpt_divide(series, 6)
    fit = fit_search(reduced.q_part((1,)))
    assert fit is not None
    assert parity_check(fit, 0).passed
    assert fit_search(series.q_part()) is None
