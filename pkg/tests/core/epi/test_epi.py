"""Tests for the inequality checks and their reports."""

import itertools
import math

import pytest

from repi.core.dto.epi_dto import EpiConstants, EpiReport, InequalityId
from repi.core.dto.result_dto import StatusCode
from repi.core.epi.constants import alpha_li, c_ram_sason
from repi.core.epi.epi import (
    check_dct,
    check_linearized,
    check_repialpha,
    check_repic,
    check_repig,
    check_unified,
    gaussian_extremal_bound,
    linearized_bound,
    linearized_companion,
    linearized_gap,
    logconcavity_gate,
    tolerance,
)
from repi.core.epi.weights import orders_from_lambda
from repi.core.exceptions import HypothesisError, ParameterError
from tests.utils import LOG_CONCAVE_SPECS

GAUSSIAN_DCT_GAP = -0.084949

LOG_CONCAVE_PAIRS = list(itertools.combinations_with_replacement(LOG_CONCAVE_SPECS, 2))


class TestTolerance:
    """Test max(tol_abs, tol_rel |rhs|)."""

    @pytest.mark.parametrize("rhs,expected", [(1.0, 1e-3), (0.01, 1e-4), (-50.0, 5e-2), (math.inf, 1e-4)])
    def test_values(self, rhs, expected):
        assert tolerance(rhs) == pytest.approx(expected)


class TestBounds:
    """Test the right-hand sides of the linearized forms."""

    def test_gaussian_extremal_bound(self):
        assert gaussian_extremal_bound(2.0, [4.0 / 3.0, 4.0 / 3.0]) == pytest.approx(GAUSSIAN_DCT_GAP, abs=1e-6)

    def test_linearized_bound(self):
        assert linearized_bound(27.0 / 32.0, 1.0, [0.5, 0.5]) == pytest.approx(0.5 * math.log(27.0 / 32.0))

    def test_linearized_bound_with_exponent(self):
        expected = 0.5 * (math.log(0.5) / 0.5 + math.log(2.0))
        assert linearized_bound(0.5, 0.5, [0.5, 0.5]) == pytest.approx(expected)

    def test_linearized_bound_invalid(self):
        with pytest.raises(ParameterError):
            linearized_bound(0.0, 1.0, [0.5, 0.5])


class TestDct:
    """Test the mixed-order inequality."""

    def test_gaussians_attain_equality(self, gaussian):
        report = check_dct([gaussian, gaussian], 2.0, [4.0 / 3.0, 4.0 / 3.0], label="g+g")
        assert report.passed
        assert report.near_equality
        assert report.detail.code == StatusCode.NEAR_EQUALITY
        assert report.lhs == pytest.approx(GAUSSIAN_DCT_GAP, abs=1e-5)
        assert report.constants.lam == pytest.approx([0.5, 0.5])
        assert report.label == "g+g"

    def test_uniform_pair_is_strict(self, uniform):
        report = check_dct([uniform, uniform], 2.0, [4.0 / 3.0, 4.0 / 3.0])
        assert report.passed
        assert report.gap > 0.01

    def test_unequal_weights(self, laplace, exponential):
        report = check_dct([laplace, exponential], 3.0, [5.0 / 3.0, 15.0 / 11.0])
        assert report.constants.lam == pytest.approx([0.6, 0.4])
        assert report.passed

    def test_constraint_violation(self, gaussian):
        with pytest.raises(HypothesisError):
            check_dct([gaussian, gaussian], 2.0, [2.0, 2.0])

    @pytest.mark.parametrize("r", [0.5, 0.8, 1.5, 2.0])
    @pytest.mark.parametrize("f_spec,g_spec", itertools.product(LOG_CONCAVE_SPECS, repeat=2))
    def test_log_concave_corpus(self, corpus, f_spec, g_spec, r):
        orders = orders_from_lambda(r, [0.5, 0.5])
        report = check_dct([corpus[f_spec], corpus[g_spec]], r, orders)
        assert report.is_ok()
        assert report.gap >= -1e-4, (f_spec, g_spec, r, report.gap)


class TestLinearizedGap:
    """Test h_r(Σ √λ_i X_i) - Σ λ_i h_(r_i)(X_i)."""

    def test_gaussians_vanish(self, gaussian):
        assert linearized_gap([gaussian, gaussian], [0.3, 0.7], 2.0) == pytest.approx(0.0, abs=1e-6)

    def test_inconsistent_orders(self, gaussian):
        with pytest.raises(HypothesisError):
            linearized_gap([gaussian, gaussian], [0.3, 0.7], 2.0, [4.0 / 3.0, 4.0 / 3.0])

    def test_length_mismatch(self, gaussian):
        with pytest.raises(ParameterError):
            linearized_gap([gaussian, gaussian], [0.2, 0.3, 0.5], 2.0)

    def test_too_few_densities(self, gaussian):
        with pytest.raises(ParameterError):
            linearized_gap([gaussian], [0.5, 0.5], 2.0)


class TestMultiplicativeChecks:
    """Test the c, α and unified inequalities."""

    def test_repic_uniform_pair(self, uniform):
        report = check_repic([uniform, uniform], 2.0)
        assert report.constants.c == pytest.approx(27.0 / 32.0)
        assert report.constants.source == "ram_sason_constant"
        assert report.lhs == pytest.approx(2.25, abs=1e-5)
        assert report.rhs == pytest.approx(1.6875, abs=1e-5)
        assert report.gap == pytest.approx(0.5625, abs=1e-5)
        assert report.extra["entropy_powers"] == pytest.approx([1.0, 1.0])

    def test_repic_gaussians(self, gaussian):
        report = check_repic([gaussian, gaussian], 2.0)
        assert report.lhs == pytest.approx(8 * math.pi, rel=1e-6)
        assert report.rhs == pytest.approx(c_ram_sason(2.0, 2) * 8 * math.pi, rel=1e-6)
        assert report.passed and not report.failed

    def test_repic_below_one(self, gaussian, laplace):
        report = check_repic([gaussian, laplace], 0.5)
        assert report.constants.c == pytest.approx(0.84375)
        assert report.constants.source == "log_concave_constant"
        assert report.passed

    def test_repic_order_one(self, gaussian):
        report = check_repic([gaussian, gaussian], 1.0)
        assert report.is_error()
        assert report.detail.code == StatusCode.NOT_APPLICABLE
        assert not report.failed

    def test_repic_heavy_tail_gate(self, gaussian, student_t):
        report = check_repic([gaussian, student_t], 0.5)
        assert report.detail.code == StatusCode.NOT_APPLICABLE
        assert report.detail.context["index"] == 1

    def test_repialpha_gaussians(self, gaussian):
        report = check_repialpha([gaussian, gaussian], 2.0)
        assert report.constants.alpha == pytest.approx(alpha_li(2.0))
        assert report.constants.c == 1.0
        assert report.constants.source == "li_exponent"
        assert report.passed

    def test_repialpha_three_log_concave(self, gaussian):
        report = check_repialpha([gaussian] * 3, 0.5)
        assert report.detail.code == StatusCode.UNSUPPORTED

    def test_repialpha_explicit_alpha_three(self, uniform):
        report = check_repialpha([uniform] * 3, 0.5, alpha=1.0)
        assert report.is_ok()
        assert report.constants.source == "user"

    def test_unified_default_constant(self, exponential, laplace):
        report = check_unified([exponential, laplace], 2.0)
        assert report.inequality_id is InequalityId.REPIG
        assert report.constants.alpha == 0.5
        assert report.constants.source == "unified_constant"
        assert report.passed

    def test_unified_below_one(self, uniform, gaussian):
        report = check_unified([uniform, gaussian], 0.5, alpha=0.5)
        assert report.constants.source == "log_concave_unified_constant"
        assert report.passed

    def test_violated_constant(self, gaussian):
        report = check_repig([gaussian, gaussian], 2.0, 2.0, 1.0)
        assert not report.passed
        assert report.failed
        assert report.gap == pytest.approx(-8 * math.pi, rel=1e-6)

    @pytest.mark.parametrize("r", [0.3, 0.5, 0.8])
    @pytest.mark.parametrize("f_spec,g_spec", LOG_CONCAVE_PAIRS)
    def test_log_concave_corpus_below_one(self, corpus, f_spec, g_spec, r):
        pair = [corpus[f_spec], corpus[g_spec]]
        reports = [check_repic(pair, r), check_repialpha(pair, r), check_unified(pair, r)]
        for report in reports:
            assert report.is_ok(), (report.inequality_id, report.detail)
            assert report.passed, (report.inequality_id, f_spec, g_spec, r, report.gap)

    @pytest.mark.parametrize("c,alpha", [(0.0, 1.0), (1.0, 0.0), (-1.0, 0.5)])
    def test_invalid_constants(self, gaussian, c, alpha):
        with pytest.raises(ParameterError):
            check_repig([gaussian, gaussian], 2.0, c, alpha)

    def test_too_many_summands(self, gaussian):
        with pytest.raises(ParameterError, match="At most"):
            check_repig([gaussian] * 9, 2.0, 1.0, 1.0)


class TestLinearized:
    """Test the additive companion of the multiplicative checks."""

    def test_uniform_pair(self, uniform):
        c = 27.0 / 32.0
        report = check_linearized([uniform, uniform], 2.0, c, 1.0)
        assert report.constants.lam == pytest.approx([0.5, 0.5])
        assert report.lhs == pytest.approx(math.log(1.5) + 0.5 * math.log(0.5), abs=1e-5)
        assert report.rhs == pytest.approx(0.5 * math.log(c))
        assert 2.0 * report.gap == pytest.approx(math.log(4.0 / 3.0), abs=1e-5)

    def test_companion_matches_verdict(self, exponential, laplace):
        report = check_repialpha([exponential, laplace], 3.0, label="e+l")
        companion = linearized_companion(report, [exponential, laplace])
        assert companion.inequality_id is InequalityId.LINEARIZED
        assert companion.label == "e+l"
        assert companion.constants.alpha == report.constants.alpha
        ratio = math.log(report.lhs / report.rhs)
        assert 2.0 * companion.constants.alpha * companion.gap == pytest.approx(ratio, abs=1e-5)

    @pytest.mark.parametrize("r", [0.5, 2.0])
    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    @pytest.mark.parametrize("f_spec,g_spec", LOG_CONCAVE_PAIRS)
    def test_equivalent_verdicts(self, corpus, f_spec, g_spec, r, alpha):
        """Both forms agree on either side of the sharp constant of the pair."""
        pair = [corpus[f_spec], corpus[g_spec]]
        unit = check_repig(pair, r, 1.0, alpha)
        sharp = unit.lhs / unit.rhs
        for c, expected in ((0.95 * sharp, True), (1.05 * sharp, False)):
            report = check_repig(pair, r, c, alpha)
            linear = check_linearized(pair, r, c, alpha)
            assert report.passed is expected
            assert linear.passed is expected
            ratio = math.log(report.lhs / report.rhs)
            assert 2.0 * alpha * linear.gap == pytest.approx(ratio, abs=1e-4)

    def test_no_companion_for_skipped(self, gaussian):
        report = check_repic([gaussian, gaussian], 1.0)
        assert linearized_companion(report, [gaussian, gaussian]) is None


class TestLogConcavityGate:
    """Test the r < 1 hypothesis gate."""

    def test_passes_log_concave(self, gaussian, uniform):
        assert logconcavity_gate([gaussian, uniform], InequalityId.REPIC, 0.5) is None

    def test_blocks_heavy_tail(self, student_t, gaussian):
        report = logconcavity_gate([student_t, gaussian], InequalityId.REPIG, 0.5, label="t+g")
        assert report.inequality_id is InequalityId.REPIG
        assert report.label == "t+g"
        assert report.detail.context["index"] == 0


class TestEpiReport:
    """Test verdict bookkeeping."""

    constants = EpiConstants(r=2.0, m=2)

    def test_infinite_side(self):
        report = EpiReport.compare(InequalityId.REPIC, math.inf, 1.0, 1e-4, self.constants)
        assert report.detail.code == StatusCode.INFINITE
        assert report.passed

    def test_nan_fails(self):
        report = EpiReport.compare(InequalityId.REPIC, math.nan, 1.0, 1e-4, self.constants)
        assert not report.passed

    def test_tolerance_band(self):
        report = EpiReport.compare(InequalityId.REPIC, 1.0, 1.00005, 1e-4, self.constants)
        assert report.passed and report.near_equality

    def test_serialized_aliases(self):
        report = EpiReport.compare(
            InequalityId.DCT, 1.0, 0.5, 1e-4, EpiConstants(r=2.0, m=2, lam=[0.5, 0.5])
        )
        data = report.model_dump(by_alias=True)
        assert data["pass"] is True
        assert data["constants"]["lambda"] == [0.5, 0.5]
        assert data["inequality_id"] == "dct"
