"""Tests for the Sherlock suite registry and the built-in suites."""

import pytest

from repi.core.densities.densities import shift_rv
from repi.core.dto.epi_dto import InequalityId
from repi.core.dto.result_dto import StatusCode
from repi.core.dto.suite_dto import SuiteRequest
from repi.core.exceptions import ParameterError
from repi.core.protocols import Suite
from repi.core.sherlock.sherlock import Sherlock, SuiteRunner
from repi.core.sherlock.suites import BUILTIN_SUITES, DEFAULT_R_GRID, dct_suite
from repi.core.spock.spock import Spock
from tests.utils import LOG_CONCAVE_SPECS


def _empty_suite(request: SuiteRequest):
    return []


class TestRegistry:
    """Test suite registration and lookup."""

    def test_builtins_registered(self):
        sherlock = SuiteRunner()
        assert sorted(sherlock.list_keys()) == sorted(BUILTIN_SUITES)
        assert sherlock.get("dct") is dct_suite
        assert isinstance(sherlock.get("rotation"), Suite)

    def test_without_builtins(self):
        sherlock = Sherlock(builtins=False)
        assert sherlock.list_keys() == []
        assert sherlock.get("dct") is None

    def test_register_and_unregister(self):
        sherlock = Sherlock(builtins=False)
        sherlock.register("empty", _empty_suite)
        assert sherlock.has("empty")
        assert sherlock.registry == {"empty": _empty_suite}

        assert sherlock.unregister("empty") is True
        assert sherlock.unregister("empty") is False
        assert not sherlock.has("empty")

    def test_same_suite_twice_is_skipped(self, caplog):
        sherlock = Sherlock(builtins=False)
        sherlock.register("empty", _empty_suite)
        sherlock.register("empty", _empty_suite)
        assert "already registered" in caplog.text

    def test_override_rejected(self):
        sherlock = Sherlock(builtins=False)
        sherlock.register("empty", _empty_suite)
        with pytest.raises(ValueError, match="Override not allowed"):
            sherlock.register("empty", lambda request: [])

    @pytest.mark.parametrize("key", ["", "   ", None])
    def test_invalid_key(self, key):
        with pytest.raises(ValueError):
            Sherlock(builtins=False).register(key, _empty_suite)

    def test_not_a_suite(self):
        with pytest.raises(TypeError):
            Sherlock(builtins=False).register("bad", 42)

    def test_unknown_suite(self):
        with pytest.raises(ParameterError, match="Available suites"):
            Sherlock().run("epi", SuiteRequest())


class TestConfigOverrides:
    """Test suites.<id> sections filling unset request fields."""

    def test_alpha_from_config(self, uniform):
        spock = Spock()
        spock.load({"suites": {"repig": {"alpha": 0.3}}})
        reports = Sherlock(spock=spock).run("repig", SuiteRequest(densities=[uniform, uniform], r=2.0))
        assert reports[0].constants.alpha == 0.3

    def test_request_wins_over_config(self, uniform):
        spock = Spock()
        spock.load({"suites": {"repig": {"alpha": 0.3}}})
        request = SuiteRequest(densities=[uniform, uniform], r=2.0, alpha=0.6)
        reports = Sherlock(spock=spock).run("repig", request)
        assert reports[0].constants.alpha == 0.6

    def test_seed_from_config(self):
        spock = Spock()
        spock.load({"suites": {"rotation": {"seed": 3, "samples": 1000}}})
        reports = Sherlock(spock=spock).run("rotation", SuiteRequest())
        assert reports[1].extra["seed"] == 3
        assert reports[1].extra["samples"] == 1000


class TestInequalitySuites:
    """Test the suites built on the inequality checks."""

    def test_dct(self, gaussian):
        reports = Sherlock().run("dct", SuiteRequest(densities=[gaussian, gaussian], r=2.0))
        assert len(reports) == 1
        assert reports[0].inequality_id is InequalityId.DCT
        assert reports[0].passed
        assert reports[0].label == "x0+x1"

    def test_dct_snaps_suborders(self, gaussian):
        request = SuiteRequest(densities=[gaussian, gaussian], r=2.0, suborders=[1.3333, 1.3333])
        (report,) = Sherlock().run("dct", request)
        assert report.constants.lam == pytest.approx([0.5, 0.5])

    def test_dct_at_one(self, gaussian):
        (report,) = Sherlock().run("dct", SuiteRequest(densities=[gaussian, gaussian], r=1.0))
        assert report.detail.code == StatusCode.NOT_APPLICABLE

    def test_dct_below_one_gated(self, gaussian, student_t):
        (report,) = Sherlock().run("dct", SuiteRequest(densities=[gaussian, student_t], r=0.5))
        assert report.is_error()

    def test_repic_with_companion(self, uniform):
        reports = Sherlock().run("repic", SuiteRequest(densities=[uniform, uniform], r=2.0))
        assert [r.inequality_id for r in reports] == [InequalityId.REPIC, InequalityId.LINEARIZED]
        assert all(r.passed for r in reports)

    def test_linearized(self, uniform):
        reports = Sherlock().run("linearized", SuiteRequest(densities=[uniform, uniform], r=2.0))
        assert len(reports) == 3
        assert {r.inequality_id for r in reports} == {InequalityId.LINEARIZED}
        assert [r.constants.source for r in reports] == [
            "ram_sason_constant",
            "li_exponent",
            "unified_constant",
        ]

    def test_linearized_at_one(self, uniform):
        reports = Sherlock().run("linearized", SuiteRequest(densities=[uniform, uniform], r=1.0))
        assert reports
        assert all(r.is_error() for r in reports)

    def test_repig_rejects_alpha_one(self, uniform):
        with pytest.raises(ParameterError):
            Sherlock().run("repig", SuiteRequest(densities=[uniform, uniform], r=2.0, alpha=1.0))


class TestSingleDensitySuites:
    """Test varentropy and concavity suites."""

    def test_varentropy(self, gaussian, student_t):
        reports = Sherlock().run(
            "varentropy", SuiteRequest(densities=[gaussian, student_t], labels=["g", "t"], r=2.0)
        )
        assert [r.label for r in reports] == ["g", "t"]
        assert reports[0].passed
        assert reports[0].rhs == pytest.approx(0.125, abs=1e-5)
        assert reports[1].detail.code == StatusCode.NOT_APPLICABLE

    def test_concavity(self, gaussian, uniform):
        request = SuiteRequest(densities=[gaussian, uniform], r_grid=[0.5, 1.0, 1.5, 2.0, 3.0])
        reports = Sherlock().run("concavity", request)
        assert len(reports) == 2
        assert all(r.passed for r in reports)
        assert len(reports[0].extra["second_differences"]) == 3

    def test_concavity_default_grid(self, corpus):
        densities = [corpus[spec] for spec in LOG_CONCAVE_SPECS]
        request = SuiteRequest(densities=densities, labels=list(LOG_CONCAVE_SPECS))
        reports = Sherlock().run("concavity", request)
        assert [r.label for r in reports] == list(LOG_CONCAVE_SPECS)
        for report in reports:
            assert report.passed, (report.label, report.rhs)
            assert report.constants.orders == list(DEFAULT_R_GRID)

    def test_concavity_heavy_tail(self, student_t):
        (report,) = Sherlock().run("concavity", SuiteRequest(densities=[student_t], r_grid=[0.5, 1.0, 2.0]))
        assert report.detail.code == StatusCode.NOT_APPLICABLE


class TestTransportSuites:
    """Test the preservation and rotation suites."""

    def test_preservation(self, gaussian, laplace):
        request = SuiteRequest(densities=[shift_rv(gaussian, 1.0), laplace], r=2.0)
        reports = Sherlock().run("preservation", request)
        assert [r.label for r in reports] == ["x0+x1:identity", "x0+x1:fold_abs"]
        assert all(r.passed for r in reports)
        assert reports[1].extra["delta_dst"] < reports[1].extra["delta_src"]

    def test_preservation_needs_two(self, gaussian):
        with pytest.raises(ParameterError, match="exactly two"):
            Sherlock().run("preservation", SuiteRequest(densities=[gaussian] * 3, r=2.0))

    def test_preservation_at_one(self, gaussian):
        (report,) = Sherlock().run("preservation", SuiteRequest(densities=[gaussian, gaussian], r=1.0))
        assert report.detail.code == StatusCode.NOT_APPLICABLE

    def test_rotation(self):
        reports = Sherlock().run("rotation", SuiteRequest(lam=[0.3, 0.7], samples=20_000, seed=0))
        assert [r.label for r in reports] == ["exact", "sampled", "inverse"]
        assert all(r.passed for r in reports)
        assert reports[0].constants.lam == pytest.approx([0.3, 0.7])
