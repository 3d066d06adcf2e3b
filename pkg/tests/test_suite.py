"""Tests for the acceptance suite runner."""

import pytest

from src.config.settings import RunConfig
from src.suite.checks import GROUPS, run_suite
from src.suite.corpus import default_corpus


def ids(report, status):
    return [c.id for c in report.checks if c.status == status]


class TestGroups:
    def test_fermat(self):
        report = run_suite(RunConfig(trials=0), groups=["fermat"])
        assert report.passed
        assert report.exit_code == 0
        assert "fermat.p5.constant" in ids(report, "pass")

    def test_models(self):
        report = run_suite(RunConfig(trials=0), groups=["models"])
        assert report.failures() == []
        assert "model2.lift.series" in ids(report, "pass")

    def test_census(self):
        report = run_suite(RunConfig(trials=0), groups=["census"])
        assert report.passed

    def test_properties(self):
        report = run_suite(RunConfig(trials=0), groups=["properties"])
        assert report.failures() == []
        assert {"hypersurface6.order", "hypersurface9.order"} <= set(ids(report, "pass"))

    def test_unknown_group(self):
        with pytest.raises(ValueError):
            run_suite(RunConfig(trials=0), groups=["nope"])

    def test_group_names(self):
        assert [name for name, _ in GROUPS][0] == "hilbert_samuel"
        assert len({name for name, _ in GROUPS}) == len(GROUPS)


class TestReportShape:
    def test_anchor_uses_the_report_field_name(self):
        report = run_suite(RunConfig(trials=0), groups=["fermat"])
        check = report.model_dump(by_alias=True)["checks"][0]
        assert "paper_anchor" in check
        assert "anchor" not in check

    def test_row_limit_reaches_the_checks(self):
        report = run_suite(RunConfig(trials=0, hs_max=4), groups=["hilbert_samuel"])
        assert ids(report, "fail") == ["hilbert_samuel.error"]


class TestSampling:
    def test_no_trials_skips_sampled_checks(self):
        report = run_suite(RunConfig(trials=0), groups=["resolutions"])
        assert report.passed
        assert report.skipped == len(default_corpus()["germs"]["items"])

    def test_same_seed_same_report(self):
        config = RunConfig(trials=2, seed=3)
        first = run_suite(config, groups=["resolutions"])
        second = run_suite(config, groups=["resolutions"])
        assert first.passed
        assert first.model_dump_json() == second.model_dump_json()


class TestFaultInjection:
    def test_wrong_constant_fails(self):
        corpus = default_corpus()
        corpus["fermat"]["constants"]["5"] = 6
        report = run_suite(RunConfig(trials=0), corpus=corpus, groups=["fermat"])
        assert not report.passed
        assert report.exit_code == 1
        assert [c.id for c in report.failures()] == ["fermat.p5.constant"]

    def test_wrong_expectation_fails(self):
        corpus = default_corpus()
        corpus["census"]["line_pair"]["delta_reg"] = 1
        report = run_suite(RunConfig(trials=0), corpus=corpus, groups=["census"])
        assert ids(report, "fail") == ["census.line_pair.delta_reg"]

    def test_broken_corpus_is_reported(self):
        corpus = default_corpus()
        del corpus["fermat"]["primes"]
        report = run_suite(RunConfig(trials=0), corpus=corpus, groups=["fermat"])
        assert ids(report, "fail") == ["fermat.error"]

    def test_default_corpus_is_a_copy(self):
        default_corpus()["fermat"]["primes"].clear()
        assert default_corpus()["fermat"]["primes"]


class TestFullSuite:
    def test_everything_passes(self):
        report = run_suite(RunConfig(trials=2, seed=1))
        assert report.failures() == []
        assert report.skipped == 0
