from __future__ import annotations

import pytest

from saw_lab.core.errors import EnumerationError, PatternError
from saw_lab.verify.report import CheckResult, CheckStatus, VerifyReport, check
from saw_lab.verify.suites import SUITES, VerifyContext, run_suites

SMALL = VerifyContext(dim=2, n=5, workers=1)


@pytest.fixture
def small_hypergeom(mocker):
    mocker.patch.dict(
        "saw_lab.config.VERIFY_DEFAULTS", {"hypergeom_limit": 10, "hypergeom_slots": 1000}
    )


def test_registry_names():
    assert list(SUITES) == [
        "oracle", "unfold", "hang", "growth", "closing",
        "delocalization", "hypergeom", "mvm", "patterns",
    ]


def test_every_suite_passes_at_small_size(small_hypergeom):
    report = run_suites(list(SUITES), SMALL)
    assert report.passed, [(c.suite, c.name, c.detail) for c in report.failures]
    assert report.exit_code == 0
    assert report.suites == list(SUITES)
    assert {c.suite for c in report.checks} == set(SUITES)
    assert report.audits
    assert "suite sizes overridden with n=5" in report.warnings


def test_suites_run_in_registry_order():
    report = run_suites(["patterns", "oracle"], SMALL)
    assert report.suites == ["oracle", "patterns"]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suites(["oracle", "nope"], SMALL)


def test_corrupted_oracle_fails(mocker):
    mocker.patch(
        "saw_lab.verify.suites.oracle_counts",
        return_value={"walk": 0, "bridge": 0, "halfspace": 0, "closing": 0},
    )
    report = run_suites(["oracle"], VerifyContext(n=3, workers=1))
    assert not report.passed
    assert report.exit_code == 1
    assert "oracle.class_counts" in report.to_dict()["failed"]
    endpoint = [c for c in report.checks if c.name == "endpoint_table"]
    assert endpoint[0].status is CheckStatus.PASS


def test_library_error_becomes_failed_check(mocker):
    mocker.patch("saw_lab.verify.suites.growth_checks", side_effect=EnumerationError("boom"))
    report = run_suites(["growth"], SMALL)
    assert [(c.name, c.status, c.detail) for c in report.checks] == [
        ("error", CheckStatus.FAIL, "boom")
    ]


def test_closing_suite_skips_unfolding_bound_when_short():
    report = run_suites(["closing"], VerifyContext(n=7, workers=1))
    by_name = {c.name: c for c in report.checks}
    assert by_name["closing_probability_n3"].status is CheckStatus.PASS
    assert by_name["closing_probability_n3"].detail == "2/9"
    assert by_name["unfolding_bound"].status is CheckStatus.SKIP


def test_no_pattern_pair_in_three_dimensions():
    report = run_suites(["patterns"], VerifyContext(dim=3, workers=1))
    assert [c.status for c in report.checks] == [CheckStatus.SKIP]
    assert report.passed


def test_hypergeom_uses_configured_sizes(small_hypergeom):
    report = run_suites(["hypergeom"], VerifyContext())
    assert report.passed
    assert "m=1000" in report.checks[1].detail
    assert not report.warnings


class TestReport:
    def test_check_helper(self):
        assert check("s", "ok", True).status is CheckStatus.PASS
        assert check("s", "bad", False, "why").failed

    def test_to_dict(self):
        report = VerifyReport(
            suites=["a"],
            checks=[check("a", "x", True), CheckResult("a", "y", CheckStatus.SKIP, "later"),
                    check("a", "z", False, "broken")],
        )
        doc = report.to_dict()
        assert doc["passed"] is False
        assert doc["failed"] == ["a.z"]
        assert [c["status"] for c in doc["checks"]] == ["pass", "skip", "fail"]
        assert doc["audits"] == []


@pytest.mark.slow
def test_default_sizes_pass():
    report = run_suites(list(SUITES), VerifyContext())
    assert report.passed, [(c.suite, c.name, c.detail) for c in report.failures]


def test_slot_partition_check():
    report = run_suites(["patterns"], SMALL)
    by_name = {c.name: c for c in report.checks}
    assert by_name["slot_partition"].status is CheckStatus.PASS
    assert by_name["slot_partition"].detail == "1 shells"


def test_lex_point_in_slot_fails_partition(mocker):
    mocker.patch(
        "saw_lab.verify.suites.partition_at_hang",
        side_effect=PatternError("Lex point (0, 0) lies in slot 0"),
    )
    report = run_suites(["patterns"], SMALL)
    assert "patterns.slot_partition" in report.to_dict()["failed"]


def test_insert_z_audit_covers_several_preimages():
    report = run_suites(["mvm"], VerifyContext(n=8, workers=1))
    insert = next(c for c in report.checks if c.name == "insert_z_n8")
    assert insert.status is CheckStatus.PASS
    assert insert.audit.max_preimages == 2
    assert "j in [1, 2, 3, 4]" in insert.audit.warnings
