import io

import pytest
from pydantic import ValidationError

from app.modules.congruences.cli.reporting import write_csv, write_json, write_text
from app.modules.congruences.config import CheckKind, CheckStatus, SuiteEventTypes
from app.modules.congruences.core.schemas.congruence_schemas import CheckResult, RunConfig, SamplingConfig
from app.modules.congruences.core.services.check_registry import select_checks
from app.modules.congruences.core.services.suite_service import (
    SuiteService,
    Task,
    _execute,
    plan_tasks,
    run_range,
    summarize,
)
from app.modules.congruences.module import CongruenceModule


def _row(status: CheckStatus, kind: CheckKind = CheckKind.THEOREM) -> CheckResult:
    passed = status in (CheckStatus.PASS, CheckStatus.CONSISTENT)
    return CheckResult(check_id="X", kind=kind, p=5, t=2, lhs="1", rhs="1", passed=passed, status=status)


def test_plan_counts_inapplicable_pairs_as_skipped():
    tasks, skipped = plan_tasks(select_checks(["THM32A"]), [5, 7, 11, 13], SamplingConfig())
    assert [t.p for t in tasks] == [5, 13]
    assert skipped == 2


def test_plan_is_ordered_by_check_prime_and_parameter():
    specs = select_checks(["EQ-58", "COR51", "THM33-ODD"])
    tasks, _ = plan_tasks(specs, [13, 5, 7], SamplingConfig(count=3, seed=4))
    assert tasks == sorted(tasks, key=Task.sort_key)
    assert tasks[0].check_id == "COR51" and tasks[0].p == 5
    eq58 = [t.param for t in tasks if t.check_id == "EQ-58" and t.p == 13]
    assert eq58 == sorted(eq58) and eq58


def test_sampling_plan_is_reproducible():
    specs = select_checks(["THM33-ODD", "EQ-110"])
    sampling = SamplingConfig(count=3, seed=11)
    assert plan_tasks(specs, [7, 11, 13], sampling) == plan_tasks(specs, [7, 11, 13], sampling)


@pytest.mark.parametrize(
    "statuses, exit_code",
    [
        ([CheckStatus.PASS, CheckStatus.CONSISTENT], 0),
        ([CheckStatus.PASS, CheckStatus.REFUTED], 3),
        ([CheckStatus.FAIL, CheckStatus.REFUTED], 1),
        ([CheckStatus.FAIL], 1),
        ([], 0),
    ],
)
def test_summary_exit_codes(statuses, exit_code):
    rows = [_row(s, CheckKind.CONJECTURE if s == CheckStatus.REFUTED else CheckKind.THEOREM) for s in statuses]
    summary = summarize(rows, skipped=4)
    assert summary.exit_code == exit_code
    assert summary.total == len(rows) and summary.skipped == 4


def test_evaluation_errors_become_failed_rows():
    data, retried = _execute((Task("THM32A", 7), 8))
    assert data["pass"] is False
    assert data["status"] == CheckStatus.FAIL.value
    assert (data["lhs"], data["rhs"]) == ("error", "NotApplicable")
    assert not retried


def test_run_range_passes_and_reports_in_order():
    config = RunConfig(checks=["COR51", "THM53", "LEM51"], p_min=5, p_max=31, sampling=SamplingConfig(count=2), jobs=1)
    report = run_range(config)
    assert report.results
    assert report.summary.exit_code == 0
    assert report.summary.failed == 0
    assert report.summary.passed == report.summary.total == len(report.results)
    keys = [(r.check_id, r.p) for r in report.results]
    assert keys == sorted(keys)


def test_parallel_run_matches_serial_run():
    base = dict(checks=["VH-11", "EQ-111", "EQ-58"], p_min=5, p_max=23, sampling=SamplingConfig(count=2, seed=5), timing=False)
    serial = run_range(RunConfig(jobs=1, **base))
    parallel = run_range(RunConfig(jobs=2, **base))
    assert [r.record(False) for r in serial.results] == [r.record(False) for r in parallel.results]
    assert serial.summary == parallel.summary


def test_reports_are_byte_identical_across_job_counts():
    base = dict(checks=["COR51", "THM33-ODD", "EQ-58"], p_min=5, p_max=19, sampling=SamplingConfig(count=2, seed=9), timing=False)
    rendered = []
    for jobs in (1, 2, 3):
        report = run_range(RunConfig(jobs=jobs, **base))
        text = []
        for writer in (write_json, write_csv, write_text):
            stream = io.StringIO()
            writer(report, stream, timing=False)
            text.append(stream.getvalue())
        rendered.append(text)
    assert rendered[0] == rendered[1] == rendered[2]
    assert rendered[0][0].count("\n") > 2


def test_events_are_published(recording_bus):
    service = SuiteService(recording_bus)
    report = service.run_range(RunConfig(checks=["VH-12"], p_min=5, p_max=19, jobs=1))
    kinds = [event for event, _ in recording_bus.seen]
    assert kinds[0] == SuiteEventTypes.RUN_STARTED
    assert kinds[-1] == SuiteEventTypes.RUN_COMPLETED
    assert kinds.count(SuiteEventTypes.CHECK_COMPLETED) == len(report.results)
    assert SuiteEventTypes.CHECK_FAILED not in kinds


def test_module_handlers_tally_failures(recording_bus):
    module = CongruenceModule(recording_bus)
    module.run(RunConfig(checks=["COR51"], p_min=5, p_max=13, jobs=1))
    assert module.handlers.failures == 0 and module.handlers.refutations == 0
    module.handlers.handle_check_failed({"check_id": "X", "p": 5})
    assert module.handlers.failures == 1
    assert "COR51" in module.check_ids()


def test_run_config_rejects_inverted_range():
    with pytest.raises(ValidationError):
        RunConfig(p_min=11, p_max=7)
    with pytest.raises(ValidationError):
        RunConfig(precision=1)
