# app/modules/congruences/core/services/suite_service.py
"""Running checks over prime ranges and turning verdicts into a report."""
import logging
import multiprocessing
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Tuple, Union

from sympy import primerange

from app.modules.congruences.config import (
    ASSERTED_KINDS,
    EXIT_CODES,
    CheckStatus,
    ModuleConfig,
    ParamDomain,
    SuiteEventTypes,
)
from app.modules.congruences.core.exceptions import (
    CongruenceError,
    InsufficientPrecision,
    NotApplicable,
    NotPAdicInteger,
    PrecisionExhausted,
)
from app.modules.congruences.core.models.padic import PadicValue, PrimeContext, congruent_mod
from app.modules.congruences.core.schemas.congruence_schemas import (
    CheckResult,
    Report,
    RunConfig,
    RunSummary,
    SamplingConfig,
)
from app.modules.congruences.core.services.check_registry import (
    CheckSpec,
    Quantities,
    get_check,
    select_checks,
)

logger = logging.getLogger(__name__)

Param = Union[None, Fraction, int]


@dataclass(frozen=True)
class Task:
    check_id: str
    p: int
    param: Param = None

    def sort_key(self) -> Tuple:
        return (self.check_id, self.p, Fraction(-(10**9)) if self.param is None else Fraction(self.param))


def format_param(spec: CheckSpec, param: Param) -> str:
    if param is None:
        return ""
    if spec.param_domain == ParamDomain.INDEX_K:
        return f"k={param}"
    return str(Fraction(param))


def _render(value: PadicValue, t: int) -> str:
    try:
        return str(value.residue(t))
    except NotPAdicInteger:
        return str(value)


def _status(spec: CheckSpec, passed: bool) -> CheckStatus:
    if spec.asserted:
        return CheckStatus.PASS if passed else CheckStatus.FAIL
    return CheckStatus.CONSISTENT if passed else CheckStatus.REFUTED


def _decide(spec: CheckSpec, p: int, param: Param, e: int) -> Tuple[PadicValue, PadicValue, bool]:
    q = Quantities(PrimeContext(p, e))
    t = spec.exponent(p)
    lhs = spec.lhs(q, param)
    rhs = spec.rhs(q, param)
    return lhs, rhs, congruent_mod(lhs, rhs, t)


def evaluate(spec: CheckSpec, p: int, param: Param = None, e: int = ModuleConfig.DEFAULT_PRECISION) -> Tuple[CheckResult, bool]:
    """One verdict; the flag reports whether the precision had to be raised."""
    if not spec.applicable(p, param):
        raise NotApplicable(f"{spec.id} does not apply at p={p}, a={param}")
    t = spec.exponent(p)
    retried = False
    start = time.perf_counter_ns()
    try:
        lhs, rhs, passed = _decide(spec, p, param, e)
    except (InsufficientPrecision, PrecisionExhausted) as exc:
        retried = True
        logger.debug(f"{spec.id} at p={p}: {exc}; retrying at e={e + ModuleConfig.PRECISION_RETRY_STEP}")
        lhs, rhs, passed = _decide(spec, p, param, e + ModuleConfig.PRECISION_RETRY_STEP)
    micros = (time.perf_counter_ns() - start) // 1000
    result = CheckResult(
        check_id=spec.id,
        kind=spec.kind,
        p=p,
        a=format_param(spec, param),
        t=t,
        lhs=_render(lhs, t),
        rhs=_render(rhs, t),
        passed=passed,
        status=_status(spec, passed),
        micros=micros,
    )
    return result, retried


def run_check(check_id: str, p: int, param: Param = None, e: int = ModuleConfig.DEFAULT_PRECISION) -> CheckResult:
    result, _ = evaluate(get_check(check_id), p, param, e)
    return result


# --- parameter sampling ---
def sample_parameters(spec: CheckSpec, p: int, sampling: SamplingConfig) -> List[Fraction]:
    """Distinct applicable a = r/s, reproducible from (seed, check id, p)."""
    rng = random.Random(f"{sampling.seed}:{spec.id}:{p}")
    found: List[Fraction] = []
    seen = set()
    for _ in range(sampling.count * ModuleConfig.SAMPLE_ATTEMPT_FACTOR):
        if len(found) >= sampling.count:
            break
        s = 1 if spec.integral else rng.randint(1, sampling.den_max)
        if s % p == 0:
            continue
        a = Fraction(rng.randint(-sampling.num_max, sampling.num_max), s)
        if a in seen:
            continue
        seen.add(a)
        if spec.applicable(p, a):
            found.append(a)
    if len(found) < sampling.count:
        logger.debug(f"{spec.id} at p={p}: only {len(found)} of {sampling.count} parameters found")
    return found


def plan_tasks(specs: Iterable[CheckSpec], primes: Iterable[int], sampling: SamplingConfig) -> Tuple[List[Task], int]:
    """All (check, p, param) triples in report order, plus the number of skipped (check, p) pairs."""
    tasks: List[Task] = []
    skipped = 0
    primes = list(primes)
    for spec in specs:
        for p in primes:
            if spec.param_domain == ParamDomain.SAMPLED_A:
                params: List[Param] = list(sample_parameters(spec, p, sampling))
            elif spec.param_domain == ParamDomain.INDEX_K:
                params = [k for k in spec.indices(p) if spec.applicable(p, k)]
            else:
                params = [None] if spec.applicable(p, None) else []
            if not params:
                skipped += 1
            tasks.extend(Task(spec.id, p, param) for param in params)
    tasks.sort(key=Task.sort_key)
    return tasks, skipped


def _execute(job: Tuple[Task, int]) -> Tuple[Dict[str, Any], bool]:
    """Pool worker: evaluate one task, turning evaluation errors into failed rows."""
    task, e = job
    spec = get_check(task.check_id)
    try:
        result, retried = evaluate(spec, task.p, task.param, e)
    except CongruenceError as exc:
        logger.error(f"{task.check_id} at p={task.p}, a={task.param}: {type(exc).__name__}: {exc}")
        result = CheckResult(
            check_id=spec.id,
            kind=spec.kind,
            p=task.p,
            a=format_param(spec, task.param),
            t=spec.exponent(task.p),
            lhs="error",
            rhs=type(exc).__name__,
            passed=False,
            status=_status(spec, False),
            micros=None,
        )
        retried = False
    return result.model_dump(by_alias=True), retried


def summarize(results: List[CheckResult], skipped: int = 0) -> RunSummary:
    summary = RunSummary(total=len(results), skipped=skipped)
    asserted_failure = False
    for result in results:
        status = CheckStatus(result.status)
        if status == CheckStatus.PASS:
            summary.passed += 1
        elif status == CheckStatus.FAIL:
            summary.failed += 1
            asserted_failure = asserted_failure or result.kind in ASSERTED_KINDS
        elif status == CheckStatus.CONSISTENT:
            summary.consistent += 1
        else:
            summary.refuted += 1
    if asserted_failure:
        summary.exit_code = EXIT_CODES["failure"]
    elif summary.refuted:
        summary.exit_code = EXIT_CODES["refuted"]
    else:
        summary.exit_code = EXIT_CODES["ok"]
    return summary


class SuiteService:
    def __init__(self, event_bus=None):
        self.event_bus = event_bus

    def _publish(self, event_type: str, data: Dict[str, Any]) -> None:
        if self.event_bus:
            self.event_bus.publish(event_type, data, source_module="congruences")

    def run_check(self, check_id: str, p: int, param: Param = None, e: int = ModuleConfig.DEFAULT_PRECISION) -> CheckResult:
        result, retried = evaluate(get_check(check_id), p, param, e)
        if retried:
            self._publish(SuiteEventTypes.PRECISION_RETRIED, {"check_id": check_id, "p": p, "a": result.a})
        self._announce(result)
        return result

    def run_range(self, config: RunConfig) -> Report:
        specs = select_checks(config.checks)
        primes = [int(p) for p in primerange(max(config.p_min, 3), config.p_max + 1)]
        tasks, skipped = plan_tasks(specs, primes, config.sampling)
        self._publish(
            SuiteEventTypes.RUN_STARTED,
            {"checks": len(specs), "primes": len(primes), "tasks": len(tasks), "jobs": config.jobs},
        )
        jobs = [(task, config.precision) for task in tasks]
        if config.jobs > 1 and len(jobs) > 1:
            with multiprocessing.Pool(processes=config.jobs) as pool:
                rows = pool.map(_execute, jobs, chunksize=max(1, len(jobs) // (4 * config.jobs)))
        else:
            rows = [_execute(job) for job in jobs]

        results: List[CheckResult] = []
        for data, retried in rows:
            result = CheckResult.model_validate(data)
            if retried:
                self._publish(SuiteEventTypes.PRECISION_RETRIED, {"check_id": result.check_id, "p": result.p, "a": result.a})
            self._announce(result)
            results.append(result)

        summary = summarize(results, skipped)
        self._publish(SuiteEventTypes.RUN_COMPLETED, summary.model_dump())
        return Report(config=config, results=results, summary=summary)

    def _announce(self, result: CheckResult) -> None:
        data = result.model_dump(by_alias=True)
        self._publish(SuiteEventTypes.CHECK_COMPLETED, data)
        status = CheckStatus(result.status)
        if status == CheckStatus.FAIL:
            self._publish(SuiteEventTypes.CHECK_FAILED, data)
        elif status == CheckStatus.REFUTED:
            self._publish(SuiteEventTypes.CONJECTURE_REFUTED, data)


def run_range(config: RunConfig, event_bus=None) -> Report:
    return SuiteService(event_bus).run_range(config)
