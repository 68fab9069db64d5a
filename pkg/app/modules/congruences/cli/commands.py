# app/modules/congruences/cli/commands.py
"""Command-line surface: verify, compute, wz and checks."""
import logging
import multiprocessing
import sys
from fractions import Fraction
from typing import Optional, Tuple

import click
from pydantic import ValidationError

from app.modules.congruences.cli.reporting import summary_line, write_report
from app.modules.congruences.config import EXIT_CODES, ComputeTarget, ModuleConfig, QuadForm, ReportFormat
from app.modules.congruences.core.exceptions import CongruenceError
from app.modules.congruences.core.models.padic import (
    PadicValue,
    PrimeContext,
    a_prime,
    binom_rational,
    canonical_residue,
    exact_binomial,
    fermat_quotient,
    jacobi,
    parse_rational,
)
from app.modules.congruences.core.schemas.congruence_schemas import RunConfig, SamplingConfig
from app.modules.congruences.core.services.certificate_service import (
    certificate_ids,
    certificate_mutants,
    certificate_residual,
    check_reading,
)
from app.modules.congruences.core.services.check_registry import list_checks
from app.modules.congruences.core.services.quad_form_service import represent
from app.modules.congruences.core.services.sequence_service import (
    bernoulli_numbers,
    bernoulli_poly,
    euler_numbers,
    euler_poly,
    harmonic,
    harmonic_exact,
    padic_gamma,
    u_numbers,
)
from app.modules.congruences.core.services.sum_engine import (
    C_p,
    Q_p,
    S_p,
    SumSpec,
    exact_s_sum,
    exact_weighted_sum,
    f_p,
    g_p,
)
from app.modules.congruences.module import CongruenceModule

logger = logging.getLogger(__name__)

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


class Rational(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(str(value))
        except (ValueError, ZeroDivisionError) as exc:
            self.fail(f"{value!r} is not a rational r/s ({exc})", param, ctx)


RATIONAL = Rational()


def _usage_error(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_CODES["usage"])


@click.group()
@click.option("-v", "--verbose", count=True, help="Repeat for more log output (INFO, DEBUG).")
def cli(verbose: int):
    """Exact verification of binomial-sum supercongruences."""
    logging.basicConfig(
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


# --- verify ---
@cli.command()
@click.option("--check", "checks", multiple=True, default=("all",), show_default=True, help="Check id, family prefix, kind:<kind> or all.")
@click.option("--pmin", "p_min", type=int, default=ModuleConfig.DEFAULT_P_MIN, show_default=True)
@click.option("--pmax", "p_max", type=int, default=ModuleConfig.DEFAULT_P_MAX, show_default=True)
@click.option("--e", "precision", type=int, default=ModuleConfig.DEFAULT_PRECISION, show_default=True, help="Working precision p^e.")
@click.option("--samples", type=int, default=ModuleConfig.DEFAULT_SAMPLE_COUNT, show_default=True)
@click.option("--den-max", type=int, default=ModuleConfig.DEFAULT_DEN_MAX, show_default=True)
@click.option("--num-max", type=int, default=ModuleConfig.DEFAULT_NUM_MAX, show_default=True)
@click.option("--seed", type=int, default=ModuleConfig.DEFAULT_SEED, show_default=True)
@click.option("--jobs", type=int, default=None, help="Worker processes [default: all cores].")
@click.option("--format", "fmt", type=click.Choice([f.value for f in ReportFormat]), default=ReportFormat.JSON.value, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None, help="Report file [default: stdout].")
@click.option("--no-timing", is_flag=True, help="Leave the micros column empty.")
def verify(checks, p_min, p_max, precision, samples, den_max, num_max, seed, jobs, fmt, output, no_timing):
    """Run congruence checks over a prime range."""
    try:
        config = RunConfig(
            command="verify",
            checks=list(checks),
            p_min=p_min,
            p_max=p_max,
            precision=precision,
            sampling=SamplingConfig(count=samples, den_max=den_max, num_max=num_max, seed=seed),
            jobs=jobs or multiprocessing.cpu_count(),
            format=fmt,
            output=output,
            timing=not no_timing,
        )
        report = CongruenceModule().run(config)
    except ValidationError as exc:
        _usage_error("; ".join(err["msg"] for err in exc.errors()))
    except CongruenceError as exc:
        _usage_error(str(exc))

    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as stream:
            write_report(report, stream, config.format, config.timing)
    else:
        write_report(report, sys.stdout, config.format, config.timing)
    if config.format != ReportFormat.TEXT:
        click.echo(summary_line(report), err=True)
    sys.exit(report.summary.exit_code)


# --- compute ---
def _show(value: PadicValue) -> str:
    """p^v * u (mod p^N), followed by the plain residue when v >= 0."""
    text = str(value)
    if value.v is None or value.v >= 0:
        depth = value.ctx.e if value.known_to is None else min(value.known_to, value.ctx.e)
        text += f"\n{value.residue(depth)}"
    return text


def _need(name: str, value):
    if value is None:
        raise click.UsageError(f"--{name} is required for this computation")
    return value


@cli.command()
@click.argument("what", type=click.Choice([t.value for t in ComputeTarget]))
@click.option("--p", type=int, default=None)
@click.option("--a", type=RATIONAL, default=None, help="Rational argument (a, x or the base b).")
@click.option("--k", type=int, default=None)
@click.option("--n", type=int, default=None)
@click.option("--order", type=int, default=1, show_default=True)
@click.option("--form", type=click.Choice([f.value for f in QuadForm]), default=None)
@click.option(
    "--e",
    "precision",
    type=click.IntRange(min=1),
    default=None,
    help=f"Working precision p^e. Defaults to {ModuleConfig.DEFAULT_PRECISION}, or {ModuleConfig.GAMMA_PRECISION} for gamma.",
)
@click.option("--exact", is_flag=True, help="Evaluate over the rationals instead of modulo p^e.")
def compute(what, p, a, k, n, order, form, precision, exact):
    """Print one quantity."""
    target = ComputeTarget(what)
    try:
        click.echo(_compute(target, p, a, k, n, order, form, precision, exact))
    except CongruenceError as exc:
        _usage_error(str(exc))
    except (ValueError, ZeroDivisionError) as exc:
        _usage_error(str(exc))


def _compute(target, p, a, k, n, order, form, precision, exact) -> str:
    if precision is None:
        precision = ModuleConfig.GAMMA_PRECISION if target == ComputeTarget.GAMMA else ModuleConfig.DEFAULT_PRECISION
        logger.debug(f"{target.value}: working precision defaults to e={precision}")

    def ctx() -> PrimeContext:
        return PrimeContext(_need("p", p), precision)

    if target == ComputeTarget.EULER:
        table = euler_numbers(_need("n", n), ctx() if p else None)
        return " ".join(str(x) for x in table.values)
    if target == ComputeTarget.USEQ:
        table = u_numbers(_need("n", n), ctx() if p else None)
        return " ".join(str(x) for x in table.values)
    if target == ComputeTarget.BERNOULLI:
        return " ".join(str(x) for x in bernoulli_numbers(_need("n", n)).values)
    if target == ComputeTarget.HARMONIC:
        if exact:
            return str(harmonic_exact(_need("n", n), order))
        return _show(harmonic(_need("n", n), order, ctx()))
    if target == ComputeTarget.JACOBI:
        return str(jacobi(int(_need("a", a)), _need("p", p)))
    if target == ComputeTarget.QF:
        rep = represent(_need("p", p), QuadForm(_need("form", form)))
        return f"x={rep.x} y={rep.y}"
    if target == ComputeTarget.RESIDUE:
        return str(canonical_residue(_need("a", a), _need("p", p)))
    if target == ComputeTarget.APRIME:
        return _show(a_prime(_need("a", a), ctx()))
    if target == ComputeTarget.QP_FERMAT:
        return _show(fermat_quotient(int(_need("a", a)), ctx()))
    if target == ComputeTarget.GAMMA:
        return _show(padic_gamma(_need("a", a), ctx()))
    if target == ComputeTarget.EULERPOLY:
        return _show(euler_poly(_need("n", n), _need("a", a), ctx()))
    if target == ComputeTarget.BINOM:
        if exact:
            return str(exact_binomial(_need("a", a), _need("k", k)))
        return _show(binom_rational(_need("a", a), _need("k", k), ctx()))
    if target == ComputeTarget.SP:
        x = _need("a", a)
        if exact:
            return str(exact_s_sum(x, n if n is not None else _need("p", p)))
        return _show(S_p(x, ctx(), n))

    sums = {
        ComputeTarget.FP: (f_p, SumSpec(a or 0, 2, 0, -1, n)),
        ComputeTarget.GP: (g_p, SumSpec(a or 0, 2, 1, -1, n, homogenized=True)),
        ComputeTarget.CP: (C_p, SumSpec(a or 0, 3, 1, 1, n, homogenized=True)),
        ComputeTarget.QP: (Q_p, SumSpec(a or 0, 4, 1, 1, n, homogenized=True)),
    }
    fn, spec = sums[target]
    _need("a", a)
    if exact:
        return str(exact_weighted_sum(spec, p))
    return _show(fn(a, ctx(), n))


# --- certificates ---
def _mutants_rejected(cert_id: str) -> Tuple[int, int]:
    mutants = certificate_mutants(cert_id)
    rejected = sum(1 for spec in mutants if not check_reading(spec).verified)
    return rejected, len(mutants)


@cli.command()
@click.option("--cert", "cert", default="all", show_default=True, help="Certificate id or all.")
@click.option("--mutants", is_flag=True, help="Also confirm that every single-coefficient mutation is rejected.")
@click.option("--at", "point", nargs=2, type=(RATIONAL, int), default=None, help="Print the exact residual at (a, k).")
def wz(cert: str, mutants: bool, point: Optional[Tuple[Fraction, int]]):
    """Verify telescoping certificates."""
    module = CongruenceModule()
    ids = certificate_ids() if cert == "all" else [cert]
    all_ok = True
    try:
        for cert_id in ids:
            verdicts = module.verify_certificate(cert_id)
            held = [v.reading for v in verdicts if v.verified]
            ok = bool(held)
            if len(verdicts) > 1:
                for v in verdicts:
                    state = "verified" if v.verified else "rejected"
                    click.echo(f"{cert_id} [{v.reading}]: {state} ({v.method})")
                    if v.notice:
                        click.echo(f"  notice: {v.notice}")
                verdict = f"verified ({', '.join(held)} reading)" if ok else "rejected"
            else:
                verdict = "verified" if ok else "rejected"
            click.echo(f"{cert_id}: {verdict}")
            if len(verdicts) == 1 and verdicts[0].notice:
                click.echo(f"  notice: {verdicts[0].notice}")
            if mutants:
                rejected, total = _mutants_rejected(cert_id)
                click.echo(f"  mutants rejected: {rejected}/{total}")
                ok = ok and rejected == total
            if point is not None:
                click.echo(f"  residual at a={point[0]}, k={point[1]}: {certificate_residual(cert_id, point[0], point[1])}")
            all_ok = all_ok and ok
    except CongruenceError as exc:
        _usage_error(str(exc))
    sys.exit(EXIT_CODES["ok"] if all_ok else EXIT_CODES["failure"])


@cli.command("checks")
@click.option("--kind", default=None, help="Only list checks of this kind.")
def list_registered(kind: Optional[str]):
    """List registered checks."""
    for spec in list_checks():
        if kind and spec.kind.value != kind:
            continue
        click.echo(f"{spec.id:<14} {spec.kind.value:<13} {spec.statement}")


def main() -> None:
    """Console entry point. Settings come from flags only; the environment is not consulted."""
    cli(auto_envvar_prefix=None)
