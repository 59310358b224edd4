"""ntrace command line

Every subcommand prints one JSON report on stdout; diagnostics and logs go to
stderr. Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse
error, 3 math-domain error.
"""
import json
import logging
import sys
from functools import wraps

import click

from ntrace import commands
from ntrace.config import get_config
from ntrace.errors import NtraceError
from ntrace.suites import SUITES
from ntrace.utils import load_json_file, render_report, report_to_dict, to_jsonable

logger = logging.getLogger(__name__)


def _headline(report):
    results = report_to_dict(report)['results']
    if report.command == 'check':
        return 'fail' if report.any_failed else 'pass'
    if report.command == 'falsify':
        cx = results.get('counterexample')
        return 'none' if cx is None else cx['margin']
    if report.command == 'major':
        verdict = results.get('majorization') or {}
        return results.get('eigen_dominates', verdict.get('relation_holds'))
    if report.command == 'integral':
        return f"{results['choquet']} {results['sugeno']}"
    if report.command == 'homogeneity':
        return results['gap']
    return results.get('trace', results.get('norm'))


def run_command(func):
    """Print the command's report and exit with the contract's code"""
    @click.option('--quiet', is_flag=True, help='Print only the headline value.')
    @click.pass_context
    @wraps(func)
    def wrapper(ctx, *args, quiet=False, **kwargs):
        try:
            report = func(*args, **kwargs)
        except NtraceError as e:
            logger.debug(f'{e.kind}: {e.message}')
            click.echo(json.dumps(to_jsonable(e.to_dict()), sort_keys=True), err=True)
            ctx.exit(e.exit_code)
        if quiet:
            headline = _headline(report)
            click.echo(json.dumps(headline) if not isinstance(headline, str) else headline)
        else:
            click.echo(render_report(report))
        ctx.exit(1 if report.any_failed else 0)
    return wrapper


def tolerance_option(help_text):
    return click.option('--tolerance', type=float, default=None, help=help_text)


def seed_options(func):
    func = click.option('--dim', type=int, default=None, help='Matrix dimension for generated inputs.')(func)
    func = click.option('--trials', type=int, default=None, help='Number of randomized trials.')(func)
    func = click.option('--seed', type=int, default=None, help='Seed of the PCG64 stream.')(func)
    return func


def _document(path):
    return None if path is None else load_json_file(path)


@click.group()
@click.version_option(package_name='nonlinear-traces')
def cli():
    """Non-linear traces and the norms they induce on matrices."""


@cli.command()
@click.argument('matrix_file', type=click.Path(dir_okay=False))
@click.argument('weight_file', type=click.Path(dir_okay=False))
@click.option('--kind', type=click.Choice(commands.TRACE_KINDS), default='choquet', show_default=True)
@click.option('--extended', is_flag=True, help='Accept any square matrix via its four positive parts.')
@tolerance_option('Relative PSD floor; eigenvalues above -tolerance (1 + ||a||) are clamped to zero.')
@run_command
def trace(matrix_file, weight_file, kind, extended, tolerance):
    """phi_alpha or psi_alpha of a matrix."""
    return commands.cmd_trace(_document(matrix_file), _document(weight_file), kind, extended,
                              get_config().MAX_DIM, tolerance)


@cli.command()
@click.argument('matrix_file', type=click.Path(dir_okay=False))
@click.option('--weight', 'weight_file', type=click.Path(dir_okay=False), default=None)
@click.option('-p', type=float, default=1.0, show_default=True)
@click.option('--family', type=click.Choice(commands.NORM_FAMILIES), default='choquet', show_default=True)
@click.option('-k', type=int, default=None, help='Index of the Ky Fan norm.')
@tolerance_option('Tolerance of the Ky Fan decomposition check (choquet family, p > 1).')
@run_command
def norm(matrix_file, weight_file, p, family, k, tolerance):
    """Weighted Schatten, Sugeno and Ky Fan norms."""
    return commands.cmd_norm(_document(matrix_file), _document(weight_file), p, family, k,
                             get_config().MAX_DIM, tolerance)


@cli.command()
@click.option('-x', 'x', default=None, help='Comma-separated vector majorized by y.')
@click.option('-y', 'y', default=None, help='Comma-separated majorizing vector.')
@click.option('-a', 'a_file', type=click.Path(dir_okay=False), default=None, help='Dominated PSD matrix.')
@click.option('-b', 'b_file', type=click.Path(dir_okay=False), default=None, help='Dominating PSD matrix.')
@tolerance_option('Replaces the majorization, domination, phi weight and factorization tolerances.')
@run_command
def major(x, y, a_file, b_file, tolerance):
    """Majorization of vectors or eigenvalue domination of matrices."""
    return commands.cmd_major(x, y, _document(a_file), _document(b_file), get_config().MAX_DIM, tolerance)


@cli.command()
@click.argument('x')
@click.option('--weight', 'weight_file', type=click.Path(dir_okay=False), default=None)
@click.option('--measure', 'measure_file', type=click.Path(dir_okay=False), default=None)
@click.option('-y', 'y', default=None, help='Second vector to test for comonotonicity.')
@run_command
def integral(x, weight_file, measure_file, y):
    """Discrete Choquet and Sugeno integrals of a vector."""
    return commands.cmd_integral(x, _document(weight_file), _document(measure_file), y)


@cli.command()
def suites():
    """List the property suites."""
    for name in sorted(SUITES):
        click.echo(name)


@cli.command()
@click.argument('suite')
@seed_options
@tolerance_option('Override the comparison tolerance of every check.')
@click.option('--export', type=click.Path(dir_okay=False), default=None,
              help='Write per-trial records to an .xlsx or .csv file.')
@run_command
def check(suite, seed, trials, dim, tolerance, export):
    """Run a randomized property suite (see `ntrace suites`)."""
    cfg = get_config()
    return commands.cmd_check(
        suite,
        cfg.DEFAULT_SEED if seed is None else seed,
        cfg.DEFAULT_TRIALS if trials is None else trials,
        cfg.DEFAULT_DIM if dim is None else dim,
        tolerance, export)


@cli.command()
@click.argument('weight_file', type=click.Path(dir_okay=False))
@click.option('-p', type=float, default=1.0, show_default=True)
@click.option('--mode', type=click.Choice(commands.FALSIFY_MODES), default='proof', show_default=True)
@seed_options
@tolerance_option('Margin a violation must exceed.')
@run_command
def falsify(weight_file, p, mode, seed, trials, dim, tolerance):
    """Search for a triangle-inequality violation."""
    cfg = get_config()
    return commands.cmd_falsify(_document(weight_file), p, mode,
                                cfg.DEFAULT_SEED if seed is None else seed, dim,
                                cfg.DEFAULT_TRIALS if trials is None else trials, tolerance)


@cli.command()
@click.argument('matrix_file', type=click.Path(dir_okay=False))
@click.argument('weight_file', type=click.Path(dir_okay=False))
@click.option('-k', 'k', type=float, default=2.0, show_default=True, help='Real part of the scalar.')
@click.option('--k-imag', type=float, default=0.0, show_default=True, help='Imaginary part of the scalar.')
@tolerance_option('Largest |gap| still reported as homogeneous.')
@run_command
def homogeneity(matrix_file, weight_file, k, k_imag, tolerance):
    """Compare ||k a|| with |k| ||a|| for the Sugeno norm."""
    scalar = complex(k, k_imag) if k_imag else k
    return commands.cmd_homogeneity(_document(matrix_file), _document(weight_file), scalar,
                                    get_config().MAX_DIM, tolerance)


def main():
    cfg = get_config()
    logging.basicConfig(level=cfg.LOG_LEVEL, format=cfg.LOG_FORMAT, stream=sys.stderr)
    cli(prog_name='ntrace')


if __name__ == '__main__':
    main()
