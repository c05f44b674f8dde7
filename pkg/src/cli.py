"""dilator-forge command line.

Every command that checks laws writes a JSON report (to ``--report`` or
stdout) and exits 0 when nothing was violated, 1 otherwise. Usage errors and
rejected inputs exit 2.
"""
import functools
import json
import logging
import pathlib
import sys
from typing import Any, Optional

import click

from src.config import Config
from src.constructions.f import validate_F
from src.constructions.reduction import reduce_pipeline
from src.dilators.core import validate_normal, validate_prae_dilator
from src.dilators.registry import dilator_names, get_dilator
from src.errors import DilatorForgeError, ParseError
from src.fixpoint.embedding import fix_embed, fix_witness
from src.fixpoint.enumeration import calibrate_l_bound, enumerate_fix
from src.fixpoint.eps0 import eps0_power_witness, eps0_witness
from src.fixpoint.terms import fix_system
from src.pipeline.report_generator import generate_suite_summary, write_report
from src.pipeline.suites import check_f_instance, check_h_instance, run_suite, suite_names
from src.utils.log_utils import get_logger, setup_logging
from src.utils.orders import order_from_json
from src.utils.reporting import ReportBuilder, SuiteReport
from src.utils.serialization import to_jsonable

logger = get_logger("CLI")

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2
WITNESSES = ("self", "eps0", "eps0-power")

path_in = click.Path(exists=True, dir_okay=False, path_type=pathlib.Path)
path_out = click.Path(dir_okay=False, writable=True, path_type=pathlib.Path)


def handled(fn):
    """Turn package errors into a stderr message and exit status 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DilatorForgeError as e:
            logger.debug("Rejected input", exc_info=True)
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_USAGE)

    return wrapper


def _read_json(path: pathlib.Path) -> Any:
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e


def _read_order(path: Optional[pathlib.Path], default_size: int = 3):
    return order_from_json(_read_json(path) if path else {"size": default_size})


def _emit_json(data: Any, out: Optional[pathlib.Path]) -> None:
    text = json.dumps(to_jsonable(data), sort_keys=True, indent=2, ensure_ascii=False)
    if out is None:
        click.echo(text)
    else:
        out.write_text(text + "\n")
        logger.info(f"Wrote {out}")


def _finish(report: SuiteReport, path: Optional[pathlib.Path], timing: bool) -> None:
    text = write_report(report, path, timing)
    if path is None:
        click.echo(text)
    click.echo(generate_suite_summary(report), err=True)
    sys.exit(EXIT_OK if report.passed else EXIT_VIOLATIONS)


report_option = click.option("--report", "-r", type=path_out, default=None, help="Write the JSON report here instead of stdout.")
timing_option = click.option("--timing", is_flag=True, help="Include elapsed time in the report.")
family_option = click.option(
    "--family",
    default=None,
    help="Tree family: a JSON file, or a builtin name (DEC, BAD). Defaults to DEC.",
)


@click.group(context_settings=dict(help_option_names=["-h", "--help"]))
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
@click.option("--quiet", "-q", is_flag=True, help="Only log warnings and errors.")
def cli(verbose: bool, quiet: bool):
    """Coded dilators, their fixed points and the tree-family constructions."""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    setup_logging(level)


@cli.command()
@click.option("--dilator", "-d", type=click.Choice(dilator_names()), default="omega", show_default=True)
@family_option
@click.option("--h-index", type=click.IntRange(min=0), default=1, show_default=True, help="n for the H dilator.")
@click.option("--arity", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--codes", type=click.IntRange(min=1), default=500, show_default=True)
@click.option("--normal", is_flag=True, help="Also check the normality conditions.")
@report_option
@timing_option
@handled
def validate(dilator, family, h_index, arity, codes, normal, report, timing):
    """Check the prae-dilator laws of a registered dilator."""
    config = Config.build(dilator=dilator, family=family, h_index=h_index, arity_bound=arity, code_bound=codes)
    T = get_dilator(dilator, config.tree_family(), config.h_index)
    builder = ReportBuilder(f"validate:{T.name}", seed=config.seed)
    builder.absorb(validate_prae_dilator(T, arity, codes), prefix="prae-dilator")
    if normal:
        builder.absorb(validate_normal(T, arity, codes), prefix="normal")
    _finish(builder.finish(dilator=T.name, arity_bound=arity, code_bound=codes), report, timing)


@cli.group()
def h():
    """The search dilators H[T, n]."""


@h.command("check")
@family_option
@click.option("--n", "n", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--order", "order_path", type=path_in, default=None, help="Finite order JSON (default: 3).")
@click.option("--codes", type=click.IntRange(min=1), default=500, show_default=True)
@report_option
@timing_option
@handled
def h_check(family, n, order_path, codes, report, timing):
    """Membership, comparison and coded isomorphism for H[T, n](X)."""
    config = Config.build(family=family, h_index=n, code_bound=codes)
    X = _read_order(order_path)
    _finish(check_h_instance(config.tree_family(), n, X, codes), report, timing)


@cli.group()
def f():
    """The dilator F[T]."""


@f.command("check")
@family_option
@click.option("--order", "order_path", type=path_in, default=None, help="Finite order JSON (default: 3).")
@click.option("--arity", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--codes", type=click.IntRange(min=1), default=500, show_default=True)
@report_option
@timing_option
@handled
def f_check(family, order_path, arity, codes, report, timing):
    """Prae-dilator and normality laws for F[T], plus its coded isomorphism on X."""
    config = Config.build(family=family, arity_bound=arity, code_bound=codes)
    tree_family = config.tree_family()
    X = _read_order(order_path)
    builder = ReportBuilder(f"f-check:{tree_family.name}", seed=config.seed)
    builder.absorb(validate_F(tree_family, arity, codes), prefix="laws")
    builder.absorb(check_f_instance(tree_family, X, codes), prefix="iso")
    _finish(builder.finish(family=tree_family.name, order=X.name), report, timing)


@cli.group()
def fix():
    """Terms of the initial fixed point Fix(T)."""


@fix.command("enumerate")
@click.option("--dilator", "-d", type=click.Choice(dilator_names()), default="omega", show_default=True)
@family_option
@click.option("--l-bound", type=click.IntRange(min=1), default=None, help="Length bound (calibrated when absent).")
@click.option("--out", "-o", type=path_out, default=None)
@handled
def fix_enumerate(dilator, family, l_bound, out):
    """List the terms with L_T <= bound, in increasing order."""
    T = get_dilator(dilator, Config.build(family=family).tree_family())
    system = fix_system(T)
    bound = l_bound or calibrate_l_bound(T)
    terms = enumerate_fix(T, bound)
    logger.info(f"{len(terms)} terms of Fix({T.name}) with length <= {bound}")
    rows = [{"term": system.term_to_json(t), **system.metrics(t)._asdict()} for t in terms]
    _emit_json({"dilator": T.name, "l_bound": bound, "terms": rows}, out)


@fix.command("compare")
@click.option("--dilator", "-d", type=click.Choice(dilator_names()), default="omega", show_default=True)
@family_option
@click.argument("first", type=path_in)
@click.argument("second", type=path_in)
@click.option("--out", "-o", type=path_out, default=None)
@handled
def fix_compare(dilator, family, first, second, out):
    """Compare two JSON terms; prints the ordering and both Goedel numbers."""
    T = get_dilator(dilator, Config.build(family=family).tree_family())
    system = fix_system(T)
    s = system.term_from_json(_read_json(first))
    t = system.term_from_json(_read_json(second))
    ordering = system.checked_compare(s, t)
    logger.info(f"Compared two terms of Fix({T.name}): {ordering}")
    _emit_json(
        {"dilator": T.name, "ordering": str(ordering), "goedel": {"first": system.goedel(s), "second": system.goedel(t)}},
        out,
    )


@fix.command("embed")
@click.option("--dilator", "-d", type=click.Choice(dilator_names()), default="omega", show_default=True)
@family_option
@click.option("--into", type=click.Choice(WITNESSES), default="self", show_default=True)
@click.argument("term_path", type=path_in)
@click.option("--out", "-o", type=path_out, default=None)
@handled
def fix_embed_command(dilator, family, into, term_path, out):
    """Image of a term under the embedding into a fixed point (eps0 targets need omega)."""
    T = get_dilator(dilator, Config.build(family=family).tree_family())
    if into != "self" and dilator != "omega":
        raise ParseError(f"'{into}' is a fixed point of omega only")
    W = {"self": lambda: fix_witness(T), "eps0": eps0_witness, "eps0-power": eps0_power_witness}[into]()
    system = fix_system(T)
    term = system.term_from_json(_read_json(term_path))
    image = fix_embed(T, W, term)
    if into == "self":
        image = system.term_to_json(image)
    _emit_json({"witness": W.name, "image": image}, out)


@cli.command()
@family_option
@click.option("--code-bound", type=click.IntRange(min=0), default=200, show_default=True)
@click.option("--depth", type=click.IntRange(min=1), default=6, show_default=True)
@click.option("--width", type=click.IntRange(min=1), default=4, show_default=True)
@click.option("--out", "-o", type=path_out, default=None, help="Write the J table and verdicts here.")
@handled
def reduce(family, code_bound, depth, width, out):
    """Build the embedding J into Fix(F[T]) and check its three clauses."""
    tree_family = Config.build(family=family).tree_family()
    result = reduce_pipeline(tree_family, code_bound, depth, width)
    _emit_json(result.to_json(), out)
    click.echo(generate_suite_summary(result.report), err=True)
    sys.exit(EXIT_OK if result.report.passed else EXIT_VIOLATIONS)


@cli.group()
def verify():
    """Named end-to-end suites."""


@verify.command("run")
@click.option("--suite", "-s", "name", required=True, help=f"One of: {', '.join(suite_names())}.")
@click.option("--config", "config_path", type=path_in, default=None, help="JSON config file.")
@click.option("--seed", type=int, default=None, help="Overrides the config file and $DILATOR_FORGE_SEED.")
@click.option("--code-bound", type=click.IntRange(min=1), default=None)
@report_option
@timing_option
@handled
def verify_run(name, config_path, seed, code_bound, report, timing):
    """Run one suite; CLI flags override the config file."""
    overrides = {"seed": seed, "code_bound": code_bound}
    if config_path is not None:
        config = Config.load(config_path, **overrides)
    else:
        config = Config.build(**{k: v for k, v in overrides.items() if v is not None})
    result = run_suite(name, config)
    _finish(result, report or (pathlib.Path(config.output) if config.output else None), timing)


@cli.command()
@click.option("--host", default="0.0.0.0", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Serve the HTTP API with uvicorn."""
    import uvicorn

    uvicorn.run("api_server:app", host=host, port=port)


if __name__ == "__main__":
    cli()
