"Implements ``boxcount verify``"

import logging

import click

from boxcount.cli.shared_options import (command, emit, jobs_option,
                                        seed_option, truncation_default)
from boxcount.render import report_json, report_text
from boxcount.verify import SUITES, run_suite

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


@command()
@click.argument("suite", type=click.Choice(list(SUITES)))
@click.option(
    "--order", "-n", type=click.IntRange(min=0),
    help="Order through which to check (default from config)"
)
@click.option(
    "--mode", "-m", type=click.Choice(["exact", "random-eval"]),
    default="exact", show_default=True,
    help="Compare exact rational functions or values at random points"
)
@seed_option
@click.option(
    "--points", type=click.IntRange(min=1),
    help="Number of random points (default from config)"
)
@click.option(
    "--format", "-f", "fmt", type=click.Choice(["text", "json"]),
    default="text", show_default=True,
    help="Format of the report on standard output"
)
@click.option(
    "--out", "-o", type=click.Path(dir_okay=False, writable=True),
    help="Write the JSON report to this file"
)
@jobs_option
@click.pass_context
def verify(ctx, suite, order, mode, seed, points, fmt, out, jobs):
    """
    Run a verification suite

    Compares both sides of an identity order by order. Exits with 0
    if the check passes and with 1 if it fails; the report names the
    first differing coefficient.
    """
    import boxcount
    cfg = boxcount.get_config()
    order = truncation_default(order, "order")
    points = points if points is not None else cfg.random_points
    report = run_suite(suite, order, mode=mode, seed=seed, points=points,
                       jobs=jobs)
    data = report.to_dict()
    if out:
        emit(report_json(data), out)
    click.echo(report_json(data) if fmt == "json" else report_text(data))
    if not report.passed:
        log.warning("Suite %s failed", suite)
        ctx.exit(1)
