"Implements ``boxcount vertex``"

import logging

import click

from boxcount.cli.shared_options import (command, emit, format_option,
                                        jobs_option, out_option, parse_specs,
                                        spec_option, truncation_default)
from boxcount.dtcount import vertex_series
from boxcount.exceptions import BoxcountUsageError
from boxcount.partitions import format_legs, minimal_size, parse_legs
from boxcount.render import render

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


def resolve_zorder(legs, zorder, delta):
    """Absolute z order from ``--zorder`` or ``--delta``"""
    if zorder is not None and delta is not None:
        raise BoxcountUsageError("Use either --zorder or --delta, not both")
    if delta is not None:
        if delta < 0:
            raise BoxcountUsageError("--delta must be non-negative")
        return minimal_size(legs) + delta
    return truncation_default(zorder, "zorder")


@command()
@click.option(
    "--legs", "-l", required=True, metavar="LAMBDA;MU;NU",
    help="Asymptotic partitions, e.g. '2,1;;1' (empty slots allowed)"
)
@click.option(
    "--zorder", "-z", type=int,
    help="Highest power of z (default from config)"
)
@click.option(
    "--delta", "-d", type=int,
    help="Number of boxes beyond the bare legs, instead of --zorder"
)
@spec_option
@format_option
@jobs_option
@out_option
def vertex(legs, zorder, delta, specs, fmt, jobs, out):
    """
    Vertex weight with the given legs

    Sums the weights of all legged plane partitions with legs
    LAMBDA;MU;NU through the requested power of z.

    \b
    Example:
      boxcount vertex --legs ';;' --zorder 3 --spec cy
    """
    parsed = parse_legs(legs)
    spec = parse_specs(specs)
    zorder = resolve_zorder(parsed, zorder, delta)
    log.info("Vertex [%s] through z^%i", format_legs(parsed), zorder)
    series = vertex_series(parsed, zorder, subst=spec.substitution(),
                           numeric=spec.numeric(), jobs=jobs)
    emit(render(series, fmt), out)
