"Implements ``boxcount nekrasov``"

import logging

import click

from boxcount.cli.shared_options import (command, emit, format_option,
                                        jobs_option, out_option, parse_specs,
                                        spec_option, truncation_default)
from boxcount.exceptions import BoxcountUsageError
from boxcount.nekrasov import GaugeSpec, z_nekrasov
from boxcount.render import render

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


@command()
@click.argument("specfile", required=False,
                type=click.Path(dir_okay=False))
@click.option(
    "--rank", "-r", type=int,
    help="Pure U(rank) theory instead of a gauge spec file"
)
@click.option(
    "--order", "-n", type=int,
    help="Instanton number cap (default from the gauge spec file or config)"
)
@click.option(
    "--symmetrized", is_flag=True,
    help="Use the symmetrized weights ahat instead of (1 - w^-1)"
)
@spec_option
@format_option
@jobs_option
@out_option
def nekrasov(specfile, rank, order, symmetrized, specs, fmt, jobs, out):
    """
    Instanton partition function on C^2

    SPECFILE is a JSON gauge spec, e.g.

    \b
      {"ranks": [1], "matter": [{"i": 1, "j": 1, "mass": "u"}],
       "order": 2}

    Masses and framings may be set to 1 with ``--spec u=1``.
    """
    if (specfile is None) == (rank is None):
        raise BoxcountUsageError("Give either SPECFILE or --rank")
    if specfile is not None:
        spec = GaugeSpec.load(specfile)
    else:
        spec = GaugeSpec([rank])
    if order is None:
        order = truncation_default(spec.order, "order")
    parsed = parse_specs(specs)
    if parsed.cy:
        raise BoxcountUsageError("The cy slice applies to the DT torus only")
    for name in parsed.values:
        if name not in spec.names:
            raise BoxcountUsageError(
                f"Cannot specialize '{name}': not in {', '.join(spec.names)}")
    series = z_nekrasov(spec, order, symmetrized=symmetrized,
                        specialize=parsed.values, jobs=jobs)
    emit(render(series, fmt), out)
