"Implements ``boxcount z``"

import json
import logging
import os
from typing import Any, Dict, Union

import click

from boxcount.cli.shared_options import (command, emit, format_option,
                                        jobs_option, out_option, parse_specs,
                                        spec_option, truncation_default)
from boxcount.dtcount import (ToricGraph, builtin, dtpt_divide,
                              z_partition_function)
from boxcount.exceptions import BoxcountParseError, BoxcountUsageError
from boxcount.render import q_monomial, render, series_dict
from boxcount.verify import fit_search, parity_check

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


def parse_qorder(text: str) -> Union[int, Dict[str, int]]:
    """``2`` for all degree variables, or ``Q1=2,Q2=1``"""
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    caps = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError()
            caps[name.strip()] = int(value)
        except ValueError:
            raise BoxcountParseError(
                f"Q order '{text}' is neither an integer nor NAME=INT,...")
    return caps


def parse_params(params) -> Dict[str, Any]:
    """``key=value`` parameters of a built-in geometry"""
    result: Dict[str, Any] = {}
    for param in params:
        key, sep, value = param.partition("=")
        if not sep:
            raise BoxcountParseError(f"Parameter '{param}' is not KEY=VALUE")
        try:
            result[key.strip()] = json.loads(value)
        except ValueError:
            result[key.strip()] = value
    return result


def resolve_geometry(name: str, params: Dict[str, Any]) -> ToricGraph:
    """Geometry from a JSON file, the config or the built-in catalog"""
    if os.path.exists(name):
        if params:
            raise BoxcountUsageError(
                "Parameters apply only to built-in geometries")
        return ToricGraph.load(name)
    if params:
        return builtin(name, **params)
    import boxcount
    return boxcount.get_config().geometry(name)


def fit_report(series, virdim: int, max_budget: int, max_numerator):
    """Rational fit and parity of every Q degree"""
    fits = {}
    for qexp in series.q_degrees():
        key = q_monomial(series.qnames, qexp)
        fit = fit_search(series.q_part(qexp), max_budget, max_numerator)
        if fit is None:
            log.info("No rational fit for %s", key)
            fits[key] = None
            continue
        parity = parity_check(fit, virdim)
        entry = fit.to_dict()
        entry["parity"] = parity.status
        fits[key] = entry
    return fits


def fit_text(fits: Dict[str, Any]) -> str:
    lines = []
    for key, entry in fits.items():
        if entry is None:
            lines.append(f"fit {key}: none")
        else:
            lines.append(f"fit {key}: {entry['text']} "
                         f"(parity {entry['parity']})")
    return "\n".join(lines)


@command()
@click.argument("geometry", metavar="GEOMETRY")
@click.option(
    "--param", "-p", "params", multiple=True, metavar="KEY=VALUE",
    help="Parameter of a built-in geometry, e.g. 'n=3' for Xn"
)
@click.option(
    "--qorder", "-Q", metavar="N|Q1=N,...",
    help="Cap on the degree variables (default from config)"
)
@click.option(
    "--zorder", "-z", type=int,
    help="Highest power of z (default from config)"
)
@click.option(
    "--dtpt", is_flag=True,
    help="Divide by the degree zero part"
)
@click.option(
    "--fit", "do_fit", is_flag=True,
    help="Fit every Q degree by a rational function with poles at "
    "roots of unity and check its parity"
)
@click.option(
    "--virdim", type=int,
    help="Virtual dimension for the parity check (default from config)"
)
@spec_option
@format_option
@jobs_option
@out_option
def z(geometry, params, qorder, zorder, dtpt, do_fit, virdim, specs, fmt,
      jobs, out):
    """
    Partition function of a toric threefold

    GEOMETRY is a geometry JSON file, the name of a geometry from the
    config or a built-in geometry (see ``boxcount geometry list``).

    \b
    Example:
      boxcount z conifold --qorder 1 --zorder 6 --spec cy --fit
    """
    import boxcount
    cfg = boxcount.get_config()
    graph = resolve_geometry(geometry, parse_params(params))
    qcaps = parse_qorder(qorder) if qorder is not None \
        else truncation_default(None, "qorder")
    zorder = truncation_default(zorder, "zorder")
    spec = parse_specs(specs)
    if do_fit and fmt == "csv":
        raise BoxcountUsageError("Rational fits are not available as csv")

    series = z_partition_function(graph, qcaps, zorder,
                                  subst=spec.substitution(),
                                  numeric=spec.numeric(), jobs=jobs)
    if dtpt:
        series = dtpt_divide(series, zorder)

    fits = None
    if do_fit:
        virdim = virdim if virdim is not None else cfg.fit.virdim
        fits = fit_report(series, virdim, cfg.fit.max_budget,
                          cfg.fit.max_numerator)

    if fmt == "json":
        data = series_dict(series)
        data["geometry"] = graph.name
        if fits is not None:
            data["fits"] = fits
        text = json.dumps(data, indent=2)
    else:
        text = render(series, fmt)
        if fits is not None:
            text += "\n" + fit_text(fits)
    emit(text, out)
