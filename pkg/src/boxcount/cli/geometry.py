"Implements ``boxcount geometry``"

import json
import logging

import click

from boxcount.cli.shared_options import group
from boxcount.dtcount import CATALOG

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


@group()
def geometry():
    """
    Inspect toric geometries
    """


@geometry.command(name="list")
def ls():
    """
    List built-in and configured geometries
    """
    import boxcount
    for name, factory in CATALOG.items():
        doc = (factory.__doc__ or "").strip().splitlines()
        click.echo(f"{name:<12} {doc[0] if doc else ''}")
    for name in boxcount.get_config().geometries:
        click.echo(f"{name:<12} (config)")


@geometry.command()
@click.argument("name")
def show(name):
    """
    Print a geometry as JSON

    The output is accepted by ``boxcount z`` as geometry file.
    """
    import boxcount
    graph = boxcount.get_config().geometry(name)
    click.echo(json.dumps(graph.to_json(), indent=2))
