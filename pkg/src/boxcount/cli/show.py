"Implements ``boxcount show``"

import logging
from collections.abc import Mapping
from typing import Any, Dict, List

import click

import boxcount
from boxcount.cli.shared_options import command
from boxcount.exceptions import BoxcountUsageError

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


def config_properties() -> Dict[str, str]:
    """Public properties of the config manager with their first doc line"""
    from boxcount.config import ConfigMgr
    props = {}
    for name in dir(ConfigMgr):
        attr = getattr(ConfigMgr, name)
        if name[0] != "_" and isinstance(attr, property):
            doc = (attr.__doc__ or "").strip().splitlines()
            props[name] = doc[0] if doc else ""
    return props


def lookup(path: str) -> Any:
    """Value of a dotted config path such as ``fit.max_budget``

    Raises:
      BoxcountUsageError: naming the first key that does not resolve
    """
    obj = boxcount.get_config()
    done: List[str] = []
    for key in path.split("."):
        try:
            obj = getattr(obj, key)
        except AttributeError:
            where = ".".join(done) or "the configuration"
            raise BoxcountUsageError(
                f"Unknown config property '{path}': no '{key}' in {where}")
        done.append(key)
    return obj


class ConfigPathParam(click.ParamType):
    """Dotted config path with tab expansion into config sections"""
    name = "property"

    def complete(self, _ctx, incomplete):
        """Complete the last component of a dotted path

        Args:
          ctx: click context object
          incomplete: last word in command line up until cursor

        Returns:
          list of words incomplete can be completed to
        """
        head, dot, tail = incomplete.rpartition(".")
        if not dot:
            return [p for p in config_properties() if p.startswith(tail)]
        try:
            obj = lookup(head)
        except BoxcountUsageError:
            return []
        if not isinstance(obj, Mapping):
            return []
        return [f"{head}.{key}" for key in obj if str(key).startswith(tail)]

    def convert(self, value, param, ctx):
        return value

    def __repr__(self):
        props = config_properties()
        lines = [f"  {p}: {props[p]}" for p in sorted(props) if props[p]]
        return "\n".join(["Properties:"] + lines)


def show_help(ctx, _param=None, value=True):
    """Display click command help"""
    if value:
        helpstr = [ctx.get_help(), '']
        arg_docs = [repr(param.type)
                    for param in ctx.command.params
                    if isinstance(param, click.Argument)]
        click.echo("\n".join(helpstr + arg_docs), color=ctx.color)
        ctx.exit()


@command(add_help_option=False)
@click.argument(
    "prop", nargs=1, metavar="PROPERTY", required=False,
    type=ConfigPathParam()
)
@click.option(
    "--help", "-h", callback=show_help, expose_value=False, is_flag=True
)
@click.option(
    "--source", "-s", is_flag=True,
    help="Show the config layer each value comes from"
)
@click.option(
    "--files", is_flag=True,
    help="List the active config files, lowest layer first"
)
@click.pass_context
def show(ctx, prop, source, files):
    """
    Show configuration properties

    PROPERTY is a dotted path, e.g. ``fit.max_budget`` or
    ``geometries.mine``.
    """
    if files:
        for fname in boxcount.get_config().conffiles:
            click.echo(fname)
        return
    if not prop:
        show_help(ctx)

    log.debug("querying prop %s", prop)
    obj = lookup(prop)
    try:
        output = obj.to_yaml(source)
    except AttributeError:
        output = str(obj)
    click.echo(output.rstrip("\n"))
