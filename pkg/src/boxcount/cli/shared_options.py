import logging
import sys
from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Optional

import click
import tqdm
from coloredlogs import ColoredFormatter

from boxcount.algebra.lattice import DT_TORUS, Substitution
from boxcount.exceptions import BoxcountParseError, BoxcountUsageError
from boxcount.render import FORMATS

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

context_settings = {
    'help_option_names': ['-h', '--help']
}


class Group(click.Group):
    def command(self, *args, **kwargs):
        command = super().command(*args, context_settings=context_settings,
                                  **kwargs)

        def wrapper(f):
            return command(log_options(f))
        return wrapper


def command(*args, **kwargs):
    command = click.command(*args, context_settings=context_settings, **kwargs)

    def wrapper(f):
        return command(log_options(f))
    return wrapper


def group(*args, **kwargs):
    return command(*args, cls=Group, **kwargs)


class TqdmHandler(logging.StreamHandler):
    """Tqdm aware logging StreamHandler

    Passes all log writes through tqdm to allow progress bars
    and log messages to coexist without clobbering terminal
    """
    def emit(self, record):
        tqdm.tqdm.write(self.format(record), file=sys.stderr)


class LogFormatter(ColoredFormatter):
    level_styles = {
        'warning': {'color': 'yellow'},
        'info': {'color': 'green'},
        'debug': {'color': 'blue'},
        'critical': {'color': 'red'},
        'error': {'color': 'red'},
    }

    def __init__(self):
        super().__init__("%(source)s%(message)s",
                         level_styles=self.level_styles)

    def format(self, record):
        if record.name.startswith('boxcount.'):
            record.source = "boxcount "
        else:
            record.source = ""
        return super().format(record)


class Log(object):
    """
    Set up Logging
    """
    def __init__(self):
        self.root_logger = logging.getLogger()
        self.log = logging.getLogger("boxcount")
        self.log.setLevel(logging.WARNING)
        self.console_handler = TqdmHandler()
        self.console_handler.setLevel(logging.DEBUG)  # no filtering
        self.console_handler.setFormatter(LogFormatter())
        self.root_logger.addHandler(self.console_handler)

    def mod_level(self, n):
        new_level = self.log.getEffectiveLevel() + n*10
        clamped_level = max(logging.DEBUG, min(logging.CRITICAL, new_level))
        self.log.setLevel(clamped_level)

    @staticmethod
    def set_logfile(filename):
        log_handler = logging.FileHandler(filename)
        log_handler.setLevel(logging.DEBUG)
        formatter = logging.Formatter(
            "%(asctime)s %(name)s %(levelname)s %(message)s")
        log_handler.setFormatter(formatter)
        logging.getLogger().addHandler(log_handler)

    @classmethod
    def verbose_option(cls, ctx, param, val):
        log = ctx.ensure_object(Log)
        if val:
            log.mod_level(-val)

    @classmethod
    def quiet_option(cls, ctx, param, val):
        log = ctx.ensure_object(Log)
        if val:
            log.mod_level(val)

    @classmethod
    def logfile_option(cls, ctx, param, val):
        log = ctx.ensure_object(Log)
        if val:
            log.set_logfile(val)


verbose_option = click.option(
    "--verbose", "-v", count=True,
    help="Increase log verbosity",
    callback=Log.verbose_option,
    expose_value=False
)


quiet_option = click.option(
    "--quiet", "-q", count=True,
    help="Decrease log verbosity",
    callback=Log.quiet_option,
    expose_value=False
)

logfile_option = click.option(
    "--log-file",
    help="Specify a log file",
    callback=Log.logfile_option,
    expose_value=False
)


def enable_debug(ctx, param, val):
    if not val:
        return

    def excepthook(typ, val, tb):
        import traceback
        traceback.print_exception(typ, val, tb)
        import pdb
        pdb.pm()

    sys.excepthook = excepthook
    log.error("Dropping into PDB on uncaught exception...")


debug_option = click.option(
    "--pdb", "-P", is_flag=True,
    help="Drop into debugger on uncaught exception",
    callback=enable_debug,
    expose_value=False
)


def log_options(f):
    f = logfile_option(f)
    f = verbose_option(f)
    f = quiet_option(f)
    f = debug_option(f)
    return f


def default_from_config(*path):
    """Option default read lazily from the configuration"""
    def getter():
        import boxcount
        obj = boxcount.get_config()
        for key in path:
            obj = getattr(obj, key)
        return obj
    return getter


def truncation_default(value, setting: str):
    """``value`` if given, else ``truncation.<setting>`` from the config

    Falling back to the config is logged at INFO.
    """
    if value is not None:
        return value
    import boxcount
    value = getattr(boxcount.get_config().truncation, setting)
    log.info("Using truncation.%s = %s from config", setting, value)
    return value


jobs_option = click.option(
    "--jobs", "-j", type=click.IntRange(min=1),
    default=default_from_config("jobs"), show_default="config or 1",
    help="Number of worker processes (default from BOXCOUNT_JOBS or config)"
)

format_option = click.option(
    "--format", "-f", "fmt", type=click.Choice(FORMATS),
    default=default_from_config("output", "format"),
    help="Output format"
)

out_option = click.option(
    "--out", "-o", type=click.Path(dir_okay=False, writable=True),
    help="Write output to file instead of standard output"
)

spec_option = click.option(
    "--spec", "-s", "specs", multiple=True, metavar="cy|NAME=VALUE",
    help="Specialization: 'cy' for the slice t3 = 1/(t1 t2), or a "
    "rational value for a variable (repeatable)"
)

seed_option = click.option(
    "--seed", type=int, default=default_from_config("seed"),
    help="Seed for random evaluations"
)


class Specialization(NamedTuple):
    """Parsed ``--spec`` directives"""
    cy: bool
    values: Dict[str, Fraction]

    def substitution(self) -> Optional[Substitution]:
        return Substitution.calabi_yau() if self.cy else None

    def numeric(self) -> Optional[Dict[str, Fraction]]:
        """Values of the torus variables for the vertex model

        A point must fix every variable left by the cy slice.

        Raises:
          BoxcountUsageError: on unknown, eliminated or missing variables
        """
        if not self.values:
            return None
        for name in self.values:
            if name not in DT_TORUS:
                raise BoxcountUsageError(
                    f"Cannot specialize '{name}': not in {DT_TORUS}")
        if self.cy and "t3" in self.values:
            raise BoxcountUsageError("'t3' is eliminated by the cy slice")
        needed = DT_TORUS[:2] if self.cy else DT_TORUS
        missing = [name for name in needed if name not in self.values]
        if missing:
            raise BoxcountUsageError(
                f"Numeric point needs values for {', '.join(missing)}")
        return dict(self.values)


def parse_specs(specs: Iterable[str]) -> Specialization:
    """Parse ``cy`` and ``name=value`` directives

    Raises:
      BoxcountParseError: on malformed directives
    """
    cy = False
    values: Dict[str, Fraction] = {}
    for spec in specs:
        spec = spec.strip()
        if spec.lower() == "cy":
            cy = True
            continue
        name, sep, value = spec.partition("=")
        if not sep or not name.strip():
            raise BoxcountParseError(
                f"Specialization '{spec}' is neither 'cy' nor NAME=VALUE")
        try:
            values[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise BoxcountParseError(
                f"Value of '{name.strip()}' is not a rational number: "
                f"'{value}'")
    return Specialization(cy, values)


def emit(text: str, out: Optional[str] = None) -> None:
    """Print ``text`` or write it to ``out``"""
    if out:
        with open(out, "w") as handle:
            handle.write(text.rstrip("\n") + "\n")
        log.info("Wrote %s", out)
    else:
        click.echo(text.rstrip("\n"))
