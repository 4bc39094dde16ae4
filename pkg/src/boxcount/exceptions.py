"""Exceptions raised by boxcount"""

import textwrap
from typing import Any, Mapping, Optional

from click import ClickException, echo


class BoxcountException(Exception):
    """Base class of all boxcount Exceptions"""


class AlgebraError(BoxcountException):
    """Misuse of the exact arithmetic kernel"""


class ArityError(AlgebraError):
    """Operands live in rings with different variables"""


class NonInvertibleError(AlgebraError):
    """Attempt to invert an element that has no inverse in its ring"""


class TruncationError(AlgebraError):
    """Series operation would need coefficients beyond the known order"""


class SubstitutionError(AlgebraError):
    """Substitution leaves the ring of the target"""


class BoxcountNoStackException(BoxcountException, ClickException):
    """Exception that does not lead to stack trace on CLI

    Inheriting from ClickException makes ``click`` print only the
    ``self.msg`` value of the exception, rather than allowing Python
    to print a full stack trace, and makes the process exit with
    ``exit_code``.

    Subclasses carry the exit code of the command line contract. An
    optional ``witness`` mapping describes the input that triggered
    the error and is printed below the message.
    """
    exit_code = 2

    def __init__(self, msg: str,
                 witness: Optional[Mapping[str, Any]] = None) -> None:
        self.witness = dict(witness or {})
        super().__init__(textwrap.dedent(msg).strip())

    def show(self, file=None) -> None:
        echo(f"Error: {self.format_message()}", err=True)
        for key, value in self.witness.items():
            echo(f"  {key}: {value}", err=True)


class BoxcountUsageError(BoxcountNoStackException):
    """Invalid command line usage or input"""
    exit_code = 2


class BoxcountParseError(BoxcountUsageError):
    """Malformed partition, leg or specialization notation"""


class BoxcountGeometryError(BoxcountUsageError):
    """Geometry description violates the schema or is inconsistent"""


class InsufficientOrderError(BoxcountUsageError):
    """Not enough series coefficients for the requested fit"""


class BoxcountConfigError(BoxcountUsageError):
    """Indicates an error in the boxcount.yml config files

    Args:
      obj: Subtree of config causing error
      msg: The message to display
      key: Key indicating part of ``obj`` causing error
      exc: Upstream exception causing error
    """
    def __init__(self, obj: object, msg: str, key: Optional[object] = None,
                 exc: Optional[Exception] = None) -> None:
        self.obj = obj
        self.key = key
        self.exc = exc
        super().__init__(msg)


class BoxcountDegeneracyError(BoxcountNoStackException):
    """Mathematical degeneracy at a fixed point"""
    exit_code = 3


class AhatPoleError(BoxcountDegeneracyError):
    """The trivial weight appears with negative multiplicity under â"""


class WeightCollisionError(BoxcountDegeneracyError):
    """A denominator weight became trivial at a fixed point"""


class DegenerateTorusError(BoxcountDegeneracyError):
    """A tangent weight is annihilated by the chosen torus"""


class DenominatorVanishesError(BoxcountDegeneracyError):
    """A numeric substitution zeroes a denominator factor"""


class BoxcountConsistencyError(BoxcountNoStackException):
    """Internal convention failure

    Never caused by valid input; indicates a bug in the conventions
    used to assemble characters.
    """
    exit_code = 4


class NotPolynomialError(BoxcountConsistencyError):
    """A character expected to be a Laurent polynomial is not"""


class UnstableTruncationError(BoxcountConsistencyError):
    """A truncation-based computation did not stabilize"""
