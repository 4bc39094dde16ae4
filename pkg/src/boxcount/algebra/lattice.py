"""
Exponent lattice and variable substitutions

Monomials live on a half-integer lattice. Every exponent vector is
stored doubled, so that ``t1^(1/2)`` is the integer vector ``(1, 0, 0)``
and ``t1`` is ``(2, 0, 0)``. A monomial is integral iff all of its
doubled entries are even.
"""

import logging
from fractions import Fraction
from math import isqrt
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from boxcount.exceptions import ArityError, SubstitutionError

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

#: Doubled exponent vector
Exponent = Tuple[int, ...]

#: Ordered names of the torus variables of a ring
Variables = Tuple[str, ...]

Number = Union[int, Fraction]

#: The torus of the DT vertex
DT_TORUS: Variables = ("t1", "t2", "t3")

#: The torus of instanton counting on C^2 (framings and masses extend it)
NEKRASOV_TORUS: Variables = ("t1", "t2")

#: Linear forms of the cohomological limit
COHOMOLOGY: Variables = ("s1", "s2", "s3")


def normalize(value: Number) -> Number:
    """Turn integral fractions into plain ints"""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def exponent(names: Variables, powers: Optional[Mapping[str, Number]] = None,
             **kwargs: Number) -> Exponent:
    """Doubled exponent vector for the monomial ``prod(name^power)``

    >>> exponent(DT_TORUS, t1=1, t3=Fraction(1, 2))
    (2, 0, 1)
    """
    powers = dict(powers or {}, **kwargs)
    unknown = set(powers) - set(names)
    if unknown:
        raise ArityError(f"Variables {sorted(unknown)} not in {names}")
    result = []
    for name in names:
        doubled = Fraction(powers.get(name, 0)) * 2
        if doubled.denominator != 1:
            raise ArityError(
                f"Exponent {powers[name]} of {name} is not a half-integer")
        result.append(int(doubled))
    return tuple(result)


def zero_exponent(names: Variables) -> Exponent:
    return (0,) * len(names)


def add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def negate(a: Exponent) -> Exponent:
    return tuple(-x for x in a)


def scale(a: Exponent, k: int) -> Exponent:
    return tuple(x * k for x in a)


def is_zero(a: Exponent) -> bool:
    return not any(a)


def is_integral(a: Exponent) -> bool:
    return all(x % 2 == 0 for x in a)


def is_positive(a: Exponent) -> bool:
    """True if the first nonzero entry is positive"""
    for x in a:
        if x:
            return x > 0
    return False


def graded_key(a: Exponent) -> Tuple[int, Exponent]:
    """Sort key for the canonical graded-lexicographic order"""
    return (sum(a), a)


def format_power(doubled: int) -> str:
    if doubled % 2 == 0:
        return str(doubled // 2)
    return f"({doubled}/2)"


def format_monomial(names: Variables, a: Exponent) -> str:
    """Render a monomial like ``t1^-1*t2^(1/2)``; the identity renders empty"""
    parts = []
    for name, doubled in zip(names, a):
        if doubled == 0:
            continue
        if doubled == 2:
            parts.append(name)
        else:
            parts.append(f"{name}^{format_power(doubled)}")
    return "*".join(parts)


def rational_power(value: Number, doubled: int) -> Fraction:
    """``value ** (doubled / 2)`` for rational ``value``

    Raises:
      SubstitutionError: if a square root is needed and ``value`` is not
        the square of a rational number.
    """
    value = Fraction(value)
    if doubled % 2 == 0:
        if value == 0 and doubled < 0:
            raise SubstitutionError("Negative power of zero")
        return value ** (doubled // 2)
    root = rational_sqrt(value)
    if root is None:
        raise SubstitutionError(
            f"Half-integer power of {value}, which is not a rational square")
    if root == 0 and doubled < 0:
        raise SubstitutionError("Negative power of zero")
    return root ** doubled


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


class Substitution(object):
    """Substitution of torus variables by monomials or rational numbers

    Variables of ``source`` that are neither in ``monomials`` nor in
    ``numbers`` map to the variable of the same name in ``target``.

    Args:
      source:    variables of the ring we substitute into
      target:    variables of the resulting ring
      monomials: maps a source variable to a doubled exponent over
                 ``target``
      numbers:   maps a source variable to a rational value
    """
    def __init__(self, source: Variables, target: Optional[Variables] = None,
                 monomials: Optional[Mapping[str, Exponent]] = None,
                 numbers: Optional[Mapping[str, Number]] = None) -> None:
        self.source = tuple(source)
        self.target = tuple(target) if target is not None else self.source
        self.monomials: Dict[str, Exponent] = dict(monomials or {})
        self.numbers: Dict[str, Fraction] = {
            name: Fraction(value) for name, value in (numbers or {}).items()
        }
        for name in list(self.monomials) + list(self.numbers):
            if name not in self.source:
                raise ArityError(f"Cannot substitute '{name}': not in {source}")
        for name, image in self.monomials.items():
            if len(image) != len(self.target):
                raise ArityError(f"Image of '{name}' has wrong arity")
        self._images = []
        for index, name in enumerate(self.source):
            if name in self.numbers:
                self._images.append(None)
            elif name in self.monomials:
                self._images.append(self.monomials[name])
            elif name in self.target:
                image = [0] * len(self.target)
                image[self.target.index(name)] = 2
                self._images.append(tuple(image))
            else:
                raise ArityError(
                    f"Variable '{name}' has no image in {self.target}")

    def __repr__(self):
        return (f"{self.__class__.__name__}({self.source!r} -> "
                f"{self.target!r}, monomials={self.monomials!r}, "
                f"numbers={self.numbers!r})")

    @property
    def key(self) -> Tuple:
        return (self.source, self.target,
                tuple(sorted(self.monomials.items())),
                tuple(sorted(self.numbers.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Substitution):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def is_monomial(self) -> bool:
        return not self.numbers

    def apply(self, a: Exponent) -> Tuple[Exponent, Fraction]:
        """Image of the monomial with exponent ``a``

        Returns:
          the doubled exponent over ``target`` and a rational factor
        """
        if len(a) != len(self.source):
            raise ArityError(f"Exponent {a} does not match {self.source}")
        result = [0] * len(self.target)
        factor = Fraction(1)
        for index, doubled in enumerate(a):
            if not doubled:
                continue
            image = self._images[index]
            if image is None:
                factor *= rational_power(self.numbers[self.source[index]],
                                         doubled)
                continue
            for pos, entry in enumerate(image):
                value = doubled * entry
                if value % 2:
                    raise SubstitutionError(
                        f"Substitution of {self.source[index]} leaves the "
                        "half-integer lattice")
                result[pos] += value // 2
        return tuple(result), factor

    def then(self, other: "Substitution") -> "Substitution":
        """Compose: first apply ``self``, then ``other``"""
        if tuple(other.source) != self.target:
            raise ArityError("Substitutions do not compose")
        monomials = {}
        numbers = {}
        for index, name in enumerate(self.source):
            image = self._images[index]
            if image is None:
                numbers[name] = self.numbers[name]
                continue
            new_image, factor = other.apply(image)
            if factor == 1:
                monomials[name] = new_image
            elif is_zero(new_image):
                numbers[name] = factor
            else:
                raise SubstitutionError(
                    f"Composite image of '{name}' is a scaled monomial")
        return Substitution(self.source, other.target,
                            monomials=monomials, numbers=numbers)

    @classmethod
    def permutation(cls, names: Variables,
                    perm: Sequence[int]) -> "Substitution":
        """Substitution ``names[i] -> names[perm[i]]``"""
        monomials = {}
        for i, j in enumerate(perm):
            image = [0] * len(names)
            image[j] = 2
            monomials[names[i]] = tuple(image)
        return cls(names, names, monomials=monomials)

    @classmethod
    def calabi_yau(cls, names: Variables = DT_TORUS) -> "Substitution":
        """The CY slice ``t3 -> (t1 t2)^-1``"""
        image = exponent(names, {names[0]: -1, names[1]: -1})
        return cls(names, names, monomials={names[2]: image})
