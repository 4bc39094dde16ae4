"""
Products of linear forms for cohomological weights

The cohomological limit replaces a torus weight ``t^a`` by the linear
form ``<a, s>``. Fixed point contributions are then ratios of products
of linear forms, stored here with the denominator as a multiset of
primitive forms.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from sympy import igcd, ilcm

from boxcount.algebra import lattice
from boxcount.algebra.lattice import COHOMOLOGY, Exponent, Number, Variables
from boxcount.algebra.polynomial import LaurentPolynomial
from boxcount.exceptions import ArityError, DegenerateTorusError

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

#: Integer coefficient vector of a linear form
Form = Tuple[int, ...]


def primitive(form: Sequence[Number]) -> Tuple[Fraction, Form]:
    """Split a rational form into ``scalar * primitive``

    The primitive part has coprime integer entries and a positive
    first nonzero entry.

    Raises:
      DegenerateTorusError: for the zero form
    """
    form = [Fraction(x) for x in form]
    if not any(form):
        raise DegenerateTorusError("Linear form vanishes")
    denom = ilcm(1, *(x.denominator for x in form))
    ints = [int(x * denom) for x in form]
    divisor = igcd(0, *(x for x in ints if x))
    lead = next(x for x in ints if x)
    if lead < 0:
        divisor = -divisor
    return Fraction(divisor, denom), tuple(x // divisor for x in ints)


def form_polynomial(names: Variables,
                    form: Sequence[Number]) -> LaurentPolynomial:
    """The linear polynomial ``sum(f_i s_i)``"""
    result = LaurentPolynomial.zero(names)
    for index, coeff in enumerate(form):
        if coeff:
            exp = [0] * len(names)
            exp[index] = 2
            result = result + LaurentPolynomial.monomial(names, tuple(exp),
                                                         coeff)
    return result


def form_product(names: Variables, forms: Iterable[Form]) -> LaurentPolynomial:
    result = LaurentPolynomial.one(names)
    for form in forms:
        result = result * form_polynomial(names, form)
    return result


class LinearFraction(object):
    """Polynomial in ``s`` over a product of primitive linear forms

    Args:
      numerator:   Polynomial in the ``s`` variables
      denominator: Primitive integer forms, with multiplicity
    """
    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPolynomial,
                 denominator: Iterable[Form] = ()) -> None:
        self.numerator = numerator
        factors = []
        scalar = Fraction(1)
        for form in denominator:
            if len(form) != len(numerator.names):
                raise ArityError(
                    f"Form {form} does not match {numerator.names}")
            factor, prim = primitive(form)
            scalar *= factor
            factors.append(prim)
        if scalar != 1:
            self.numerator = numerator * (1 / scalar)
        self.denominator: Tuple[Form, ...] = (
            tuple(sorted(factors)) if self.numerator else ())

    @classmethod
    def constant(cls, value: Number,
                 names: Variables = COHOMOLOGY) -> "LinearFraction":
        return cls(LaurentPolynomial.constant(names, value))

    @classmethod
    def from_weights(cls, weights: Mapping[Exponent, int],
                     names: Variables = COHOMOLOGY) -> "LinearFraction":
        """Product of ``<a, s>^-m`` over weights ``t^a`` of multiplicity m

        Exponents are doubled, so the form of ``t^a`` is ``a/2``.
        Weights on the same ray cancel up to a scalar.
        """
        scalar = Fraction(1)
        net: Counter = Counter()
        for exp, mult in sorted(weights.items()):
            if not mult:
                continue
            if len(exp) != len(names):
                raise ArityError(f"Weight {exp} does not match {names}")
            if lattice.is_zero(exp):
                raise DegenerateTorusError(
                    "Trivial weight has no cohomological Euler class",
                    witness={"multiplicity": mult})
            factor, prim = primitive([Fraction(x, 2) for x in exp])
            scalar *= factor ** -mult
            net[prim] += mult
        numerator = LaurentPolynomial.constant(names, scalar)
        forms = []
        for prim, mult in sorted(net.items()):
            if mult > 0:
                forms.extend([prim] * mult)
            elif mult < 0:
                numerator = numerator * form_polynomial(names, prim) ** -mult
        return cls(numerator, forms)

    @classmethod
    def from_laurent(cls, poly: LaurentPolynomial) -> "LinearFraction":
        """Laurent polynomial in ``s`` with negative powers moved down"""
        lowest = [0] * len(poly.names)
        for exp, _ in poly.items():
            for index, entry in enumerate(exp):
                lowest[index] = min(lowest[index], entry)
        forms = []
        for index, entry in enumerate(lowest):
            if entry % 2:
                raise ArityError("Half-integer power of a linear form")
            unit = [0] * len(poly.names)
            unit[index] = 1
            forms.extend([tuple(unit)] * (-entry // 2))
        return cls(poly.shift(lattice.negate(tuple(lowest))), forms)

    @property
    def names(self) -> Variables:
        return self.numerator.names

    def __bool__(self) -> bool:
        return bool(self.numerator)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}('{self}')"

    def __str__(self) -> str:
        return self.to_text()

    def _make(self, numerator: LaurentPolynomial,
              denominator: Iterable[Form]) -> "LinearFraction":
        obj = LinearFraction.__new__(LinearFraction)
        obj.numerator = numerator
        obj.denominator = tuple(sorted(denominator)) if numerator else ()
        return obj

    def _coerce(self, other) -> Optional["LinearFraction"]:
        if isinstance(other, LinearFraction):
            if other.names != self.names:
                raise ArityError(
                    f"Variables {self.names} and {other.names} do not match")
            return other
        if isinstance(other, (int, Fraction)):
            return self.constant(other, self.names)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.numerator:
            return self
        if not self.numerator:
            return other
        mine, theirs = Counter(self.denominator), Counter(other.denominator)
        common = mine | theirs
        num = (self.numerator * form_product(
                   self.names, (common - mine).elements())
               + other.numerator * form_product(
                   self.names, (common - theirs).elements()))
        return self._make(num, common.elements())

    __radd__ = __add__

    def __neg__(self) -> "LinearFraction":
        return self._make(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._make(self.numerator * other, self.denominator)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._make(self.numerator * other.numerator,
                          self.denominator + other.denominator)

    __rmul__ = __mul__

    def equals(self, other) -> bool:
        other = self._coerce(other)
        mine, theirs = Counter(self.denominator), Counter(other.denominator)
        common = mine & theirs
        left = self.numerator * form_product(
            self.names, (theirs - common).elements())
        right = other.numerator * form_product(
            self.names, (mine - common).elements())
        return left == right

    def __eq__(self, other) -> bool:
        if not isinstance(other, (LinearFraction, int, Fraction)):
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # type: ignore

    def specialize(self, images: Mapping[str, Sequence[Number]]) \
            -> "LinearFraction":
        """Substitute linear forms for some of the ``s`` variables

        Args:
          images: maps a variable to the coefficient vector of its image
                  over the same variables

        Raises:
          DegenerateTorusError: if a denominator form vanishes
        """
        names = self.names
        vectors = []
        for index, name in enumerate(names):
            if name in images:
                vector = tuple(Fraction(x) for x in images[name])
                if len(vector) != len(names):
                    raise ArityError(f"Image of {name} has wrong arity")
            else:
                vector = tuple(Fraction(int(i == index))
                               for i in range(len(names)))
            vectors.append(vector)
        polys = {name: form_polynomial(names, vector)
                 for name, vector in zip(names, vectors)}
        numerator = self.numerator.compose(polys, names)
        forms = []
        for form in self.denominator:
            image = [sum(f * vector[pos] for f, vector in zip(form, vectors))
                     for pos in range(len(names))]
            if not any(image):
                raise DegenerateTorusError(
                    "Specialization annihilates a tangent weight",
                    witness={"form": form})
            forms.append(image)
        return LinearFraction(numerator, forms)

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        num = self.numerator.evaluate(values)
        den = Fraction(1)
        for form in self.denominator:
            den *= sum(Fraction(f) * Fraction(values[name])
                       for f, name in zip(form, self.names))
        if den == 0:
            raise DegenerateTorusError("Evaluation point annihilates a form")
        return num / den

    def to_text(self) -> str:
        num = self.numerator.to_text()
        if not self.denominator:
            return num
        return f"({num})/({self.denominator_text()})"

    def denominator_text(self) -> str:
        if not self.denominator:
            return "1"
        counts = Counter(self.denominator)
        parts = []
        for form in sorted(counts):
            text = form_polynomial(self.names, form).to_text()
            part = f"({text})"
            if counts[form] > 1:
                part += f"^{counts[form]}"
            parts.append(part)
        return "*".join(parts)

