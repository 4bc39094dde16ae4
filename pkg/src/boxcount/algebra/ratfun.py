"""
Rational functions with binomial denominators

Every denominator arising in localization is a product of geometric
series ``1/(1 - m)`` over cylinders. The denominator is kept as a
multiset of binomial factors. Cancellation is trial division of the
sympy numerator by each factor (:meth:`LaurentPolynomial.divide_exact`)
and equality is decided by cross-multiplying in the sympy ring.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from boxcount.algebra import lattice
from boxcount.algebra.lattice import Exponent, Number, Substitution, Variables
from boxcount.algebra.polynomial import LaurentPolynomial, binomial_product
from boxcount.exceptions import (ArityError, DenominatorVanishesError,
                                 NonInvertibleError, SubstitutionError)

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


def canonical_factor(m: Exponent) -> Tuple[bool, Exponent]:
    """Bring ``1 - t^m`` into canonical form

    Uses ``1 - m = -m (1 - m^-1)`` so that the first nonzero exponent of
    the stored factor is positive.

    Returns:
      Whether the factor was flipped, and the canonical exponent
    """
    if lattice.is_positive(m):
        return False, tuple(m)
    return True, lattice.negate(m)


class RationalFunction(object):
    """Quotient of a Laurent polynomial by a product of binomials

    Args:
      numerator:   The numerator polynomial
      denominator: Exponents ``m`` of the binomial factors ``1 - t^m``
    """
    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: LaurentPolynomial,
                 denominator: Iterable[Exponent] = ()) -> None:
        names = numerator.names
        factors = []
        unit_sign, unit_exp = 1, lattice.zero_exponent(names)
        for m in denominator:
            m = tuple(m)
            if len(m) != len(names):
                raise ArityError(f"Factor {m} does not match {names}")
            if lattice.is_zero(m):
                raise DenominatorVanishesError(
                    "Denominator factor 1 - 1 is zero")
            flipped, canon = canonical_factor(m)
            if flipped:
                # 1/(1-m) = -m^-1 / (1-m^-1)
                unit_sign = -unit_sign
                unit_exp = lattice.add(unit_exp, canon)
            factors.append(canon)
        if unit_sign != 1 or not lattice.is_zero(unit_exp):
            numerator = numerator.shift(unit_exp) * unit_sign
        if not numerator:
            factors = []
        self.numerator = numerator
        self.denominator: Tuple[Exponent, ...] = tuple(sorted(factors))

    @classmethod
    def from_polynomial(cls, poly: LaurentPolynomial) -> "RationalFunction":
        return cls(poly)

    @classmethod
    def zero(cls, names: Variables) -> "RationalFunction":
        return cls(LaurentPolynomial.zero(names))

    @classmethod
    def one(cls, names: Variables) -> "RationalFunction":
        return cls(LaurentPolynomial.one(names))

    @classmethod
    def constant(cls, names: Variables, value: Number) -> "RationalFunction":
        return cls(LaurentPolynomial.constant(names, value))

    @classmethod
    def geometric(cls, names: Variables, m: Exponent) -> "RationalFunction":
        """The geometric series ``1/(1 - t^m)``"""
        return cls(LaurentPolynomial.one(names), [m])

    @property
    def names(self) -> Variables:
        return self.numerator.names

    @property
    def is_polynomial(self) -> bool:
        """True if the denominator is empty"""
        return not self.denominator

    def __bool__(self) -> bool:
        return bool(self.numerator)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}('{self}')"

    def __str__(self) -> str:
        return self.to_text()

    def _coerce(self, other) -> Optional["RationalFunction"]:
        if isinstance(other, RationalFunction):
            if other.names != self.names:
                raise ArityError(
                    f"Variables {self.names} and {other.names} do not match")
            return other
        if isinstance(other, LaurentPolynomial):
            if other.names != self.names:
                raise ArityError(
                    f"Variables {self.names} and {other.names} do not match")
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return self.constant(self.names, other)
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
        num = (self.numerator * binomial_product(
                   self.names, list((common - mine).elements()))
               + other.numerator * binomial_product(
                   self.names, list((common - theirs).elements())))
        return self._make(num, common.elements())

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return self._make(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._make(self.numerator * other, self.denominator)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._make(self.numerator * other.numerator,
                          self.denominator + other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, power: int) -> "RationalFunction":
        if power < 0:
            return self.inverse() ** -power
        result = self.one(self.names)
        for _ in range(power):
            result = result * self
        return result

    @classmethod
    def _make(cls, numerator: LaurentPolynomial,
              denominator: Iterable[Exponent]) -> "RationalFunction":
        """Construct from already canonical factors"""
        obj = cls.__new__(cls)
        obj.numerator = numerator
        obj.denominator = tuple(sorted(denominator)) if numerator else ()
        return obj

    def inverse(self) -> "RationalFunction":
        """Inverse; only defined for monomial numerators"""
        if not self.numerator.is_monomial:
            raise NonInvertibleError(
                f"Cannot invert '{self}': numerator is not a monomial")
        return RationalFunction(
            self.numerator.inverse()
            * binomial_product(self.names, list(self.denominator)))

    def bar(self) -> "RationalFunction":
        """Duality: invert every monomial"""
        return RationalFunction(self.numerator.bar(),
                                [lattice.negate(m) for m in self.denominator])

    def adams(self, k: int) -> "RationalFunction":
        """Adams operation ``t -> t^k`` on numerator and denominator"""
        return RationalFunction(self.numerator.adams(k),
                                [lattice.scale(m, k) for m in self.denominator])

    def extend(self, names: Variables) -> "RationalFunction":
        num = self.numerator.extend(names)
        index = [tuple(names).index(name) for name in self.names]
        factors = []
        for m in self.denominator:
            new = [0] * len(names)
            for pos, entry in zip(index, m):
                new[pos] = entry
            factors.append(tuple(new))
        return RationalFunction(num, factors)

    def reduce(self) -> "RationalFunction":
        """Cancel denominator factors that divide the numerator exactly"""
        numerator = self.numerator
        remaining: List[Exponent] = []
        for m in self.denominator:
            quotient = numerator.divide_exact(m)
            if quotient is None:
                remaining.append(m)
            else:
                numerator = quotient
        return self._make(numerator, remaining)

    def as_polynomial(self) -> Optional[LaurentPolynomial]:
        """The reduced numerator if the denominator cancels, else None"""
        reduced = self.reduce()
        if reduced.is_polynomial:
            return reduced.numerator
        return None

    def constant_value(self) -> Optional[Number]:
        poly = self.as_polynomial()
        if poly is None:
            return None
        return poly.constant_value()

    def equals(self, other: "RationalFunction") -> bool:
        """Exact equality by cross-multiplication"""
        other = self._coerce(other)
        mine, theirs = Counter(self.denominator), Counter(other.denominator)
        common = mine & theirs
        left = self.numerator * binomial_product(
            self.names, list((theirs - common).elements()))
        right = other.numerator * binomial_product(
            self.names, list((mine - common).elements()))
        return left == right

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RationalFunction, LaurentPolynomial,
                                  int, Fraction)):
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # type: ignore

    def substitute(self, subst: Substitution) -> "RationalFunction":
        """Apply a monomial or partially numeric substitution

        Raises:
          DenominatorVanishesError: if a factor becomes zero
          SubstitutionError: if a factor stays symbolic but acquires a
            coefficient other than one
        """
        numerator = self.numerator.substitute(subst)
        scalar = Fraction(1)
        factors = []
        for m in self.denominator:
            image, factor = subst.apply(m)
            if lattice.is_zero(image):
                value = 1 - factor
                if value == 0:
                    raise DenominatorVanishesError(
                        f"Factor (1 - {lattice.format_monomial(self.names, m)})"
                        " vanishes under substitution",
                        witness={"substitution": subst})
                scalar *= value
            elif factor != 1:
                raise SubstitutionError(
                    "Partially numeric substitution turns a binomial "
                    "denominator into a general polynomial")
            else:
                factors.append(image)
        return RationalFunction(numerator * (1 / scalar), factors)

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        """Value at a rational point (all variables must be given)"""
        result = self.substitute(Substitution(self.names, (), numbers=values))
        return Fraction(result.numerator.constant_term())

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
        for m in sorted(counts, key=lattice.graded_key):
            part = f"(1 - {lattice.format_monomial(self.names, m)})"
            if counts[m] > 1:
                part += f"^{counts[m]}"
            parts.append(part)
        return "*".join(parts)

    def to_json(self) -> Dict[str, Union[str, List]]:
        return {
            "num": self.numerator.to_text(),
            "den": self.denominator_text(),
        }


Coefficient = Union[int, Fraction, LaurentPolynomial, RationalFunction]
