"""
Multivariate Laurent polynomials with exact rational coefficients

A Laurent polynomial is stored as ``t^shift * p`` where ``p`` is an
element of the sparse ring ``QQ[x_1, ..., x_n]`` of sympy, ``x_i``
standing for the square root of the ``i``-th torus variable, and
``shift`` is the componentwise smallest doubled exponent. Ring
arithmetic and exact division run in sympy.
"""

import logging
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import (Dict, Iterator, List, Mapping, Optional, Tuple, Union)

from sympy.polys.domains import QQ
from sympy.polys.monomials import monomial_min
from sympy.polys.rings import PolyElement, PolyRing, ring

from boxcount.algebra import lattice
from boxcount.algebra.lattice import (Exponent, Number, Substitution,
                                      Variables, normalize)
from boxcount.exceptions import ArityError, NonInvertibleError

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


@lru_cache(maxsize=None)
def half_ring(names: Variables) -> PolyRing:
    """Polynomial ring over QQ in the square roots of ``names``"""
    return ring(tuple(names), QQ)[0]


def to_domain(value: Number):
    """Exact number as an element of sympy's QQ"""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_domain(value) -> Number:
    """Element of sympy's QQ as int or Fraction"""
    return normalize(Fraction(int(QQ.numer(value)), int(QQ.denom(value))))


def _offset(exp: Exponent, base: Exponent) -> Exponent:
    return tuple(e - b for e, b in zip(exp, base))


class LaurentPolynomial(object):
    """Finite sum of monomials on the doubled exponent lattice

    Instances are immutable. The sympy part never has a common monomial
    factor, so equality is equality of shift and polynomial.

    Args:
      names: The torus variables of the ring
      terms: Mapping from doubled exponent vectors to coefficients
    """
    __slots__ = ("names", "_shift", "_poly", "_terms", "_hash")

    def __init__(self, names: Variables,
                 terms: Optional[Mapping[Exponent, Number]] = None) -> None:
        self.names = tuple(names)
        clean: Dict[Exponent, Number] = {}
        width = len(self.names)
        for exp, coeff in (terms or {}).items():
            if not coeff:
                continue
            if len(exp) != width:
                raise ArityError(f"Exponent {exp} does not match {self.names}")
            clean[tuple(exp)] = coeff
        shift = monomial_min(*clean) if clean else \
            lattice.zero_exponent(self.names)
        self._shift = tuple(shift)
        self._poly = half_ring(self.names).from_dict(
            {_offset(exp, shift): to_domain(c) for exp, c in clean.items()})
        self._terms: Optional[Dict[Exponent, Number]] = None
        self._hash = None

    @classmethod
    def _raw(cls, names: Variables,
             terms: Mapping[Exponent, Number]) -> "LaurentPolynomial":
        return cls(names, terms)

    @classmethod
    def from_poly(cls, names: Variables, shift: Exponent,
                  poly: PolyElement) -> "LaurentPolynomial":
        """Wrap ``t^shift * poly`` for ``poly`` in :func:`half_ring`"""
        obj = cls.__new__(cls)
        obj.names = tuple(names)
        if poly:
            low = monomial_min(*poly.keys())
            if any(low):
                poly = poly.ring.from_dict(
                    {_offset(monom, low): c for monom, c in poly.items()})
                shift = lattice.add(shift, low)
        else:
            shift = lattice.zero_exponent(obj.names)
        obj._shift = tuple(shift)
        obj._poly = poly
        obj._terms = None
        obj._hash = None
        return obj

    def __reduce__(self):
        return (self.__class__, (self.names, self._term_map()))

    @classmethod
    def zero(cls, names: Variables) -> "LaurentPolynomial":
        return cls(names)

    @classmethod
    def constant(cls, names: Variables, value: Number) -> "LaurentPolynomial":
        return cls(names, {lattice.zero_exponent(names): value})

    @classmethod
    def one(cls, names: Variables) -> "LaurentPolynomial":
        return cls.constant(names, 1)

    @classmethod
    def monomial(cls, names: Variables, exp: Exponent,
                 coeff: Number = 1) -> "LaurentPolynomial":
        """Single term ``coeff * t^exp`` (``exp`` doubled)"""
        return cls(names, {tuple(exp): coeff})

    @classmethod
    def variable(cls, names: Variables, name: str,
                 power: Number = 1) -> "LaurentPolynomial":
        """The monomial ``name^power``"""
        return cls.monomial(names, lattice.exponent(names, {name: power}))

    def _term_map(self) -> Dict[Exponent, Number]:
        if self._terms is None:
            self._terms = {lattice.add(self._shift, monom): from_domain(c)
                           for monom, c in self._poly.items()}
        return self._terms

    @property
    def shift_part(self) -> Exponent:
        """Smallest doubled exponent in every variable"""
        return self._shift

    @property
    def poly(self) -> PolyElement:
        """The sympy polynomial left after removing ``t^shift_part``"""
        return self._poly

    @property
    def terms(self) -> Dict[Exponent, Number]:
        return dict(self._term_map())

    def items(self) -> List[Tuple[Exponent, Number]]:
        """Terms in canonical graded-lexicographic order"""
        return sorted(self._term_map().items(),
                      key=lambda item: lattice.graded_key(item[0]))

    def __iter__(self) -> Iterator[Tuple[Exponent, Number]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._poly)

    def __bool__(self) -> bool:
        return len(self._poly) > 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.constant(self.names, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if not self and not other:
            return True
        return (self.names == other.names and self._shift == other._shift
                and self._poly == other._poly)

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant:
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((self.names,
                                   frozenset(self._term_map().items())))
        return self._hash

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.names!r}, '{self}')"

    def __str__(self) -> str:
        return self.to_text()

    def _check(self, other: "LaurentPolynomial") -> None:
        if self.names != other.names:
            raise ArityError(
                f"Variables {self.names} and {other.names} do not match")

    def _coerce(self, other) -> Optional["LaurentPolynomial"]:
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.constant(self.names, other)
        return None

    def _lifted(self, shift: Exponent) -> PolyElement:
        """Our polynomial part relative to a smaller shift"""
        delta = _offset(self._shift, shift)
        if not any(delta):
            return self._poly
        return self._poly * self._poly.ring.from_dict({delta: QQ.one})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        shift = monomial_min(self._shift, other._shift)
        return self.from_poly(self.names, shift,
                              self._lifted(shift) + other._lifted(shift))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return self.from_poly(self.names, self._shift, -self._poly)

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
            return self.from_poly(self.names, self._shift,
                                  self._poly.mul_ground(to_domain(other)))
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check(other)
        return self.from_poly(self.names, lattice.add(self._shift, other._shift),
                              self._poly * other._poly)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, LaurentPolynomial):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, power: int) -> "LaurentPolynomial":
        if power < 0:
            return self.inverse() ** -power
        return self.from_poly(self.names, lattice.scale(self._shift, power),
                              self._poly ** power)

    @property
    def is_monomial(self) -> bool:
        return len(self._poly) == 1

    @property
    def is_constant(self) -> bool:
        return not self or (self.is_monomial and lattice.is_zero(self._shift))

    def constant_value(self) -> Optional[Number]:
        """The coefficient if this is a constant, else None"""
        if not self:
            return 0
        if self.is_constant:
            return next(iter(self._term_map().values()))
        return None

    def constant_term(self) -> Number:
        return self._term_map().get(lattice.zero_exponent(self.names), 0)

    def coefficient(self, exp: Exponent) -> Number:
        return self._term_map().get(tuple(exp), 0)

    def leading(self) -> Tuple[Exponent, Number]:
        """The single term of a monomial"""
        if not self.is_monomial:
            raise NonInvertibleError(f"'{self}' is not a monomial")
        return next(iter(self._term_map().items()))

    def inverse(self) -> "LaurentPolynomial":
        """Inverse of a monomial"""
        exp, coeff = self.leading()
        return self.monomial(self.names, lattice.negate(exp),
                             1 / Fraction(coeff))

    def bar(self) -> "LaurentPolynomial":
        """Duality: invert every monomial"""
        return self._raw(self.names, {lattice.negate(exp): c
                                      for exp, c in self._term_map().items()})

    def adams(self, k: int) -> "LaurentPolynomial":
        """Adams operation: raise every monomial to the ``k``-th power"""
        return self._raw(self.names, {lattice.scale(exp, k): c
                                      for exp, c in self._term_map().items()})

    def shift(self, exp: Exponent) -> "LaurentPolynomial":
        """Multiply by the monomial ``t^exp``"""
        if not self:
            return self
        return self.from_poly(self.names, lattice.add(self._shift, exp),
                              self._poly)

    def rank(self) -> Number:
        """Sum of coefficients (value at t = 1)"""
        return normalize(sum(self._term_map().values(), 0))

    def extend(self, names: Variables) -> "LaurentPolynomial":
        """Embed into a ring whose variables contain ours"""
        names = tuple(names)
        missing = set(self.names) - set(names)
        if missing:
            raise ArityError(f"Cannot embed {self.names} into {names}")
        index = [names.index(name) for name in self.names]
        result = {}
        for exp, coeff in self._term_map().items():
            new = [0] * len(names)
            for pos, entry in zip(index, exp):
                new[pos] = entry
            result[tuple(new)] = coeff
        return self._raw(names, result)

    def substitute(self, subst: Substitution) -> "LaurentPolynomial":
        """Apply a (partially numeric) substitution"""
        if subst.source != self.names:
            raise ArityError(
                f"Substitution for {subst.source} applied to {self.names}")
        result: Dict[Exponent, Number] = defaultdict(int)
        for exp, coeff in self._term_map().items():
            image, factor = subst.apply(exp)
            result[image] += coeff * factor
        return self._raw(subst.target, result)

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        """Value at a rational point (all variables must be given)"""
        subst = Substitution(self.names, (), numbers=values)
        return Fraction(self.substitute(subst).constant_term())

    def compose(self, images: Mapping[str, "LaurentPolynomial"],
                target: Variables) -> "LaurentPolynomial":
        """Substitute polynomials for variables

        Variables missing from ``images`` must exist in ``target``.
        Negative powers are only allowed for monomial images.
        """
        target = tuple(target)
        gens = []
        for name in self.names:
            if name in images:
                gens.append(images[name])
            else:
                gens.append(self.variable(target, name))
        result = self.zero(target)
        for exp, coeff in self._term_map().items():
            term = self.constant(target, coeff)
            for gen, doubled in zip(gens, exp):
                if doubled % 2:
                    if not gen.is_monomial:
                        raise ArityError(
                            "Half-integer power of a non-monomial")
                    gexp, gcoeff = gen.leading()
                    if gcoeff != 1:
                        raise ArityError("Half-integer power of a scalar")
                    if any(e * doubled % 2 for e in gexp):
                        raise ArityError("Image leaves the half-integer lattice")
                    term = term.shift(
                        tuple(e * doubled // 2 for e in gexp))
                    continue
                term = term * gen ** (doubled // 2)
            result = result + term
        return result

    def divide_exact(self, m: Exponent) -> Optional["LaurentPolynomial"]:
        """Divide by the binomial ``1 - t^m``

        With ``m = up - down`` split into its positive and negative
        parts, ``1 - t^m = t^-down (t^down - t^up)``, and the division
        is a single-divisor sympy division with zero remainder.

        Returns:
          the quotient, or None if ``1 - t^m`` does not divide us
        """
        if lattice.is_zero(m):
            raise ArityError("Cannot divide by 1 - 1")
        if not self:
            return self
        up = tuple(max(e, 0) for e in m)
        down = tuple(max(-e, 0) for e in m)
        divisor = self._poly.ring.from_dict({down: QQ.one, up: -QQ.one})
        quotient, remainder = self._poly.div(divisor)
        if remainder:
            return None
        return self.from_poly(self.names, lattice.add(self._shift, down),
                              quotient)

    def to_text(self) -> str:
        """Canonical rendering, graded-lexicographic term order"""
        if not self:
            return "0"
        out = []
        for exp, coeff in self.items():
            mono = lattice.format_monomial(self.names, exp)
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            out.append((sign, body))
        first_sign, first_body = out[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> List[Dict[str, Union[List[int], str]]]:
        """Terms as ``{"exp": [...], "num": "..."}`` with doubled exponents"""
        return [{"exp": list(exp), "num": str(coeff)}
                for exp, coeff in self.items()]


def binomial(names: Variables, m: Exponent) -> LaurentPolynomial:
    """The binomial ``1 - t^m``"""
    return LaurentPolynomial(names, {lattice.zero_exponent(names): 1,
                                     tuple(m): -1})


def binomial_product(names: Variables,
                     factors: List[Exponent]) -> LaurentPolynomial:
    """Expanded product of binomials ``prod(1 - t^m)``"""
    result = LaurentPolynomial.one(names)
    for m in factors:
        result = result * binomial(names, m)
    return result
