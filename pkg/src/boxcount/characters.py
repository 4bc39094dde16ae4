"""
Equivariant characters at torus fixed points

Box conventions follow :mod:`boxcount.partitions`: box ``(i, j)`` of a
2d partition carries ``t1^-(j-1) t2^-(i-1)``, and the 3d box
``(x0, x1, x2)`` carries ``t1^-x0 t2^-x1 t3^-x2``.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Union

from boxcount.algebra import lattice
from boxcount.algebra.lattice import (DT_TORUS, NEKRASOV_TORUS, Exponent,
                                      Number, Substitution, Variables)
from boxcount.algebra.linear import LinearFraction
from boxcount.algebra.polynomial import LaurentPolynomial, binomial
from boxcount.algebra.ratfun import RationalFunction
from boxcount.exceptions import (AhatPoleError, ArityError,
                                 DegenerateTorusError,
                                 DenominatorVanishesError, NotPolynomialError,
                                 UnstableTruncationError,
                                 WeightCollisionError)
from boxcount.partitions import (LeggedPartition3D, Partition2D, Partition3D,
                                 in_cylinder)

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


class Character(object):
    """Equivariant character, finite or localized

    Args:
      value: A Laurent polynomial (finite) or rational function
    """
    __slots__ = ("value",)

    def __init__(self, value: Union[LaurentPolynomial,
                                    RationalFunction]) -> None:
        if isinstance(value, LaurentPolynomial):
            value = RationalFunction(value)
        self.value: RationalFunction = value

    @property
    def names(self) -> Variables:
        return self.value.names

    @property
    def finite(self) -> bool:
        return self.value.is_polynomial

    @property
    def polynomial(self) -> LaurentPolynomial:
        """The character as a Laurent polynomial

        Raises:
          NotPolynomialError: if the character is localized
        """
        poly = self.value.as_polynomial()
        if poly is None:
            raise NotPolynomialError(
                f"Character '{self.value}' is not a Laurent polynomial")
        return poly

    def reduce(self) -> "Character":
        return Character(self.value.reduce())

    def bar(self) -> "Character":
        return Character(self.value.bar())

    def substitute(self, subst: Substitution) -> "Character":
        return Character(self.value.substitute(subst))

    def __add__(self, other: "Character") -> "Character":
        return Character(self.value + _value(other))

    def __sub__(self, other: "Character") -> "Character":
        return Character(self.value - _value(other))

    def __neg__(self) -> "Character":
        return Character(-self.value)

    def __mul__(self, other) -> "Character":
        return Character(self.value * _value(other))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (Character, LaurentPolynomial, RationalFunction,
                              int, Fraction)):
            return self.value == _value(other)
        return NotImplemented

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}('{self.value}')"

    def __str__(self) -> str:
        return str(self.value)

    @property
    def rank(self) -> int:
        """Sum of multiplicities (value at the identity)"""
        return self.polynomial.rank()

    @property
    def monomial_count(self) -> int:
        return len(self.polynomial)

    @property
    def positive_count(self) -> int:
        return sum(c for _, c in self.polynomial if c > 0)

    @property
    def negative_count(self) -> int:
        return -sum(c for _, c in self.polynomial if c < 0)

    @property
    def constant_term(self):
        return self.polynomial.constant_term()


def _value(other) -> Union[RationalFunction, LaurentPolynomial, int, Fraction]:
    if isinstance(other, Character):
        return other.value
    return other


def _monomial(names: Variables, powers: Dict[int, int]) -> Exponent:
    exp = [0] * len(names)
    for index, power in powers.items():
        exp[index] += 2 * power
    return tuple(exp)


def g2(lam: Partition2D, names: Variables = NEKRASOV_TORUS,
       axes: Sequence[int] = (0, 1)) -> LaurentPolynomial:
    """Generating function of the boxes of ``lam``

    The column index runs along ``names[axes[0]]``, the row index along
    ``names[axes[1]]``.
    """
    col_axis, row_axis = axes
    return LaurentPolynomial(names, {
        _monomial(names, {col_axis: -(j - 1), row_axis: -(i - 1)}): 1
        for i, j in lam.boxes()
    })


def char_2d(lam: Partition2D) -> Character:
    """``G_lambda`` in ``t1, t2``"""
    return Character(g2(lam))


def ext1_char(lam: Partition2D, mu: Partition2D, form: str = "closed",
              transposed: bool = False) -> Character:
    """Character of ``Ext^1(I_lambda, I_mu)`` in ``t1, t2``

    Args:
      form:       ``closed`` for the generating function identity,
                  ``arms_legs`` for the sum over boxes
      transposed: exchange arm and leg lengths in ``arms_legs``
                  (deliberately wrong; used to exercise checkers)
    """
    names = NEKRASOV_TORUS
    if form == "closed":
        t1t2 = LaurentPolynomial.monomial(names, (2, 2))
        g_mu, g_lam_bar = g2(mu), g2(lam).bar()
        factor = (1 - LaurentPolynomial.variable(names, "t1")) * \
            (1 - LaurentPolynomial.variable(names, "t2"))
        return Character(g_mu + t1t2 * g_lam_bar - factor * g_mu * g_lam_bar)
    if form != "arms_legs":
        raise ValueError(f"Unknown form '{form}'")
    arm, leg = (Partition2D.leg, Partition2D.arm) if transposed else \
        (Partition2D.arm, Partition2D.leg)
    terms: Dict[Exponent, int] = {}
    for i, j in mu.boxes():
        exp = _monomial(names, {0: -arm(mu, i, j), 1: leg(lam, i, j) + 1})
        terms[exp] = terms.get(exp, 0) + 1
    for i, j in lam.boxes():
        exp = _monomial(names, {0: arm(lam, i, j) + 1, 1: -leg(mu, i, j)})
        terms[exp] = terms.get(exp, 0) + 1
    return Character(LaurentPolynomial(names, terms))


def g3(part: Union[Partition3D, Sequence], names: Variables = DT_TORUS) \
        -> LaurentPolynomial:
    """Generating function of a finite set of 3d boxes"""
    boxes = part.boxes if isinstance(part, Partition3D) else part
    terms: Dict[Exponent, int] = {}
    for box in boxes:
        exp = tuple(-2 * x for x in box)
        terms[exp] = terms.get(exp, 0) + 1
    return LaurentPolynomial(names, terms)


def _tvir_constants(names: Variables):
    t123 = LaurentPolynomial.monomial(names, (2, 2, 2))
    factor = LaurentPolynomial.one(names)
    for name in names:
        factor = factor * (1 - LaurentPolynomial.variable(names, name))
    return t123, factor


def tvir_functional(gen: Union[LaurentPolynomial, RationalFunction]) \
        -> Union[LaurentPolynomial, RationalFunction]:
    """``G - t1t2t3 Gbar - (1-t1)(1-t2)(1-t3) G Gbar``"""
    t123, factor = _tvir_constants(gen.names)
    bar = gen.bar()
    return gen - bar * t123 - gen * bar * factor


def tvir_3d(part: Partition3D) -> Character:
    """Virtual tangent character at a finite plane partition"""
    return Character(tvir_functional(g3(part)))


def cylinder_char(lam: Partition2D, axis: int,
                  names: Variables = DT_TORUS) -> RationalFunction:
    """Character of the cylinder over ``lam`` along ``axis``"""
    if not lam:
        return RationalFunction.zero(names)
    section = g2(lam, names, ((axis + 1) % 3, (axis + 2) % 3))
    return RationalFunction(section, [_monomial(names, {axis: -1})])


def _cylinder_intersections(part: LeggedPartition3D) \
        -> Dict[str, LaurentPolynomial]:
    """Boxes in two and in three of the leg cylinders"""
    size = part.bound()
    pairs: List[tuple] = []
    triples: List[tuple] = []
    legs = part.legs
    for i in range(size):
        for j in range(size):
            for k in range(size):
                box = (i, j, k)
                inside = sum(1 for axis, lam in enumerate(legs)
                             if lam and in_cylinder(box, axis, lam))
                if inside >= 2:
                    # inclusion-exclusion weight of a box in several cylinders
                    pairs.extend([box] * (inside * (inside - 1) // 2))
                if inside == 3:
                    triples.append(box)
    return {"pairs": g3(pairs), "triples": g3(triples)}


def legged_char(part: LeggedPartition3D) -> Character:
    """Localized character of a legged partition

    Inclusion-exclusion over the leg cylinders plus the deviation.
    """
    names = DT_TORUS
    total = RationalFunction(g3(part.deviation, names))
    for axis, lam in enumerate(part.legs):
        total = total + cylinder_char(lam, axis, names)
    overlaps = _cylinder_intersections(part)
    total = total - overlaps["pairs"] + overlaps["triples"]
    return Character(total)


def vertex_char(part: LeggedPartition3D, check: bool = False) -> Character:
    """Vertex character: leg contributions subtracted from the tangent

    Raises:
      NotPolynomialError: if the reduced result has a denominator
    """
    if part.is_finite:
        result = Character(tvir_functional(g3(part.deviation)))
    else:
        value = tvir_functional(legged_char(part).value)
        for axis, lam in enumerate(part.legs):
            if lam:
                value = value - tvir_functional(cylinder_char(lam, axis))
        reduced = value.reduce()
        if not reduced.is_polynomial:
            raise NotPolynomialError(
                f"Vertex character of {part!r} does not reduce to a "
                "Laurent polynomial",
                witness={"partition": part.dumps(),
                         "remainder": reduced.denominator_text()})
        result = Character(reduced)
    if check:
        oracle = vertex_char_truncated(part)
        if oracle != result.polynomial:
            raise NotPolynomialError(
                f"Vertex character routes disagree for {part!r}",
                witness={"exact": result, "truncated": oracle})
    return result


def _window(poly: LaurentPolynomial, radius: int) -> LaurentPolynomial:
    return LaurentPolynomial(poly.names, {
        exp: c for exp, c in poly.terms.items()
        if all(abs(e) <= 2 * radius for e in exp)
    })


def _truncated(part: LeggedPartition3D, size: int,
               radius: int) -> LaurentPolynomial:
    boxes = part.boxes_in(size)
    value = tvir_functional(g3(boxes))
    for axis, lam in enumerate(part.legs):
        if lam:
            cyl = [b for b in boxes if in_cylinder(b, axis, lam)]
            value = value - tvir_functional(g3(cyl))
    return _window(value, radius)


def vertex_char_truncated(part: LeggedPartition3D,
                          size: Optional[int] = None) -> LaurentPolynomial:
    """Vertex character from legs cut at length ``size``

    Only monomials well inside the truncation are kept; the cut
    contributes exponents of absolute value near ``size`` only. The
    value is computed at ``size`` and ``size + 1`` and must agree.

    Raises:
      UnstableTruncationError: if the windowed value changes
    """
    bound = part.bound()
    radius = 2 * bound + 2
    if size is None:
        size = 4 * bound + 8
    if size <= radius + bound:
        raise UnstableTruncationError(
            f"Truncation {size} too small for window {radius}")
    value = _truncated(part, size, radius)
    check = _truncated(part, size + 1, radius)
    if value != check:
        raise UnstableTruncationError(
            f"Truncated vertex character of {part!r} depends on the cut")
    return value


def _edge_charts(gen: Union[LaurentPolynomial, RationalFunction],
                 m: int, mp: int) -> RationalFunction:
    """``gen`` in chart v plus its image in chart v'"""
    names = DT_TORUS
    transition = Substitution(names, names, monomials={
        "t1": _monomial(names, {0: -1}),
        "t2": _monomial(names, {1: 1, 0: -m}),
        "t3": _monomial(names, {2: 1, 0: -mp}),
    })
    if isinstance(gen, LaurentPolynomial):
        gen = RationalFunction(gen)
    return gen + gen.substitute(transition)


def edge_char(lam: Partition2D, m: int, mp: int) -> Character:
    """Virtual tangent character of a thickened edge curve

    The curve is the ``t1``-axis of chart v with normal degrees
    ``(m, mp)`` in the directions ``t2``, ``t3``.

    Raises:
      NotPolynomialError: if the two-chart sum has a denominator
    """
    if not lam:
        return Character(LaurentPolynomial.zero(DT_TORUS))
    value = _edge_charts(tvir_functional(cylinder_char(lam, 0)), m, mp)
    reduced = value.reduce()
    if not reduced.is_polynomial:
        raise NotPolynomialError(
            f"Edge character of {lam} with degrees ({m},{mp}) does not "
            "reduce to a Laurent polynomial")
    return Character(reduced)


def edge_chi(lam: Partition2D, m: int, mp: int) -> int:
    """Holomorphic Euler characteristic of the thickened edge curve

    ``sum(1 - m*(j-1) - mp*(i-1))`` over the boxes ``(i, j)`` of ``lam``,
    with ``i`` the row and ``j`` the column (both from 1). The column
    offset ``j-1`` is paired with the normal degree ``m`` and the row
    offset ``i-1`` with ``mp``, so ``edge_chi((2,), 1, 0) == 1`` while
    ``edge_chi((1, 1), 1, 0) == 2``.
    """
    return sum(1 - m * (j - 1) - mp * (i - 1) for i, j in lam.boxes())


def edge_chi_character(lam: Partition2D, m: int, mp: int) -> Character:
    """Equivariant Euler characteristic of the structure sheaf

    Two-chart sum of the sections; its rank is :func:`edge_chi`.
    """
    if not lam:
        return Character(LaurentPolynomial.zero(DT_TORUS))
    value = _edge_charts(cylinder_char(lam, 0), m, mp).reduce()
    if not value.is_polynomial:
        raise NotPolynomialError(
            f"Euler characteristic of {lam} with degrees ({m},{mp}) is "
            "not a Laurent polynomial")
    return Character(value)


def ahat(char: Union[Character, LaurentPolynomial],
         witness: Optional[dict] = None) -> RationalFunction:
    """The multiplicative map ``w -> w^(1/2) - w^(-1/2)``

    Uses ``w^(1/2) - w^(-1/2) = -w^(-1/2) (1 - w)``.

    Raises:
      AhatPoleError: if the trivial weight has negative multiplicity
    """
    return binomial_product(char, "ahat", witness)


def ahat_value(char: Union[Character, LaurentPolynomial],
               values: Mapping[str, Number],
               witness: Optional[dict] = None) -> Fraction:
    """Value of :func:`ahat` at a rational point

    The point must make every ``w^(1/2)`` rational.

    Raises:
      AhatPoleError: if the trivial weight has negative multiplicity
      DenominatorVanishesError: if a weight evaluates to 1 with
        negative multiplicity
    """
    poly = char.polynomial if isinstance(char, Character) else char
    result = Fraction(1)
    vanishes = False
    for exp, mult in poly.items():
        if lattice.is_zero(exp):
            if mult > 0:
                vanishes = True
                continue
            raise AhatPoleError(f"Trivial weight with multiplicity {mult}",
                                witness=witness)
        if not lattice.is_integral(exp):
            raise ArityError("Square root of a half-integer weight")
        root = Fraction(1)
        for name, doubled in zip(poly.names, exp):
            if doubled:
                root *= lattice.rational_power(values[name], doubled // 2)
        factor = root - 1 / root
        if factor == 0:
            if mult > 0:
                vanishes = True
                continue
            raise DenominatorVanishesError(
                "Weight evaluates to 1 at the chosen point", witness=witness)
        result *= factor ** int(mult)
    return Fraction(0) if vanishes else result


def binomial_product(char: Union[Character, LaurentPolynomial], kind: str,
                     witness: Optional[dict] = None) -> RationalFunction:
    """Product over the weights ``w`` of a finite character

    Args:
      kind: ``E`` for ``prod (1 - w^-1)^m``, ``ahat`` for
            ``prod (w^(1/2) - w^(-1/2))^m``

    A trivial weight with positive multiplicity makes the product
    vanish; with negative multiplicity it is a pole.
    """
    poly = char.polynomial if isinstance(char, Character) else char
    names = poly.names
    numerator = LaurentPolynomial.one(names)
    sign = 1
    shift = [0] * len(names)
    factors: List[Exponent] = []
    for exp, mult in poly.items():
        if not isinstance(mult, int) and Fraction(mult).denominator != 1:
            raise ArityError(f"Multiplicity {mult} is not an integer")
        mult = int(mult)
        if lattice.is_zero(exp):
            if mult > 0:
                return RationalFunction.zero(names)
            error = AhatPoleError if kind == "ahat" else WeightCollisionError
            raise error(f"Trivial weight with multiplicity {mult}",
                        witness=witness)
        if kind == "E":
            base = lattice.negate(exp)
        elif kind == "ahat":
            base = exp
            if mult % 2:
                sign = -sign
            for pos, entry in enumerate(exp):
                if entry * mult % 2:
                    raise ArityError(
                        "Square root of a half-integer weight")
                shift[pos] -= entry * mult // 2
        else:
            raise ValueError(f"Unknown product kind '{kind}'")
        if mult > 0:
            numerator = numerator * binomial(names, base) ** mult
        else:
            factors.extend([base] * -mult)
    numerator = numerator.shift(tuple(shift)) * sign
    return RationalFunction(numerator, factors)


def euler_cohomological(char: Union[Character, LaurentPolynomial],
                        witness: Optional[dict] = None) -> LinearFraction:
    """Cohomological weight ``prod <a, s>^-m`` of a finite character

    Raises:
      DegenerateTorusError: on a constant term
    """
    poly = char.polynomial if isinstance(char, Character) else char
    if poly.constant_term():
        raise DegenerateTorusError(
            "Character has a constant term", witness=witness)
    return LinearFraction.from_weights(poly.terms)
