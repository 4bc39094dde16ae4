"""
Truncated Laurent series in the boxcounting variable ``z``

A :class:`BoxSeries` is known exactly for z-exponents up to and
including ``order``, and is optionally graded by degree variables
``Q_e`` whose exponents are capped by ``qcaps``. Coefficients may be
any exact ring element: numbers, :class:`LaurentPolynomial`,
:class:`RationalFunction` or :class:`LinearFraction`.
"""

import logging
from fractions import Fraction
from typing import (Any, Callable, Dict, Iterable, List, Mapping, Optional,
                    Sequence, Tuple)

from boxcount.algebra.lattice import normalize
from boxcount.algebra.linear import LinearFraction
from boxcount.algebra.ratfun import RationalFunction
from boxcount.exceptions import (AlgebraError, ArityError, NonInvertibleError,
                                 TruncationError)

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

QExponent = Tuple[int, ...]
Key = Tuple[QExponent, int]


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, Fraction))


def _inverse(value: Any) -> Any:
    if _is_number(value):
        if value == 0:
            raise NonInvertibleError("Division by zero coefficient")
        return normalize(1 / Fraction(value))
    return value.inverse()


def _adams(value: Any, k: int) -> Any:
    if _is_number(value):
        return value
    return value.adams(k)


def simplify(value: Any) -> Any:
    """Reduce a coefficient, turning constants into numbers"""
    if isinstance(value, RationalFunction):
        reduced = value.reduce()
        constant = reduced.constant_value()
        return reduced if constant is None else constant
    if isinstance(value, LinearFraction):
        if not value.denominator and value.numerator.is_constant:
            return value.numerator.constant_value()
    return value


def _accumulate(target: Dict[Key, Any], key: Key, value: Any) -> None:
    if key in target:
        target[key] = target[key] + value
    else:
        target[key] = value


class BoxSeries(object):
    """Series in ``z`` known through ``order``, graded in ``Q``

    Args:
      coefficients: Mapping from ``(qexp, n)`` to the coefficient of
                    ``Q^qexp z^n``
      order:        Highest z-exponent that is known exactly
      low:          Lower bound for the z-valuation
      qnames:       Names of the degree variables
      qcaps:        Highest known exponent per degree variable
    """
    __slots__ = ("order", "low", "qnames", "qcaps", "_coeffs")

    def __init__(self, coefficients: Mapping[Key, Any], order: int,
                 low: Optional[int] = None, qnames: Sequence[str] = (),
                 qcaps: Optional[Sequence[int]] = None) -> None:
        self.qnames = tuple(qnames)
        if qcaps is None:
            if self.qnames:
                raise TruncationError("Degree caps must be given explicitly")
            qcaps = ()
        self.qcaps = tuple(qcaps)
        if len(self.qcaps) != len(self.qnames):
            raise ArityError("Degree caps do not match degree variables")
        self.order = order
        coeffs = {}
        for (qexp, n), coeff in coefficients.items():
            qexp = tuple(qexp)
            if len(qexp) != len(self.qnames):
                raise ArityError(f"Q exponent {qexp} does not match "
                                 f"{self.qnames}")
            if any(e < 0 for e in qexp):
                raise ArityError(f"Negative Q exponent {qexp}")
            if n > order or any(e > c for e, c in zip(qexp, self.qcaps)):
                continue
            if _is_number(coeff):
                coeff = normalize(coeff)
            if not coeff:
                continue
            coeffs[(qexp, n)] = coeff
        self._coeffs = coeffs
        lowest = min((n for _, n in coeffs), default=order + 1)
        self.low = lowest if low is None else min(low, lowest)

    @classmethod
    def zero(cls, order: int, qnames: Sequence[str] = (),
             qcaps: Optional[Sequence[int]] = None) -> "BoxSeries":
        return cls({}, order, qnames=qnames, qcaps=qcaps)

    @classmethod
    def constant(cls, value: Any, order: int, qnames: Sequence[str] = (),
                 qcaps: Optional[Sequence[int]] = None) -> "BoxSeries":
        zero = (0,) * len(qnames)
        return cls({(zero, 0): value}, order, low=0, qnames=qnames,
                   qcaps=qcaps)

    @classmethod
    def from_list(cls, coefficients: Sequence[Any], order: Optional[int] = None,
                  low: int = 0) -> "BoxSeries":
        """Q-free series ``sum(c[i] z^(low+i))``

        The order defaults to the last given exponent.
        """
        if order is None:
            order = low + len(coefficients) - 1
        return cls({((), low + i): c for i, c in enumerate(coefficients)},
                   order, low=low)

    @classmethod
    def monomial(cls, value: Any, n: int, order: int,
                 qexp: Optional[QExponent] = None,
                 qnames: Sequence[str] = (),
                 qcaps: Optional[Sequence[int]] = None) -> "BoxSeries":
        """Single term ``value * Q^qexp * z^n``"""
        if qexp is None:
            qexp = (0,) * len(qnames)
        return cls({(tuple(qexp), n): value}, order, low=n, qnames=qnames,
                   qcaps=qcaps)

    def __repr__(self) -> str:
        return (f"{self.__class__.__name__}(order={self.order}, "
                f"low={self.low}, qnames={self.qnames}, "
                f"terms={len(self._coeffs)})")

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def items(self) -> List[Tuple[Key, Any]]:
        """Nonzero terms sorted by Q exponent, then z exponent"""
        return sorted(self._coeffs.items(), key=lambda item: item[0])

    def keys(self) -> List[Key]:
        return sorted(self._coeffs)

    def coefficient(self, n: int, qexp: Optional[QExponent] = None) -> Any:
        """Coefficient of ``Q^qexp z^n``; zero terms come back as ``0``"""
        if qexp is None:
            qexp = (0,) * len(self.qnames)
        if n > self.order:
            raise TruncationError(
                f"Coefficient of z^{n} requested, known through "
                f"z^{self.order}")
        return self._coeffs.get((tuple(qexp), n), 0)

    def coefficients(self, qexp: Optional[QExponent] = None,
                     start: Optional[int] = None) -> List[Any]:
        """Coefficients from ``z^start`` through ``z^order``"""
        start = self.low if start is None else start
        return [self.coefficient(n, qexp)
                for n in range(start, self.order + 1)]

    def q_degrees(self) -> List[QExponent]:
        return sorted({qexp for qexp, _ in self._coeffs})

    def q_part(self, qexp: Optional[QExponent] = None) -> "BoxSeries":
        """Q-free series formed by the ``Q^qexp`` terms"""
        if qexp is None:
            qexp = (0,) * len(self.qnames)
        qexp = tuple(qexp)
        return BoxSeries({((), n): c for (q, n), c in self._coeffs.items()
                          if q == qexp}, self.order, low=self.low)

    def lift(self, qnames: Sequence[str],
             qcaps: Sequence[int]) -> "BoxSeries":
        """Embed a Q-free series into a Q-graded ring"""
        if self.qnames:
            if tuple(qnames) != self.qnames:
                raise ArityError(
                    f"Degree variables {self.qnames} and {qnames} differ")
            return self
        zero = (0,) * len(qnames)
        return BoxSeries({(zero, n): c for (_, n), c in self._coeffs.items()},
                         self.order, low=self.low, qnames=qnames, qcaps=qcaps)

    def _align(self, other: "BoxSeries") \
            -> Tuple["BoxSeries", "BoxSeries", Tuple[str, ...],
                     Tuple[int, ...]]:
        if self.qnames == other.qnames:
            caps = tuple(min(a, b) for a, b in zip(self.qcaps, other.qcaps))
            return self, other, self.qnames, caps
        if not other.qnames:
            return self, other.lift(self.qnames, self.qcaps), \
                self.qnames, self.qcaps
        if not self.qnames:
            return self.lift(other.qnames, other.qcaps), other, \
                other.qnames, other.qcaps
        raise ArityError(
            f"Degree variables {self.qnames} and {other.qnames} differ")

    def __add__(self, other):
        if not isinstance(other, BoxSeries):
            other = BoxSeries.constant(other, self.order, self.qnames,
                                       self.qcaps or None)
        a, b, qnames, qcaps = self._align(other)
        coeffs: Dict[Key, Any] = dict(a._coeffs)
        for key, coeff in b._coeffs.items():
            _accumulate(coeffs, key, coeff)
        return BoxSeries(coeffs, min(a.order, b.order), low=min(a.low, b.low),
                         qnames=qnames, qcaps=qcaps)

    __radd__ = __add__

    def __neg__(self) -> "BoxSeries":
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, BoxSeries):
            other = BoxSeries.constant(other, self.order, self.qnames,
                                       self.qcaps or None)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BoxSeries):
            return self.scale(other)
        a, b, qnames, qcaps = self._align(other)
        order = min(a.order + b.low, b.order + a.low)
        coeffs: Dict[Key, Any] = {}
        for (qa, na), ca in a._coeffs.items():
            for (qb, nb), cb in b._coeffs.items():
                n = na + nb
                if n > order:
                    continue
                qexp = tuple(x + y for x, y in zip(qa, qb))
                if any(e > c for e, c in zip(qexp, qcaps)):
                    continue
                _accumulate(coeffs, (qexp, n), ca * cb)
        return BoxSeries(coeffs, order, low=a.low + b.low, qnames=qnames,
                         qcaps=qcaps)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if not isinstance(other, BoxSeries):
            return self.scale(_inverse(other))
        return self * other.invert()

    def __pow__(self, power: int) -> "BoxSeries":
        if power < 0:
            return self.invert() ** -power
        if power == 0:
            return BoxSeries.constant(1, self.order, self.qnames,
                                      self.qcaps or None)
        result = self
        for _ in range(power - 1):
            result = result * self
        return result

    def scale(self, value: Any) -> "BoxSeries":
        """Multiply every coefficient by ``value``"""
        return BoxSeries({key: coeff * value
                          for key, coeff in self._coeffs.items()},
                         self.order, low=self.low, qnames=self.qnames,
                         qcaps=self.qcaps or None)

    def shift(self, zpow: int = 0,
              qexp: Optional[QExponent] = None) -> "BoxSeries":
        """Multiply by ``z^zpow Q^qexp``"""
        if qexp is None:
            qexp = (0,) * len(self.qnames)
        coeffs = {}
        for (q, n), coeff in self._coeffs.items():
            coeffs[(tuple(x + y for x, y in zip(q, qexp)), n + zpow)] = coeff
        return BoxSeries(coeffs, self.order + zpow, low=self.low + zpow,
                         qnames=self.qnames, qcaps=self.qcaps or None)

    def truncate(self, order: int) -> "BoxSeries":
        if order > self.order:
            raise TruncationError(
                f"Cannot extend series known through z^{self.order} "
                f"to z^{order}")
        return BoxSeries(self._coeffs, order, low=self.low,
                         qnames=self.qnames, qcaps=self.qcaps or None)

    def map(self, func: Callable[[Any], Any]) -> "BoxSeries":
        """Apply ``func`` to every coefficient"""
        return BoxSeries({key: func(coeff)
                          for key, coeff in self._coeffs.items()},
                         self.order, low=self.low, qnames=self.qnames,
                         qcaps=self.qcaps or None)

    def substitute(self, subst) -> "BoxSeries":
        """Apply a variable substitution to every coefficient"""
        return self.map(lambda c: c if _is_number(c) else c.substitute(subst))

    def substitute_q(self, name: str,
                     weights: Optional[Mapping[str, int]] = None) \
            -> "BoxSeries":
        """Specialize ``Q_e -> Q^w_e`` to a single degree variable

        The new cap is the highest degree all of whose contributions
        are within the old caps.
        """
        weights = dict(weights or {})
        ws = [weights.get(q, 1) for q in self.qnames]
        if any(w <= 0 for w in ws):
            raise ArityError("Degree weights must be positive")
        cap = min(((c + 1) * w - 1 for c, w in zip(self.qcaps, ws)),
                  default=0)
        coeffs: Dict[Key, Any] = {}
        for (qexp, n), coeff in self._coeffs.items():
            degree = sum(e * w for e, w in zip(qexp, ws))
            _accumulate(coeffs, ((degree,), n), coeff)
        return BoxSeries(coeffs, self.order, low=self.low, qnames=(name,),
                         qcaps=(cap,))

    def adams(self, k: int) -> "BoxSeries":
        """Raise z, Q and every torus variable to the ``k``-th power"""
        coeffs = {}
        for (qexp, n), coeff in self._coeffs.items():
            coeffs[(tuple(e * k for e in qexp), n * k)] = _adams(coeff, k)
        return BoxSeries(coeffs, self.order, low=self.low * k,
                         qnames=self.qnames, qcaps=self.qcaps or None)

    def valuation(self) -> Optional[int]:
        """Lowest z-exponent with nonzero Q^0 coefficient"""
        zero = (0,) * len(self.qnames)
        found = [n for q, n in self._coeffs if q == zero]
        return min(found) if found else None

    def invert(self) -> "BoxSeries":
        """Multiplicative inverse

        The Q^0 part must have an invertible leading coefficient.
        Relative precision is preserved: a series with valuation ``l``
        known through ``A`` has an inverse known through ``A - 2l``.
        """
        if self.qnames:
            return self._invert_graded()
        lead = self.valuation()
        if lead is None:
            raise NonInvertibleError(
                f"Series vanishes through z^{self.order}")
        d0 = _inverse(self._coeffs[((), lead)])
        steps = self.order - lead
        known = [self._coeffs.get(((), lead + j), 0) for j in range(steps + 1)]
        result: List[Any] = [d0]
        for k in range(1, steps + 1):
            acc = None
            for j in range(1, k + 1):
                if not known[j] or not result[k - j]:
                    continue
                term = known[j] * result[k - j]
                acc = term if acc is None else acc + term
            result.append(0 if acc is None else -(d0 * acc))
        return BoxSeries({((), k - lead): c for k, c in enumerate(result)},
                         self.order - 2 * lead, low=-lead)

    def _invert_graded(self) -> "BoxSeries":
        base = self.q_part()
        inv0 = base.invert().lift(self.qnames, self.qcaps)
        rest = self - base.lift(self.qnames, self.qcaps)
        step = -(rest * inv0)
        term = BoxSeries.constant(1, inv0.order, self.qnames, self.qcaps)
        total = term
        for _ in range(sum(self.qcaps)):
            term = term * step
            if not term:
                break
            total = total + term
        return inv0 * total

    def _check_no_constant(self, what: str) -> None:
        if self.qnames:
            raise AlgebraError(f"{what} is only defined for Q-free series")
        if any(n <= 0 for _, n in self._coeffs):
            raise AlgebraError(
                f"{what} needs a series without z^0 or negative terms")

    def exp(self) -> "BoxSeries":
        """Exponential of a series without constant term"""
        self._check_no_constant("exp")
        order = self.order
        f = [self._coeffs.get(((), n), 0) for n in range(order + 1)]
        e: List[Any] = [1]
        for n in range(1, order + 1):
            acc = None
            for j in range(1, n + 1):
                if not f[j] or not e[n - j]:
                    continue
                term = f[j] * e[n - j] * j
                acc = term if acc is None else acc + term
            e.append(0 if acc is None else acc * Fraction(1, n))
        return BoxSeries({((), n): c for n, c in enumerate(e)}, order, low=0)

    def log(self) -> "BoxSeries":
        """Logarithm of a series with constant term 1"""
        if self.qnames:
            raise AlgebraError("log is only defined for Q-free series")
        if any(n < 0 for _, n in self._coeffs) or \
                self._coeffs.get(((), 0), 0) != 1:
            raise AlgebraError("log needs a series starting with 1")
        order = self.order
        f = [self._coeffs.get(((), n), 0) for n in range(order + 1)]
        g: List[Any] = [0]
        for n in range(1, order + 1):
            acc = f[n] * n if f[n] else None
            for j in range(1, n):
                if not g[j] or not f[n - j]:
                    continue
                term = -(g[j] * f[n - j] * j)
                acc = term if acc is None else acc + term
            g.append(0 if acc is None else acc * Fraction(1, n))
        return BoxSeries({((), n): c for n, c in enumerate(g)}, order, low=1)

    def plethystic_exp(self) -> "BoxSeries":
        """Symmetric algebra ``exp(sum_k adams(k)/k)``"""
        self._check_no_constant("plethystic_exp")
        total: Dict[Key, Any] = {}
        for k in range(1, self.order + 1):
            for (_, n), coeff in self._coeffs.items():
                if n * k > self.order:
                    continue
                _accumulate(total, ((), n * k),
                            _adams(coeff, k) * Fraction(1, k))
        return BoxSeries(total, self.order, low=1).exp()

    def first_difference(self, other: "BoxSeries") -> Optional[Key]:
        """First key (in sorted order) where two series differ

        Only the common known range is compared.
        """
        if self.qnames != other.qnames:
            raise ArityError(
                f"Degree variables {self.qnames} and {other.qnames} differ")
        order = min(self.order, other.order)
        caps = [min(a, b) for a, b in zip(self.qcaps, other.qcaps)]
        keys = sorted(set(self._coeffs) | set(other._coeffs))
        for key in keys:
            qexp, n = key
            if n > order or any(e > c for e, c in zip(qexp, caps)):
                continue
            mine = self._coeffs.get(key, 0)
            theirs = other._coeffs.get(key, 0)
            if not mine == theirs:
                return key
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoxSeries):
            return NotImplemented
        return self.first_difference(other) is None

    __hash__ = None  # type: ignore


def z_series(coefficients: Iterable[Any], order: int,
             low: int = 0) -> BoxSeries:
    """Q-free series from a list of coefficients starting at ``z^low``"""
    return BoxSeries.from_list(list(coefficients), order=order, low=low)
