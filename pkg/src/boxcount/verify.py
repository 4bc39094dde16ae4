"""
Order by order verification of counting identities

Each checker compares two independently computed sides through a
given order and returns a :class:`Report`. A failing comparison is a
report with status ``fail`` and a witness, not an exception. The
module also fits rational functions with poles at roots of unity to
numeric series and checks their parity under ``z -> 1/z``.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import (Any, Callable, Dict, List, Mapping, Optional, Sequence,
                    Tuple)

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_mul, rs_series_inversion
from sympy.polys.rings import PolyElement, ring

from boxcount.algebra.lattice import (COHOMOLOGY, DT_TORUS, Number,
                                      Substitution)
from boxcount.algebra.linear import LinearFraction, form_product
from boxcount.algebra.polynomial import (LaurentPolynomial, from_domain,
                                         to_domain)
from boxcount.algebra.series import BoxSeries, z_series
from boxcount.characters import (Character, ahat, edge_char, edge_chi,
                                 edge_chi_character, ext1_char, vertex_char)
from boxcount.common import parallel_map
from boxcount.dtcount.vertex import (cohomological_degree0, degree0_series,
                                     vertex_series)
from boxcount.exceptions import (BoxcountConsistencyError,
                                 BoxcountDegeneracyError, BoxcountUsageError,
                                 InsufficientOrderError, SubstitutionError)
from boxcount.partitions import (Partition2D, count_plane_partitions,
                                 enumerate_legged, enumerate_partitions,
                                 mcmahon_coefficients, parse_legs,
                                 partitions_up_to)
from boxcount.render import series_text

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

#: Numeric series ring for rational fits
FIT_RING, FIT_Z = ring("z", QQ)

PASS = "pass"
FAIL = "fail"


@dataclass
class Report:
    """Outcome of a verification run"""
    check: str
    order: int
    status: str = PASS
    witness: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    mode: str = "exact"
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def fail(self, **witness: Any) -> "Report":
        self.status = FAIL
        self.witness.update({k: _jsonable(v) for k, v in witness.items()})
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "order": self.order,
            "status": self.status,
            "witness": self.witness,
            "seed": self.seed,
            "mode": self.mode,
            "details": self.details,
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


def _compare(report: Report, lhs: BoxSeries, rhs: BoxSeries) -> Report:
    """Record the first differing coefficient, if any"""
    key = lhs.first_difference(rhs)
    if key is not None:
        _, n = key
        report.fail(n=n, lhs=lhs.coefficient(n), rhs=rhs.coefficient(n))
    return report


def check_mcmahon(order: int, corrupt: Optional[int] = None) -> Report:
    """Plane partition counts against ``prod (1 - z^n)^-n``

    Args:
      corrupt: add one to the enumerated count at this order
    """
    if order < 0:
        raise BoxcountUsageError("Order must be non-negative")
    counts = count_plane_partitions(order)
    if corrupt is not None and 0 <= corrupt <= order:
        counts[corrupt] += 1
    expected = mcmahon_coefficients(order)
    report = Report("mcmahon", order, details={"coefficients": expected})
    for n, (found, wanted) in enumerate(zip(counts, expected)):
        if found != wanted:
            return report.fail(n=n, enumerated=found, product=wanted)
    return report


def kappa_power(j: int) -> LaurentPolynomial:
    """``(t1 t2 t3)^(j/2)``"""
    return LaurentPolynomial.monomial(DT_TORUS, (j, j, j))


def nekrasov_degree0_terms(order: int, flip_kappa: bool = False) -> List[Any]:
    """Coefficients ``f_1 .. f_order`` of the exponent of the product side

    ``f_n = -A (kappa^(n-1) + kappa^(n-3) + ... + kappa^(1-n))`` with
    ``A = prod ahat(t_i t_j) / prod ahat(t_i)``. ``flip_kappa`` replaces
    ``kappa`` by ``-kappa``.
    """
    names = DT_TORUS
    t1, t2, t3 = (LaurentPolynomial.variable(names, n) for n in names)
    base = ahat(Character(t1 * t2 + t1 * t3 + t2 * t3 - t1 - t2 - t3))
    terms = []
    for n in range(1, order + 1):
        total = LaurentPolynomial.zero(names)
        for k in range(n):
            total = total + kappa_power(n - 1 - 2 * k)
        if flip_kappa and n % 2 == 0:
            total = -total
        terms.append(-(base * total))
    return terms


def nekrasov_degree0_rhs(order: int, flip_kappa: bool = False) -> BoxSeries:
    """Plethystic exponential side of the degree zero identity"""
    terms = nekrasov_degree0_terms(order, flip_kappa)
    return BoxSeries({((), n): f for n, f in enumerate(terms, 1)},
                     order, low=0).plethystic_exp()


def random_point(rng: random.Random,
                 names: Tuple[str, ...] = DT_TORUS) -> Dict[str, Fraction]:
    """Squares of random rationals, so square roots stay rational"""
    return {name: Fraction(rng.randint(1, 12), rng.randint(1, 12)) ** 2
            for name in names}


class _PointCheck(object):
    """Both sides of the degree zero identity at one rational point"""
    def __init__(self, order: int, flip_kappa: bool) -> None:
        self.order = order
        self.terms = nekrasov_degree0_terms(order, flip_kappa)

    def rhs(self, point: Mapping[str, Fraction]) -> BoxSeries:
        coeffs: Dict[Tuple[Tuple[int, ...], int], Any] = {}
        for k in range(1, self.order + 1):
            for n, f in enumerate(self.terms, 1):
                if n * k > self.order:
                    break
                key = ((), n * k)
                value = f.adams(k).evaluate(point) / k
                coeffs[key] = coeffs.get(key, 0) + value
        return BoxSeries(coeffs, self.order, low=0).exp()

    def __call__(self, point: Mapping[str, Fraction]) \
            -> Tuple[BoxSeries, BoxSeries]:
        lhs = degree0_series(self.order, numeric=point)
        return lhs, self.rhs(point)


def check_nekrasov_degree0(order: int, mode: str = "exact",
                           seed: Optional[int] = None, points: int = 20,
                           flip_kappa: bool = False,
                           jobs: int = 1) -> Report:
    """Degree zero vertex series against its product formula

    Args:
      mode:       ``exact`` compares rational functions, ``random-eval``
                  compares values at ``points`` seeded rational points
      flip_kappa: use the wrong sign of ``kappa`` on the product side
    """
    if order < 1:
        raise BoxcountUsageError("Order must be at least 1")
    report = Report("nekrasov-degree0", order, mode=mode)
    if mode == "exact":
        lhs = degree0_series(order, jobs=jobs)
        return _compare(report, lhs, nekrasov_degree0_rhs(order, flip_kappa))
    if mode != "random-eval":
        raise BoxcountUsageError(f"Unknown mode '{mode}'")
    if seed is None:
        seed = random.SystemRandom().randrange(2 ** 32)
    report.seed = seed
    rng = random.Random(seed)
    check = _PointCheck(order, flip_kappa)
    chosen: List[Dict[str, Fraction]] = []
    results: List[Tuple[BoxSeries, BoxSeries]] = []
    attempts = 0
    while len(results) < points:
        batch = [random_point(rng) for _ in range(points - len(results))]
        for point, outcome in zip(batch, parallel_map(
                _Guarded(check), batch, jobs)):
            if outcome is None:
                attempts += 1
                if attempts > 10 * points:
                    raise BoxcountDegeneracyError(
                        "Too many random points hit a vanishing denominator",
                        witness={"seed": seed})
                continue
            chosen.append(point)
            results.append(outcome)
    report.details["points"] = [{k: str(v) for k, v in p.items()}
                                for p in chosen]
    report.details["resampled"] = attempts
    for point, (lhs, rhs) in zip(chosen, results):
        key = lhs.first_difference(rhs)
        if key is not None:
            _, n = key
            return report.fail(n=n, point=point, lhs=lhs.coefficient(n),
                               rhs=rhs.coefficient(n))
    return report


class _Guarded(object):
    """Run a point check, None if the point is degenerate"""
    def __init__(self, check: _PointCheck) -> None:
        self.check = check

    def __call__(self, point):
        try:
            return self.check(point)
        except (BoxcountDegeneracyError, SubstitutionError):
            log.debug("Resampling degenerate point %s", point)
            return None


def hilb_exponent() -> LinearFraction:
    """``-(s1+s2)(s1+s3)(s2+s3) / (s1 s2 s3)``"""
    numerator = -form_product(COHOMOLOGY, [(1, 1, 0), (1, 0, 1), (0, 1, 1)])
    return LinearFraction(numerator, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def log_mcmahon(order: int) -> BoxSeries:
    """``log M(z)``, with ``sigma_2(N) / N`` at ``z^N``"""
    coeffs = [0] + [Fraction(sum(d * d for d in range(1, n + 1) if n % d == 0),
                             n)
                    for n in range(1, order + 1)]
    return z_series(coeffs, order)


def check_hilbC3(order: int) -> Report:  # pylint: disable=invalid-name
    """Cohomological degree zero series against ``M(z)^E``

    Also compares the restriction to ``c1 = 0`` with ``M(z)``.
    """
    if order < 1:
        raise BoxcountUsageError("Order must be at least 1")
    report = Report("hilbC3", order)
    rhs = log_mcmahon(order).scale(hilb_exponent()).exp()
    _compare(report, cohomological_degree0(order), rhs)
    if not report.passed:
        report.witness["slice"] = "full torus"
        return report
    sliced = cohomological_degree0(order, c1_slice=True)
    _compare(report, sliced, z_series(mcmahon_coefficients(order), order))
    if not report.passed:
        report.witness["slice"] = "c1 = 0"
    return report


def check_ext1_forms(max_size: int, transposed: bool = False) -> Report:
    """Closed form of ``Ext^1`` against the sum over arms and legs

    Args:
      transposed: exchange arms and legs in the box sum
    """
    report = Report("ext1", max_size)
    parts = partitions_up_to(max_size)
    pairs = 0
    for lam, mu in itertools.product(parts, parts):
        pairs += 1
        closed = ext1_char(lam, mu, "closed")
        boxes = ext1_char(lam, mu, "arms_legs", transposed)
        if closed != boxes:
            return report.fail(lam=lam, mu=mu, closed=closed, arms_legs=boxes)
        if closed.rank != lam.size + mu.size:
            return report.fail(lam=lam, mu=mu, rank=closed.rank)
    report.details["pairs"] = pairs
    return report


CY_SLICE = Substitution.calabi_yau()

#: Legs whose vertex weights become integers on the CY slice
CY_LEGS = ("1;;", "2,1;;")


def check_cy_vertex(order: int, jobs: int = 1) -> Report:
    """Vertex weights on the CY slice

    The degree zero series must be ``M(z)`` and the weights with one
    leg must have integer coefficients.
    """
    report = Report("cy-vertex", order)
    degree0 = degree0_series(order, CY_SLICE, jobs=jobs)
    _compare(report, degree0, z_series(mcmahon_coefficients(order), order))
    if not report.passed:
        return report
    for text in CY_LEGS:
        series = vertex_series(parse_legs(text), order, CY_SLICE, jobs=jobs)
        coeffs = series.coefficients()
        report.details[text] = [str(c) for c in coeffs]
        for n, coeff in enumerate(coeffs, series.low):
            if not isinstance(coeff, int):
                return report.fail(legs=text, n=n, coefficient=coeff)
    return report


#: Normal degrees exercised by :func:`check_edge_chars`
EDGE_DEGREES = ((0, 0), (-1, -1), (-2, 0), (1, 1))


def check_edge_chars(max_size: int) -> Report:
    """Edge characters reduce to finite characters of the right rank

    The rank is the virtual dimension ``|lam| (2 + m + mp)``.
    """
    report = Report("edge-char", max_size)
    t2, t3 = (LaurentPolynomial.variable(DT_TORUS, n) for n in ("t2", "t3"))
    box = Partition2D((1,))
    if edge_char(box, 0, 0) != Character(t2 + t3):
        return report.fail(lam=box, degrees=(0, 0), found=edge_char(box, 0, 0))
    if edge_char(box, -1, -1) != Character(LaurentPolynomial.zero(DT_TORUS)):
        return report.fail(lam=box, degrees=(-1, -1),
                           found=edge_char(box, -1, -1))
    checked = 0
    for lam in partitions_up_to(max_size):
        for m, mp in EDGE_DEGREES:
            try:
                char = edge_char(lam, m, mp)
                chi = edge_chi_character(lam, m, mp)
            except BoxcountConsistencyError as exc:
                return report.fail(lam=lam, degrees=(m, mp), error=exc)
            if chi.rank != edge_chi(lam, m, mp):
                return report.fail(lam=lam, degrees=(m, mp), chi=chi.rank,
                                   expected=edge_chi(lam, m, mp))
            if char.rank != lam.size * (2 + m + mp):
                return report.fail(lam=lam, degrees=(m, mp), rank=char.rank,
                                   expected=lam.size * (2 + m + mp))
            checked += 1
    report.details["characters"] = checked
    return report


def check_vertex_chars(max_leg: int, max_deviation: int) -> Report:
    """Exact and truncated vertex characters agree, without constant term"""
    report = Report("vertex-char", max_deviation,
                    details={"max_leg": max_leg})
    legs_sizes = partitions_up_to(max_leg)
    checked = 0
    for legs in itertools.product(legs_sizes, repeat=3):
        for part in enumerate_legged(legs, max_deviation):
            try:
                char = vertex_char(part, check=True)
            except BoxcountConsistencyError as exc:
                return report.fail(partition=part.dumps(), error=exc)
            if char.constant_term:
                return report.fail(partition=part.dumps(),
                                   constant=char.constant_term)
            checked += 1
    report.details["partitions"] = checked
    return report


def run_suite(name: str, order: int, mode: str = "exact",
              seed: Optional[int] = None, points: int = 20,
              jobs: int = 1) -> Report:
    """Run a verification suite by name

    Raises:
      BoxcountUsageError: for unknown suites
    """
    try:
        suite = SUITES[name]
    except KeyError:
        raise BoxcountUsageError(
            f"Unknown verification suite '{name}'",
            witness={"known": ", ".join(SUITES)})
    log.info("Running suite %s through order %i", name, order)
    return suite(order=order, mode=mode, seed=seed, points=points, jobs=jobs)


SUITES: Dict[str, Callable[..., Report]] = {
    "mcmahon": lambda order, **_: check_mcmahon(order),
    "nekrasov-degree0": lambda order, mode, seed, points, jobs:
        check_nekrasov_degree0(order, mode, seed, points, jobs=jobs),
    "hilbC3": lambda order, **_: check_hilbC3(order),
    "ext1": lambda order, **_: check_ext1_forms(order),
    "cy-vertex": lambda order, jobs, **_: check_cy_vertex(order, jobs),
    "edge-char": lambda order, **_: check_edge_chars(order),
    "vertex-char": lambda order, **_: check_vertex_chars(2, order),
}


@dataclass
class RationalFit:
    """``z^shift numerator(z) / prod (1 - (-z)^k)^(a_k)``"""
    numerator: List[Fraction]
    shape: Dict[int, int]
    shift: int = 0

    @property
    def denominator(self) -> List[int]:
        return denominator_coefficients(self.shape)

    @property
    def budget(self) -> int:
        return shape_budget(self.shape)

    def to_text(self) -> str:
        num = z_series(self.numerator, len(self.numerator) - 1)
        parts = []
        for k, a in sorted(self.shape.items()):
            if not a:
                continue
            factor = "(1 + z)" if k == 1 else \
                f"(1 - z^{k})" if k % 2 == 0 else f"(1 + z^{k})"
            parts.append(factor if a == 1 else f"{factor}^{a}")
        text = f"({series_text(num)})"
        if self.shift:
            text = f"z^{self.shift} * {text}"
        if parts:
            text += " / " + "*".join(parts)
        return text

    def to_dict(self) -> Dict[str, Any]:
        return {
            "numerator": [str(c) for c in self.numerator],
            "shape": {str(k): a for k, a in sorted(self.shape.items())},
            "shift": self.shift,
            "text": self.to_text(),
        }


def shape_budget(shape: Mapping[int, int]) -> int:
    return sum(k * a for k, a in shape.items())


def denominator_polynomial(shape: Mapping[int, int]) -> PolyElement:
    """``prod (1 - (-z)^k)^(a_k)`` in ``QQ[z]``"""
    den = FIT_RING.one
    for k, a in sorted(shape.items()):
        if a < 0:
            raise BoxcountUsageError("Denominator exponents must be >= 0")
        den *= (FIT_RING.one - (-FIT_Z) ** k) ** a
    return den


def denominator_coefficients(shape: Mapping[int, int]) -> List[int]:
    """Coefficients of ``prod (1 - (-z)^k)^(a_k)``"""
    den = denominator_polynomial(shape)
    return [int(c) for c in _z_list(den, den.degree() + 1)]


def _z_element(coeffs: Sequence[Number]) -> PolyElement:
    return FIT_RING.from_dict({(n,): to_domain(c)
                               for n, c in enumerate(coeffs) if c})


def _z_list(element: PolyElement, length: int) -> List[Fraction]:
    return [Fraction(from_domain(element.get((n,), QQ.zero)))
            for n in range(length)]


def _numeric_coefficients(series: BoxSeries) -> List[Fraction]:
    coeffs = series.coefficients()
    for n, coeff in enumerate(coeffs, series.low):
        if not isinstance(coeff, (int, Fraction)):
            raise BoxcountUsageError(
                "Rational fits need numeric coefficients",
                witness={"n": n, "coefficient": coeff})
    return [Fraction(c) for c in coeffs]


def rational_fit(series: BoxSeries, shape: Mapping[int, int],
                 degree: Optional[int] = None) -> Optional[RationalFit]:
    """Fit ``z^low P(z) / prod (1 - (-z)^k)^(a_k)`` to a numeric series

    Leading zeros are stripped so that the shift is the valuation of
    the series. The candidate denominator is cleared and the numerator
    must vanish for two coefficients above its degree.

    Args:
      shape:  exponents ``a_k`` of the denominator
      degree: numerator degree bound, taken from the data if None

    Returns:
      The fit, or None if the numerator does not terminate

    Raises:
      InsufficientOrderError: if the series is too short to decide
    """
    values = _numeric_coefficients(series)
    shape = {k: a for k, a in shape.items() if a}
    start = next((n for n, c in enumerate(values) if c), None)
    if start is None:
        return RationalFit([Fraction(0)], shape, series.low)
    values = values[start:]
    shift = series.low + start
    last = len(values) - 1
    product = _z_list(rs_mul(denominator_polynomial(shape),
                             _z_element(values), FIT_Z, last + 1), last + 1)
    if degree is None:
        degree = max((n for n in range(last - 1) if product[n]), default=0)
    needed = degree + 2
    if last < needed:
        raise InsufficientOrderError(
            f"Need more coefficients: shape {dict(shape)} with numerator "
            f"degree {degree} needs z^{shift + needed}, "
            f"series known through z^{series.order}")
    if any(product[n] for n in range(degree + 1, last + 1)):
        return None
    numerator = product[:degree + 1]
    while len(numerator) > 1 and not numerator[-1]:
        numerator.pop()
    return RationalFit(numerator, shape, shift)


def iter_shapes(budget: int):
    """Denominator shapes of exactly the given budget"""
    for lam in enumerate_partitions(budget):
        shape: Dict[int, int] = {}
        for part in lam:
            shape[part] = shape.get(part, 0) + 1
        yield shape


def fit_search(series: BoxSeries, max_budget: int = 6,
               max_numerator: Optional[int] = None) -> Optional[RationalFit]:
    """Smallest denominator shape that fits ``series``

    Shapes are tried by increasing budget ``sum(k a_k)``. Shapes the
    series is too short for are skipped.
    """
    for budget in range(max_budget + 1):
        for shape in iter_shapes(budget):
            try:
                fit = rational_fit(series, shape)
            except InsufficientOrderError:
                continue
            if fit is None:
                continue
            if max_numerator is not None and \
                    len(fit.numerator) - 1 > max_numerator:
                continue
            log.debug("Found fit with shape %s", shape)
            return fit
    return None


def expand_fit(fit: RationalFit, order: int) -> BoxSeries:
    """Series expansion of a fit through ``z^order``"""
    prec = max(order - fit.shift, 0) + 1
    inverse = rs_series_inversion(denominator_polynomial(fit.shape), FIT_Z,
                                  prec)
    expansion = rs_mul(_z_element(fit.numerator), inverse, FIT_Z, prec)
    return z_series(_z_list(expansion, prec), prec - 1).shift(fit.shift)


def _z_poly(coeffs: List[Fraction], invert: bool = False) \
        -> LaurentPolynomial:
    sign = -1 if invert else 1
    return LaurentPolynomial(("z",), {(sign * 2 * n,): c
                                      for n, c in enumerate(coeffs) if c})


def parity_check(fit: RationalFit, virdim: int) -> Report:
    """``R(1/z) = (-1)^virdim R(z)`` for ``R = z^(-virdim/2) fit``"""
    report = Report("parity", virdim)
    report.details["fit"] = fit.to_text()
    num, den = fit.numerator, fit.denominator
    twist = LaurentPolynomial.monomial(("z",), (virdim - 2 * fit.shift,))
    left = twist * _z_poly(num, invert=True) * _z_poly(den)
    right = twist.bar() * _z_poly(num) * _z_poly(den, invert=True) \
        * (-1) ** virdim
    if left != right:
        report.fail(residual=(left - right).to_text())
    return report
