"""
Rendering of series and reports as text, JSON and CSV
"""

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from boxcount.algebra.series import BoxSeries

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

#: Output formats understood by :func:`render`
FORMATS = ("text", "json", "csv")

CSV_COLUMNS = ("q", "z", "num", "den")


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, Fraction))


def q_monomial(qnames: Sequence[str], qexp: Sequence[int]) -> str:
    """``Q1^2*Q2``, or ``1`` for the zero exponent"""
    parts = []
    for name, power in zip(qnames, qexp):
        if power == 1:
            parts.append(name)
        elif power:
            parts.append(f"{name}^{power}")
    return "*".join(parts) or "1"


def z_monomial(n: int) -> str:
    if n == 0:
        return ""
    if n == 1:
        return "z"
    return f"z^{n}"


def coefficient_text(value: Any) -> str:
    if _is_number(value):
        return str(value)
    return value.to_text()


def split_fraction(value: Any) -> Tuple[str, str]:
    """Numerator and denominator renderings of a coefficient"""
    if _is_number(value):
        value = Fraction(value)
        return str(value.numerator), str(value.denominator)
    if hasattr(value, "denominator_text"):
        return value.numerator.to_text(), value.denominator_text()
    return value.to_text(), "1"


def _term(value: Any, n: int) -> Tuple[str, str]:
    """Sign and body of ``value * z^n``"""
    mono = z_monomial(n)
    if _is_number(value):
        sign = "-" if value < 0 else "+"
        magnitude = abs(value)
        if magnitude == 1 and mono:
            return sign, mono
        if isinstance(magnitude, Fraction) and magnitude.denominator != 1 \
                and mono:
            return sign, f"({magnitude}){mono}"
        return sign, f"{magnitude}{mono}"
    text = value.to_text()
    if not text.startswith("("):
        text = f"({text})"
    return "+", f"{text}*{mono}" if mono else text


def _join(terms: List[Tuple[str, str]]) -> str:
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def series_text(series: BoxSeries) -> str:
    """``1 + z + 3z^2 + 6z^3``; one line per Q degree if graded"""
    if not series.qnames:
        return _join([_term(c, n) for (_, n), c in series.items()])
    lines = []
    for qexp in series.q_degrees():
        terms = [_term(c, n) for (q, n), c in series.items() if q == qexp]
        lines.append(f"{q_monomial(series.qnames, qexp)}: {_join(terms)}")
    return "\n".join(lines) or "0"


def json_coefficient(value: Any) -> Any:
    if _is_number(value):
        return str(value)
    num, den = split_fraction(value)
    return {"num": num, "den": den}


def series_dict(series: BoxSeries) -> Dict[str, Any]:
    """Nested ``{Q monomial: {z power: coefficient}}`` with metadata"""
    terms: Dict[str, Dict[str, Any]] = {}
    for (qexp, n), coeff in series.items():
        key = q_monomial(series.qnames, qexp)
        terms.setdefault(key, {})[str(n)] = json_coefficient(coeff)
    return {
        "order": series.order,
        "qcaps": dict(zip(series.qnames, series.qcaps)),
        "terms": terms,
    }


def series_json(series: BoxSeries) -> str:
    return json.dumps(series_dict(series), indent=2)


def series_table(series: BoxSeries):
    """Coefficients as a :class:`pandas.DataFrame`"""
    import pandas
    rows = []
    for (qexp, n), coeff in series.items():
        num, den = split_fraction(coeff)
        rows.append((q_monomial(series.qnames, qexp), n, num, den))
    return pandas.DataFrame.from_records(rows, columns=CSV_COLUMNS)


def series_csv(series: BoxSeries) -> str:
    return series_table(series).to_csv(index=False)


def render(series: BoxSeries, fmt: str = "text") -> str:
    """Render ``series`` in one of :data:`FORMATS`"""
    if fmt == "text":
        return series_text(series)
    if fmt == "json":
        return series_json(series)
    if fmt == "csv":
        return series_csv(series)
    raise ValueError(f"Unknown output format '{fmt}'")


def report_text(report: Dict[str, Any]) -> str:
    """One line summary, followed by the witness of a failure"""
    lines = [f"{report['check']} through order {report['order']}: "
             f"{report['status']}"]
    if report.get("seed") is not None:
        lines[0] += f" (seed {report['seed']})"
    for key, value in report.get("witness", {}).items():
        lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def report_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2)
