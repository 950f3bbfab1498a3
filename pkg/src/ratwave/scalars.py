"""Scalar fields: exact rationals (``Fraction``) and binary64 floats.

Every polynomial carries one of two field tags.  Values of the two fields
never mix implicitly; converting between them is always an explicit call.
"""

from fractions import Fraction
from numbers import Rational

RATIONAL = "rational"
FLOAT = "float64"
FIELDS = (RATIONAL, FLOAT)

#: absolute per-coefficient tolerance used for float comparisons
DEFAULT_TOL = 1e-12


def field_of(value):
    """Return the field a Python number naturally belongs to, or None for ints."""
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, float):
        return FLOAT
    if isinstance(value, Fraction):
        return RATIONAL
    if isinstance(value, int):
        return None
    if isinstance(value, Rational):
        return RATIONAL
    # numpy floating scalars
    if hasattr(value, "dtype") and value.dtype.kind == "f":
        return FLOAT
    if hasattr(value, "dtype") and value.dtype.kind in "iu":
        return None
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def coerce(value, field):
    """Bring ``value`` into ``field``; ints go anywhere, floats never become rationals."""
    from .errors import ModeMismatch

    src = field_of(value)
    if field == RATIONAL:
        if src == FLOAT:
            raise ModeMismatch("float value in rational context; use to_rational() explicitly")
        return Fraction(int(value)) if src is None else Fraction(value)
    if field == FLOAT:
        if src == RATIONAL:
            raise ModeMismatch("rational value in float context; use to_float() explicitly")
        return float(value)
    raise ValueError(f"unknown field {field!r}")


def convert(value, field):
    """Explicit cross-field conversion (float -> rational is exact in binary)."""
    if field == RATIONAL:
        return Fraction(value)
    if field == FLOAT:
        return float(value)
    raise ValueError(f"unknown field {field!r}")


def parse_scalar(token, field=None):
    """Parse ``"p/q"``, ``"p"``, a decimal string or a number.

    Strings containing ``/`` (or plain integers) parse as rationals; anything
    with a decimal point or exponent parses as a float unless ``field`` asks
    for a rational, in which case the decimal is read exactly.
    """
    if isinstance(token, str):
        text = token.strip()
        if "/" in text or _is_int_literal(text):
            value = Fraction(text)
            if field == FLOAT:
                return float(value)
            return value
        if field == RATIONAL:
            return Fraction(text)
        return float(text)
    if isinstance(token, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(token, int):
        return float(token) if field == FLOAT else Fraction(token)
    if field is None:
        return token
    return coerce(token, field)


def _is_int_literal(text):
    body = text[1:] if text[:1] in "+-" else text
    return body.isdigit()


def format_scalar(value):
    """Serialize a scalar: rationals as ``"p/q"`` (or ``"p"``), floats as repr."""
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))


def to_json_scalar(value):
    """JSON form: rationals stay exact strings, floats become numbers."""
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


def decimal_string(value, digits=15):
    """Decimal rendering with ``digits`` significant digits, for display columns."""
    return f"{float(value):.{digits}g}"
