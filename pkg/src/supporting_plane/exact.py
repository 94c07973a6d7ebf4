"""Exact rational scalars and the sign predicates built on them.

Scalars are ``int`` or :class:`fractions.Fraction`.  Integral values are kept
as plain ``int`` because the hot loops (determinants, simplex pivots) are an
order of magnitude faster on machine-backed integers than on ``Fraction``.
"""

from __future__ import annotations

import enum
import functools
import numbers
import re
from fractions import Fraction
from typing import Tuple, Union

Scalar = Union[int, Fraction]
Vec2 = Tuple[Scalar, Scalar]
Vec3 = Tuple[Scalar, Scalar, Scalar]

_DECIMAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
# Longest run that could still be the start of a decimal literal.
_DECIMAL_PREFIX = re.compile(r"[+-]?\d*(?:\.\d*)?(?:[eE][+-]?\d*)?")


class ParseError(ValueError):
    """A literal or input file could not be parsed.

    ``token`` and ``position`` locate the problem inside one literal;
    ``line`` is filled in by callers that read whole files.
    """

    def __init__(self, message, token=None, position=None, line=None):
        super().__init__(message)
        self.token = token
        self.position = position
        self.line = line

    def __str__(self):
        msg = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {msg}"
        return msg


class Sign(enum.IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1

    @classmethod
    def of(cls, value) -> "Sign":
        return _SIGNS[(value > 0) - (value < 0)]


_SIGNS = {-1: Sign.NEG, 0: Sign.ZERO, 1: Sign.POS}


def canonical(value: Scalar) -> Scalar:
    """Return ``value`` as an ``int`` when integral, else as a reduced Fraction."""
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, numbers.Rational):
        return canonical(Fraction(value.numerator, value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def to_exact(value) -> Scalar:
    """Coerce user input to an exact scalar.

    Strings go through :func:`parse_decimal`.  Floats are taken at their
    shortest decimal rendering, not their binary value, so ``0.1`` means 1/10.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, str):
        return parse_decimal(value)
    if isinstance(value, float):
        return parse_decimal(repr(value))
    return canonical(value)


def parse_decimal(text: str) -> Scalar:
    """Parse a decimal literal such as ``-1.25`` or ``1e-3`` exactly."""
    token = text.strip()
    if _DECIMAL.fullmatch(token):
        return canonical(Fraction(token))
    prefix = _DECIMAL_PREFIX.match(token)
    pos = prefix.end() if prefix.end() < len(token) else 0
    raise ParseError(
        f"malformed decimal literal {token!r} at position {pos}",
        token=token, position=pos)


def format_decimal(value: Scalar) -> str:
    """Render a rational with a terminating decimal expansion exactly.

    Raises ValueError when the reduced denominator has a prime factor other
    than 2 or 5.
    """
    q = Fraction(value)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{q} has no terminating decimal expansion")
    places = max(twos, fives)
    scaled = abs(q.numerator) * (10 ** places // q.denominator)
    digits = str(scaled).rjust(places + 1, "0")
    sign = "-" if q < 0 else ""
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def format_rational(value: Scalar) -> str:
    """``p/q`` rendering used on every external interface (``p`` when q = 1)."""
    return str(Fraction(value))


def det3(a: Vec3, b: Vec3, c: Vec3) -> Scalar:
    """Determinant of the 3x3 matrix with columns a, b, c (cofactor expansion)."""
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - b[0] * (a[1] * c[2] - a[2] * c[1])
            + c[0] * (a[1] * b[2] - a[2] * b[1]))


def sign_det3(a: Vec3, b: Vec3, c: Vec3) -> Sign:
    return Sign.of(det3(a, b, c))


def cross(a: Vec3, b: Vec3) -> Vec3:
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def dot(a, b) -> Scalar:
    return sum(x * y for x, y in zip(a, b))


def cross2(u: Vec2, v: Vec2) -> Scalar:
    return u[0] * v[1] - u[1] * v[0]


def orient2d(u: Vec2, v: Vec2) -> Sign:
    """Sign of ``u.x*v.y - u.y*v.x``: +1 when v is counterclockwise of u."""
    return Sign.of(cross2(u, v))


def _half(u: Vec2) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2*pi).
    x, y = u
    if y > 0 or (y == 0 and x > 0):
        return 0
    return 1


def angular_compare(u: Vec2, v: Vec2) -> int:
    """Order two nonzero directions by counterclockwise angle from +x.

    Returns -1, 0 or 1 like a ``cmp`` function; 0 means v is a positive
    multiple of u.  No angle is ever evaluated: the circle is split into
    two half-open halves and directions inside one half are ordered by
    :func:`orient2d`.
    """
    if not any(u) or not any(v):
        raise ValueError("angular_compare is undefined for the zero vector")
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    return -int(orient2d(u, v))


angular_key = functools.cmp_to_key(angular_compare)
