"""Extended complex plane values and the chordal (spherical) metric.

Values are either finite complex numbers, the point at infinity, or an
"undefined" sentinel used for evaluations at essential singularities.
Undefined is absorbing: once a computation produces it, everything
downstream stays undefined.
"""

from __future__ import annotations

import math

_FINITE = 0
_INF = 1
_UNDEF = 2


class MetricUndefinedError(ValueError):
    """Chordal distance requested for an undefined value."""


class XComplex:
    """A point of the Riemann sphere: finite, infinity, or undefined."""

    __slots__ = ("_flavor", "_value")

    def __init__(self, flavor: int, value: complex):
        self._flavor = flavor
        self._value = value

    @staticmethod
    def finite(value: complex) -> "XComplex":
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ValueError("finite() requires finite components; use guard()")
        return XComplex(_FINITE, value)

    @property
    def is_finite(self) -> bool:
        return self._flavor == _FINITE

    @property
    def is_infinity(self) -> bool:
        return self._flavor == _INF

    @property
    def is_undefined(self) -> bool:
        return self._flavor == _UNDEF

    @property
    def value(self) -> complex:
        if self._flavor != _FINITE:
            raise ValueError("value only defined for finite points")
        return self._value

    def __eq__(self, other) -> bool:
        if not isinstance(other, XComplex):
            if isinstance(other, (int, float, complex)):
                return self._flavor == _FINITE and self._value == complex(other)
            return NotImplemented
        if self._flavor != other._flavor:
            return False
        return self._flavor != _FINITE or self._value == other._value

    def __hash__(self):
        return hash((self._flavor, self._value if self._flavor == _FINITE else 0))

    def __repr__(self):
        if self._flavor == _INF:
            return "XComplex.INFINITY"
        if self._flavor == _UNDEF:
            return "XComplex.UNDEFINED"
        return f"XComplex.finite({self._value!r})"


XComplex.INFINITY = XComplex(_INF, complex(0.0))
XComplex.UNDEFINED = XComplex(_UNDEF, complex(0.0))


def guard(raw_re: float, raw_im: float) -> XComplex:
    """Map raw floating components onto the sphere.

    NaN components (indeterminate forms such as inf - inf) become
    undefined; overflowed components become the point at infinity.
    """
    if math.isnan(raw_re) or math.isnan(raw_im):
        return XComplex.UNDEFINED
    if math.isinf(raw_re) or math.isinf(raw_im):
        return XComplex.INFINITY
    return XComplex(_FINITE, complex(raw_re, raw_im))


def _sphere_norm(z: complex) -> float:
    # sqrt(1+|z|^2), stable against |z|^2 overflow
    m = abs(z)
    if m > 1e150:
        return math.inf
    return math.sqrt(1.0 + m * m)


def chordal(a: XComplex, b: XComplex) -> float:
    """Chordal distance, normalized so the sphere has diameter 2.

    d(z, w) = 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)), d(z, inf) = 2/sqrt(1+|z|^2).
    """
    if not isinstance(a, XComplex):
        a = XComplex.finite(a)
    if not isinstance(b, XComplex):
        b = XComplex.finite(b)
    if a.is_undefined or b.is_undefined:
        raise MetricUndefinedError("metric undefined")
    if a.is_infinity and b.is_infinity:
        return 0.0
    if a.is_infinity or b.is_infinity:
        z = b._value if a.is_infinity else a._value
        s = _sphere_norm(z)
        return 0.0 if math.isinf(s) else 2.0 / s
    za, zb = a._value, b._value
    sa, sb = _sphere_norm(za), _sphere_norm(zb)
    if math.isinf(sa) and math.isinf(sb):
        # both effectively at infinity at double precision
        return 0.0
    if math.isinf(sa):
        return 2.0 / sb
    if math.isinf(sb):
        return 2.0 / sa
    return 2.0 * abs(za - zb) / (sa * sb)
