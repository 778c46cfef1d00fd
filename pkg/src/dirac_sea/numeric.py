"""Coefficient arithmetic for the two numeric modes.

Exact mode uses sympy's Gaussian rationals ``QQ_I``; float mode uses Python
``complex``.  Values of the two modes never mix.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

from sympy import QQ_I

from .errors import NumericModeMismatch

GaussianRational = type(QQ_I(0, 0))

EXACT_ZERO = QQ_I(0, 0)
EXACT_ONE = QQ_I(1, 0)


def _rational(v) -> Fraction:
    if isinstance(v, bool):
        raise NumericModeMismatch("booleans are not coefficients")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, numbers.Rational):
        return Fraction(int(v.numerator), int(v.denominator))
    raise NumericModeMismatch(f"{v!r} is not an exact rational")


def to_exact(z) -> GaussianRational:
    """Coerce ints, Fractions, ``"p/q"`` strings, ``(re, im)`` pairs or QQ_I values."""
    if isinstance(z, GaussianRational):
        return z
    if isinstance(z, (tuple, list)):
        re, im = z
        return QQ_I(_rational(re), _rational(im))
    if isinstance(z, (float, complex)):
        raise NumericModeMismatch(f"floating value {z!r} in exact mode")
    return QQ_I(_rational(z), 0)


def to_float(z) -> complex:
    if isinstance(z, GaussianRational):
        return complex(float(z.x), float(z.y))
    if isinstance(z, (tuple, list)):
        re, im = z
        return complex(float(Fraction(re) if isinstance(re, str) else re),
                       float(Fraction(im) if isinstance(im, str) else im))
    if isinstance(z, str):
        return complex(float(Fraction(z)))
    return complex(z)


def coerce(z, exact: bool):
    if exact:
        return to_exact(z)
    if isinstance(z, GaussianRational):
        raise NumericModeMismatch("exact value in float mode")
    return to_float(z)


def zero(exact: bool):
    return EXACT_ZERO if exact else 0j


def one(exact: bool):
    return EXACT_ONE if exact else 1 + 0j


def conj(z):
    if isinstance(z, GaussianRational):
        return QQ_I(z.x, -z.y)
    return z.conjugate()


def abs2(z):
    """``|z|^2`` as a Fraction in exact mode, a float otherwise."""
    if isinstance(z, GaussianRational):
        return Fraction(int(z.x.numerator), int(z.x.denominator)) ** 2 + \
            Fraction(int(z.y.numerator), int(z.y.denominator)) ** 2
    return abs(z) ** 2


def signed(z, sign: int):
    return z if sign > 0 else -z


def is_exact_value(z) -> bool:
    return isinstance(z, GaussianRational)


def _rat_json(q):
    f = Fraction(int(q.numerator), int(q.denominator))
    return f.numerator if f.denominator == 1 else str(f)


def to_json_pair(z):
    if isinstance(z, GaussianRational):
        return [_rat_json(z.x), _rat_json(z.y)]
    return [z.real, z.imag]


def from_json_pair(pair, exact: bool):
    if exact:
        if any(isinstance(v, float) for v in pair):
            raise NumericModeMismatch("float coefficient in an exact state")
        return to_exact(tuple(pair))
    return to_float(tuple(pair))
