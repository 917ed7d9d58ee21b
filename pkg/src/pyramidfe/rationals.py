"""Exact rational scalars.

All symbolic computation in this package runs over arbitrary-precision
rationals.  gmpy2's mpq is used when available (it is much faster than
fractions.Fraction for the dense eliminations done here); the stdlib
Fraction is a drop-in fallback.
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpq as _Q

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Q

    HAVE_GMPY2 = False

Q = _Q

QZERO = Q(0)
QONE = Q(1)


def as_q(value) -> Q:
    """Coerce ints, strings like '3/4', Fractions or mpq to Q."""
    if isinstance(value, _Q):
        return value
    if isinstance(value, str):
        return Q(value)
    if isinstance(value, tuple):
        return Q(value[0], value[1])
    return Q(value)


def q_str(value) -> str:
    """Canonical 'num/den' (or 'num' for integers) string form."""
    q = as_q(value)
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


def parse_q(text: str) -> Q:
    return Q(text)


def qfact(n: int) -> Q:
    return Q(math.factorial(n))


def qbinom(n: int, k: int) -> Q:
    return Q(math.comb(n, k))


def beta_moment(l: int, m: int) -> Q:
    """Exact value of the unit-interval moment of t^l (1-t)^m."""
    if l < 0 or m < 0:
        raise ValueError("beta moment needs nonnegative exponents")
    return Q(math.factorial(l) * math.factorial(m), math.factorial(l + m + 1))


def tail_moment(c: int, w: int) -> Q:
    """Exact value of the half-line moment of z^c / (1+z)^w.

    Finite exactly when w - c >= 2; the value is c! (w-c-2)! / (w-1)!.
    """
    if w - c < 2:
        raise ValueError("divergent half-line moment: z^%d/(1+z)^%d" % (c, w))
    return Q(math.factorial(c) * math.factorial(w - c - 2), math.factorial(w - 1))
