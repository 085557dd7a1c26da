r"""Regularized incomplete gamma functions.

.. math::

    P(a, x) = \frac{1}{\Gamma(a)} \int_0^x s^{a-1} e^{-s} ds, \qquad Q = 1 - P.

The lower function is summed from its power series when ``x < a + 1`` and the
upper one from its continued fraction (modified Lentz) otherwise, so that the
returned quantity is always the one computed directly and the complement is
only formed where it is not small.  Relative accuracy target is 1e-12 over
``0 < a <= 200``, ``0 <= x <= 1e4``.
"""

import math

import numpy as np

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


def _log_prefactor(a, x):
    # log(x^a e^{-x} / Gamma(a))
    return a * math.log(x) - x - math.lgamma(a)


def _series_p(a, x):
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(_log_prefactor(a, x))


def _cf_q(a, x):
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(_log_prefactor(a, x)) * h


def _check(a, x):
    if not a > 0:
        raise ValueError(f"incomplete gamma requires a > 0, got {a!r}")
    if not x >= 0:
        raise ValueError(f"incomplete gamma requires x >= 0, got {x!r}")


def gammainc_lower(a, x):
    """Regularized lower incomplete gamma ``P(a, x)`` for scalar inputs."""
    a = float(a)
    x = float(x)
    _check(a, x)
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return _series_p(a, x)
    return 1.0 - _cf_q(a, x)


def gammainc_upper(a, x):
    """Regularized upper incomplete gamma ``Q(a, x)`` for scalar inputs."""
    a = float(a)
    x = float(x)
    _check(a, x)
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return 1.0 - _series_p(a, x)
    return _cf_q(a, x)


def gamma_interval_mass(a, x0, x1):
    """``P(a, x1) - P(a, x0)`` evaluated without cancellation where possible.

    This is the probability that a Gamma(a, 1) variable falls in ``[x0, x1)``;
    ``x1`` may be ``inf``.
    """
    if x1 <= x0:
        return 0.0
    if x0 >= a + 1.0:
        return gammainc_upper(a, x0) - gammainc_upper(a, x1)
    return gammainc_lower(a, x1) - gammainc_lower(a, x0)


gammainc_lower_v = np.vectorize(gammainc_lower, otypes=[float])
gammainc_upper_v = np.vectorize(gammainc_upper, otypes=[float])


def poisson_tail(mean, k):
    """``Pr[N > k]`` for ``N ~ Poisson(mean)``; equals ``P(k + 1, mean)``."""
    if mean == 0.0:
        return 0.0
    return gammainc_lower(k + 1, mean)
