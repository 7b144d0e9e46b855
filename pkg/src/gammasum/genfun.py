"""The gamma-CDF generating function G(a; x, y) = sum_n P(a+n, x) y^n.

For |y| < 1 the coefficients P(a+n, x) lie in [0, 1] and decrease in n,
so the series converges at least geometrically and its truncation error
is bounded by the next coefficient times the geometric tail of |y|.

Three independent evaluators are provided. ``g_series`` sums the series
directly with a stable coefficient recurrence and is the one used on hot
paths. ``g_closed`` and ``g_closed_alt`` evaluate two closed forms built
on the analytically continued incomplete gamma function; they exist to
cross-check ``g_series`` and are deliberately kept on a different code
path. ``g_at_one`` evaluates the finite limit at y = 1, where the factor
(1 - y)^-1 of the closed forms becomes removable.

All functions are pure; no shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, PrecisionError
from .special import (
    EPS,
    _kummer_m,
    _log_front,
    gamma_pdf,
    reg_lower_gamma,
)

_MAX_TERMS_DEFAULT = 10000
_HARD_CAP = 200000


@dataclass(frozen=True)
class GfunResult:
    """A series value with the number of terms used and a truncation bound.

    tail_bound is an upper bound on the absolute truncation error of the
    returned partial sum; it is always nonnegative.
    """

    value: complex
    terms_used: int
    tail_bound: float


def _cdf_coefficient_stream(a, x):
    """Yield (P(a+n, x), cap) pairs for n = 0, 1, 2, ... indefinitely.

    Uses the upward recurrence P(a+n+1, x) = P(a+n, x) - t_n with
    t_n = x^(a+n) e^(-x) / Gamma(a+n+1). The subtraction loses at most a
    few ulps of P(a, x) in absolute terms, which is what CDF accuracy
    needs, but it also stalls near that roundoff floor instead of
    decaying to zero. cap is a stall-free upper bound on the true
    coefficient, t_n / (1 - x/(a+n+1)) once a+n+1 > x, built from the
    multiplicative t recurrence that underflows cleanly; truncation
    decisions must use cap, not the coefficient itself.
    """
    coef = reg_lower_gamma(a, x)
    t = 0.0 if x == 0.0 else math.exp(_log_front(a, x)) / a
    n = 0
    while True:
        denom = a + n + 1.0
        cap = min(coef, t / (1.0 - x / denom)) if denom > x else coef
        yield coef, cap
        coef -= t
        if coef < 0.0:
            coef = 0.0
        n += 1
        t *= x / (a + n)


def _series_value(a, x, y, tol):
    """Partial sum of the generating series, truncated by the geometric
    tail bound P(a+N+1, x) |y|^(N+1) / (1 - |y|) < tol. Requires |y| < 1
    but imposes no further cap; used internally where the contour radius
    may approach 1."""
    absy = abs(y)
    if absy >= 1.0:
        raise DomainError("series evaluation requires |y| < 1")
    stream = _cdf_coefficient_stream(a, x)
    coef, _ = next(stream)
    total = 0.0 + 0.0j
    ypow = 1.0 + 0.0j
    apow = absy
    geom = 1.0 / (1.0 - absy)
    n = 0
    while True:
        total += coef * ypow
        coef, cap = next(stream)
        bound = cap * apow * geom
        if bound < tol or cap <= 1e-300:
            return total, n + 1, bound
        n += 1
        if n >= _HARD_CAP:
            raise ConvergenceError(
                f"generating series needed more than {_HARD_CAP} terms"
            )
        ypow *= y
        apow *= absy


def _geometric_coefficients(a, x, absy, tol):
    """Coefficients P(a+n, x) truncated so that the geometric tail bound
    at radius absy stays below tol. Returns a float array for vectorized
    polynomial evaluation over many points on the circle |y| = absy."""
    if absy >= 1.0:
        raise DomainError("coefficient truncation requires |y| < 1")
    stream = _cdf_coefficient_stream(a, x)
    first, _ = next(stream)
    coeffs = [first]
    apow = absy
    geom = 1.0 / (1.0 - absy)
    while True:
        nxt, cap = next(stream)
        if cap * apow * geom < tol or cap <= 1e-300:
            return np.asarray(coeffs)
        coeffs.append(nxt)
        apow *= absy
        if len(coeffs) > _HARD_CAP:
            raise ConvergenceError("coefficient truncation bound was not reached")


def _horner(coeffs, y):
    """Evaluate sum_n coeffs[n] y^n for an array of complex points y."""
    acc = np.full_like(y, coeffs[-1], dtype=complex)
    for cf in coeffs[-2::-1]:
        acc = acc * y + cf
    return acc


def g_series(a, x, y, tol=1e-12, max_terms=_MAX_TERMS_DEFAULT):
    """Direct summation of G(a; x, y) = sum_n P(a+n, x) y^n.

    Args:
        a: shape, a > 0.
        x: evaluation point, x >= 0.
        y: complex point with |y| <= 1 - 1e-6.
        tol: requested absolute truncation bound, at least 1e-15.
        max_terms: cap on the number of series terms.

    Returns:
        GfunResult with the partial sum, terms used, and the geometric
        tail bound at truncation.

    Raises:
        DomainError: out-of-domain a, x, y, or tol.
        ConvergenceError: if max_terms is exceeded.
    """
    if not (a > 0.0) or not math.isfinite(a):
        raise DomainError(f"g_series requires a > 0, got {a!r}")
    if not (x >= 0.0) or not math.isfinite(x):
        raise DomainError(f"g_series requires x >= 0, got {x!r}")
    y = complex(y)
    if not (math.isfinite(y.real) and math.isfinite(y.imag)):
        raise DomainError("g_series requires finite y")
    if abs(y) > 1.0 - 1e-6:
        raise DomainError("g_series requires |y| <= 1 - 1e-6")
    if tol < 1e-15:
        raise DomainError("g_series requires tol >= 1e-15")
    absy = abs(y)
    stream = _cdf_coefficient_stream(a, x)
    coef, _ = next(stream)
    total = 0.0 + 0.0j
    ypow = 1.0 + 0.0j
    apow = absy
    geom = 1.0 / (1.0 - absy) if absy > 0.0 else 0.0
    n = 0
    while True:
        total += coef * ypow
        coef, cap = next(stream)
        bound = cap * apow * geom
        if bound < tol or cap <= 1e-300:
            return GfunResult(total, n + 1, bound)
        n += 1
        if n >= max_terms:
            raise ConvergenceError(
                f"g_series needed more than {max_terms} terms for |y| = {absy:.6g}"
            )
        ypow *= y
        apow *= absy


def g_closed(a, x, y, tol=1e-12):
    """Closed form (1-y)^-1 (P(a, x) - y^(1-a) e^((y-1)x) P(a, xy)).

    Evaluated with the exponential factors fused analytically:

        y^(1-a) e^((y-1)x) P(a, xy) = y x^a e^(-x) M(1, a+1, xy) / Gamma(a+1)

    which is an exact identity (the principal powers combine because
    x > 0), and is the numerically usable form: the literal composition
    multiplies e^(|re(xy)|)-sized intermediates that the fused form never
    creates. Kept as an independent cross-check of g_series.

    Raises:
        DomainError: |y| >= 1 or |1 - y| <= 1e-4.
        PrecisionError: if the estimated rounding error of the confluent
            series, propagated to the result, exceeds 1e-9.
    """
    if not (a > 0.0) or not math.isfinite(a):
        raise DomainError(f"g_closed requires a > 0, got {a!r}")
    if not (x >= 0.0) or not math.isfinite(x):
        raise DomainError(f"g_closed requires x >= 0, got {x!r}")
    y = complex(y)
    if abs(y) >= 1.0:
        raise DomainError("g_closed requires |y| < 1")
    if abs(1.0 - y) <= 1e-4:
        raise DomainError("g_closed requires |1 - y| > 1e-4; use g_at_one near 1")
    if x == 0.0:
        return 0.0 + 0.0j
    total, magsum = _kummer_m(a + 1.0, x * y, min(tol, 1e-15))
    scale = math.exp(_log_front(a, x)) / a
    err = EPS * magsum * scale / abs(1.0 - y)
    if err > 1e-9:
        raise PrecisionError(
            f"g_closed cancellation estimate {err:.3g} exceeds 1e-9"
        )
    return (reg_lower_gamma(a, x) - y * scale * total) / (1.0 - y)


def g_closed_alt(a, x, y, tol=1e-12):
    """Second closed form, valid for a >= 1 with the convention P(0, .) = 1:

        (1-y)^-1 (P(a-1, x) - y^(1-a) e^((y-1)x) P(a-1, xy))

    computed with the same exponential fusion as g_closed, which reduces
    the subtracted term to gamma_pdf(a, x) M(1, a, xy). Independent of
    g_closed because it rests on the shifted-shape identity.
    """
    if not (a >= 1.0) or not math.isfinite(a):
        raise DomainError(f"g_closed_alt requires a >= 1, got {a!r}")
    if not (x >= 0.0) or not math.isfinite(x):
        raise DomainError(f"g_closed_alt requires x >= 0, got {x!r}")
    y = complex(y)
    if abs(y) >= 1.0:
        raise DomainError("g_closed_alt requires |y| < 1")
    if abs(1.0 - y) <= 1e-4:
        raise DomainError("g_closed_alt requires |1 - y| > 1e-4")
    pm1 = 1.0 if a == 1.0 else reg_lower_gamma(a - 1.0, x)
    pdf_term = gamma_pdf(a, x)
    total, magsum = _kummer_m(a, x * y, min(tol, 1e-15))
    err = EPS * magsum * pdf_term / abs(1.0 - y)
    if err > 1e-9:
        raise PrecisionError(
            f"g_closed_alt cancellation estimate {err:.3g} exceeds 1e-9"
        )
    return (pm1 - pdf_term * total) / (1.0 - y)


def g_at_one(a, x):
    """Limit of G(a; x, y) as y -> 1:

        x g_a(x) + (1 + x - a) P(a, x)

    with g_a the unit-scale gamma density. Finite for all a > 0, x >= 0.
    """
    if not (a > 0.0) or not math.isfinite(a):
        raise DomainError(f"g_at_one requires a > 0, got {a!r}")
    if not (x >= 0.0) or not math.isfinite(x):
        raise DomainError(f"g_at_one requires x >= 0, got {x!r}")
    pdf_part = 0.0 if x == 0.0 else x * gamma_pdf(a, x)
    return pdf_part + (1.0 + x - a) * reg_lower_gamma(a, x)


def g_eval(a, x, y, tol=1e-12):
    """Dispatcher: g_series away from the unit circle, g_at_one at y = 1.

    The annulus 1 - 1e-6 < |y| < 1 off the real point 1 is rejected; the
    window keeps the closed forms' (1 - y)^-1 below 1e6 and no caller
    needs that region.
    """
    y = complex(y)
    if not (math.isfinite(y.real) and math.isfinite(y.imag)):
        raise DomainError("g_eval requires finite y")
    if abs(y) > 1.0:
        raise DomainError("g_eval requires |y| <= 1")
    if abs(1.0 - y) < 1e-6 and y.imag == 0.0:
        return complex(g_at_one(a, x))
    if abs(y) <= 1.0 - 1e-6:
        return g_series(a, x, y, tol).value
    raise DomainError("g_eval is undefined for 1 - 1e-6 < |y| < 1 away from y = 1")
