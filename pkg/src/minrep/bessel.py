"""Renormalized Bessel functions.

The primitives are the renormalized forms

    Jt_lam(t) = (t/2)^(-lam) J_lam(t) = sum_k (-1)^k (t/2)^{2k} / (k! Gamma(lam+k+1)),
    It_a(z)   = (z/2)^(-a)   I_a(z)   = sum_k        (z/2)^{2k} / (k! Gamma(a+k+1)),
    Kt_a(z)   = (z/2)^(-a)   K_a(z),

which are entire (Jt, It) respectively smooth on z > 0 (Kt); the classical
J, I, K are derived views.  Small arguments use the power series, large
arguments standard asymptotic evaluation; the crossover sits at
|argument| = 2*|order| + 20 so both branches stay well conditioned.

For orders constructed from rationals the series branch accumulates exact
rationals (the Gamma factors are exact rational-sqrtpi values), so its
result is correctly rounded.  For other orders the series is summed in
floating point; setting MINREP_PRECISION=extended switches the term
recurrence to error-compensated double-word arithmetic.

Half-integer K-Bessel orders have exact closed forms

    Kt_{ell+1/2}(z) = sqrtpi * e^{-z} * P_ell(1/z),

with P_ell an integer-coefficient Laurent polynomial (P_{-1} = 1/2);
:func:`ktilde_half_closed` returns P_ell exactly.

The module also houses complex-argument evaluators (itilde_complex,
ktilde_complex) needed by the Cauchy coefficient extraction in specfun.
They are internal machinery: the public API is real-argument only.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special as sps

from .algebra import ExactScalar, Polynomial, gamma_exact

__all__ = [
    "BesselOrder",
    "itilde",
    "jtilde",
    "ktilde",
    "ktilde_half_closed",
]

SQRT_PI = math.sqrt(math.pi)


def _precision_mode() -> str:
    mode = os.environ.get("MINREP_PRECISION", "double")
    if mode not in ("double", "extended"):
        raise ValueError(f"MINREP_PRECISION must be 'double' or 'extended', got {mode!r}")
    return mode


@dataclass(frozen=True)
class BesselOrder:
    """A Bessel order with exact half-integer detection.

    `exact` is the order as a Fraction when the order was constructed from
    a rational (int, Fraction, or a float that is exactly k/2), else None.
    """

    value: float
    exact: Fraction | None = None

    @classmethod
    def coerce(cls, x) -> "BesselOrder":
        if isinstance(x, BesselOrder):
            return x
        if isinstance(x, (int, Fraction)):
            f = Fraction(x)
            return cls(float(f), f)
        if isinstance(x, float):
            f = Fraction(x)
            # floats that are exactly a half-integer keep the exact tag
            return cls(x, f if f.denominator in (1, 2) else None)
        raise TypeError(f"cannot interpret {x!r} as a Bessel order")

    @property
    def is_half_integer(self) -> bool:
        return self.exact is not None and self.exact.denominator == 2

    @property
    def is_integer(self) -> bool:
        return self.exact is not None and self.exact.denominator == 1

    @property
    def ell(self) -> int:
        """Integer part ell with value = ell + 1/2; half-integers only."""
        if not self.is_half_integer:
            raise ValueError(f"order {self.value} is not a half-integer")
        return (self.exact.numerator - 1) // 2

    @property
    def crossover(self) -> float:
        return 2.0 * abs(self.value) + 20.0


# ---------------------------------------------------------------------------
# series engines


def _series_rational(nu: Fraction, t: float, alternating: bool) -> float:
    """sum_k s^k (t/2)^{2k} / (k! Gamma(nu+k+1)) by exact rational arithmetic.

    Gamma(nu+k+1) is rational or rational*sqrtpi uniformly in k, so the sum
    is (exact rational) * sqrtpi^{-g}; only the final conversion rounds.
    """
    q = Fraction(t) ** 2 / 4
    g0 = gamma_exact(nu + 1)
    ((grade, r0),) = g0.terms()
    acc = Fraction(0)
    term = 1 / r0
    k = 0
    max_term = term
    while True:
        acc += -term if (alternating and k % 2 == 1) else term
        k += 1
        term = term * q / (k * (nu + k))  # Gamma ratio: Gamma(nu+k+1)/Gamma(nu+k) = nu+k
        if term > max_term:
            max_term = term
        if k > float(t) / 2 + 2 and term < max_term * Fraction(1, 10**30) + Fraction(1, 10**60):
            break
        if k > 4000:  # unreachable for arguments below the crossover
            raise ArithmeticError("renormalized Bessel series did not converge")
    return float(acc) * math.pi ** (-grade / 2.0)


def _two_prod(a: float, b: float):
    """Dekker product: a*b = hi + lo exactly."""
    hi = a * b
    c = 134217729.0 * a  # 2^27 + 1 splitter
    a_hi = c - (c - a)
    a_lo = a - a_hi
    c = 134217729.0 * b
    b_hi = c - (c - b)
    b_lo = b - b_hi
    lo = ((a_hi * b_hi - hi) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return hi, lo


def _series_float(nu: float, t: float, alternating: bool) -> float:
    """Floating series for non-rational orders; fsum keeps summation exact."""
    q = t * t / 4.0
    extended = _precision_mode() == "extended"
    terms = []
    term = 1.0 / math.gamma(nu + 1.0)
    term_lo = 0.0
    k = 0
    max_term = term
    while True:
        val = term + term_lo if extended else term
        terms.append(-val if (alternating and k % 2 == 1) else val)
        k += 1
        r = q / (k * (nu + k))
        if extended:
            hi, lo = _two_prod(term, r)
            term, term_lo = hi, lo + term_lo * r
        else:
            term = term * r
        if abs(term) > max_term:
            max_term = abs(term)
        if k > t / 2 + 2 and abs(term) < 1e-30 * max_term + 1e-320:
            break
        if k > 4000:
            raise ArithmeticError("renormalized Bessel series did not converge")
    return math.fsum(terms)


def _series_value(order: BesselOrder, t: float, alternating: bool) -> float:
    if order.exact is not None:
        return _series_rational(order.exact, t, alternating)
    return _series_float(order.value, t, alternating)


# ---------------------------------------------------------------------------
# public evaluators


def jtilde(order, t: float) -> float:
    """Renormalized J-Bessel (t/2)^(-lam) J_lam(t) on t >= 0, lam > -1."""
    lam = BesselOrder.coerce(order)
    if lam.value <= -1:
        raise ValueError(f"jtilde needs order > -1, got {lam.value}")
    t = float(t)
    if t < 0:
        raise ValueError(f"jtilde needs t >= 0, got {t}")
    if t == 0.0:
        return 1.0 / math.gamma(lam.value + 1.0)
    if t < lam.crossover:
        return _series_value(lam, t, alternating=True)
    return float(sps.jv(lam.value, t)) * (t / 2.0) ** (-lam.value)


def itilde(order, z: float) -> float:
    """Renormalized I-Bessel (z/2)^(-a) I_a(z); entire and even in z."""
    a = BesselOrder.coerce(order)
    if a.value <= -1:
        raise ValueError(f"itilde needs order > -1, got {a.value}")
    z = abs(float(z))
    if z == 0.0:
        return 1.0 / math.gamma(a.value + 1.0)
    if z < a.crossover:
        return _series_value(a, z, alternating=False)
    # scaled I avoids overflow until exp(z) itself overflows
    return float(sps.ive(a.value, z)) * math.exp(z) * (z / 2.0) ** (-a.value)


def ktilde(order, z: float) -> float:
    """Renormalized K-Bessel (z/2)^(-a) K_a(z) on z > 0.

    Half-integer orders use the exact closed form sqrtpi e^{-z} P_ell(1/z);
    other orders use standard series/asymptotic evaluation.
    """
    a = BesselOrder.coerce(order)
    z = float(z)
    if z <= 0:
        raise ValueError(f"ktilde needs z > 0, got {z}")
    if a.is_half_integer:
        ell = a.ell
        if ell >= -1:
            return _ktilde_half_value(ell, z)
        # K_{-a} = K_a: Kt_a(z) = (z/2)^{-2a} Kt_{-a}(z) for a < -1/2
        return (z / 2.0) ** (-2.0 * a.value) * _ktilde_half_value(-ell - 1, z)
    return float(sps.kv(a.value, z)) * (z / 2.0) ** (-a.value)


def ktilde_half_closed(ell: int) -> Polynomial:
    """Exact Laurent polynomial P_ell with Kt_{ell+1/2}(z) = sqrtpi e^{-z} P_ell(1/z).

    P_ell(1/z) = sum_{k=0}^{ell} (ell+k)! 2^{ell-k} / (k! (ell-k)!) z^{-ell-1-k};
    for ell = -1 the constant 1/2.
    """
    if not isinstance(ell, int) or ell < -1:
        raise ValueError(f"ktilde_half_closed needs integer ell >= -1, got {ell}")
    if ell == -1:
        return Polynomial.constant(Fraction(1, 2), ("z",))
    terms = {}
    for k in range(ell + 1):
        c = Fraction(
            math.factorial(ell + k) * 2 ** (ell - k),
            math.factorial(k) * math.factorial(ell - k),
        )
        terms[(-ell - 1 - k,)] = c
    return Polynomial(("z",), terms)


def _half_poly_coeffs(ell: int) -> list:
    """(exponent, float coefficient) pairs of P_ell, cached."""
    key = ell
    got = _HALF_CACHE.get(key)
    if got is None:
        poly = ktilde_half_closed(ell)
        got = [(e[0], float(c)) for e, c in sorted(poly.terms().items())]
        _HALF_CACHE[key] = got
    return got


_HALF_CACHE: dict = {}


def _ktilde_half_value(ell: int, z: float) -> float:
    acc = 0.0
    for e, c in _half_poly_coeffs(ell):
        acc += c * z**e
    return SQRT_PI * math.exp(-z) * acc


# ---------------------------------------------------------------------------
# validation-only series branch for K (reflection formula, non-integer order)


def _itilde_any_order(alpha: float, z: float) -> float:
    """It_alpha series without the alpha > -1 restriction (alpha not a
    nonpositive integer); only the reflection cross-check needs this."""
    q = z * z / 4.0
    term = 1.0 / math.gamma(alpha + 1.0)
    terms = [term]
    for k in range(1, 500):
        term = term * q / (k * (alpha + k))
        terms.append(term)
        if abs(term) < 1e-30 * max(abs(x) for x in terms):
            return math.fsum(terms)
    raise ArithmeticError("series did not converge")


def _ktilde_series(alpha: float, z: float) -> float:
    """Ascending-series K via the reflection formula, small z only.

    Kt_a = pi/(2 sin(pi a)) [ (z/2)^{-2a} It_{-a}(z) - It_a(z) ], a not an
    integer.  Cancellation grows like e^{2z}, so this branch is only used
    to cross-check the production route on a small-z window.
    """
    a = BesselOrder.coerce(alpha)
    if a.is_integer:
        raise ValueError("reflection series needs a non-integer order")
    s = math.pi / (2.0 * math.sin(math.pi * a.value))
    return s * (
        (z / 2.0) ** (-2.0 * a.value) * _itilde_any_order(-a.value, z)
        - _itilde_any_order(a.value, z)
    )


# ---------------------------------------------------------------------------
# complex-argument internals (Cauchy extraction support)


def itilde_complex(alpha: float, z):
    """It_alpha at complex argument(s); plain vectorized series.

    The series is even in z with positive coefficients, so cancellation is
    bounded by e^{|z| - |Re z|}; callers keep |z| moderate (<= ~80).
    """
    z = np.asarray(z, dtype=complex)
    q = z * z / 4.0
    term = np.full(z.shape, 1.0 / math.gamma(alpha + 1.0), dtype=complex)
    acc = term.copy()
    for k in range(1, 600):
        term = term * q / (k * (alpha + k))
        acc += term
        if np.max(np.abs(term)) <= 1e-20 * max(np.max(np.abs(acc)), 1e-300):
            return acc
    raise ArithmeticError("itilde_complex series did not converge; |z| too large")


def _ktilde_half_complex(ell: int, z):
    acc = np.zeros(z.shape, dtype=complex)
    for e, c in _half_poly_coeffs(ell):
        acc += c * z ** float(e)
    return SQRT_PI * np.exp(-z) * acc


_GL_CACHE: dict = {}


def _leggauss(n: int):
    got = _GL_CACHE.get(n)
    if got is None:
        got = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = got
    return got


def ktilde_complex(order: float, z):
    """Kt_order at complex argument(s) with Re z > 0.

    Half-integer orders use the exact closed form.  Otherwise K_nu(z) =
    int_0^infty exp(-z cosh s) cosh(nu s) ds is integrated by composite
    Gauss-Legendre after factoring out e^{-z}; in the sector
    |Im z| <= 0.6 Re z reached by the Cauchy circles the phase
    Im z (cosh s - 1) stays within a few cycles, so a fixed node schedule
    converges superalgebraically.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(z.real <= 0):
        raise ValueError("ktilde_complex needs Re z > 0")
    o = BesselOrder.coerce(float(order)) if not isinstance(order, BesselOrder) else order
    if o.is_half_integer and o.ell >= -1:
        out = _ktilde_half_complex(o.ell, z)
        return out[0] if scalar else out

    nu = o.value
    a_min = float(np.min(z.real))
    a_max = float(np.max(z.real))
    # range: e^{-a_min (cosh S - 1)} cosh(nu S) below 1e-20 of the scale
    margin = 48.0 + 8.0 * abs(nu)
    S = math.acosh(1.0 + margin / a_min)
    panels = max(8, math.ceil(S * max(1.0, math.sqrt(a_max) / 6.0)))
    nodes, weights = _leggauss(32)
    total = np.zeros(z.shape, dtype=complex)
    width = S / panels
    for p in range(panels):
        mid = (p + 0.5) * width
        s = mid + 0.5 * width * nodes
        w = 0.5 * width * weights
        # integrand scaled by e^{z}: exp(-z (cosh s - 1)) cosh(nu s)
        c = np.cosh(s) - 1.0
        f = np.exp(-np.outer(z, c)) * np.cosh(nu * s)[None, :]
        total += f @ w
    out = total * np.exp(-z) * (z / 2.0) ** (-nu)
    return out[0] if scalar else out
