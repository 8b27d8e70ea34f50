"""Self-contained special-function kernel with per-call error bounds.

Covers exactly what the series evaluators need: Riemann zeta at integers,
real polylogarithms plus their continuation across the cut at x > 1,
Clausen functions, the incomplete gamma function at integer order, the
entire exponential integral Ein, and the trigamma function.

Algorithm choices worth noting:

* zeta at even integers comes from the exact Bernoulli relation
  zeta(2n) = (-1)^{n+1} (2 pi)^{2n} B_{2n} / (2 (2n)!), with B_{2n} kept
  as exact rationals until the final rounding; odd (and general) values
  use the alternating eta series pushed through CRVZ acceleration.
* Cl_2 is evaluated by adaptive Gauss-Legendre quadrature of its integral
  definition, with the logarithmic endpoint singularity split off in
  closed form.  Cl_n for n >= 3 sums the defining Fourier series with an
  iterated-Abel tail correction.  Neither route goes through any zeta
  power-series expansion, so these values can serve as independent checks
  of such expansions.
* Ein switches from its power series to gamma + ln x + E1(x) at x = 8;
  beyond that point the alternating series loses digits to cancellation
  while the E1 continued fraction converges quickly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from . import sequences
from .accel import (
    NeumaierSum,
    adaptive_gauss_legendre,
    crvz_sum,
    crvz_terms_for,
    fourier_tail,
    power_tail,
)
from .errors import DomainError, PoleError
from .evaluation import EPS, Evaluation

TAU = 2.0 * math.pi

_EIN_SWITCH = 8.0
_TRIGAMMA_SHIFT = 30
_CL2_SERIES_CUTOFF = 1e-4
_FOURIER_K = 1500


# ---------------------------------------------------------------------------
# Riemann zeta at integer arguments
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _zeta_even_exact(s: int) -> float:
    # zeta(s) / pi^s as an exact rational, rounded once at the end
    n = s // 2
    ratio = Fraction((-1) ** (n + 1) * 2 ** (s - 1), math.factorial(s)) * sequences.bernoulli_exact(s)
    return float(ratio) * math.pi ** s


@lru_cache(maxsize=None)
def _zeta_eta_value(s: int) -> tuple[float, float, int]:
    # eta(s) = sum (-1)^{k-1} k^-s accelerated, then zeta = eta/(1-2^{1-s})
    n = crvz_terms_for(1.0, 1e-17)
    a = [(k + 1.0) ** -s for k in range(n)]
    eta, err = crvz_sum(a, n)
    scale = 1.0 / (1.0 - 2.0 ** (1 - s))
    return eta * scale, err * abs(scale) + 4.0 * EPS * abs(eta * scale), n


def zeta_int(s: int) -> Evaluation:
    """zeta(s) for integer s >= 2 with relative accuracy ~1e-15."""
    if s < 2:
        raise DomainError("zeta_int requires s >= 2")
    if s > 64:
        # 2^-s alone is below 5.4e-20: a couple of terms of the defining
        # series pin the value to full precision
        acc = NeumaierSum()
        j = 1
        while True:
            t = j ** (-float(s))
            acc.add(t)
            if t < 1e-20:
                break
            j += 1
        tail = 2.0 * (j + 1.0) ** (-float(s))
        return Evaluation(acc.value, tail + acc.round_off, j)
    if s % 2 == 0:
        v = _zeta_even_exact(s)
        return Evaluation(v, 4.0 * EPS * v, s // 2)
    v, err, n = _zeta_eta_value(s)
    return Evaluation(v, err, n)


@lru_cache(maxsize=None)
def zeta_minus_one(s: int) -> float:
    """zeta(s) - 1 with full relative accuracy, for Kummer-split engines."""
    if s < 2:
        raise DomainError("needs s >= 2")
    if s < 20:
        return zeta_int(s).value - 1.0
    acc = NeumaierSum()
    j = 2
    while True:
        t = j ** (-float(s))
        acc.add(t)
        if t < 1e-25 * acc.value:
            break
        j += 1
    return acc.value


# ---------------------------------------------------------------------------
# Polylogarithms
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _polylog_cached(s: int, x: float, terms: int | None) -> Evaluation:
    if x == 0.0:
        return Evaluation(0.0, 0.0, 0)
    if s == 1:
        v = -math.log1p(-x)
        return Evaluation(v, 2.0 * EPS * abs(v), 1)
    ax = abs(x)
    if x <= -0.9:
        # alternating with totally monotone magnitudes: accelerate
        n = terms or crvz_terms_for(ax, 1e-17)
        a = [ax ** (k + 1) / (k + 1.0) ** s for k in range(n)]
        v, err = crvz_sum(a, n)
        return Evaluation(-v, err, n)
    acc = NeumaierSum()
    term = x
    k = 1
    acc.add(x)
    while True:
        bound = ax ** (k + 1) / ((1.0 - ax) * (k + 1.0) ** s)
        if terms is None:
            if bound < 1e-17 * max(abs(acc.value), ax) or k > 200000:
                break
        elif k >= terms:
            break
        k += 1
        term *= x * ((k - 1.0) / k) ** s
        acc.add(term)
    return Evaluation(acc.value, bound + acc.round_off, k)


def polylog(s: int, x: float, terms: int | None = None) -> Evaluation:
    """Li_s(x) = sum_{k>=1} x^k / k^s for integer s >= 1 on -1 <= x < 1.

    The error bound is the geometric tail |x|^{K+1}/((1-|x|)(K+1)^s) plus
    rounding, except at x = -1 where the alternating series is accelerated
    and carries the accelerator's bound.  Li_1 is returned as -ln(1-x).
    """
    if s < 1:
        raise DomainError("polylog requires s >= 1")
    if x >= 1.0:
        raise DomainError(
            "polylog is defined for -1 <= x < 1; use polylog_cut for x > 1"
            " (Li_s(1) is zeta_int(s))"
        )
    if x < -1.0:
        raise DomainError("polylog requires x >= -1")
    return _polylog_cached(s, x, terms)


def polylog_cut(s: int, x: float, branch: str) -> Evaluation:
    """Li_s(x +- i0) for real x > 1, s in {2, 3}.

    Real part via the inversion through Li_s(1/x); imaginary part is the
    half-residue +- pi ln^{s-1}(x)/Gamma(s), with the sign picked by
    branch = "upper" (limit from above the cut) or "lower" (from below).
    """
    if s not in (2, 3):
        raise DomainError("polylog_cut supports s in {2, 3}")
    if x <= 1.0:
        raise DomainError("polylog_cut requires x > 1")
    if branch not in ("upper", "lower"):
        raise DomainError("branch must be 'upper' or 'lower'")
    L = math.log(x)
    inv = polylog(s, 1.0 / x)
    pi2 = math.pi * math.pi
    if s == 2:
        re = pi2 / 3.0 - 0.5 * L * L - inv.value
        im = math.pi * L
    else:
        re = inv.value + pi2 * L / 3.0 - L ** 3 / 6.0
        im = 0.5 * math.pi * L * L
    if branch == "lower":
        im = -im
    err = inv.err_bound + 8.0 * EPS * (abs(re) + abs(im) + pi2)
    return Evaluation(complex(re, im), err, inv.terms_used)


# ---------------------------------------------------------------------------
# Clausen functions
# ---------------------------------------------------------------------------

def _cl2_integrand(t: float) -> float:
    # ln(sin(t/2)/(t/2)), the smooth remainder after splitting off ln(t)
    if t < _CL2_SERIES_CUTOFF:
        h = 0.5 * t
        h2 = h * h
        return -h2 / 6.0 - h2 * h2 / 180.0
    return math.log(math.sin(0.5 * t) / (0.5 * t))


def _clausen2_positive(t: float) -> Evaluation:
    # Cl_2 on (0, pi] via -int_0^t ln(2 sin(u/2)) du with the log endpoint
    # singularity integrated in closed form: int_0^t ln(u) du = t(ln t - 1)
    smooth, qerr, nodes = adaptive_gauss_legendre(_cl2_integrand, 0.0, t, tol=1e-15)
    value = -smooth - t * (math.log(t) - 1.0)
    return Evaluation(value, qerr + 8.0 * EPS * (abs(value) + t), nodes)


def _clausen_fourier(n: int, t: float, terms: int | None) -> Evaluation:
    # direct Fourier sum with an iterated-Abel tail; t in (0, pi]
    K = terms or _FOURIER_K
    s = math.sin(0.5 * t)
    if s < 0.02:
        K = min(300000, max(K, int(50.0 / max(s, 1e-7))))
    acc = NeumaierSum()
    even = n % 2 == 0
    for k in range(1, K + 1):
        kk = float(k)
        c = math.sin(kk * t) if even else math.cos(kk * t)
        acc.add(c / kk ** n)
    tail, terr = fourier_tail(t, n, K + 1)
    part = tail.imag if even else tail.real
    value = acc.value + part
    return Evaluation(value, terr + acc.round_off, K)


def _zeta_by_direct_sum(n: int) -> Evaluation:
    # sum k^-n by raw summation plus an Euler-Maclaurin tail; used for the
    # Fourier series at angle 0 so the value stays independent of zeta_int
    K = 64
    acc = NeumaierSum()
    for k in range(1, K + 1):
        acc.add(float(k) ** -n)
    tail, terr = power_tail(n, K + 1)
    return Evaluation(acc.value + tail, terr + acc.round_off, K)


def clausen(n: int, theta: float, terms: int | None = None) -> Evaluation:
    """Clausen function Cl_n(theta).

    Defined by the Fourier series sum sin(k theta)/k^n (n even) or
    sum cos(k theta)/k^n (n odd); Cl_1 in closed form, Cl_2 by quadrature
    of its log-sine integral, Cl_{n>=3} by tail-corrected Fourier
    summation.  theta is reduced modulo 2 pi and the parity rules
    (Cl_even odd, Cl_odd even) applied first.
    """
    if n < 1:
        raise DomainError("clausen requires n >= 1")
    r = math.remainder(theta, TAU)  # [-pi, pi]
    even = n % 2 == 0
    sign = 1.0
    if r < 0.0:
        r = -r
        if even:
            sign = -1.0
    red_err = 4.0 * EPS * abs(theta)  # ulp noise from the angle reduction
    if n == 1:
        if r < 1e-12:
            raise PoleError("Cl_1 has logarithmic poles at multiples of 2*pi")
        v = -math.log(2.0 * math.sin(0.5 * r))
        return Evaluation(v, 4.0 * EPS * (1.0 + abs(v)) + red_err / r, 1)
    if r == 0.0:
        if even:
            return Evaluation(0.0, 0.0, 0)
        e = _zeta_by_direct_sum(n)
        return Evaluation(e.value, e.err_bound, e.terms_used)
    if n == 2:
        e = _clausen2_positive(r)
        slope_err = red_err * (1.0 + abs(math.log(2.0 * math.sin(0.5 * r))))
        return Evaluation(sign * e.value, e.err_bound + slope_err, e.terms_used)
    e = _clausen_fourier(n, r, terms)
    return Evaluation(sign * e.value, e.err_bound + red_err * _zeta_even_exact(2), e.terms_used)


# ---------------------------------------------------------------------------
# Incomplete gamma at integer order, Ein, trigamma
# ---------------------------------------------------------------------------

def inc_gamma_int(j: int, x: float) -> Evaluation:
    """Upper incomplete gamma Gamma(j, x) = (j-1)! e^-x sum_{i<j} x^i/i!."""
    if j < 1:
        raise DomainError("inc_gamma_int requires integer j >= 1")
    if x < 0.0:
        raise DomainError("inc_gamma_int requires x >= 0")
    if x > 700.0:
        # e^-x underflows; the value is below ~1e-290
        bound = math.exp(-x + (j - 1) * math.log(max(x, 1.0)) + 1.0)
        return Evaluation(0.0, bound, j)
    term = 1.0
    acc = NeumaierSum()
    acc.add(1.0)
    for i in range(1, j):
        term *= x / i
        acc.add(term)
    v = math.factorial(j - 1) * math.exp(-x) * acc.value
    return Evaluation(v, 4.0 * EPS * v + acc.round_off * math.factorial(j - 1), j)


def _e1_continued_fraction(x: float) -> float:
    # modified Lentz on E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 200):
        a = -float(i * i)
        b += 2.0
        d = a * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + a / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def ein(x: float, terms: int | None = None) -> Evaluation:
    """Entire exponential integral Ein(x) = int_0^x (1 - e^-t)/t dt, x >= 0."""
    if x < 0.0:
        raise DomainError("ein requires x >= 0")
    if x == 0.0:
        return Evaluation(0.0, 0.0, 0)
    if x <= _EIN_SWITCH:
        acc = NeumaierSum()
        t = 1.0
        k = 1
        max_term = 0.0
        while True:
            t *= x / k
            term = t / k
            acc.add(term if k % 2 == 1 else -term)
            max_term = max(max_term, abs(term))
            nxt = abs(t * x / ((k + 1.0) * (k + 1.0)))
            if terms is None:
                if nxt < 1e-18 * max(1.0, abs(acc.value)):
                    break
            elif k >= terms:
                break
            k += 1
        err = nxt + 2.0 * EPS * max_term * math.sqrt(k) + acc.round_off
        return Evaluation(acc.value, err, k)
    gamma = 0.5772156649015328606065120900824024  # Euler-Mascheroni
    if x > 700.0:
        e1 = 0.0
        e1_err = 1e-300
    else:
        e1 = _e1_continued_fraction(x)
        e1_err = 8.0 * EPS * (e1 + math.exp(-x))
    v = gamma + math.log(x) + e1
    return Evaluation(v, e1_err + 4.0 * EPS * abs(v), 1)


def trigamma(q: float, shift: int | None = None) -> Evaluation:
    """psi'(q) = sum_{n>=0} 1/(q+n)^2 for 0 < q <= 1.

    Sums the first terms directly, then closes with the asymptotic
    expansion psi'(w) ~ 1/w + 1/(2w^2) + sum B_{2j} w^{-2j-1} carried
    through the B_6 term.
    """
    if not 0.0 < q <= 1.0:
        raise DomainError("trigamma requires 0 < q <= 1")
    N = shift or _TRIGAMMA_SHIFT
    acc = NeumaierSum()
    for i in range(N):
        acc.add(1.0 / (q + i) ** 2)
    w = q + N
    iw = 1.0 / w
    iw2 = iw * iw
    tail = iw + 0.5 * iw2 + iw * iw2 * (1.0 / 6.0 - iw2 * (1.0 / 30.0 - iw2 / 42.0))
    rem = iw ** 9 / 30.0  # |B_8| w^-9
    v = acc.value + tail
    return Evaluation(v, rem + acc.round_off + 4.0 * EPS * v, N)
