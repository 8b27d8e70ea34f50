"""Brute-force evaluation of every series family under test.

Each family is summed from its definition with a guaranteed tail bound:

* |z| < 0.95: direct summation; the tail is geometric since
  zeta(2k) <= zeta(2) and the rational factor decreases.
* 0.95 <= |z| <= 1: Kummer split zeta(2k) = 1 + (zeta(2k) - 1).  The
  (zeta-1) part decays like (z^2/4)^k and is summed directly; the 1 part
  is accelerated (CRVZ) when the series alternates, or closed with an
  Euler-Maclaurin tail at z = 1 when it does not.
* the k^-p power sums are evaluated over their polylogarithm
  representation sum_t Li_p(-(z/t)^2), with the slow t-tail removed by
  subtracting the first two asymptotic corrections whose sums are known.

Nothing in this module calls the closed-form evaluators; the dependency
is strictly one-directional so the two sides of every identity check stay
independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import specfun
from .accel import NeumaierSum, RationalTerm, crvz_sum, crvz_terms_for, power_tail
from .errors import AlternationError, BudgetExceededError, DomainError
from .evaluation import EPS, Evaluation
from .sequences import GOLDEN

FAMILIES = (
    "P", "Pmn", "Q", "S1", "S2", "S3",
    "Ppow", "Pmnpow", "Qpow",
    "Bern7", "Bern8", "BernGF",
    "HalfInt",
    "FibP", "LucP", "FibCl", "LucCl",
    "DilogSum",
)

SPLIT_Z = 0.95           # |z| at and above which the Kummer split kicks in
TERM_BUDGET = 10 ** 6    # default cap on summation terms per series
DILOG_T_BUDGET = 10 ** 5
_EM_DIRECT_K = 10 ** 4   # direct terms before the Euler-Maclaurin tail at z = 1

_ZMAX = 64  # zeta(2k) == 1.0 to double precision beyond this k


@lru_cache(maxsize=None)
def _zeta2k(k: int) -> float:
    return specfun.zeta_int(2 * k).value if k <= _ZMAX else 1.0


@lru_cache(maxsize=None)
def _zeta2k_minus_1(k: int) -> float:
    return specfun.zeta_minus_one(2 * k) if k <= _ZMAX else 0.0


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters identifying one series instance.

    z is the series' own weight variable; sign_convention "alternating"
    means the terms carry (-1)^k, "positive" means they do not.  Which of
    n, m, p apply depends on the family (see _FACTOR_BUILDERS).
    """

    family: str
    z: float
    n: int | None = None
    m: int | None = None
    p: int | None = None
    sign_convention: str = "alternating"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown series family {self.family!r}")
        if self.sign_convention not in ("alternating", "positive"):
            raise DomainError(f"unknown sign convention {self.sign_convention!r}")
        z = self.z
        fam = self.family
        if fam in ("P", "Ppow", "S2"):
            self._need(n=True)
        elif fam in ("Pmn", "Pmnpow"):
            self._need(n=True, m=True)
            if self.m == self.n:
                raise DomainError("Pmn families require non-equal positive integers m, n")
        elif fam in ("Q", "Qpow", "S3"):
            self._need(m=True)
        elif fam in ("FibP", "LucP", "FibCl", "LucCl"):
            self._need(n=True)
        if fam in ("Ppow", "Pmnpow", "Qpow", "DilogSum"):
            if self.p is None or self.p < 1:
                raise DomainError(f"{fam} requires p >= 1")
        if fam == "HalfInt" and self.m is not None and self.m < 2:
            raise DomainError("HalfInt extra factor needs m >= 2")
        if fam in ("Q", "Qpow", "S3"):
            if not 0.0 < z <= 1.0:
                raise DomainError(f"{fam} requires 0 < z <= 1")
        elif fam in ("FibP", "LucP", "FibCl", "LucCl"):
            if not 0.0 < abs(z) <= 1.0 / GOLDEN.alpha * (1.0 + 4.0 * EPS):
                raise DomainError(f"{fam} requires 0 < |z| <= 1/alpha")
        elif fam == "Bern7":
            if z <= 0.0 or z == 1.0 or abs(math.log(z)) > 2.0 * math.pi:
                raise DomainError("Bern7 requires z > 0 with 0 < |ln z| <= 2*pi")
        elif fam == "Bern8":
            if not 0.0 < z <= 2.0 * math.pi:
                raise DomainError("Bern8 requires 0 < z <= 2*pi")
        elif fam == "BernGF":
            if self.p not in (0, 1):
                raise DomainError("BernGF needs p=0 (plain) or p=1 (extra 1/k)")
            if not 0.0 < abs(z) <= 2.0 * math.pi:
                raise DomainError("BernGF requires 0 < |z| <= 2*pi")
        else:
            if not 0.0 < abs(z) <= 1.0:
                raise DomainError(f"{fam} requires 0 < |z| <= 1")

    def _need(self, n=False, m=False):
        if n and (self.n is None or self.n < 1):
            raise DomainError(f"{self.family} requires integer n >= 1")
        if m and (self.m is None or self.m < 1):
            raise DomainError(f"{self.family} requires integer m >= 1")

    def params_tuple(self) -> tuple:
        out = []
        for name in ("n", "m", "p"):
            v = getattr(self, name)
            if v is not None:
                out.append((name, v))
        out.append(("z", self.z))
        return tuple(out)


def _factors_for(spec: SeriesSpec):
    fam = spec.family
    if fam in ("P", "FibP", "LucP", "FibCl", "LucCl"):
        return [(1, 0, 1), (2, spec.n, 1)]
    if fam == "Pmn":
        return [(1, 0, 1), (2, spec.m, 1), (2, spec.n, 1)]
    if fam == "Q":
        return [(1, 0, 1), (2, spec.m, 2)]
    if fam == "S1":
        return [(1, 0, 1)]
    if fam == "S2":
        return [(2, spec.n, 1)]
    if fam == "S3":
        return [(2, spec.m, 2)]
    if fam == "Ppow":
        return [(1, 0, spec.p), (2, spec.n, 1)]
    if fam == "Pmnpow":
        return [(1, 0, spec.p), (2, spec.m, 1), (2, spec.n, 1)]
    if fam == "Qpow":
        return [(1, 0, spec.p), (2, spec.m, 2)]
    if fam == "HalfInt":
        facts = [(2, 1, 1)]
        if spec.m is not None:
            facts.append((2, spec.m, 1))
        return facts
    raise DomainError(f"family {fam} has no rational-term form")


# ---------------------------------------------------------------------------
# Core engine: sum_{k>=1} sign^k zeta(2k) w^k r(k)
# ---------------------------------------------------------------------------

def _rational_zeta_sum(rterm, w: float, alternating: bool, tol: float,
                       budget: int) -> Evaluation:
    """rterm is a RationalTerm or None (meaning r(k) = 1); 0 < w <= 1."""
    r = rterm if rterm is not None else (lambda k: 1.0)
    degree = rterm.degree if rterm is not None else 0
    extra = 0.0
    if w > 1.0 + 5e-13:
        raise DomainError(f"weight w={w} outside (0, 1]")
    if abs(w - 1.0) <= 5e-13 and w != 1.0:
        # snap to the endpoint: rounding in alpha * (1/alpha)-style products
        # lands a few ulps off 1 and would turn the geometric tail bound
        # useless; the value itself moves by O(1e-14) under the snap
        w = 1.0
        extra = 1e-13
    zeta2 = 1.6449340668482264
    sgn = -1.0 if alternating else 1.0

    if w < SPLIT_Z * SPLIT_Z:
        acc = NeumaierSum()
        wk = 1.0
        k = 0
        while True:
            k += 1
            wk *= w
            acc.add((sgn ** k) * _zeta2k(k) * wk * r(k))
            bound = zeta2 * wk * w * r(k + 1) / (1.0 - w)
            if bound <= 0.5 * tol:
                break
            if k >= budget:
                raise BudgetExceededError(
                    f"direct summation hit the {budget}-term budget at bound {bound:.3e}",
                    best=Evaluation(acc.value, bound + acc.round_off + extra, k),
                )
        return Evaluation(acc.value, bound + acc.round_off + extra, k)

    # Kummer split
    acc1 = NeumaierSum()
    q = 0.25 * w
    wk = 1.0
    k = 0
    while True:
        k += 1
        wk *= w
        acc1.add((sgn ** k) * _zeta2k_minus_1(k) * wk * r(k))
        bound1 = 3.0 * q ** (k + 1) * r(k + 1) / (1.0 - q)
        if bound1 <= 0.25 * tol or k > 80:
            break
    terms = k
    if alternating:
        n_acc = crvz_terms_for(w * r(1), 0.25 * tol)
        a = [w ** (j + 1) * r(j + 1) for j in range(n_acc)]
        v2, e2 = crvz_sum(a, n_acc)
        part2, err2 = -v2, e2
        terms += n_acc
    elif w == 1.0:
        if degree < 2:
            raise DomainError("positive series with a degree-1 rational factor diverges at |z| = 1")
        acc2 = NeumaierSum()
        K = min(_EM_DIRECT_K, budget)
        for j in range(1, K + 1):
            acc2.add(r(j))
        tail, tail_err = rterm.em_tail(K + 1)
        part2, err2 = acc2.value + tail, tail_err + acc2.round_off
        terms += K
    else:
        acc2 = NeumaierSum()
        wk = 1.0
        j = 0
        while True:
            j += 1
            wk *= w
            acc2.add(wk * r(j))
            bound2 = wk * w * r(j + 1) / (1.0 - w)
            if bound2 <= 0.25 * tol:
                break
            if j >= budget:
                raise BudgetExceededError(
                    f"split summation hit the {budget}-term budget at bound {bound2:.3e}",
                    best=Evaluation(acc1.value + acc2.value, bound1 + bound2 + extra, k + j),
                )
        part2, err2 = acc2.value, bound2 + acc2.round_off
        terms += j
    value = acc1.value + part2
    return Evaluation(value, bound1 + acc1.round_off + err2 + extra + 4.0 * EPS * abs(value), terms)


def _dilog_power_sum(p: int, z: float, tol: float, budget: int) -> Evaluation:
    """sum_{k>=1} (-1)^k zeta(2k) z^{2k} / k^p as sum_t Li_p(-(z/t)^2).

    The t-tail is accelerated by subtracting the leading -z^2/t^2 term,
    whose full sum is -z^2 zeta(2), plus the next two corrections; what
    remains of each tail term is below (z/t)^8 / 4^p.
    """
    az = abs(z)
    T = int(max(40.0, (az ** 6 / (2.5 * tol * 3 ** p)) ** 0.2)) + 1
    T = min(T, max(budget, 40), DILOG_T_BUDGET)
    acc = NeumaierSum()
    terms = 0
    perr = 0.0
    for t in range(1, T + 1):
        e = specfun.polylog(p, -((az / t) ** 2))
        acc.add(e.value)
        perr += e.err_bound
        terms += e.terms_used
    tail2, e2 = power_tail(2, T + 1)
    tail4, e4 = power_tail(4, T + 1)
    tail6, e6 = power_tail(6, T + 1)
    z2 = az * az
    z4 = z2 * z2
    z6 = z4 * z2
    value = acc.value - z2 * tail2 + z4 * tail4 / 2 ** p - z6 * tail6 / 3 ** p
    cut_err = z4 * z4 / (7.0 * 4 ** p * T ** 7)
    err = perr + cut_err + z2 * e2 + z4 * e4 + z6 * e6 + acc.round_off
    return Evaluation(value, err, terms + T)


def _fib_lucas_series(spec: SeriesSpec, tol: float, budget: int) -> Evaluation:
    g = GOLDEN
    rterm = RationalTerm(_factors_for(spec))
    alt = spec.sign_convention == "alternating"
    az = abs(spec.z)
    a = _rational_zeta_sum(rterm, (g.alpha * az) ** 2, alt, 0.5 * tol, budget)
    b = _rational_zeta_sum(rterm, (abs(g.beta) * az) ** 2, alt, 0.5 * tol, budget)
    if spec.family in ("FibP", "FibCl"):
        value = (a.value - b.value) / g.sqrt5
        err = (a.err_bound + b.err_bound) / g.sqrt5
    else:
        value = a.value + b.value
        err = a.err_bound + b.err_bound
    return Evaluation(value, err + 4.0 * EPS * abs(value), a.terms_used + b.terms_used)


def _bernoulli_series(spec: SeriesSpec, tol: float, budget: int) -> Evaluation:
    # all three families reduce to zeta-weighted sums through
    # B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}
    tau = 2.0 * math.pi
    if spec.family == "Bern7":
        u = math.log(spec.z)
    else:
        u = spec.z
    w = (u / tau) ** 2
    if spec.family in ("Bern7", "Bern8"):
        rterm = RationalTerm([(1, 0, 1), (2, 1, 1)])
        inner = _rational_zeta_sum(rterm, w, True, tol / max(2.0 * abs(u), 0.1), budget)
        value = -2.0 * u * inner.value
        return Evaluation(value, 2.0 * abs(u) * inner.err_bound + 4.0 * EPS * abs(value),
                          inner.terms_used)
    if spec.p == 1:
        rterm = RationalTerm([(1, 0, 1)])
        inner = _rational_zeta_sum(rterm, w, True, 0.5 * tol, budget)
        value = -2.0 * inner.value
        return Evaluation(value, 2.0 * inner.err_bound, inner.terms_used)
    if w >= 1.0:
        raise DomainError("the plain generating-function series needs |z| < 2*pi")
    inner = _rational_zeta_sum(None, w, True, 0.5 * tol, budget)
    value = 1.0 - 2.0 * inner.value
    return Evaluation(value, 2.0 * inner.err_bound + 2.0 * EPS, inner.terms_used)


def sum_series(spec: SeriesSpec, target_tol: float = 1e-12,
               term_budget: int = TERM_BUDGET) -> Evaluation:
    """Value of the series described by spec with err_bound <= target_tol.

    Raises BudgetExceededError (carrying the best evaluation reached) if
    the tolerance is unreachable within term_budget summation terms.
    """
    if target_tol <= 0.0:
        raise DomainError("target_tol must be positive")
    fam = spec.family
    if fam == "DilogSum":
        return _dilog_power_sum(spec.p, spec.z, target_tol, term_budget)
    if fam in ("FibP", "LucP", "FibCl", "LucCl"):
        return _fib_lucas_series(spec, target_tol, term_budget)
    if fam in ("Bern7", "Bern8", "BernGF"):
        return _bernoulli_series(spec, target_tol, term_budget)
    rterm = RationalTerm(_factors_for(spec))
    return _rational_zeta_sum(rterm, spec.z * spec.z,
                              spec.sign_convention == "alternating",
                              target_tol, term_budget)


def cvz_accelerate(coeffs, count: int) -> Evaluation:
    """Accelerated sum of a signed alternating series.

    coeffs is an iterable yielding the signed terms t_0, t_1, ...; the
    first count terms are consumed.  Terms must strictly alternate in sign
    and their magnitudes must be totally monotone for the error estimate
    C (3+sqrt 8)^-count to apply.
    """
    terms = []
    for t in coeffs:
        terms.append(float(t))
        if len(terms) >= count:
            break
    if len(terms) < 2:
        raise DomainError("need at least two terms")
    mags = []
    last_sign = 0
    for t in terms:
        s = math.copysign(1.0, t) if t != 0.0 else 0.0
        if s == 0.0 or s == last_sign:
            raise AlternationError("terms do not strictly alternate in sign")
        last_sign = s
        mags.append(abs(t))
    v, err = crvz_sum(mags, len(mags))
    if terms[0] < 0.0:
        v = -v
    return Evaluation(v, err, len(mags))
