"""Integer-sequence suppliers: Bernoulli ratios, Fibonacci/Lucas weights,
Binet constants and harmonic numbers.

Fibonacci and Lucas numbers are never materialised as big integers; every
use here weights them by z^{2k} with |z| <= 1/alpha, so the Binet products
(alpha z)^{2k} and (beta z)^{2k} stay bounded and the joint computation is
overflow-free for all k.  Bernoulli numbers likewise flow through the
zeta-function ratio B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k},
which is well scaled; raw values are served only for small k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

_RAW_BERNOULLI_MAX = 15  # raw B_{2k} beyond this is refused (test-fixture range)


@dataclass(frozen=True)
class BinetConstants:
    """Golden ratio alpha, its conjugate beta = -1/alpha, and sqrt 5."""

    alpha: float = (1.0 + math.sqrt(5.0)) / 2.0
    beta: float = (1.0 - math.sqrt(5.0)) / 2.0
    sqrt5: float = math.sqrt(5.0)


GOLDEN = BinetConstants()


@lru_cache(maxsize=None)
def bernoulli_exact(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2 convention) by recurrence."""
    if m < 0:
        raise DomainError("Bernoulli index must be >= 0")
    if m == 0:
        return Fraction(1)
    if m > 2 and m % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(m):
        acc += math.comb(m + 1, j) * bernoulli_exact(j)
    return -acc / (m + 1)


def bernoulli_ratio(k: int, denom: str) -> float:
    """B_{2k} scaled by the requested factorial, via the zeta relation.

    denom selects one of:
      "raw"      -> B_{2k} itself (k <= 15 only; larger raw values are refused)
      "(2k)!"    -> B_{2k}/(2k)!
      "(2k+1)!"  -> B_{2k}/(2k+1)!

    The ratios are computed as (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k} without
    ever forming the huge numerator and factorial separately.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if denom == "raw":
        if k > _RAW_BERNOULLI_MAX:
            raise DomainError(
                f"raw B_{{2k}} overflows usefully past k={_RAW_BERNOULLI_MAX};"
                " request a factorial ratio instead"
            )
        return float(bernoulli_exact(2 * k))
    from . import specfun  # deferred: specfun builds its even-zeta table from bernoulli_exact

    sign = 1.0 if k % 2 == 1 else -1.0
    ratio = sign * 2.0 * specfun.zeta_int(2 * k).value * (2.0 * math.pi) ** (-2 * k)
    if denom == "(2k)!":
        return ratio
    if denom == "(2k+1)!":
        return ratio / (2 * k + 1)
    raise DomainError(f"unknown denominator tag {denom!r}")


def fib_lucas_weighted(k: int, z: float) -> tuple[float, float]:
    """(F_{2k} z^{2k}, L_{2k} z^{2k}) computed jointly from the Binet forms.

    Requires |z| <= 1/alpha (the convergence region of every series these
    weights feed); both outputs stay bounded for arbitrarily large k.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    g = GOLDEN
    if abs(z) > 1.0 / g.alpha * (1.0 + 4.0 * 2.0 ** -52):
        raise DomainError(f"|z|={abs(z)} outside the convergence region |z| <= 1/alpha")
    u = (g.alpha * z) ** 2
    v = (g.beta * z) ** 2
    up = u ** k
    vp = v ** k
    return (up - vp) / g.sqrt5, up + vp


class HarmonicCache:
    """H_0..H_max with H_0 = 0, grown on demand."""

    def __init__(self, n_max: int = 64):
        self._values = [0.0]
        self.extend(n_max)

    def extend(self, n_max: int) -> None:
        vals = self._values
        for n in range(len(vals), n_max + 1):
            vals.append(vals[-1] + 1.0 / n)

    def __getitem__(self, n: int) -> float:
        if n < 0:
            raise DomainError("harmonic index must be >= 0")
        if n >= len(self._values):
            self.extend(n)
        return self._values[n]


_HARMONIC = HarmonicCache()


def harmonic(n: int) -> float:
    """n-th harmonic number, H_0 = 0."""
    return _HARMONIC[n]
