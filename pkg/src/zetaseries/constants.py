"""Shared high-accuracy constants table.

All table entries are reproducible by this package's own series routines
to 1e-13 or better (the test suite checks exactly that); pi, ln 2, gamma
and Catalan's constant are pinned literals, the zeta and trigamma entries
are computed once at first use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from . import specfun

PI = math.pi
EULER_GAMMA = 0.5772156649015328606065120900824024
CATALAN = 0.9159655941772190150546035149323841
LN2 = 0.6931471805599453094172321214581766


@dataclass(frozen=True)
class ConstantsTable:
    pi: float
    euler_gamma: float
    catalan: float
    ln2: float
    zeta_odd: Mapping[int, float]    # s = 3, 5, ..., 15
    zeta_even: Mapping[int, float]   # s = 2, 4, ..., 30
    trigamma_third: float            # psi'(1/3)
    trigamma_eighth: float           # psi'(1/8)

    def zeta(self, s: int) -> float:
        """zeta(s) for integer s >= 2: table hit or a fresh evaluation."""
        if s % 2 == 0:
            v = self.zeta_even.get(s)
        else:
            v = self.zeta_odd.get(s)
        if v is not None:
            return v
        return specfun.zeta_int(s).value

    def as_dict(self) -> dict:
        return {
            "pi": self.pi,
            "euler_gamma": self.euler_gamma,
            "catalan": self.catalan,
            "ln2": self.ln2,
            "zeta_odd": dict(self.zeta_odd),
            "zeta_even": dict(self.zeta_even),
            "trigamma_third": self.trigamma_third,
            "trigamma_eighth": self.trigamma_eighth,
        }


_TABLE: ConstantsTable | None = None


def _build() -> ConstantsTable:
    odd = {s: specfun.zeta_int(s).value for s in range(3, 16, 2)}
    even = {s: specfun.zeta_int(s).value for s in range(2, 31, 2)}
    return ConstantsTable(
        pi=PI,
        euler_gamma=EULER_GAMMA,
        catalan=CATALAN,
        ln2=LN2,
        zeta_odd=MappingProxyType(odd),
        zeta_even=MappingProxyType(even),
        trigamma_third=specfun.trigamma(1.0 / 3.0).value,
        trigamma_eighth=specfun.trigamma(0.125).value,
    )


def table() -> ConstantsTable:
    """The shared constants table (built on first use)."""
    global _TABLE
    if _TABLE is None:
        _TABLE = _build()
    return _TABLE
