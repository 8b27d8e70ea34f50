"""Result carrier for every numeric routine in the package.

Each evaluation pairs the computed value with a guaranteed absolute error
bound and the number of series terms / quadrature nodes consumed, so that
identity checks can combine bounds from both sides of a comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EPS = 2.0 ** -52


@dataclass(frozen=True)
class Evaluation:
    """A numeric value with a guaranteed absolute error bound.

    value may be complex for the cut evaluations; err_bound is always a
    finite non-negative real bound on |computed - exact|.
    """

    value: float | complex
    err_bound: float
    terms_used: int = 0

    def __post_init__(self):
        if not math.isfinite(self.err_bound) or self.err_bound < 0.0:
            raise ValueError(f"err_bound must be finite and >= 0, got {self.err_bound}")
        if self.terms_used < 0:
            raise ValueError(f"terms_used must be >= 0, got {self.terms_used}")

    @property
    def real(self) -> float:
        v = self.value
        return v.real if isinstance(v, complex) else v


def combine(parts, extra_err: float = 0.0, terms: int = 0) -> Evaluation:
    """Linear combination sum(c * x) of floats and Evaluations.

    parts is an iterable of (coefficient, Evaluation-or-float).  The error
    bound accumulates |c| * err for Evaluation inputs plus a rounding slack
    proportional to the magnitudes being combined.
    """
    vals = []
    err = extra_err
    n = terms
    for c, x in parts:
        if isinstance(x, Evaluation):
            vals.append(c * x.value)
            err += abs(c) * x.err_bound
            n += x.terms_used
        else:
            vals.append(c * x)
    value = math.fsum(vals)
    err += 4.0 * EPS * math.fsum(abs(v) for v in vals)
    return Evaluation(value, err, n)
