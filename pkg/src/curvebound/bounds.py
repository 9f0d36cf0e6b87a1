"""Closed-form translation-length bounds and log-log slope fits.

Rational bounds stay exact end to end; floating point appears only inside
asymptotic_fit.  alpha_c is always a configuration input: the underlying
argument proves a genus-only constant exists but gives no effective value,
so every report records the assumed one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, NamedTuple, Optional, Sequence, Tuple


@dataclass(frozen=True)
class SurfaceSig:
    """Surface signature (genus g, punctures n), hyperbolic type required."""

    g: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise ValueError("genus and punctures must be nonnegative")
        if 2 * self.g - 2 + self.n <= 0:
            raise ValueError("signature must satisfy 2g - 2 + n > 0")

    @property
    def chi(self) -> int:
        return 2 - 2 * self.g - self.n

    @property
    def abs_chi(self) -> int:
        return -self.chi


class BranchBudget(NamedTuple):
    real: int
    infinitesimal: int
    real_hit: int


def branch_budget(sig: SurfaceSig) -> BranchBudget:
    """Branch-count budgets (9|chi| real, 24|chi| - 8n infinitesimal) and the
    iterate budget 6|chi| - 2n to become positive on some real branch."""
    x = sig.abs_chi
    return BranchBudget(
        real=9 * x,
        infinitesimal=24 * x - 8 * sig.n,
        real_hit=6 * x - 2 * sig.n,
    )


class LowerBound(NamedTuple):
    k: int
    lower: Fraction


def lower_bound_iterate(sig: SurfaceSig, alpha_c: int) -> LowerBound:
    """Iterate budget k = (9*alpha_c + 30)|chi| - 10n and the bound 1/k.

    Cross-checks the proof decomposition
    (9*alpha_c + 6)|chi| - 2n + 24|chi| - 8n == k, which holds identically.
    """
    if alpha_c < 1:
        raise ValueError("alpha_c must be a positive integer")
    x = sig.abs_chi
    k = (9 * alpha_c + 30) * x - 10 * sig.n
    decomposition = (9 * alpha_c + 6) * x - 2 * sig.n + 24 * x - 8 * sig.n
    if decomposition != k:
        raise AssertionError("iterate-budget decomposition identity violated")
    if k <= 0:
        raise ValueError(f"degenerate signature: iterate budget k={k} is not positive")
    return LowerBound(k=k, lower=Fraction(1, k))


def upper_bound_fixed_genus(n: int) -> Fraction:
    """Upper bound 2/n from the alternating twist chain with n punctures."""
    if n < 1:
        raise ValueError("puncture count must be positive")
    return Fraction(2, n)


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    points: int


def asymptotic_fit(points: Sequence[Tuple[float, float]]) -> FitResult:
    """Least-squares line through (log x, log y); slope is the power-law exponent."""
    if len(points) < 3:
        raise ValueError("need at least 3 points")
    if any(x <= 0 or y <= 0 for x, y in points):
        raise ValueError("all coordinates must be positive")
    xs = [math.log(x) for x, _ in points]
    ys = [math.log(y) for _, y in points]
    n = len(points)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    if sxx == 0:
        raise ValueError("x values are all equal; no slope is defined")
    slope = sxy / sxx
    intercept = my - slope * mx
    r_squared = 1.0 if syy == 0 else (sxy * sxy) / (sxx * syy)
    return FitResult(slope=slope, intercept=intercept, r_squared=r_squared, points=n)


@dataclass(frozen=True)
class BoundReport:
    """Assembled bounds for one signature, with per-field formula provenance."""

    sig: SurfaceSig
    alpha_c: int
    k_iterate: int
    lower: Fraction
    upper_penner: Optional[Fraction] = None
    upper_fixed_genus: Optional[Fraction] = None
    provenance: Dict[str, str] = field(default_factory=dict)


def make_report(
    sig: SurfaceSig,
    alpha_c: int,
    upper_penner: Optional[Fraction] = None,
    penner_m: Optional[int] = None,
) -> BoundReport:
    """Assemble the lower bound and whichever upper bounds apply.

    The 2/n bound needs the twist-chain family, so it is only populated for
    g > 1 and n >= 1.  A certified block-matrix bound is caller-supplied
    (with its m, echoed in the provenance) since it lives on its own surface
    family.
    """
    k, lower = lower_bound_iterate(sig, alpha_c)
    provenance = {
        "lower": "1/k with k = (9*alpha_c + 30)*|chi| - 10*n",
    }
    upper_fg: Optional[Fraction] = None
    if sig.g > 1 and sig.n >= 1:
        upper_fg = upper_bound_fixed_genus(sig.n)
        provenance["upper_fixed_genus"] = "2/n (alternating twist chain, fixed genus)"
    if upper_penner is not None:
        provenance["upper_penner"] = (
            "2/(m*(floor(m/2)-1)) from a certified support vanishing"
            + (f" at m={penner_m}" if penner_m is not None else "")
        )
    return BoundReport(
        sig=sig,
        alpha_c=alpha_c,
        k_iterate=k,
        lower=lower,
        upper_penner=upper_penner,
        upper_fixed_genus=upper_fg,
        provenance=provenance,
    )
