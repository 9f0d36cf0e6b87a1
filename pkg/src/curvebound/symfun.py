"""Partitions, Newton's identities, and bounded reciprocal polynomials.

All identity checks run in exact rational arithmetic (fractions.Fraction);
no floating point is used anywhere in this module.  Power sums are always
derived from coefficients, never from numerical roots, so "bounded power
sums" is decidable exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian_product
from math import factorial, floor
from typing import Iterable, List, Sequence, Union

from .exactmat import IntPolynomial

PARTITION_CAP = 30
ENUMERATION_DEGREE_CAP = 6

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class Partition:
    """Integer partition: weakly decreasing positive parts.

    z_lambda = prod_i i^{m_i} m_i!  and  eps_lambda = (-1)^{weight - length},
    where m_i counts the parts equal to i; both are cached at construction.
    """

    parts: tuple
    z_lambda: int = 0
    eps_lambda: int = 0

    def __init__(self, parts: Iterable[int]):
        pts = tuple(int(p) for p in parts)
        if any(p < 1 for p in pts):
            raise ValueError("partition parts must be positive")
        if any(pts[i] < pts[i + 1] for i in range(len(pts) - 1)):
            raise ValueError("partition parts must be weakly decreasing")
        mult = {}
        for p in pts:
            mult[p] = mult.get(p, 0) + 1
        z = 1
        for i, m in mult.items():
            z *= i**m * factorial(m)
        object.__setattr__(self, "parts", pts)
        object.__setattr__(self, "z_lambda", z)
        object.__setattr__(self, "eps_lambda", -1 if (sum(pts) - len(pts)) % 2 else 1)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> dict:
        mult = {}
        for p in self.parts:
            mult[p] = mult.get(p, 0) + 1
        return mult

    def power_product(self, p: Sequence[Rational]) -> Rational:
        """p_lambda = p_{l1} * ... * p_{lk} for the 1-indexed power sums p."""
        acc: Rational = 1
        for part in self.parts:
            acc *= p[part - 1]
        return acc


def partitions_of(n: int, cap: int = PARTITION_CAP) -> List[Partition]:
    """All partitions of n in reverse-lexicographic order: (n) first, (1,..,1) last."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise ValueError(f"n={n} exceeds the partition cap {cap}")
    if n == 0:
        return [Partition(())]
    out = []
    a = [n]
    while True:
        out.append(Partition(a))
        k = len(a) - 1
        while k >= 0 and a[k] == 1:
            k -= 1
        if k < 0:
            return out
        rem = len(a) - k  # the trailing ones plus the unit removed from a[k]
        a[k] -= 1
        del a[k + 1 :]
        while rem:
            take = min(a[-1], rem)
            a.append(take)
            rem -= take


def elementary_from_power(n: int, p: Sequence[Rational]) -> Fraction:
    """Elementary symmetric e_n from power sums via the partition expansion
    e_n = sum over |lambda|=n of eps_lambda / z_lambda * p_lambda (e_0 = 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if len(p) < n:
        raise ValueError(f"need power sums p_1..p_{n}, got {len(p)}")
    total = Fraction(0)
    for lam in partitions_of(n):
        total += Fraction(lam.eps_lambda, lam.z_lambda) * Fraction(lam.power_product(p))
    return total


def newton_check(n: int, e: Sequence[Rational], p: Sequence[Rational]) -> bool:
    """Exact test of n*e_n == sum_{r=1}^{n} (-1)^{r-1} p_r e_{n-r}."""
    if n < 1:
        raise ValueError("n must be positive")
    if len(e) < n + 1:
        raise ValueError("e must list e_0..e_n")
    if len(p) < n:
        raise ValueError("p must list p_1..p_n")
    lhs = Fraction(n) * Fraction(e[n])
    rhs = Fraction(0)
    for r in range(1, n + 1):
        term = Fraction(p[r - 1]) * Fraction(e[n - r])
        rhs += term if (r - 1) % 2 == 0 else -term
    return lhs == rhs


class ReciprocalPoly:
    """Monic integer polynomial of even degree with palindromic coefficients."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int]):
        coeffs = tuple(int(c) for c in coefficients)
        if len(coeffs) < 3 or len(coeffs) % 2 == 0:
            raise ValueError("degree must be a positive even integer")
        if coeffs[-1] != 1:
            raise ValueError("polynomial must be monic")
        if any(coeffs[i] != coeffs[-1 - i] for i in range(len(coeffs) // 2 + 1)):
            raise ValueError("coefficients must form a palindrome")
        object.__setattr__(self, "coefficients", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("ReciprocalPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def as_poly(self) -> IntPolynomial:
        return IntPolynomial(self.coefficients)

    def __eq__(self, other) -> bool:
        return isinstance(other, ReciprocalPoly) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"ReciprocalPoly({list(self.coefficients)!r})"


def power_from_coefficients(
    q: Union[ReciprocalPoly, IntPolynomial, Sequence[int]], k_max: int
) -> List[int]:
    """Power sums p_1..p_K of the root multiset of a monic integer polynomial.

    Uses Newton's recurrence on the coefficients for k <= deg and the linear
    recurrence the polynomial imposes on its roots afterwards, so no root is
    ever extracted numerically; every p_k is an exact integer.
    """
    if isinstance(q, (ReciprocalPoly, IntPolynomial)):
        coeffs = q.coefficients
    else:
        coeffs = tuple(int(c) for c in q)
    if not coeffs or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic")
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    n = len(coeffs) - 1
    # e_k = (-1)^k * coefficient of x^{n-k}
    e = [(-1) ** k * coeffs[n - k] for k in range(n + 1)]
    p: List[int] = []
    for k in range(1, min(k_max, n) + 1):
        acc = k * e[k]
        for r in range(1, k):
            term = p[r - 1] * e[k - r]
            acc -= term if (r - 1) % 2 == 0 else -term
        p.append(acc if (k - 1) % 2 == 0 else -acc)
    for k in range(n + 1, k_max + 1):
        # roots satisfy x^n = -(c_{n-1} x^{n-1} + ... + c_0)
        acc = 0
        for i in range(n):
            acc -= coeffs[i] * p[k - n + i - 1]
        p.append(acc)
    return p


@dataclass(frozen=True)
class PNextResult:
    """p_{N+1} computed two independent ways: the partition double sum and the
    Newton recurrence through e_1..e_N.  ``agree`` records their exact match."""

    partition_route: Fraction
    newton_route: Fraction

    @property
    def agree(self) -> bool:
        return self.partition_route == self.newton_route

    @property
    def value(self) -> Fraction:
        return self.partition_route


def p_next(n_vars: int, p: Sequence[Rational]) -> PNextResult:
    """p_{N+1} from p_1..p_N for a root multiset of size N.

    Partition route: sum over r=1..N and |lambda| = N+1-r of
    (-1)^{2N+1-l(lambda)} z_lambda^{-1} p_lambda p_r.  Newton route: eliminate
    e_{N+1} = 0 from Newton's formula at n = N+1.  Both are exact.
    """
    if n_vars < 1:
        raise ValueError("N must be positive")
    if len(p) < n_vars:
        raise ValueError("p must list p_1..p_N")
    n = n_vars
    part_total = Fraction(0)
    for r in range(1, n + 1):
        inner = Fraction(0)
        for lam in partitions_of(n + 1 - r):
            sign = -1 if (2 * n + 1 - lam.length) % 2 else 1
            inner += Fraction(sign, lam.z_lambda) * Fraction(lam.power_product(p))
        part_total += inner * Fraction(p[r - 1])
    e = [elementary_from_power(j, p) for j in range(n + 1)]
    newton_total = Fraction(0)
    for r in range(1, n + 1):
        term = Fraction(p[r - 1]) * e[n + 1 - r]
        newton_total += term if (n + r) % 2 == 0 else -term
    return PNextResult(partition_route=part_total, newton_route=newton_total)


def coefficient_bound(n: int, delta: Rational, cap: int = PARTITION_CAP) -> Fraction:
    """Explicit bound |e_n| <= sum over |lambda|=n of delta^{l(lambda)} / z_lambda,
    valid for any root multiset with |p_k| <= delta for all k <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise ValueError(f"n={n} exceeds the partition cap {cap}")
    d = Fraction(delta)
    if d < 0:
        raise ValueError("delta must be nonnegative")
    total = Fraction(0)
    for lam in partitions_of(n):
        total += d**lam.length / lam.z_lambda
    return total if n > 0 else Fraction(1)


def enumerate_bounded_reciprocal(degree: int, delta: int) -> List[ReciprocalPoly]:
    """All monic reciprocal integer polynomials of the given even degree whose
    power sums satisfy |p_k| <= delta for every k <= N(N+1).

    The bound is read two-sided: a one-sided ceiling alone leaves p_1 free to
    run to -infinity, and only the two-sided box makes the search finite.
    Brute force over the coefficient box given by coefficient_bound, pruning a
    candidate as soon as some |p_k| exceeds delta.
    """
    if degree < 2 or degree % 2 != 0:
        raise ValueError("degree must be a positive even integer")
    if degree > ENUMERATION_DEGREE_CAP:
        raise ValueError(f"degree {degree} exceeds the desk-scale cap {ENUMERATION_DEGREE_CAP}")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    n = degree
    k_window = n * (n + 1)
    half = n // 2
    boxes = []
    for k in range(1, half + 1):
        b = floor(coefficient_bound(k, delta))
        boxes.append(range(-b, b + 1))
    found = []
    for free in cartesian_product(*boxes):
        # palindrome forces e_{N-k} = e_k (even degree), with e_0 = e_N = 1
        e = [1] + list(free)
        coeffs = [0] * (n + 1)
        for k in range(n + 1):
            ek = e[k] if k <= half else e[n - k]
            coeffs[n - k] = ek if k % 2 == 0 else -ek
        if _power_sums_within(coeffs, delta, k_window):
            found.append(ReciprocalPoly(coeffs))
    found.sort(key=lambda q: q.coefficients)
    return found


def _power_sums_within(coeffs: Sequence[int], delta: int, k_window: int) -> bool:
    """Stream p_k from the coefficients, rejecting as soon as |p_k| > delta."""
    n = len(coeffs) - 1
    e = [(-1) ** k * coeffs[n - k] for k in range(n + 1)]
    p: List[int] = []
    for k in range(1, k_window + 1):
        if k <= n:
            acc = k * e[k]
            for r in range(1, k):
                term = p[r - 1] * e[k - r]
                acc -= term if (r - 1) % 2 == 0 else -term
            pk = acc if (k - 1) % 2 == 0 else -acc
        else:
            pk = 0
            for i in range(n):
                pk -= coeffs[i] * p[k - n + i - 1]
        if abs(pk) > delta:
            return False
        p.append(pk)
    return True
