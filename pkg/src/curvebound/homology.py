"""Homology-level mapping-class computations.

The symplectic lattice is H_1 of a closed genus-g surface with the standard
intersection pairing; punctures are handled by forgetting them, so twist
curves that become null-homologous map to the zero class and act trivially.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Union

from .exactmat import IntMatrix, IntPolynomial, char_poly, determinant, mat_mul
from .symfun import power_from_coefficients


@dataclass(frozen=True)
class SymplecticSpace:
    """Integer symplectic lattice of rank 2g, basis ordered a1, b1, .., ag, bg."""

    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    def form_matrix(self) -> IntMatrix:
        return _standard_form(self.genus)

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Intersection pairing <x, y> = x^T J y."""
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vectors must have length 2g")
        total = 0
        for i in range(self.genus):
            a, b = 2 * i, 2 * i + 1
            total += x[a] * y[b] - x[b] * y[a]
        return total


@lru_cache(maxsize=None)
def _standard_form(genus: int) -> IntMatrix:
    n = 2 * genus
    ent = [0] * (n * n)
    for i in range(genus):
        ent[(2 * i) * n + (2 * i + 1)] = 1
        ent[(2 * i + 1) * n + (2 * i)] = -1
    return IntMatrix(n, n, ent)


@dataclass(frozen=True)
class TwistWord:
    """Ordered twists: (homology class, sign) pairs over a symplectic space."""

    space: SymplecticSpace
    letters: tuple  # of (tuple[int, ...], int)

    def __post_init__(self):
        letters = tuple((tuple(int(x) for x in cls), int(sign)) for cls, sign in self.letters)
        for cls, sign in letters:
            if len(cls) != self.space.dim:
                raise ValueError("every class must have length 2g")
            if sign not in (1, -1):
                raise ValueError("twist sign must be +1 or -1")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)


def transvection(space: SymplecticSpace, c: Sequence[int], sign: int) -> IntMatrix:
    """Homology action of a twist about the class c: x -> x + sign*<x,c>*c.

    The result has determinant 1 and preserves the intersection form; the
    zero class gives the identity.
    """
    if len(c) != space.dim:
        raise ValueError("class length must be 2g")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = space.dim
    jc = space.form_matrix().apply(c)  # <e_j, c> = (Jc)_j
    ent = []
    for i in range(n):
        ci = c[i]
        for j in range(n):
            ent.append((1 if i == j else 0) + sign * ci * jc[j])
    return IntMatrix(n, n, ent)


def compose_word(word: TwistWord) -> IntMatrix:
    """Product of the word's transvections, first letter applied first.

    Verifies f^T J f == J exactly; a failure means a bug, not bad input.
    """
    n = word.space.dim
    result = IntMatrix.identity(n)
    for cls, sign in word.letters:
        result = mat_mul(transvection(word.space, cls, sign), result)
    j = word.space.form_matrix()
    if mat_mul(mat_mul(result.transpose(), j), result) != j:
        raise RuntimeError("composed word does not preserve the symplectic form")
    return result


def lefschetz(f: IntMatrix, genus: int) -> int:
    """Lefschetz number of an orientation-preserving class on a closed surface:
    the H_0 and H_2 traces are 1, so the alternating sum is 2 - Tr(f)."""
    if genus < 1:
        raise ValueError("genus must be positive")
    if not f.is_square or f.rows != 2 * genus:
        raise ValueError("matrix must be 2g x 2g")
    return 2 - f.trace()


def psi_preset(genus: int, punctures: int) -> TwistWord:
    """Alternating twist word on a chain of 2g+1 curves plus puncture curves.

    Letters 1..2g+1 run along the standard chain (consecutive classes pair to
    +-1, all other pairs to 0); the remaining n-1 letters twist about curves
    that enclose punctures, which are null-homologous after forgetting the
    punctures and so carry the zero class.  Signs alternate starting with +.
    """
    if genus < 2:
        raise ValueError("the preset needs genus > 1")
    if punctures < 1:
        raise ValueError("the preset needs at least one puncture")
    if 2 * genus - 2 + punctures <= 0:
        raise ValueError("signature is not hyperbolic")
    space = SymplecticSpace(genus)
    n = space.dim

    def a(i: int) -> List[int]:
        v = [0] * n
        v[2 * (i - 1)] = 1
        return v

    def b(i: int) -> List[int]:
        v = [0] * n
        v[2 * (i - 1) + 1] = 1
        return v

    chain: List[List[int]] = [a(1)]
    for i in range(1, genus):
        chain.append(b(i))
        chain.append([x + y for x, y in zip(a(i), a(i + 1))])
    chain.append(b(genus))
    chain.append(a(genus))
    classes = chain + [[0] * n for _ in range(punctures - 1)]
    letters = tuple(
        (tuple(cls), 1 if pos % 2 == 1 else -1) for pos, cls in enumerate(classes, start=1)
    )
    return TwistWord(space, letters)


@dataclass(frozen=True)
class EscapeAt:
    """Smallest exponent whose trace exceeds 2."""

    c: int


@dataclass(frozen=True)
class PeriodicCertificate:
    """All traces stay <= 2 forever: the spectrum is roots of unity and the
    trace sequence repeats with this period."""

    period: int


@dataclass(frozen=True)
class CapExhausted:
    """No escape within the cap and the spectrum is not all roots of unity."""

    cap: int


EscapeResult = Union[EscapeAt, PeriodicCertificate, CapExhausted]


def escape_iterate(a: IntMatrix, cap: Optional[int] = None) -> EscapeResult:
    """Search for the smallest C <= cap with Tr(a^C) > 2.

    Input must be square with determinant +-1.  When no iterate escapes and
    the characteristic polynomial is a product of cyclotomics, the trace
    sequence is periodic and the exact period is certified instead.  The
    default cap is dim^2 + 2, comfortably past any trace-periodicity horizon
    for a cyclotomic spectrum of this degree.
    """
    if not a.is_square:
        raise ValueError("escape iteration needs a square matrix")
    if determinant(a) not in (1, -1):
        raise ValueError("matrix must be invertible over the integers (det +-1)")
    n = a.rows
    if cap is None:
        cap = n * n + 2
    if cap < 1:
        raise ValueError("cap must be positive")
    power = a
    for c in range(1, cap + 1):
        if power.trace() > 2:
            return EscapeAt(c)
        if c < cap:
            power = mat_mul(power, a)
    q = char_poly(a, dim_cap=max(16, n))
    factors = cyclotomic_factors(q)
    if factors is None:
        return CapExhausted(cap)
    candidate = 1
    for d in factors:
        candidate = candidate * d // gcd(candidate, d)
    traces = power_from_coefficients(q, candidate + n)
    period = candidate
    for div in sorted(_divisors(candidate)):
        # agreement on deg(q) consecutive terms extends to the whole sequence
        if all(traces[k + div - 1] == traces[k - 1] for k in range(1, n + 1)):
            period = div
            break
    return PeriodicCertificate(period)


def _divisors(n: int) -> List[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def _euler_phi(n: int) -> int:
    result = n
    x = n
    p = 2
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            result -= result // p
        p += 1
    if x > 1:
        result -= result // x
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> IntPolynomial:
    """The d-th cyclotomic polynomial, via exact division of x^d - 1."""
    if d < 1:
        raise ValueError("index must be positive")
    poly = IntPolynomial([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            poly, rem = divmod(poly, cyclotomic_polynomial(e))
            if not rem.is_zero():
                raise AssertionError("cyclotomic division left a remainder")
    return poly


def cyclotomic_factors(q: IntPolynomial) -> Optional[List[int]]:
    """Multiset of indices d with q = prod Phi_d, or None if q is no such product.

    Only d with phi(d) <= deg q can divide, and phi(d) >= sqrt(d/2) confines
    the search to d <= 2*deg(q)^2.
    """
    if q.is_zero() or not q.is_monic():
        raise ValueError("polynomial must be monic")
    deg = q.degree
    if deg == 0:
        return []
    factors: List[int] = []
    rest = q
    for d in range(1, 2 * deg * deg + 3):
        if _euler_phi(d) > deg:
            continue
        while rest.degree >= _euler_phi(d):
            quot, rem = divmod(rest, cyclotomic_polynomial(d))
            if not rem.is_zero():
                break
            rest = quot
            factors.append(d)
        if rest.degree == 0:
            break
    if rest.degree == 0 and rest.coefficients == (1,):
        return sorted(factors)
    return None


def is_cyclotomic_product(q: IntPolynomial) -> bool:
    """True iff q factors completely into cyclotomic polynomials (equivalently,
    every root lies on the unit circle), decided by exact trial division."""
    return cyclotomic_factors(q) is not None
