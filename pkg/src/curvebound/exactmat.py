"""Exact arbitrary-precision integer matrices and polynomials.

Everything in this module is pure: matrices and polynomials are immutable
after construction and all arithmetic uses Python's unbounded ints (powers
of transition matrices routinely reach entries of hundreds of digits, so
fixed-width arithmetic would be a correctness bug).  The single place
floating point appears is the Perron power iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Iterable, Optional, Sequence, Union

DEFAULT_CHAR_POLY_DIM_CAP = 16
PERRON_MAX_ITERATIONS = 10**6


class NonConvergenceError(RuntimeError):
    """Power iteration exhausted its iteration budget before reaching tolerance."""


def wielandt_cap(dim: int) -> int:
    """Primitivity horizon (dim-1)^2 + 1: a primitive pattern has a positive
    power at or below this exponent, so searching further is pointless."""
    return (dim - 1) ** 2 + 1


class IntMatrix:
    """Dense integer matrix, row-major, immutable after construction.

    ``nonneg`` is derived from the entries.  Transition matrices must be
    nonneg; homology matrices may be signed.
    """

    __slots__ = ("rows", "cols", "entries", "nonneg")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        ent = tuple(int(e) for e in entries)
        if len(ent) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "nonneg", all(e >= 0 for e in ent))

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        if not rows:
            raise ValueError("matrix needs at least one row")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def at(self, i: int, j: int) -> int:
        """Entry in row i, column j (0-based)."""
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def trace(self) -> int:
        if not self.is_square:
            raise ValueError("trace needs a square matrix")
        return sum(self.at(i, i) for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows,
            [self.at(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def apply(self, vec: Sequence[int]) -> tuple:
        """Matrix-vector product, exact."""
        if len(vec) != self.cols:
            raise ValueError("vector length must equal column count")
        return tuple(
            sum(self.at(i, j) * vec[j] for j in range(self.cols) if vec[j] != 0)
            for i in range(self.rows)
        )

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __pow__(self, t: int) -> "IntMatrix":
        return mat_pow(self, t)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact matrix product."""
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    bt = b.transpose()
    out = []
    for i in range(a.rows):
        ra = a.row(i)
        for j in range(b.cols):
            rb = bt.row(j)
            out.append(sum(x * y for x, y in zip(ra, rb) if x and y))
    return IntMatrix(a.rows, b.cols, out)


def mat_pow(a: IntMatrix, t: int) -> IntMatrix:
    """Exact t-th power by binary exponentiation; a**0 is the identity."""
    if not a.is_square:
        raise ValueError("matrix power needs a square matrix")
    if t < 0:
        raise ValueError("exponent must be nonnegative")
    result = IntMatrix.identity(a.rows)
    base = a
    while t:
        if t & 1:
            result = mat_mul(result, base)
        t >>= 1
        if t:
            base = mat_mul(base, base)
    return result


@dataclass(frozen=True)
class SupportSet:
    """Sorted, duplicate-free set of 1-based indices inside [1, dim]."""

    dim: int
    members: tuple

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError("dim must be positive")
        mem = tuple(sorted(set(int(i) for i in self.members)))
        if mem and (mem[0] < 1 or mem[-1] > self.dim):
            raise ValueError("support indices must lie in [1, dim]")
        object.__setattr__(self, "members", mem)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def support_propagate(pattern: IntMatrix, s: SupportSet) -> SupportSet:
    """Support of ``pattern`` applied to any vector strictly positive exactly on s.

    Returns { i : pattern[i][j] != 0 for some j in s }, 1-based.
    """
    if not pattern.is_square:
        raise ValueError("pattern must be square")
    if pattern.rows != s.dim:
        raise ValueError("pattern dimension must match support dimension")
    hit = set()
    for i in range(pattern.rows):
        ri = pattern.row(i)
        if any(ri[j - 1] != 0 for j in s.members):
            hit.add(i + 1)
    return SupportSet(s.dim, tuple(hit))


def _pattern_rows(a: IntMatrix) -> list:
    """Row bitmasks of the zero/nonzero pattern."""
    masks = []
    for i in range(a.rows):
        m = 0
        for j, e in enumerate(a.row(i)):
            if e != 0:
                m |= 1 << j
        masks.append(m)
    return masks


def _pattern_mul(p: list, q: list) -> list:
    out = []
    for row in p:
        acc = 0
        j = 0
        r = row
        while r:
            if r & 1:
                acc |= q[j]
            r >>= 1
            j += 1
        out.append(acc)
    return out


def positivity_index(a: IntMatrix, cap: int) -> Optional[int]:
    """Smallest t <= cap with all entries of a^t strictly positive, else None.

    For nonneg a the zero pattern of a^t has no cancellation, so this runs on
    row bitmasks rather than exact powers.
    """
    if not a.is_square:
        raise ValueError("positivity index needs a square matrix")
    if not a.nonneg:
        raise ValueError("positivity index needs a nonneg matrix")
    if cap < 1:
        raise ValueError("cap must be positive")
    n = a.rows
    full = (1 << n) - 1
    base = _pattern_rows(a)
    cur = base
    for t in range(1, cap + 1):
        if all(r == full for r in cur):
            return t
        if t < cap:
            cur = _pattern_mul(cur, base)
    return None


def is_primitive(a: IntMatrix) -> bool:
    """Primitive means some power is strictly positive; decided at the Wielandt cap."""
    return positivity_index(a, wielandt_cap(a.rows)) is not None


def perron_eigenvalue(
    a: IntMatrix, tol: float, max_iterations: int = PERRON_MAX_ITERATIONS
) -> float:
    """Spectral radius of a primitive nonneg matrix by power iteration.

    Deterministic all-ones start; stops when successive Rayleigh quotients
    differ by < tol/2 and the residual norm is < tol.  Non-primitive input is
    rejected before any iteration.
    """
    if not a.is_square:
        raise ValueError("Perron iteration needs a square matrix")
    if not a.nonneg:
        raise ValueError("Perron iteration needs a nonneg matrix")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_primitive(a):
        raise ValueError("matrix is not primitive (no strictly positive power)")
    n = a.rows
    rows = [[float(e) for e in a.row(i)] for i in range(n)]
    v = [1.0] * n
    prev = None
    for _ in range(max_iterations):
        norm = sqrt(sum(x * x for x in v))
        v = [x / norm for x in v]
        w = [sum(ri[j] * v[j] for j in range(n)) for ri in rows]
        lam = sum(v[j] * w[j] for j in range(n))
        residual = sqrt(sum((w[j] - lam * v[j]) ** 2 for j in range(n)))
        if prev is not None and abs(lam - prev) < tol / 2 and residual < tol:
            return lam
        prev = lam
        v = w
    raise NonConvergenceError(
        f"power iteration did not reach tol={tol} in {max_iterations} iterations"
    )


class IntPolynomial:
    """Integer polynomial, dense coefficients lowest degree first.

    The zero polynomial has empty coefficients and degree -1; otherwise the
    leading coefficient is nonzero (trailing zeros are trimmed).
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int]):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def leading(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    def evaluate(self, x: Union[int, Fraction]) -> Union[int, Fraction]:
        acc = 0 * x if not isinstance(x, int) else 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return IntPolynomial(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return IntPolynomial(
            [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coefficients])

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial([])
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            for j, d in enumerate(other.coefficients):
                out[i + j] += c * d
        return IntPolynomial(out)

    def __divmod__(self, d: "IntPolynomial"):
        """Quotient and remainder over the integers.

        Requires each elimination step to divide exactly (always true for a
        monic divisor); raises ValueError otherwise.
        """
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dc = d.coefficients
        dn = len(dc)
        if len(rem) < dn:
            return IntPolynomial([]), IntPolynomial(rem)
        quot = [0] * (len(rem) - dn + 1)
        for k in range(len(rem) - dn, -1, -1):
            lead = rem[k + dn - 1]
            if lead == 0:
                continue
            q, r = divmod(lead, dc[-1])
            if r != 0:
                raise ValueError("non-exact integer polynomial division")
            quot[k] = q
            for j in range(dn):
                rem[k + j] -= q * dc[j]
        return IntPolynomial(quot), IntPolynomial(rem)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"IntPolynomial({list(self.coefficients)!r})"


def char_poly(a: IntMatrix, dim_cap: int = DEFAULT_CHAR_POLY_DIM_CAP) -> IntPolynomial:
    """Exact characteristic polynomial det(xI - a) by the trace recurrence.

    Faddeev-LeVerrier: M_1 = a, c_1 = -tr M_1, M_{k+1} = a(M_k + c_k I),
    c_{k+1} = -tr(M_{k+1}) / (k+1); every division is exact in Z.
    """
    if not a.is_square:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = a.rows
    if n > dim_cap:
        raise ValueError(f"dimension {n} exceeds the cap {dim_cap}")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = a
    c = -m.trace()
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        shifted = IntMatrix(
            n, n,
            [m.at(i, j) + (c if i == j else 0) for i in range(n) for j in range(n)],
        )
        m = mat_mul(a, shifted)
        t = m.trace()
        q, r = divmod(-t, k)
        if r != 0:
            raise AssertionError("trace recurrence produced a non-exact division")
        c = q
        coeffs[n - k] = c
    return IntPolynomial(coeffs)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not a.is_square:
        raise ValueError("determinant needs a square matrix")
    n = a.rows
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
