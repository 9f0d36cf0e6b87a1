"""Block transition matrices for twist-glued surface sequences.

An (r, m) spec describes an rm x rm nonneg block matrix: block-rows 1, 2 and
m are irregular, every other block-row i carries (F, H, G) at block-columns
(i-1, i, i+1):

    row 1:  A at 1, D at 2,            F  at m
    row 2:  B at 1, E at 2, G at 3,    F^2 at m
    row i:  F at i-1, H at i, G at i+1        (3 <= i <= m-1)
    row m:  C at 1, F at m-1, H at m

Column n therefore feeds blocks {n-1, n, n+1} for 2 <= n <= m-1, which is
what makes supports spread one block per application and yields the
"last block stays empty" certificate after floor(m/2) - 1 steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from .exactmat import IntMatrix, SupportSet, mat_mul, support_propagate

BLOCK_LABELS = ("A", "B", "C", "D", "E", "F", "G", "H")
MODES = ("exact", "pattern")


class CertificationError(RuntimeError):
    """An operation required a certified spec but certification failed."""


@dataclass(frozen=True)
class PennerSpec:
    """Parameters of the block transition matrix.

    The eight blocks are user-supplied r x r nonneg matrices (the abstract
    construction never pins them down); all-ones blocks are the minimal
    strictly positive choice and the shipped default.  chi_c1/chi_c0 model
    the Euler characteristic of the m-th glued surface as c1*m + c0.
    """

    r: int
    m: int
    blocks: Dict[str, IntMatrix]
    mode: str = "exact"
    chi_c1: int = -1
    chi_c0: int = 0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("block dimension r must be positive")
        if self.m < 4:
            raise ValueError("m must be at least 4 (the support analysis needs m > 3)")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        missing = [l for l in BLOCK_LABELS if l not in self.blocks]
        if missing:
            raise ValueError(f"missing blocks: {missing}")
        for label in BLOCK_LABELS:
            b = self.blocks[label]
            if b.rows != self.r or b.cols != self.r:
                raise ValueError(f"block {label} must be {self.r}x{self.r}")
            if not b.nonneg:
                raise ValueError(f"block {label} must be nonneg")

    @property
    def dim(self) -> int:
        return self.r * self.m

    @property
    def chi(self) -> int:
        return self.chi_c1 * self.m + self.chi_c0

    def strict_validate(self) -> None:
        """Positivity hypotheses behind the full-support claims: F, G, H
        strictly positive entrywise; A..E each nonzero."""
        for label in ("F", "G", "H"):
            if any(e <= 0 for e in self.blocks[label].entries):
                raise ValueError(f"block {label} must be strictly positive")
        for label in ("A", "B", "C", "D", "E"):
            if all(e == 0 for e in self.blocks[label].entries):
                raise ValueError(f"block {label} must be nonzero")

    @classmethod
    def all_ones(cls, r: int, m: int, mode: str = "exact",
                 chi_c1: int = -1, chi_c0: int = 0) -> "PennerSpec":
        ones = IntMatrix(r, r, [1] * (r * r))
        return cls(r=r, m=m, blocks={l: ones for l in BLOCK_LABELS},
                   mode=mode, chi_c1=chi_c1, chi_c0=chi_c0)

    @classmethod
    def from_dict(cls, data: dict) -> "PennerSpec":
        try:
            r = int(data["r"])
            m = int(data["m"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"spec needs integer fields r and m: {exc}") from exc
        mode = data.get("mode", "exact")
        raw_blocks = data.get("blocks")
        if raw_blocks is None:
            blocks = {l: IntMatrix(r, r, [1] * (r * r)) for l in BLOCK_LABELS}
        else:
            blocks = {}
            for label in BLOCK_LABELS:
                if label not in raw_blocks:
                    raise ValueError(f"missing block {label}")
                rows = raw_blocks[label]
                blocks[label] = IntMatrix.from_rows([[int(e) for e in row] for row in rows])
        chi = data.get("chi") or {}
        return cls(r=r, m=m, blocks=blocks, mode=mode,
                   chi_c1=int(chi.get("c1", -1)), chi_c0=int(chi.get("c0", 0)))

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "m": self.m,
            "mode": self.mode,
            "blocks": {l: self.blocks[l].to_rows() for l in BLOCK_LABELS},
            "chi": {"c1": self.chi_c1, "c0": self.chi_c0},
        }


def block_indices(r: int, block: int) -> range:
    """1-based index range covered by a 1-based block number."""
    return range(r * (block - 1) + 1, r * block + 1)


def _placements(spec: PennerSpec) -> List[Tuple[int, int, IntMatrix]]:
    """(block-row, block-col, block) placements, 1-based."""
    b = spec.blocks
    m = spec.m
    f_squared = mat_mul(b["F"], b["F"])
    placed = [
        (1, 1, b["A"]), (1, 2, b["D"]), (1, m, b["F"]),
        (2, 1, b["B"]), (2, 2, b["E"]), (2, 3, b["G"]), (2, m, f_squared),
        (m, 1, b["C"]), (m, m - 1, b["F"]), (m, m, b["H"]),
    ]
    for i in range(3, m):
        placed += [(i, i - 1, b["F"]), (i, i, b["H"]), (i, i + 1, b["G"])]
    return placed


def build_penner(spec: PennerSpec) -> IntMatrix:
    """Assemble the rm x rm block matrix; the (2, m) slot holds the exact F^2."""
    r, m = spec.r, spec.m
    dim = r * m
    ent = [0] * (dim * dim)
    for bi, bj, block in _placements(spec):
        base_i = r * (bi - 1)
        base_j = r * (bj - 1)
        for i in range(r):
            for j in range(r):
                ent[(base_i + i) * dim + (base_j + j)] = block.at(i, j)
    return IntMatrix(dim, dim, ent)


def block_pattern(spec: PennerSpec) -> IntMatrix:
    """m x m reachability pattern: 1 where a block (F^2 included) is nonzero."""
    m = spec.m
    ent = [0] * (m * m)
    for bi, bj, block in _placements(spec):
        if any(e != 0 for e in block.entries):
            ent[(bi - 1) * m + (bj - 1)] = 1
    return IntMatrix(m, m, ent)


def _expand_blocks(spec: PennerSpec, blocks: SupportSet) -> SupportSet:
    members = [i for b in blocks for i in block_indices(spec.r, b)]
    return SupportSet(spec.dim, tuple(members))


def shadow(spec: PennerSpec, start_block: int, t: int) -> List[SupportSet]:
    """Supports of the matrix applied s times to the indicator of a block,
    for s = 0..t.

    Exact mode iterates integer matrix-vector products; pattern mode
    propagates supports through the block-level reachability pattern and
    expands whole blocks.  The two agree whenever every block is strictly
    positive.
    """
    if not 1 <= start_block <= spec.m:
        raise ValueError(f"start block must lie in [1, {spec.m}]")
    if t < 0:
        raise ValueError("step count must be nonnegative")
    if spec.mode == "pattern":
        pattern = block_pattern(spec)
        s = SupportSet(spec.m, (start_block,))
        trace = [_expand_blocks(spec, s)]
        for _ in range(t):
            s = support_propagate(pattern, s)
            trace.append(_expand_blocks(spec, s))
        return trace
    matrix = build_penner(spec)
    vec = [0] * spec.dim
    for i in block_indices(spec.r, start_block):
        vec[i - 1] = 1
    trace = [SupportSet(spec.dim, tuple(i + 1 for i, v in enumerate(vec) if v))]
    for _ in range(t):
        vec = list(matrix.apply(vec))
        trace.append(SupportSet(spec.dim, tuple(i + 1 for i, v in enumerate(vec) if v)))
    return trace


@dataclass(frozen=True)
class VanishCertificate:
    """Record that floor(m/2)-1 applications starting in the middle block keep
    the last block's r entries at zero.

    k_low/k_high give the start-index range (k_low < k <= k_high) spanned by
    the chosen middle block, so any basis vector in that range works.
    """

    start_block: int
    k_low: int
    k_high: int
    t: int
    certified: bool
    support_trace: tuple
    offending: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "support_trace", tuple(self.support_trace))
        object.__setattr__(self, "offending", tuple(self.offending))


def vanishing_certificate(spec: PennerSpec) -> VanishCertificate:
    """Run the exact-mode shadow from the middle block for floor(m/2)-1 steps
    and certify that the final support misses the last block entirely.

    Start block: m/2 for even m, (m+1)/2 for odd m.  An uncertified result
    lists the offending last-block indices; that signals a violated block
    hypothesis (for instance a zero block where positivity was assumed), not
    an internal error.
    """
    m, r = spec.m, spec.r
    start_block = m // 2 if m % 2 == 0 else (m + 1) // 2
    t = m // 2 - 1
    exact_spec = spec if spec.mode == "exact" else PennerSpec(
        r=spec.r, m=spec.m, blocks=spec.blocks, mode="exact",
        chi_c1=spec.chi_c1, chi_c0=spec.chi_c0,
    )
    trace = shadow(exact_spec, start_block, t)
    last_block = set(block_indices(r, m))
    offending = tuple(sorted(last_block.intersection(trace[-1].members)))
    return VanishCertificate(
        start_block=start_block,
        k_low=r * (start_block - 1),
        k_high=r * start_block,
        t=t,
        certified=not offending,
        support_trace=tuple(trace),
        offending=offending,
    )


class UpperBound(NamedTuple):
    exact_bound: Fraction
    closed_form: Fraction


def penner_upper_bound(
    spec: PennerSpec, certificate: Optional[VanishCertificate] = None
) -> UpperBound:
    """Translation-length upper bound from a certified vanishing.

    exact_bound = 2 / (m * (floor(m/2) - 1)) and closed_form = 4 / (m^2 - 2m).
    The two coincide at even m; at odd m the exact bound is the larger one
    (the closed form is the even-m value, kept as the asymptotic comparator).
    """
    if certificate is None:
        certificate = vanishing_certificate(spec)
    if not certificate.certified:
        raise CertificationError(
            f"support vanishing failed on indices {list(certificate.offending)}"
        )
    m = spec.m
    return UpperBound(
        exact_bound=Fraction(2, m * (m // 2 - 1)),
        closed_form=Fraction(4, m * m - 2 * m),
    )
