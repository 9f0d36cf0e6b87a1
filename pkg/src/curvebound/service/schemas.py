"""Pydantic request/response models for the HTTP surface.

Wire conventions: matrix entries travel as decimal strings (or plain ints
where they are guaranteed small) to keep arbitrary precision intact across
JSON, and exact rationals serialize as "p/q" strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from ..exactmat import IntMatrix
from ..penner import BLOCK_LABELS, PennerSpec

Entry = Union[int, str]


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class MatrixLiteral(BaseModel):
    """JSON form of an exact integer matrix; string entries preserve precision."""

    rows: int
    cols: int
    entries: List[List[Entry]]

    def to_matrix(self) -> IntMatrix:
        flat = [int(e) for row in self.entries for e in row]
        return IntMatrix(self.rows, self.cols, flat)

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "MatrixLiteral":
        return cls(rows=m.rows, cols=m.cols,
                   entries=[[str(e) for e in m.row(i)] for i in range(m.rows)])


class ChiModel(BaseModel):
    c1: int = -1
    c0: int = 0


class PennerSpecModel(BaseModel):
    r: int
    m: int
    mode: Literal["exact", "pattern"] = "exact"
    blocks: Optional[Dict[str, List[List[Entry]]]] = None
    chi: ChiModel = ChiModel()

    def to_spec(self) -> PennerSpec:
        data = {"r": self.r, "m": self.m, "mode": self.mode,
                "chi": {"c1": self.chi.c1, "c0": self.chi.c0}}
        if self.blocks is not None:
            data["blocks"] = self.blocks
        return PennerSpec.from_dict(data)

    @classmethod
    def from_spec(cls, spec: PennerSpec) -> "PennerSpecModel":
        return cls(r=spec.r, m=spec.m, mode=spec.mode,
                   blocks={l: spec.blocks[l].to_rows() for l in BLOCK_LABELS},
                   chi=ChiModel(c1=spec.chi_c1, c0=spec.chi_c0))


class UpperBoundModel(BaseModel):
    exact: str
    closed_form: str


class CertifyRequest(BaseModel):
    spec: PennerSpecModel


class CertifyResponse(BaseModel):
    certified: bool
    start_block: int
    k_low: int
    k_high: int
    t: int
    support_trace: List[List[int]]
    offending: List[int]
    upper_bound: Optional[UpperBoundModel] = None
    spec: PennerSpecModel


class SweepRequest(BaseModel):
    r: int
    m_min: int
    m_max: int
    jobs: Optional[int] = None
    chi: ChiModel = ChiModel()


class SweepRow(BaseModel):
    """One grid point; the field order is the sweep CSV column order."""

    g: Optional[int] = None
    n: Optional[int] = None
    chi: Optional[int] = None
    alpha_c: Optional[int] = None
    k_iterate: Optional[int] = None
    lower: Optional[str] = None
    upper_fixed_genus: Optional[str] = None
    upper_penner: Optional[str] = None
    m: Optional[int] = None
    r: Optional[int] = None


class SweepResponse(BaseModel):
    rows: List[SweepRow]
    all_certified: bool


class NewtonCheckRequest(BaseModel):
    degree: int = Field(ge=1, le=8)
    trials: int = Field(ge=1)
    seed: int = 0


class NewtonTrialRow(BaseModel):
    seed: int
    n: int
    passed: bool


class NewtonCheckResponse(BaseModel):
    rows: List[NewtonTrialRow]
    all_pass: bool


class EnumerateRequest(BaseModel):
    degree: int
    delta: int


class EnumerateResponse(BaseModel):
    count: int
    polynomials: List[List[str]]  # coefficients, lowest degree first


class TwistLetterModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    curve_class: List[int] = Field(alias="class")
    sign: Literal[1, -1]


class TwistWordModel(BaseModel):
    genus: int
    letters: List[TwistLetterModel]


class LefschetzRequest(BaseModel):
    word: TwistWordModel


class LefschetzResponse(BaseModel):
    genus: int
    letters: int
    trace: int
    lefschetz: int


class PsiPresetRequest(BaseModel):
    genus: int
    punctures: int


class EscapeRequest(BaseModel):
    matrix: MatrixLiteral
    cap: Optional[int] = None


class EscapeResponse(BaseModel):
    kind: Literal["escape", "periodic", "cap_exhausted"]
    c: Optional[int] = None
    period: Optional[int] = None
    cap: Optional[int] = None


class BoundsReportRequest(BaseModel):
    genus: int
    punctures: int
    alpha_c: int


class BoundsReportResponse(BaseModel):
    genus: int
    punctures: int
    chi: int
    alpha_c: int
    k_iterate: int
    lower: str
    upper_fixed_genus: Optional[str] = None
    upper_penner: Optional[str] = None
    provenance: Dict[str, str]


class BranchBudgetRequest(BaseModel):
    genus: int
    punctures: int


class BranchBudgetResponse(BaseModel):
    real: int
    infinitesimal: int
    real_hit: int


class FitRequest(BaseModel):
    points: List[Tuple[float, float]]


class FitResponse(BaseModel):
    slope: float
    intercept: float
    r_squared: float
    points: int
