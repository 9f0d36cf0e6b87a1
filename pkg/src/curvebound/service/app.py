"""FastAPI service wrapping the core package.

Every endpoint is a pure function of its request body, so the service is
stateless and safe to scale horizontally; sweeps fan grid points out over a
thread pool and merge results in sorted key order for deterministic output.
Domain input errors surface as HTTP 400, schema errors as 422.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from typing import List

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, bounds, homology, penner, symfun
from .schemas import (
    BoundsReportRequest,
    BoundsReportResponse,
    BranchBudgetRequest,
    BranchBudgetResponse,
    CertifyRequest,
    CertifyResponse,
    EnumerateRequest,
    EnumerateResponse,
    EscapeRequest,
    EscapeResponse,
    FitRequest,
    FitResponse,
    LefschetzRequest,
    LefschetzResponse,
    NewtonCheckRequest,
    NewtonCheckResponse,
    NewtonTrialRow,
    PennerSpecModel,
    PsiPresetRequest,
    SweepRequest,
    SweepResponse,
    SweepRow,
    TwistLetterModel,
    TwistWordModel,
    UpperBoundModel,
    rational_str,
)


def certify(spec_model: PennerSpecModel) -> CertifyResponse:
    spec = spec_model.to_spec()
    cert = penner.vanishing_certificate(spec)
    upper = None
    if cert.certified:
        ub = penner.penner_upper_bound(spec, cert)
        upper = UpperBoundModel(exact=rational_str(ub.exact_bound),
                                closed_form=rational_str(ub.closed_form))
    return CertifyResponse(
        certified=cert.certified,
        start_block=cert.start_block,
        k_low=cert.k_low,
        k_high=cert.k_high,
        t=cert.t,
        support_trace=[list(s.members) for s in cert.support_trace],
        offending=list(cert.offending),
        upper_bound=upper,
        spec=PennerSpecModel.from_spec(spec),
    )


def _sweep_point(r: int, m: int, chi_c1: int, chi_c0: int) -> SweepRow:
    spec = penner.PennerSpec.all_ones(r, m, chi_c1=chi_c1, chi_c0=chi_c0)
    cert = penner.vanishing_certificate(spec)
    upper = None
    if cert.certified:
        upper = rational_str(penner.penner_upper_bound(spec, cert).exact_bound)
    return SweepRow(chi=spec.chi, upper_penner=upper, m=m, r=r)


def sweep(req: SweepRequest) -> SweepResponse:
    if req.r < 1:
        raise ValueError("r must be positive")
    if req.m_min < 4:
        raise ValueError("m_min must be at least 4")
    if req.m_max < req.m_min:
        raise ValueError("m_max must be >= m_min")
    ms = list(range(req.m_min, req.m_max + 1))
    if req.jobs is not None and req.jobs < 1:
        raise ValueError("jobs must be positive")
    jobs = req.jobs or os.cpu_count() or 1
    if jobs == 1 or len(ms) == 1:
        rows = [_sweep_point(req.r, m, req.chi.c1, req.chi.c0) for m in ms]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda m: _sweep_point(req.r, m, req.chi.c1, req.chi.c0), ms))
    rows.sort(key=lambda row: row.m)
    return SweepResponse(rows=rows, all_certified=all(r.upper_penner is not None for r in rows))


def _direct_elementaries(values: List[int]) -> List[int]:
    """e_0..e_n of a multiset by expanding prod (1 + v*t), no identities used."""
    coeffs = [1]
    for v in values:
        nxt = coeffs + [0]
        for i in range(len(coeffs)):
            nxt[i + 1] += coeffs[i] * v
        coeffs = nxt
    return coeffs


def newton_check_trials(req: NewtonCheckRequest) -> NewtonCheckResponse:
    rows = []
    for trial in range(req.trials):
        rng = random.Random(req.seed * 1_000_003 + trial)
        size = rng.randint(1, req.degree)
        values = [rng.randint(-5, 5) for _ in range(size)]
        p = [sum(v**k for v in values) for k in range(1, size + 1)]
        e = _direct_elementaries(values)
        passed = all(symfun.newton_check(n, e, p) for n in range(1, size + 1))
        rows.append(NewtonTrialRow(seed=req.seed, n=size, passed=passed))
    return NewtonCheckResponse(rows=rows, all_pass=all(r.passed for r in rows))


def enumerate_polys(req: EnumerateRequest) -> EnumerateResponse:
    polys = symfun.enumerate_bounded_reciprocal(req.degree, req.delta)
    return EnumerateResponse(
        count=len(polys),
        polynomials=[[str(c) for c in q.coefficients] for q in polys],
    )


def _word_from_model(model: TwistWordModel) -> homology.TwistWord:
    space = homology.SymplecticSpace(model.genus)
    letters = tuple((tuple(l.curve_class), l.sign) for l in model.letters)
    return homology.TwistWord(space, letters)


def _word_to_model(word: homology.TwistWord) -> TwistWordModel:
    return TwistWordModel(
        genus=word.space.genus,
        letters=[TwistLetterModel(curve_class=list(cls), sign=sign)
                 for cls, sign in word.letters],
    )


def lefschetz_of_word(req: LefschetzRequest) -> LefschetzResponse:
    word = _word_from_model(req.word)
    f = homology.compose_word(word)
    return LefschetzResponse(
        genus=word.space.genus,
        letters=len(word),
        trace=f.trace(),
        lefschetz=homology.lefschetz(f, word.space.genus),
    )


def escape(req: EscapeRequest) -> EscapeResponse:
    result = homology.escape_iterate(req.matrix.to_matrix(), req.cap)
    if isinstance(result, homology.EscapeAt):
        return EscapeResponse(kind="escape", c=result.c)
    if isinstance(result, homology.PeriodicCertificate):
        return EscapeResponse(kind="periodic", period=result.period)
    return EscapeResponse(kind="cap_exhausted", cap=result.cap)


def bounds_report(req: BoundsReportRequest) -> BoundsReportResponse:
    sig = bounds.SurfaceSig(req.genus, req.punctures)
    report = bounds.make_report(sig, req.alpha_c)
    return BoundsReportResponse(
        genus=sig.g,
        punctures=sig.n,
        chi=sig.chi,
        alpha_c=report.alpha_c,
        k_iterate=report.k_iterate,
        lower=rational_str(report.lower),
        upper_fixed_genus=(
            rational_str(report.upper_fixed_genus)
            if report.upper_fixed_genus is not None else None
        ),
        upper_penner=(
            rational_str(report.upper_penner)
            if report.upper_penner is not None else None
        ),
        provenance=report.provenance,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="curvebound", version=__version__)

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/penner/certify", response_model=CertifyResponse)
    def penner_certify(req: CertifyRequest):
        return certify(req.spec)

    @app.post("/penner/sweep", response_model=SweepResponse)
    def penner_sweep(req: SweepRequest):
        return sweep(req)

    @app.post("/symfun/newton-check", response_model=NewtonCheckResponse)
    def symfun_newton_check(req: NewtonCheckRequest):
        return newton_check_trials(req)

    @app.post("/symfun/enumerate", response_model=EnumerateResponse)
    def symfun_enumerate(req: EnumerateRequest):
        return enumerate_polys(req)

    @app.post("/homology/lefschetz", response_model=LefschetzResponse)
    def homology_lefschetz(req: LefschetzRequest):
        return lefschetz_of_word(req)

    @app.post("/homology/psi-preset", response_model=TwistWordModel)
    def homology_psi_preset(req: PsiPresetRequest):
        return _word_to_model(homology.psi_preset(req.genus, req.punctures))

    @app.post("/homology/escape", response_model=EscapeResponse)
    def homology_escape(req: EscapeRequest):
        return escape(req)

    @app.post("/bounds/report", response_model=BoundsReportResponse)
    def bounds_report_route(req: BoundsReportRequest):
        return bounds_report(req)

    @app.post("/bounds/branch-budget", response_model=BranchBudgetResponse)
    def bounds_branch_budget(req: BranchBudgetRequest):
        budget = bounds.branch_budget(bounds.SurfaceSig(req.genus, req.punctures))
        return BranchBudgetResponse(real=budget.real,
                                    infinitesimal=budget.infinitesimal,
                                    real_hit=budget.real_hit)

    @app.post("/bounds/fit", response_model=FitResponse)
    def bounds_fit(req: FitRequest):
        fit = bounds.asymptotic_fit(req.points)
        return FitResponse(slope=fit.slope, intercept=fit.intercept,
                           r_squared=fit.r_squared, points=fit.points)

    return app


app = create_app()
