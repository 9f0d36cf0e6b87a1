"""Closed-form bound formulas, budgets, reports, and slope fits."""

from fractions import Fraction

import pytest

from curvebound.bounds import (
    BranchBudget,
    SurfaceSig,
    asymptotic_fit,
    branch_budget,
    lower_bound_iterate,
    make_report,
    upper_bound_fixed_genus,
)
from curvebound.penner import PennerSpec, penner_upper_bound


# ---------------------------------------------------------------- signatures

def test_signature_chi():
    assert SurfaceSig(2, 0).chi == -2
    assert SurfaceSig(0, 4).chi == -2
    assert SurfaceSig(1, 1).chi == -1


def test_signature_rejects_non_hyperbolic():
    for g, n in ((0, 0), (0, 2), (1, 0)):
        with pytest.raises(ValueError):
            SurfaceSig(g, n)
    with pytest.raises(ValueError):
        SurfaceSig(-1, 5)


# ---------------------------------------------------------------- budgets

def test_branch_budget_examples():
    assert branch_budget(SurfaceSig(2, 0)) == BranchBudget(18, 48, 12)
    assert branch_budget(SurfaceSig(0, 4)) == BranchBudget(18, 16, 4)
    assert branch_budget(SurfaceSig(1, 1)) == BranchBudget(9, 16, 4)


def test_branch_budget_positive_over_grid():
    # strictly positive everywhere except the thrice-punctured sphere, where
    # 24|chi| - 8n and 6|chi| - 2n both hit exactly zero (and no pseudo-Anosov
    # exists anyway)
    for g in range(0, 21):
        for n in range(0, 201):
            if 2 * g - 2 + n <= 0:
                continue
            budget = branch_budget(SurfaceSig(g, n))
            assert budget.real > 0
            if (g, n) == (0, 3):
                assert budget.infinitesimal == 0 and budget.real_hit == 0
            else:
                assert budget.infinitesimal > 0 and budget.real_hit > 0


# ---------------------------------------------------------------- lower bound

def test_lower_bound_headline_example():
    k, lower = lower_bound_iterate(SurfaceSig(2, 50), 1)
    assert (k, lower) == (1528, Fraction(1, 1528))


def test_lower_bound_closed_surface():
    k, lower = lower_bound_iterate(SurfaceSig(2, 0), 1)
    assert (k, lower) == (78, Fraction(1, 78))


def test_lower_bound_decomposition_identity():
    # (9a+6)|chi| - 2n + 24|chi| - 8n == (9a+30)|chi| - 10n, identically
    for g in range(0, 21):
        for n in range(0, 201):
            if 2 * g - 2 + n <= 0:
                continue
            x = 2 * g - 2 + n
            for a in range(1, 6):
                assert (9 * a + 6) * x - 2 * n + 24 * x - 8 * n == (9 * a + 30) * x - 10 * n


def test_lower_bound_rejects_bad_alpha():
    with pytest.raises(ValueError):
        lower_bound_iterate(SurfaceSig(2, 0), 0)


# ---------------------------------------------------------------- fixed-genus upper

def test_upper_fixed_genus_values():
    assert upper_bound_fixed_genus(50) == Fraction(1, 25)
    assert upper_bound_fixed_genus(2) == 1
    assert upper_bound_fixed_genus(1000) == Fraction(1, 500)
    with pytest.raises(ValueError):
        upper_bound_fixed_genus(0)


# ---------------------------------------------------------------- sandwich

def test_sandwich_fixed_genus_family():
    # lower <= 2/n wherever the twist-chain family exists
    for g in range(2, 6):
        for n in range(1, 201):
            lower = lower_bound_iterate(SurfaceSig(g, n), 1).lower
            assert lower <= upper_bound_fixed_genus(n)


def test_sandwich_block_family_desk_grid():
    # ray g = n through chi(m) = -m: 3n = m + 2.  The iterate bound belongs to
    # the many-punctures regime, so the sandwich is asserted on the desk-scale
    # grid where both bounds are meaningful, not universally in m.
    for m in range(7, 100, 3):
        n = (m + 2) // 3
        assert 3 * n == m + 2
        sig = SurfaceSig(n, n)
        lower = lower_bound_iterate(sig, 1).lower
        upper = penner_upper_bound(PennerSpec.all_ones(1, m)).exact_bound
        assert lower <= upper


# ---------------------------------------------------------------- fit

def test_fit_exact_inverse_square():
    fit = asymptotic_fit([(x, 4.0 / x**2) for x in (8, 16, 32, 64)])
    assert abs(fit.slope - (-2.0)) < 1e-12
    assert fit.r_squared > 1 - 1e-12


def test_fit_closed_form_slope_window():
    pts = [(m, 4.0 / (m * m - 2 * m)) for m in range(8, 257)]
    fit = asymptotic_fit(pts)
    assert -2.1 <= fit.slope <= -1.95


def test_fit_exact_inverse_linear():
    pts = [(n, 2.0 / n) for n in range(10, 1001)]
    fit = asymptotic_fit(pts)
    assert abs(fit.slope - (-1.0)) < 1e-9


def test_fit_rescaling_moves_only_intercept():
    pts = [(x, 4.0 / x**2) for x in (8, 16, 32, 64, 128)]
    base = asymptotic_fit(pts)
    scaled = asymptotic_fit([(x, 10.0 * y) for x, y in pts])
    assert abs(base.slope - scaled.slope) < 1e-12
    assert scaled.intercept > base.intercept


def test_fit_validation():
    with pytest.raises(ValueError):
        asymptotic_fit([(1.0, 1.0), (2.0, 0.5)])
    with pytest.raises(ValueError):
        asymptotic_fit([(1.0, 1.0), (2.0, -0.5), (3.0, 0.1)])
    with pytest.raises(ValueError):
        asymptotic_fit([(1.0, 1.0), (1.0, 0.5), (1.0, 0.1)])


# ---------------------------------------------------------------- reports

def test_report_fields_and_provenance():
    report = make_report(SurfaceSig(2, 50), alpha_c=1)
    assert report.k_iterate == 1528
    assert report.lower == Fraction(1, 1528)
    assert report.upper_fixed_genus == Fraction(1, 25)
    assert report.upper_penner is None
    assert "lower" in report.provenance
    assert "upper_fixed_genus" in report.provenance
    assert "upper_penner" not in report.provenance


def test_report_no_chain_family_for_genus_one():
    report = make_report(SurfaceSig(1, 3), alpha_c=2)
    assert report.upper_fixed_genus is None


def test_report_no_chain_family_without_punctures():
    report = make_report(SurfaceSig(3, 0), alpha_c=1)
    assert report.upper_fixed_genus is None


def test_report_with_block_family_bound():
    upper = penner_upper_bound(PennerSpec.all_ones(1, 10)).exact_bound
    report = make_report(SurfaceSig(4, 4), alpha_c=1, upper_penner=upper, penner_m=10)
    assert report.upper_penner == Fraction(1, 20)
    assert "m=10" in report.provenance["upper_penner"]
    assert report.lower <= report.upper_penner
