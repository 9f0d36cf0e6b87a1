"""Acceptance suite: every criterion at its stated tolerance, one line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
pass lines; any assertion failure marks the criterion red.
"""

import json
import random
import time
from fractions import Fraction

import numpy as np

from curvebound.bounds import SurfaceSig, asymptotic_fit, lower_bound_iterate, upper_bound_fixed_genus
from curvebound.cli import main as cli_main, read_sweep_csv
from curvebound.exactmat import IntMatrix, IntPolynomial, char_poly, perron_eigenvalue
from curvebound.homology import (
    EscapeAt,
    PeriodicCertificate,
    SymplecticSpace,
    TwistWord,
    compose_word,
    cyclotomic_polynomial,
    escape_iterate,
    is_cyclotomic_product,
    lefschetz,
)
from curvebound.penner import (
    BLOCK_LABELS,
    PennerSpec,
    block_indices,
    penner_upper_bound,
    vanishing_certificate,
)
from curvebound.symfun import (
    coefficient_bound,
    elementary_from_power,
    enumerate_bounded_reciprocal,
    newton_check,
)


def ok(number, text):
    print(f"[acceptance] criterion {number}: PASS - {text}")


# ---------------------------------------------------------------- helpers

def direct_elementaries(values):
    coeffs = [1]
    for v in values:
        nxt = coeffs + [0]
        for i in range(len(coeffs)):
            nxt[i + 1] += coeffs[i] * v
        coeffs = nxt
    return coeffs


def random_multisets(seed, count, max_size=8, lo=-5, hi=5):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        size = rng.randint(1, max_size)
        out.append([rng.randint(lo, hi) for _ in range(size)])
    return out


def largest_real_root(poly, tol=Fraction(1, 10**12)):
    bound = Fraction(1 + max(abs(c) for c in poly.coefficients))
    hi = bound
    step = Fraction(1, 2)
    lo = None
    while lo is None:
        x = hi - step
        while x > -bound:
            if poly.evaluate(x) < 0:
                lo = x
                break
            x -= step
        step /= 2
    hi_b = lo + step * 2
    while hi_b - lo > tol:
        mid = (lo + hi_b) / 2
        if poly.evaluate(mid) < 0:
            lo = mid
        else:
            hi_b = mid
    return (lo + hi_b) / 2


# ---------------------------------------------------------------- criteria

def test_criterion_1_vanishing_reproduction():
    """Certified vanishing and exact block-interval shadows over the grid."""
    started = time.monotonic()
    rng = random.Random(20260808)
    for r in (1, 2, 3):
        for m in range(4, 21):
            specs = [PennerSpec.all_ones(r, m)]
            for _ in range(10):
                blocks = {
                    label: IntMatrix(r, r, [rng.randint(1, 3) for _ in range(r * r)])
                    for label in BLOCK_LABELS
                }
                specs.append(PennerSpec(r=r, m=m, blocks=blocks))
            for spec in specs:
                cert = vanishing_certificate(spec)
                assert cert.certified, (r, m)
                assert cert.t == m // 2 - 1
                c = cert.start_block
                for s, supp in enumerate(cert.support_trace):
                    if s == 0 or c - s < 2 or c + s > m - 1:
                        continue
                    expected = tuple(
                        i for b in range(c - s, c + s + 1) for i in block_indices(r, b)
                    )
                    assert supp.members == expected, (r, m, s)
    elapsed = time.monotonic() - started
    assert elapsed < 30.0, f"grid took {elapsed:.1f}s"
    ok(1, f"561 certificates + interval shadows, exact, in {elapsed:.1f}s")


def test_criterion_2_upper_bound_formulas():
    """Closed-form upper bounds, equality parity, and 2/n for n <= 1000."""
    exact6, closed6 = penner_upper_bound(PennerSpec.all_ones(1, 6))
    assert exact6 == Fraction(1, 6) and closed6 == Fraction(1, 6)
    for m in range(4, 65):
        exact, closed = penner_upper_bound(PennerSpec.all_ones(1, m))
        assert exact == Fraction(2, m * (m // 2 - 1))
        assert closed == Fraction(4, m * m - 2 * m)
        if m % 2 == 0:
            assert exact == closed
        else:
            assert exact != closed
    for n in range(1, 1001):
        assert upper_bound_fixed_genus(n) == Fraction(2, n)
    ok(2, "m=6 gives 1/6; equality at even m<=64, strict at odd; 2/n exact to n=1000")


def test_criterion_3_asymptotic_slopes():
    """Log-log slopes of the two bound families."""
    fit_sq = asymptotic_fit([(m, 4.0 / (m * m - 2 * m)) for m in range(8, 257)])
    assert -2.1 <= fit_sq.slope <= -1.95, fit_sq.slope
    fit_lin = asymptotic_fit([(n, 2.0 / n) for n in range(10, 1001)])
    assert abs(fit_lin.slope + 1.0) <= 1e-9, fit_lin.slope
    ok(3, f"slope {fit_sq.slope:.4f} in [-2.1,-1.95]; slope {fit_lin.slope:.12f} = -1 +- 1e-9")


def test_criterion_4_newton_formula():
    """Exact Newton identity on 200 seeded multisets."""
    for values in random_multisets(seed=424242, count=200):
        e = direct_elementaries(values)
        p = [sum(v**k for v in values) for k in range(1, len(values) + 1)]
        assert all(newton_check(n, e, p) for n in range(1, len(values) + 1))
    ok(4, "200 seeded multisets, size <= 8, entries in [-5,5], zero tolerance")


def test_criterion_5_partition_expansion():
    """Partition expansion equals direct expansion for n <= 8."""
    for values in random_multisets(seed=424242, count=200):
        e = direct_elementaries(values)
        p = [sum(v**k for v in values) for k in range(1, len(values) + 1)]
        for n in range(0, len(values) + 1):
            assert elementary_from_power(n, p) == Fraction(e[n])
    ok(5, "elementary_from_power == direct expansion on the same 200 multisets")


def test_criterion_6_bounded_enumeration():
    """Degree-2 enumeration vs an independent brute force, plus the bound."""
    polys = enumerate_bounded_reciprocal(2, 2)
    assert len(polys) == 5

    survivors = []
    for a in range(-10, 11):  # independent recurrence for x^2 + a x + 1
        prev, cur = 2, -a
        good = abs(cur) <= 2
        for _ in range(5):
            prev, cur = cur, -a * cur - prev
            if abs(cur) > 2:
                good = False
                break
        if good:
            survivors.append((1, a, 1))
    assert [q.coefficients for q in polys] == survivors

    for q in polys:
        n = q.degree
        for k in range(n + 1):
            e_k = (-1) ** k * q.coefficients[n - k]
            assert abs(e_k) <= coefficient_bound(k, 2)
    ok(6, "exactly 5 polynomials, matching brute force over a in [-10,10]")


def test_criterion_7_multitwist_lefschetz():
    """Lefschetz number 2-2g for the identity and 100 seeded multitwists."""
    rng = random.Random(777)
    for g in range(1, 6):
        assert lefschetz(IntMatrix.identity(2 * g), g) == 2 - 2 * g
    for _ in range(100):
        g = rng.randint(1, 5)
        sp = SymplecticSpace(g)
        side = [rng.random() < 0.5 for _ in range(g)]
        letters = []
        for _ in range(rng.randint(0, 6)):
            v = [0] * sp.dim
            for i in range(g):
                v[2 * i if side[i] else 2 * i + 1] = rng.randint(-3, 3)
            letters.append((tuple(v), rng.choice((1, -1))))
        word = TwistWord(sp, tuple(letters))
        assert lefschetz(compose_word(word), g) == 2 - 2 * g
    ok(7, "identity and 100 seeded multitwist words, g <= 5, exact")


def test_criterion_8_escape_and_cyclotomic():
    """Escape examples plus the root-modulus oracle for cyclotomic detection."""
    assert escape_iterate(IntMatrix.from_rows([[2, 1], [1, 1]])) == EscapeAt(1)
    assert escape_iterate(IntMatrix.from_rows([[0, -1], [1, 0]])) == PeriodicCertificate(4)

    rng = random.Random(888)
    checked = 0
    while checked < 50:
        if rng.random() < 0.5:
            q = IntPolynomial([1])
            while q.degree < 2:
                d = rng.randint(1, 12)
                if q.degree + cyclotomic_polynomial(d).degree <= 6:
                    q = q * cyclotomic_polynomial(d)
        else:
            deg = rng.randint(2, 6)
            q = IntPolynomial([rng.randint(-4, 4) for _ in range(deg)] + [1])
            if q.degree < 2 or q.coefficients[0] == 0:
                continue
        roots = np.roots(list(reversed(q.coefficients)))
        oracle = bool(np.all(np.abs(np.abs(roots) - 1.0) < 1e-9))
        assert is_cyclotomic_product(q) == oracle
        checked += 1
    ok(8, "EscapeAt(1), PeriodicCertificate(4); 50 seeded polynomials vs root oracle")


def test_criterion_9_lower_bound_arithmetic():
    """Headline lower bound and the symbolic decomposition identity."""
    assert lower_bound_iterate(SurfaceSig(2, 50), 1) == (1528, Fraction(1, 1528))
    for g in range(0, 21):
        for n in range(0, 201):
            if 2 * g - 2 + n <= 0:
                continue
            x = 2 * g - 2 + n
            for a in range(1, 6):
                lhs = (9 * a + 6) * x - 2 * n + 24 * x - 8 * n
                assert lhs == (9 * a + 30) * x - 10 * n
    ok(9, "(1528, 1/1528); decomposition identity over g<=20, n<=200, alpha_c<=5")


def test_criterion_10_spectral_utilities():
    """Perron value and agreement with the exact characteristic-root oracle."""
    golden = perron_eigenvalue(IntMatrix.from_rows([[1, 1], [1, 0]]), 1e-11)
    assert abs(golden - 1.6180339887) <= 1e-9

    rng = random.Random(1010)
    for _ in range(50):
        n = rng.randint(2, 6)
        rows = [[rng.randint(0, 2) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            rows[i][(i + 1) % n] = max(1, rows[i][(i + 1) % n])
        rows[0][0] = max(1, rows[0][0])
        a = IntMatrix.from_rows(rows)
        lam = perron_eigenvalue(a, 1e-11)
        root = largest_real_root(char_poly(a))
        assert abs(lam - float(root)) < 1e-9
    ok(10, "golden ratio +- 1e-9; 50 seeded primitive matrices agree with char_poly root")


def test_criterion_11_determinism_and_round_trip(tmp_path, capsys):
    """Byte-identical sweeps and lossless fit consumption."""
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["penner", "sweep", "--r", "1", "--m-min", "8", "--m-max", "64"]
    assert cli_main(args + ["--out", str(a)]) == 0
    assert cli_main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()

    n1, n2 = tmp_path / "n1.csv", tmp_path / "n2.csv"
    newton_args = ["symfun", "newton-check", "--degree", "8", "--trials", "25", "--seed", "9"]
    assert cli_main(newton_args + ["--out", str(n1)]) == 0
    assert cli_main(newton_args + ["--out", str(n2)]) == 0
    assert n1.read_bytes() == n2.read_bytes()

    header, rows = read_sweep_csv(str(a))
    assert len(rows) == 57 and all(r["upper_penner"] is not None for r in rows)
    fit_out = tmp_path / "fit.json"
    assert cli_main(["bounds", "fit", "--in", str(a), "--out", str(fit_out)]) == 0
    doc = json.loads(fit_out.read_text())
    assert doc["points"] == 57
    assert doc["slope"] < -1.8
    ok(11, "sweeps byte-identical across runs; fit consumed every sweep row")
