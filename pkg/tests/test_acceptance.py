"""Acceptance criteria, one test each.

Every criterion prints a single ``PASS``/``FAIL`` line with its elapsed
time.  Run directly (``python tests/test_acceptance.py``) for the summary
alone, or through pytest where the lines appear in the ``-v`` output.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import grassmannian_root_sum, rank1_homogeneous, rank2_three_lines  # noqa: E402
from quasimaps.git_model import GitPresentation  # noqa: E402
from quasimaps.invariants import (EQUIVARIANT, NONEQUIVARIANT, d_factor,  # noqa: E402
                                  generating_series_truncated, integral, series_terms,
                                  virtual_dimension)
from quasimaps.jk import jk_homogeneous  # noqa: E402
from quasimaps.presets import grassmannian, product_projective, projective  # noqa: E402
from quasimaps.ratfun import (AffineForm, ArrangementFraction, Polynomial,  # noqa: E402
                              ScalarZ, homogeneous_component, monomials, parse_polynomial)

z = ScalarZ.z()


def symmetric_insertion(degree, rng, z_terms=False):
    """Random symmetric homogeneous polynomial in two variables."""
    e1 = Polynomial.linear((1, 1))
    e2 = Polynomial(2, {(1, 1): 1})
    out = Polynomial(2)
    for b in range(degree // 2 + 1):
        out = out + (e1 ** (degree - 2 * b) * e2 ** b).scale(rng.randint(-4, 4) or 1)
    if z_terms and degree:
        out = out + symmetric_insertion(degree - 1, rng).scale(z * rng.randint(1, 3))
    return out


def rank1_insertion(degree, rng, z_terms=False):
    u = Polynomial.variable(0, 1)
    out = (u ** degree).scale(rng.randint(1, 5))
    if z_terms and degree:
        out = out + (u ** (degree - 1)).scale(z * rng.randint(-3, 3))
    return out


def random_poly(rng, rank, max_degree, terms=4):
    out = Polynomial(rank)
    for _ in range(terms):
        e = rng.choice([m for d in range(max_degree + 1) for m in monomials(rank, d)])
        out = out + Polynomial(rank, {e: Fraction(rng.randint(-9, 9), rng.randint(1, 4))})
    return out


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def d_factor_cases():
    w = (1,)
    u = Polynomial.variable(0, 1)
    one = Polynomial.constant(1, 1)
    expected = [
        ((-1,), ArrangementFraction.one(1)),
        ((2,), ArrangementFraction.polynomial(u * (u + one.scale(z)) * (u + one.scale(2 * z)))),
        ((-3,), ArrangementFraction(one, [(AffineForm((1,), -2 * z), 1),
                                          (AffineForm((1,), -z), 1)])),
    ]
    d_factor((0,), w)  # warm caches before timing
    start = time.perf_counter()
    got = [d_factor(m, w) for m, _ in expected]
    elapsed = time.perf_counter() - start
    ok = all(g == e for g, (_, e) in zip(got, expected))
    return ok, elapsed, "pairings -1, 2, -3"


def projective_spaces():
    bad = []
    count = 0
    for n in (2, 3, 4):
        p = projective(n)
        for d in range(4):
            target = n * (d + 1) - 1
            for k in range(n * (d + 1) + 3):
                value = integral(p, (d,), Polynomial.variable(0, 1) ** k).constant_value()
                count += 1
                if value != (1 if k == target else 0):
                    bad.append((n, d, k, value))
    return not bad, None, f"{count} invariants, mismatches {bad[:3]}"


def grassmannian_degree_zero():
    cases = [(grassmannian(2, 4), "(u1+u2)^4", 2), (grassmannian(2, 4), "(u1*u2)^2", 1),
             (grassmannian(2, 3), "(u1+u2)^2", 1)]
    got = [integral(p, (0,), parse_polynomial(t, 2)).constant_value() for p, t, _ in cases]
    return got == [v for *_, v in cases], None, f"values {[str(g) for g in got]}"


def equivariant_coherence():
    rng = random.Random(2024)
    checked = 0
    bad = []
    for p in (projective(2), projective(3), grassmannian(2, 3), grassmannian(2, 4)):
        make = rank1_insertion if p.rank == 1 else symmetric_insertion
        for d in range(3):
            vd = virtual_dimension((d,), p)
            for z_terms in (False, True):
                ins = make(vd, rng, z_terms)
                eq = integral(p, (d,), ins, EQUIVARIANT)
                plain = integral(p, (d,), ins, NONEQUIVARIANT)
                checked += 1
                if not eq.is_polynomial() or eq.at_zero() != plain.constant_value():
                    bad.append((str(p), d, str(eq), str(plain)))
    return not bad, None, f"{checked} pairs, mismatches {bad[:2]}"


def roots_of_unity_agreement():
    rng = random.Random(7)
    worst = 0.0
    for r, n, d in ((2, 3, 1), (2, 4, 1)):
        p = grassmannian(r, n)
        e = n * d + r * (n - r)
        for _ in range(5):
            ins = symmetric_insertion(e, rng)
            exact = integral(p, (d,), ins).constant_value()
            numeric = grassmannian_root_sum(r, n, d, lambda u: ins.evaluate(list(u), 0))
            worst = max(worst, abs(complex(exact) - numeric))
    return worst < 1e-9, None, f"max |diff| = {worst:.2e}"


def vi_against_series():
    from quasimaps.vafa_intriligator import vi_vs_series_check
    cases = [(projective(2), "u1^3"), (projective(3), "u1^5"),
             (grassmannian(2, 4), "(u1*u2)^2")]
    diffs = []
    for p, text in cases:
        rep = vi_vs_series_check(parse_polynomial(text, p.rank), 0.1, p, 8)
        diffs.append(rep["abs_diff"])
    return max(diffs) < 1e-8, None, "diffs " + ", ".join(f"{x:.1e}" for x in diffs)


LINES = [(1, 1), (1, 2), (2, 1), (3, 2)]
DIRECTIONS = [(5, 1), (3, 1), (7, 5), (1, 5), (1, 3), (5, 7), (4, 5), (11, 10)]


def _chamber(eta, line):
    p, q = line
    return eta[1] * p - eta[0] * q > 0


def jk_properties():
    rng = random.Random(99)
    X, Y = AffineForm((1, 0)), AffineForm((0, 1))
    counts = dict(oracle=0, linearity=0, degree=0, chamber=0)
    failures = []
    while min(counts.values()) < 60:
        a, b, c = (rng.randint(0, 3) for _ in range(3))
        if (a > 0) + (b > 0) + (c > 0) < 2:
            continue
        line = rng.choice(LINES)
        pairs = [(f, k) for f, k in ((X, a), (Y, b), (AffineForm(line), c)) if k]
        eta = rng.choice([e for e in DIRECTIONS if e[1] * line[0] != e[0] * line[1]])
        f = random_poly(rng, 2, a + b + c)
        g = random_poly(rng, 2, a + b + c)
        jf = jk_homogeneous(ArrangementFraction(f, pairs), eta)
        want = rank2_three_lines({k: v.constant_value() for k, v in f.terms.items()},
                                 a, b, c, eta, *line)
        counts["oracle"] += 1
        if jf != want:
            failures.append(("oracle", str(f), a, b, c, line, eta))
        s, t = Fraction(rng.randint(-5, 5), rng.randint(1, 3)), rng.randint(-5, 5)
        lhs = jk_homogeneous(ArrangementFraction(f.scale(s) + g.scale(t), pairs), eta)
        counts["linearity"] += 1
        if lhs != s * jf + t * jk_homogeneous(ArrangementFraction(g, pairs), eta):
            failures.append(("linearity", str(f), str(g)))
        wrong = a + b + c - 2 + rng.choice([-2, -1, 1, 2, 3])
        if wrong >= 0:
            h = homogeneous_component(random_poly(rng, 2, wrong + 1, 6), wrong)
            counts["degree"] += 1
            if jk_homogeneous(ArrangementFraction(h, pairs), eta) != 0:
                failures.append(("degree", str(h), a, b, c, line, eta))
        same = [e for e in DIRECTIONS if _chamber(e, line) == _chamber(eta, line)
                and e[1] * line[0] != e[0] * line[1]]
        counts["chamber"] += 1
        if jk_homogeneous(ArrangementFraction(f, pairs), rng.choice(same)) != jf:
            failures.append(("chamber", str(f), a, b, c, line, eta))
    for _ in range(20):
        m = rng.randint(1, 5)
        num = random_poly(rng, 1, m + 1)
        sign = rng.choice([-1, 1])
        counts["oracle"] += 1
        want = rank1_homogeneous({k: v.constant_value() for k, v in num.terms.items()}, m, sign)
        if jk_homogeneous(ArrangementFraction(num, [(AffineForm((1,)), m)]), [sign]) != want:
            failures.append(("rank1", str(num), m, sign))
    total = sum(counts.values())
    return not failures and total >= 200, None, f"{total} fractions {counts}, failures {failures[:2]}"


def series_stabilization():
    f1 = GitPresentation(rank=2, weights=[(1, 0), (1, 0), (0, 1), (-1, 1)], stability=(1, 2))
    cases = [(projective(2), "u1^7"), (projective(3), "u1^8"),
             (grassmannian(2, 4), "(u1+u2)^8"), (grassmannian(2, 3), "(u1*u2)^2*(u1+u2)"),
             (product_projective([2, 2]), "u1^3*u2^3"), (f1, "u2^6")]
    bad = []
    for p, text in cases:
        ins = parse_polynomial(text, p.rank)
        dim = virtual_dimension((0,) * len(p.degree_basis), p)
        k0 = ins.total_degree() - dim
        stable = [(d, v) for d, v in series_terms(p, ins, k0) if v]
        if not stable:
            bad.append((str(p), "no contribution"))
        below = [(d, v) for d, v in series_terms(p, ins, k0 - 1) if v] if k0 > 0 else []
        if k0 > 0 and below == stable:
            bad.append((str(p), "stable too early"))
        for extra in range(1, 5):
            if [(d, v) for d, v in series_terms(p, ins, k0 + extra) if v] != stable:
                bad.append((str(p), extra))
        q = (0.1,) * len(p.degree_basis)
        values = {generating_series_truncated(p, ins, q, k0 + extra) for extra in range(4)}
        if len(values) != 1:
            bad.append((str(p), "value"))
    return not bad, None, f"{len(cases)} presets, problems {bad[:3]}"


CRITERIA = [
    (1, "D-factor cases", d_factor_cases, 1e-3),
    (2, "projective spaces", projective_spaces, 1.0),
    (3, "Grassmannian degree 0", grassmannian_degree_zero, 1.0),
    (4, "equivariant/nonequivariant coherence", equivariant_coherence, 30.0),
    (5, "roots-of-unity agreement", roots_of_unity_agreement, 60.0),
    (6, "fiber sum against series", vi_against_series, 60.0),
    (7, "JK kernel properties", jk_properties, 120.0),
    (8, "series stabilization", series_stabilization, 10.0),
]


def run_criterion(number, name, check, limit):
    start = time.perf_counter()
    ok, timed, detail = check()
    elapsed = time.perf_counter() - start if timed is None else timed
    passed = ok and elapsed < limit
    line = (f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {name} "
            f"({elapsed:.4f}s, limit {limit}s) {detail}")
    return passed, line


@pytest.mark.acceptance
@pytest.mark.parametrize("number, name, check, limit", CRITERIA,
                         ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, name, check, limit, capsys):
    passed, line = run_criterion(number, name, check, limit)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
