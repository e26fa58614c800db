import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from quasimaps.errors import NotAUnitError, PoleError, PolynomialSyntaxError
from quasimaps.ratfun import (AffineForm, ArrangementFraction, Polynomial, ScalarZ,
                              evaluate_numeric, homogeneous_component, multiply,
                              parse_polynomial, translate, unit_expand)

from strategies import affine_forms, polynomials, rationals, scalars

z = ScalarZ.z()


def u(i, r):
    return Polynomial.variable(i, r)


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def test_scalar_reduction_and_monic_denominator():
    s = ScalarZ([0, 2, 2], [0, 0, 4])        # (2z + 2z^2) / (4 z^2)
    assert s.num == (Fraction(1, 2), Fraction(1, 2))
    assert s.den == (Fraction(0), Fraction(1))
    assert ScalarZ([1, 1], [1, 1]) == 1
    with pytest.raises(ZeroDivisionError):
        ScalarZ(1, [0])


def test_scalar_constants_hash_like_fractions():
    assert hash(ScalarZ(Fraction(3, 4))) == hash(Fraction(3, 4))
    assert ScalarZ(5) == 5 and ScalarZ(0) == 0


@given(scalars(), scalars(allow_zero=False))
def test_scalar_field_inverse(a, b):
    assert (b / b) == 1
    assert (a / b) * b == a
    assert a - a == 0


@given(scalars(), scalars(), scalars(), rationals)
def test_scalar_arithmetic_matches_evaluation(a, b, c, x):
    expr = a * b + c
    try:
        lhs = expr.evaluate(x)
        rhs = a.evaluate(x) * b.evaluate(x) + c.evaluate(x)
    except PoleError:
        assume(False)
    assert lhs == rhs


@given(scalars(), scalars())
def test_scalar_gcd_invariant(a, b):
    from quasimaps.ratfun import _pgcd
    s = a * b + a
    g = _pgcd(s.num, s.den) if s.num else (Fraction(1),)
    assert len(g) == 1
    assert s.den[-1] == 1


def test_scalar_powers_and_json():
    assert (z ** -2) * z ** 2 == 1
    assert (z + 1) ** 3 == z ** 3 + 3 * z ** 2 + 3 * z + 1
    assert (1 / (z + 1)).to_json() == {"num_z_coeffs": ["1"], "den_z_coeffs": ["1", "1"]}


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

@given(polynomials(2, z_coeffs=True), polynomials(2), polynomials(2))
def test_polynomial_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    assert a * b == b * a


@given(polynomials(2), st.integers(-1, 4))
def test_homogeneous_components_partition(p, d):
    total = Polynomial(2)
    for k in range(0, 4):
        total = total + homogeneous_component(p, k)
    assert total == p
    h = homogeneous_component(p, d)
    assert all(sum(e) == d for e in h.terms)


def test_homogeneous_component_examples():
    u1, u2 = u(0, 2), u(1, 2)
    p = u1 ** 2 + u1 * u2 + u1
    assert homogeneous_component(p, 2) == u1 ** 2 + u1 * u2
    assert not homogeneous_component(p, -1)
    zu = u1.scale(z)
    assert homogeneous_component(zu, 1) == zu


@given(polynomials(2), st.lists(rationals, min_size=2, max_size=2),
       st.lists(rationals, min_size=2, max_size=2))
def test_translate_is_substitution(p, shift, pt):
    moved = p.translate(shift)
    assert moved.evaluate(pt) == p.evaluate([a + b for a, b in zip(pt, shift)])


def test_act_swaps_variables():
    u1, u2 = u(0, 2), u(1, 2)
    swap = [[0, 1], [1, 0]]
    assert (u1 ** 2 * u2).act(swap) == u2 ** 2 * u1


def test_parser():
    u1, u2 = u(0, 2), u(1, 2)
    assert parse_polynomial("(u1*u2)^2", 2) == (u1 * u2) ** 2
    assert parse_polynomial("3/2*u1 - z*u2 + 1", 2) == u1.scale(Fraction(3, 2)) - u2.scale(z) + 1
    assert parse_polynomial("u1**3", 1) == u(0, 1) ** 3
    for bad in ["u3", "u1/u2", "u1^-1", "u1^(1/2)", "foo(u1)", "u1 +"]:
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial(bad, 2)


# ---------------------------------------------------------------------------
# arrangement fractions
# ---------------------------------------------------------------------------

def test_multiply_examples():
    x = AffineForm((1,))
    inv_u = ArrangementFraction(Polynomial.constant(1, 1), [(x, 1)])
    sq = multiply(inv_u, inv_u)
    assert sq.denominator == ((x, 2),)
    unreduced = multiply(ArrangementFraction.polynomial(u(0, 1)), inv_u)
    assert unreduced.numerator == u(0, 1) and unreduced.denominator == ((x, 1),)
    half = ArrangementFraction(Polynomial.constant(1, 1), [(AffineForm((2,)), 1)])
    assert half.numerator == Polynomial.constant(Fraction(1, 2), 1)
    assert half.denominator == ((x, 1),)


def test_proportional_forms_merge():
    f = ArrangementFraction(Polynomial.constant(1, 2),
                            [(AffineForm((1, 1)), 1), (AffineForm((2, 2)), 2)])
    assert f.denominator == ((AffineForm((1, 1)), 3),)
    assert f.numerator == Polynomial.constant(Fraction(1, 4), 2)
    g = ArrangementFraction(Polynomial.constant(1, 2),
                            [(AffineForm((1, -1)), 1), (AffineForm((-1, 1)), 2)])
    assert g.denominator == ((AffineForm((1, -1)), 3),)
    assert g.numerator == Polynomial.constant(1, 2)


def test_orientation_of_forms_is_kept():
    f = ArrangementFraction(Polynomial.constant(1, 2), [(AffineForm((-1, 1)), 1)])
    assert f.forms == [AffineForm((-1, 1))]


def test_translate_examples():
    f = ArrangementFraction(Polynomial.constant(1, 1), [(AffineForm((1,), z), 1)])
    assert translate(f, [-z]).denominator == ((AffineForm((1,)), 1),)
    g = ArrangementFraction.polynomial(u(0, 1))
    assert translate(g, [-z]).numerator == u(0, 1) - Polynomial.constant(z, 1)
    h = ArrangementFraction(Polynomial.constant(1, 2), [(AffineForm((1, 1)), 1)])
    assert translate(h, [z, -z]) == h


@st.composite
def fractions_with_forms(draw, rank):
    num = draw(polynomials(rank, z_coeffs=True))
    forms = draw(st.lists(affine_forms(rank), min_size=0, max_size=3))
    exps = draw(st.lists(st.integers(1, 3), min_size=len(forms), max_size=len(forms)))
    return ArrangementFraction(num, list(zip(forms, exps)))


@given(fractions_with_forms(2), st.lists(rationals, min_size=2, max_size=2))
def test_translate_roundtrip(f, pt):
    back = translate(translate(f, pt), [-x for x in pt])
    assert back == f


@given(fractions_with_forms(2), fractions_with_forms(2))
def test_evaluate_numeric_compatible_with_product(a, b):
    rng = random.Random(0)
    pt = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(2)]
    zz = complex(0.37, -0.81)
    try:
        lhs = evaluate_numeric(a * b, pt, zz)
        rhs = evaluate_numeric(a, pt, zz) * evaluate_numeric(b, pt, zz)
    except PoleError:
        assume(False)
    assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


def test_evaluate_numeric_examples():
    x = AffineForm((1,))
    inv_u = ArrangementFraction(Polynomial.constant(1, 1), [(x, 1)])
    assert evaluate_numeric(inv_u, [2]) == 0.5
    ratio = ArrangementFraction(u(0, 1), [(AffineForm((1,), z), 1)])
    assert evaluate_numeric(ratio, [1], 1) == 0.5
    with pytest.raises(PoleError):
        evaluate_numeric(inv_u, [0])


# ---------------------------------------------------------------------------
# unit expansion
# ---------------------------------------------------------------------------

def test_unit_expand_examples():
    x = u(0, 1)
    one = Polynomial.constant(1, 1)
    form = AffineForm((1,), z)
    expected = one.scale(z ** -1) - x.scale(z ** -2) + (x ** 2).scale(z ** -3)
    assert unit_expand(form, 1, 2) == expected
    assert unit_expand(form, 2, 1) == one.scale(z ** -2) - x.scale(2 * z ** -3)
    assert unit_expand(AffineForm((0,), Fraction(3)), 2, 5) == one.scale(Fraction(1, 9))
    with pytest.raises(NotAUnitError):
        unit_expand(AffineForm((1,)), 1, 3)


@given(affine_forms(2), st.integers(1, 3), st.integers(0, 4))
def test_unit_expand_inverts_power(form, k, n):
    assume(form.constant)
    series = unit_expand(form, k, n)
    prod = series * form.as_polynomial() ** k
    assert prod.truncate(n) == Polynomial.constant(1, 2)
