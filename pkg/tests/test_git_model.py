import itertools
import json
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasimaps.errors import (DegenerateStabilityError, EnumerationBoundError,
                              InfiniteLiftsError, PresentationError)
from quasimaps.git_model import (Cone, GitPresentation, anticanonical, chamber,
                                 enumerate_effective_degrees, enumerate_lifts,
                                 enumerate_splittings, is_effective, is_positive,
                                 is_semi_positive, load_presentation, pairing,
                                 validate_insertion)
from quasimaps.presets import grassmannian, product_projective, projective
from quasimaps.ratfun import parse_polynomial

HIRZEBRUCH_1 = dict(rank=2, weights=[(1, 0), (1, 0), (0, 1), (-1, 1)], stability=(1, 2),
                    label="F1")


def f1():
    return GitPresentation(**HIRZEBRUCH_1)


def semi_positive_example():
    # effective cone is the positive quadrant, kappa = (2, 0) vanishes on (0, 1)
    return GitPresentation(rank=2, weights=[(1, 0), (0, 1), (1, -1)], stability=(2, 1))


PRESETS_RANK_LE_3 = [projective(2), projective(4), product_projective([2, 2]),
                     product_projective([2, 3, 2]), grassmannian(2, 4), grassmannian(2, 3),
                     grassmannian(3, 5), f1()]


def test_pairing():
    assert pairing((1, 0), (3, 5)) == 3
    assert pairing((0, 0), (7, -2)) == 0
    assert pairing((1, 1), (1, -1)) == 0
    with pytest.raises(ValueError):
        pairing((1,), (1, 2))


def test_anticanonical():
    assert anticanonical(projective(2)) == (2,)
    assert anticanonical(grassmannian(2, 4)) == (4, 4)


@pytest.mark.parametrize("kwargs, message", [
    (dict(rank=1, weights=[], stability=(1,)), "no weights"),
    (dict(rank=2, weights=[(1, 0), (2, 0)], stability=(1, 1)), "span"),
    (dict(rank=1, weights=[(1,), (-1,)], stability=(1,)), "half-space"),
    (dict(rank=1, weights=[(1,)], stability=(1,), weyl_order=2), "weyl_order"),
    (dict(rank=2, weights=[(1, 0), (0, 1)], stability=(1, 1), degree_basis=[(1, 1), (2, 2)]),
     "dependent"),
    (dict(rank=2, weights=[(1, 0), (0, 1)], stability=(1,)), "length"),
])
def test_validation_rejects(kwargs, message):
    with pytest.raises(PresentationError, match=message):
        GitPresentation(**kwargs)


def test_stability_on_wall():
    with pytest.raises(DegenerateStabilityError):
        GitPresentation(rank=2, weights=[(1, 0), (0, 1), (1, 1)], stability=(1, 1))


def test_weyl_generators_checked():
    g = grassmannian(2, 4)
    with pytest.raises(PresentationError, match="invariant"):
        GitPresentation(rank=2, weights=g.weights, positive_roots=g.positive_roots,
                        weyl_order=2, weyl_generators=g.weyl_generators, stability=(1, 1),
                        degree_basis=[(1, 0)])


def test_chamber_examples():
    assert chamber(grassmannian(2, 4)).generators == ((0, 1), (1, 0))
    assert chamber(projective(3)).generators == ((1,),)
    g = grassmannian(2, 4)
    fourth = GitPresentation(rank=2, weights=g.weights, stability=(1, -1))
    assert set(chamber(fourth).generators) == {(1, 0), (0, -1)}
    assert fourth.quotient_is_empty


@pytest.mark.parametrize("p", PRESETS_RANK_LE_3, ids=str)
def test_chamber_contains_stability_in_interior(p):
    c = chamber(p)
    assert all(pairing(h, p.stability) > 0 for h in c.halfspaces)
    for g in c.generators:
        assert all(pairing(h, g) >= 0 for h in c.halfspaces)


def test_cone_duality():
    c = Cone.from_generators([(1, 0), (1, 2)], 2)
    assert c.dual().dual() == c
    assert c.contains((3, 1)) and not c.contains((0, 1))
    assert c.interior_contains((2, 1)) and not c.interior_contains((1, 0))


def test_is_effective():
    g = grassmannian(2, 4)
    assert is_effective((1, 0), g)
    assert not is_effective((-1, 2), g)
    assert is_effective((0, 0), f1())


def test_lift_examples():
    assert enumerate_lifts((1,), grassmannian(2, 4)) == [(0, 1), (1, 0)]
    assert enumerate_lifts((0,), grassmannian(2, 4)) == [(0, 0)]
    assert enumerate_lifts((3,), projective(4)) == [(3,)]
    assert enumerate_lifts((-1,), projective(4)) == []


@pytest.mark.parametrize("p", PRESETS_RANK_LE_3, ids=str)
def test_lifts_match_box_scan(p):
    box = 10 if p.rank < 3 else 4
    degrees = {}
    for x in itertools.product(range(-box, box + 1), repeat=p.rank):
        if is_effective(x, p):
            degrees.setdefault(p.lift_degree(x), []).append(x)
    for delta, expected in sorted(degrees.items())[:12]:
        if any(abs(c) >= box for x in expected for c in x):
            continue
        got = enumerate_lifts(delta, p)
        assert got == sorted(expected)
        for x in got:
            assert is_effective(x, p) and p.lift_degree(x) == delta


def test_infinite_lifts_detected():
    p = GitPresentation(rank=2, weights=[(1, 0), (0, 1)], stability=(1, 1),
                        degree_basis=[(1, 0)])
    with pytest.raises(InfiniteLiftsError):
        enumerate_lifts((1,), p)


def test_effective_degree_examples():
    assert enumerate_effective_degrees(projective(2), 6) == [(0,), (1,), (2,), (3,)]
    assert enumerate_effective_degrees(grassmannian(2, 4), 4) == [(0,), (1,)]
    assert enumerate_effective_degrees(grassmannian(2, 4), 0) == [(0,)]
    assert enumerate_effective_degrees(f1(), 3) == [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0),
                                                    (3, 0)]


def test_positivity():
    assert is_positive(projective(3)) and is_positive(grassmannian(2, 5)) and is_positive(f1())
    sp = semi_positive_example()
    assert is_semi_positive(sp) and not is_positive(sp)
    with pytest.raises(EnumerationBoundError):
        enumerate_effective_degrees(sp, 4)


def test_splittings():
    g = grassmannian(2, 4)
    assert enumerate_splittings((1, 0), g) == [((1, 0), (0, 0)), ((0, 0), (1, 0))]
    pairs = enumerate_splittings((2, 1), g)
    assert len(pairs) == 6
    assert all(is_effective(a, g) and is_effective(b, g) for a, b in pairs)


@given(st.integers(0, 3), st.integers(0, 3))
def test_splittings_of_f1_sum_back(a, b):
    p = f1()
    for d1, d2 in enumerate_splittings((a, b), p):
        assert tuple(x + y for x, y in zip(d1, d2)) == (a, b)
        assert is_effective(d1, p) and is_effective(d2, p)


@pytest.mark.parametrize("p", [grassmannian(2, 4), grassmannian(3, 5)], ids=str)
def test_anticanonical_is_weyl_invariant(p):
    k = anticanonical(p)
    assert all(p.act(g, k) == k for g in p.weyl_generators)


def test_validate_insertion():
    g = grassmannian(2, 4)
    assert validate_insertion(parse_polynomial("u1+u2", 2), g)
    assert not validate_insertion(parse_polynomial("u1", 2), g)
    assert validate_insertion(parse_polynomial("u1^3*u2", 2), product_projective([2, 2]))


def test_missing_generators_warn():
    g = grassmannian(2, 4)
    bare = GitPresentation(rank=2, weights=g.weights, positive_roots=g.positive_roots,
                           weyl_order=2, stability=(1, 1), degree_basis=[(1, 1)])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert validate_insertion(parse_polynomial("u1", 2), bare)
    assert caught


def test_json_roundtrip(tmp_path):
    g = grassmannian(2, 4)
    path = tmp_path / "gr.json"
    path.write_text(json.dumps(g.to_json()))
    assert load_presentation(path) == g


def test_effective_cone_override():
    p = GitPresentation(rank=2, weights=[(1, 0), (0, 1)], stability=(1, 1),
                        effective_cone_generators=[(1, 0), (1, 1)])
    assert not is_effective((0, 1), p)
    assert is_effective((2, 1), p)
