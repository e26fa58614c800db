"""Combinatorial GIT data: characters, presentations, chambers and degrees.

Characters of the maximal torus T and their duals are plain integer tuples
in a fixed basis.  A degree of G is recorded through its pairings with a
Weyl-invariant basis of the character sublattice of G.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from . import _linalg as la
from .errors import (DegenerateStabilityError, EnumerationBoundError, InfiniteLiftsError,
                     PresentationError)
from .ratfun import Polynomial

CharacterVector = Tuple[int, ...]
DegreeVector = Tuple[int, ...]
GDegree = Tuple[int, ...]

#: default cap on the number of box points scanned during lattice enumeration
DEFAULT_POINT_CAP = 2_000_000


def pairing(d: Sequence[int], w: Sequence[int]) -> int:
    if len(d) != len(w):
        raise ValueError(f"pairing of vectors of lengths {len(d)} and {len(w)}")
    return sum(int(a) * int(b) for a, b in zip(d, w))


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cone:
    """Pointed, full-dimensional rational polyhedral cone.

    ``generators`` are primitive extreme rays and ``halfspaces`` are the
    primitive inward facet normals; both descriptions are kept irredundant.
    """

    dim: int
    generators: Tuple[Tuple[int, ...], ...]
    halfspaces: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_halfspaces(cls, normals: Sequence[Sequence[int]], dim: int) -> "Cone":
        normals = sorted({la.primitive(n) for n in normals if any(n)})
        rays = _extreme_rays(normals, dim)
        return cls(dim, tuple(sorted(rays)), tuple(_irredundant(normals, rays, dim)))

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence[int]], dim: int) -> "Cone":
        gens = sorted({la.primitive(g) for g in gens if any(g)})
        facets = _extreme_rays(gens, dim)
        rays = _irredundant(gens, facets, dim)
        return cls(dim, tuple(rays), tuple(sorted(facets)))

    def dual(self) -> "Cone":
        return Cone(self.dim, self.halfspaces, self.generators)

    def contains(self, x: Sequence) -> bool:
        return all(la.dot(h, x) >= 0 for h in self.halfspaces)

    def interior_contains(self, x: Sequence) -> bool:
        return all(la.dot(h, x) > 0 for h in self.halfspaces)


def _extreme_rays(normals, dim):
    """Extreme rays of {x : <n, x> >= 0 for all normals} (assumed pointed)."""
    if dim == 1:
        rays = [(s,) for s in (1, -1) if all(n[0] * s >= 0 for n in normals)]
        return sorted(rays)
    rays = set()
    for subset in itertools.combinations(normals, dim - 1):
        v = la.normal_vector(subset, dim)
        if not any(v):
            continue
        for cand in (v, tuple(-x for x in v)):
            if all(la.dot(n, cand) >= 0 for n in normals):
                rays.add(cand)
    return sorted(rays)


def _irredundant(normals, rays, dim):
    """Normals that are facets: vanishing on rays of rank dim - 1."""
    keep = []
    for n in normals:
        on = [g for g in rays if la.dot(n, g) == 0]
        if la.rank(on) == dim - 1:
            keep.append(n)
    return sorted(set(keep))


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

def _vec(v) -> Tuple[int, ...]:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class GitPresentation:
    """Weights, roots, Weyl data, stability and degree basis defining V//G."""

    rank: int
    weights: Tuple[CharacterVector, ...]
    positive_roots: Tuple[CharacterVector, ...] = ()
    weyl_order: int = 1
    weyl_generators: Optional[Tuple[Tuple[Tuple[int, ...], ...], ...]] = None
    stability: CharacterVector = ()
    degree_basis: Tuple[CharacterVector, ...] = ()
    label: str = ""
    effective_cone_generators: Optional[Tuple[DegreeVector, ...]] = None

    def __post_init__(self):
        obj = object.__setattr__
        obj(self, "weights", tuple(_vec(w) for w in self.weights))
        obj(self, "positive_roots", tuple(_vec(a) for a in self.positive_roots))
        obj(self, "stability", _vec(self.stability))
        obj(self, "degree_basis", tuple(_vec(b) for b in self.degree_basis))
        if not self.degree_basis and not self.positive_roots and self.rank > 0:
            # a torus is its own maximal torus: degrees are T-degrees
            obj(self, "degree_basis", tuple(tuple(int(i == j) for j in range(self.rank))
                                            for i in range(self.rank)))
        if self.weyl_generators is not None:
            obj(self, "weyl_generators",
                tuple(tuple(_vec(row) for row in g) for g in self.weyl_generators))
        if self.effective_cone_generators is not None:
            obj(self, "effective_cone_generators",
                tuple(_vec(g) for g in self.effective_cone_generators))
        self._validate()

    def _validate(self):
        r = self.rank
        if r < 1:
            raise PresentationError("rank must be positive")
        if not self.weights:
            raise PresentationError("presentation has no weights")
        vectors = {"weights": self.weights, "positive_roots": self.positive_roots,
                   "degree_basis": self.degree_basis,
                   "effective_cone_generators": self.effective_cone_generators or ()}
        for name, vs in vectors.items():
            for v in vs:
                if len(v) != r:
                    raise PresentationError(f"{name} entry {v} does not have length {r}")
        if len(self.stability) != r:
            raise PresentationError(f"stability {self.stability} does not have length {r}")
        if la.rank(self.weights) != r:
            raise PresentationError("weights do not span the character space")
        if not _in_open_halfspace(self.weights):
            raise PresentationError("weights are not contained in an open half-space")
        if self.weyl_order < 1:
            raise PresentationError("weyl_order must be positive")
        if any(not any(a) for a in self.positive_roots):
            raise PresentationError("zero positive root")
        if not self.positive_roots and self.weyl_order != 1:
            raise PresentationError("a torus presentation must have weyl_order 1")
        if not self.degree_basis:
            raise PresentationError("degree_basis is empty")
        if la.rank(self.degree_basis) != len(self.degree_basis):
            raise PresentationError("degree_basis is linearly dependent")
        if self.weyl_generators is not None:
            roots = set(self.roots)
            for g in self.weyl_generators:
                if len(g) != r or any(len(row) != r for row in g) or la.det(g) == 0:
                    raise PresentationError("Weyl generators must be invertible r x r matrices")
                for b in self.degree_basis:
                    if self.act(g, b) != b:
                        raise PresentationError(f"degree basis vector {b} is not Weyl invariant")
                if self.act(g, self.stability) != self.stability:
                    raise PresentationError("stability is not Weyl invariant")
                if sorted(self.act(g, w) for w in self.weights) != sorted(self.weights):
                    raise PresentationError("Weyl generator does not permute the weights")
                if {self.act(g, a) for a in roots} != roots:
                    raise PresentationError("Weyl generator does not permute the roots")
        # computes and caches the chamber; raises on a degenerate stability
        self.chamber
        if self.effective_cone_generators is not None:
            if la.rank(self.effective_cone_generators) != r:
                raise PresentationError("effective cone generators must span")

    # derived data
    @staticmethod
    def act(g, w) -> CharacterVector:
        return tuple(sum(g[i][j] * w[j] for j in range(len(w))) for i in range(len(g)))

    @property
    def is_torus(self) -> bool:
        return not self.positive_roots

    @property
    def roots(self) -> Tuple[CharacterVector, ...]:
        return self.positive_roots + tuple(tuple(-x for x in a) for a in self.positive_roots)

    @property
    def dim_v(self) -> int:
        return len(self.weights)

    @property
    def dim_g(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @property
    def dim_quotient(self) -> int:
        return self.dim_v - self.dim_g

    @cached_property
    def chamber(self) -> Cone:
        return _compute_chamber(self.weights, self.stability, self.rank)

    @property
    def quotient_is_empty(self) -> bool:
        """True when the stability lies outside the cone spanned by the weights."""
        return not Cone.from_generators(self.weights, self.rank).interior_contains(self.stability)

    @cached_property
    def effective_cone(self) -> Cone:
        if self.effective_cone_generators is not None:
            return Cone.from_generators(self.effective_cone_generators, self.rank)
        return self.chamber.dual()

    def lift_degree(self, delta_t: Sequence[int]) -> GDegree:
        """Restriction of a T-degree to the degree sublattice."""
        return tuple(pairing(delta_t, b) for b in self.degree_basis)

    # serialization
    def to_json(self) -> dict:
        out = {"rank": self.rank,
               "weights": [list(w) for w in self.weights],
               "positive_roots": [list(a) for a in self.positive_roots],
               "weyl_order": self.weyl_order,
               "stability": list(self.stability),
               "degree_basis": [list(b) for b in self.degree_basis],
               "label": self.label}
        if self.weyl_generators is not None:
            out["weyl_generators"] = [[list(row) for row in g] for g in self.weyl_generators]
        if self.effective_cone_generators is not None:
            out["effective_cone_generators"] = [list(g) for g in self.effective_cone_generators]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GitPresentation":
        try:
            rank = int(data["rank"])
            return cls(rank=rank,
                       weights=data["weights"],
                       positive_roots=data.get("positive_roots", []),
                       weyl_order=int(data.get("weyl_order", 1)),
                       weyl_generators=data.get("weyl_generators"),
                       stability=data["stability"],
                       degree_basis=data.get("degree_basis") or
                       [tuple(int(i == j) for j in range(rank)) for i in range(rank)],
                       label=data.get("label", ""),
                       effective_cone_generators=data.get("effective_cone_generators"))
        except KeyError as exc:
            raise PresentationError(f"presentation JSON is missing field {exc}") from None

    def __str__(self):
        return self.label or f"GitPresentation(rank={self.rank}, |A|={self.dim_v})"


def load_presentation(path) -> GitPresentation:
    with open(Path(path)) as fh:
        return GitPresentation.from_json(json.load(fh))


def _in_open_halfspace(vectors) -> bool:
    # find h with <h, v> >= 1 for all v
    a = -np.array(vectors, dtype=float)
    res = linprog(np.zeros(a.shape[1]), A_ub=a, b_ub=-np.ones(len(vectors)),
                  bounds=[(None, None)] * a.shape[1], method="highs")
    return res.status == 0


def _compute_chamber(weights, xi, r) -> Cone:
    distinct = sorted(set(weights))
    if not any(xi):
        raise DegenerateStabilityError("stability is zero")
    walls = set()
    for subset in itertools.combinations(distinct, r - 1):
        n = la.normal_vector(subset, r)
        if not any(n):
            continue
        s = la.dot(n, xi)
        if s == 0:
            raise DegenerateStabilityError(
                f"stability {tuple(xi)} lies on the wall spanned by {list(subset)}")
        walls.add(n if s > 0 else tuple(-x for x in n))
    return Cone.from_halfspaces(sorted(walls), r)


def anticanonical(p: GitPresentation) -> CharacterVector:
    return tuple(sum(w[i] for w in p.weights) for i in range(p.rank))


def chamber(p: GitPresentation) -> Cone:
    return p.chamber


def is_effective(d: Sequence[int], p: GitPresentation) -> bool:
    return p.effective_cone.contains(d)


def is_positive(p: GitPresentation) -> bool:
    """Anticanonical character pairs positively with every nonzero effective degree."""
    k = anticanonical(p)
    return all(pairing(g, k) > 0 for g in p.effective_cone.generators)


def is_semi_positive(p: GitPresentation) -> bool:
    k = anticanonical(p)
    return all(pairing(g, k) >= 0 for g in p.effective_cone.generators)


# ---------------------------------------------------------------------------
# lattice point enumeration
# ---------------------------------------------------------------------------

def _lattice_points(halfspaces, eq_rows, eq_rhs, ub_rows, ub_rhs, r, cap, what):
    """Integer points of {<h,x> >= 0, <a,x> = b, <c,x> <= d}, lexicographically sorted."""
    a_ub = [[-x for x in h] for h in halfspaces] + [list(c) for c in ub_rows]
    b_ub = [0] * len(halfspaces) + list(ub_rhs)
    kwargs = dict(A_ub=np.array(a_ub, dtype=float) if a_ub else None,
                  b_ub=np.array(b_ub, dtype=float) if a_ub else None,
                  A_eq=np.array(eq_rows, dtype=float) if eq_rows else None,
                  b_eq=np.array(eq_rhs, dtype=float) if eq_rows else None,
                  bounds=[(None, None)] * r, method="highs")
    lo, hi = [], []
    for i in range(r):
        c = np.zeros(r)
        for sign, store in ((1, lo), (-1, hi)):
            c[i] = sign
            res = linprog(c, **kwargs)
            if res.status == 2:
                return []
            if res.status == 3:
                raise InfiniteLiftsError(
                    f"{what}: coordinate {i + 1} is unbounded on the cone "
                    f"{{<x, c> >= 0}} cut by the constraints")
            if res.status != 0:
                raise RuntimeError(f"linear program failed: {res.message}")
            store.append(sign * res.fun)
    ranges = [range(math.floor(l - 1e-6), math.ceil(h + 1e-6) + 1) for l, h in zip(lo, hi)]
    total = math.prod(len(x) for x in ranges)
    if total > cap:
        raise EnumerationBoundError(f"{what}: {total} box points exceed the cap {cap}")
    out = []
    for x in itertools.product(*ranges):
        if any(la.dot(h, x) < 0 for h in halfspaces):
            continue
        if any(la.dot(a, x) != b for a, b in zip(eq_rows, eq_rhs)):
            continue
        if any(la.dot(c, x) > d for c, d in zip(ub_rows, ub_rhs)):
            continue
        out.append(tuple(x))
    return sorted(out)


def enumerate_lifts(delta: Sequence[int], p: GitPresentation,
                    cap: int = DEFAULT_POINT_CAP) -> List[DegreeVector]:
    """Effective T-degrees restricting to ``delta`` (pairings with the degree basis)."""
    delta = tuple(int(x) for x in delta)
    if len(delta) != len(p.degree_basis):
        raise ValueError(f"degree {delta} must have {len(p.degree_basis)} entries")
    try:
        return _lattice_points(p.effective_cone.halfspaces, p.degree_basis, delta, [], [],
                               p.rank, cap, f"lifts of degree {delta}")
    except InfiniteLiftsError as exc:
        raise InfiniteLiftsError(
            f"{exc}; the effective cone meets the kernel of the restriction map "
            f"beyond the origin") from None


def enumerate_effective_degrees(p: GitPresentation, kappa_bound: int,
                                cap: int = DEFAULT_POINT_CAP) -> List[GDegree]:
    """Degrees admitting an effective lift pairing with the anticanonical character at most
    ``kappa_bound``."""
    if kappa_bound < 0:
        return []
    k = anticanonical(p)
    try:
        pts = _lattice_points(p.effective_cone.halfspaces, [], [], [k], [kappa_bound],
                              p.rank, cap, f"effective degrees with <d, kappa> <= {kappa_bound}")
    except InfiniteLiftsError as exc:
        raise EnumerationBoundError(f"{exc}; the presentation is not positive") from None
    return sorted({p.lift_degree(x) for x in pts})


def enumerate_splittings(delta_t: Sequence[int], p: GitPresentation,
                         cap: int = DEFAULT_POINT_CAP) -> List[Tuple[DegreeVector, DegreeVector]]:
    """Pairs (d1, d2) with d1 + d2 = delta_t and both parts effective, sorted by d2."""
    delta_t = tuple(int(x) for x in delta_t)
    hs = p.effective_cone.halfspaces
    second = _lattice_points(hs, [], [], hs, [pairing(h, delta_t) for h in hs], p.rank, cap,
                             f"splittings of {delta_t}")
    return [(tuple(a - b for a, b in zip(delta_t, d2)), d2) for d2 in second]


@dataclass(frozen=True)
class DualTorusPoint:
    """Point of a dual torus in the coordinates attached to an integral basis."""

    q_coords: Tuple[complex, ...]
    basis_id: str = "standard"

    def __post_init__(self):
        coords = tuple(complex(c) for c in self.q_coords)
        if any(c == 0 for c in coords):
            raise ValueError(f"dual torus coordinates must be nonzero: {coords}")
        object.__setattr__(self, "q_coords", coords)

    def __len__(self):
        return len(self.q_coords)

    def power(self, exponents: Sequence[int]) -> complex:
        out = complex(1)
        for c, k in zip(self.q_coords, exponents):
            out *= c ** k
        return out

    def to_json(self):
        return [[c.real, c.imag] for c in self.q_coords]


def as_dual_point(q, basis_id: str = "standard") -> DualTorusPoint:
    if isinstance(q, DualTorusPoint):
        return q
    if isinstance(q, (int, float, complex)):
        q = [q]
    return DualTorusPoint(tuple(q), basis_id)


def validate_insertion(poly: Polynomial, p: GitPresentation) -> bool:
    """True iff ``poly`` is fixed by every Weyl generator."""
    if p.weyl_generators is None:
        if not p.is_torus:
            warnings.warn(f"{p}: no Weyl generators supplied; insertion not checked",
                          stacklevel=2)
        return True
    return all(poly.act(g) == poly for g in p.weyl_generators)
