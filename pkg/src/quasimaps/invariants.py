"""Quasimap invariants as sums of Jeffrey-Kirwan residues.

For a G-degree the invariant sums over its effective lifts to T-degrees.
The equivariant version adds, for each lift, residues at the points
``-z * d2`` over all splittings ``lift = d1 + d2`` into effective parts.
The nonequivariant version takes a single homogeneous residue per lift.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import _linalg as la
from .errors import ConsistencyError, ContractViolation, InsertionError
from .git_model import (DegreeVector, GDegree, GitPresentation, anticanonical, as_dual_point,
                        enumerate_effective_degrees, enumerate_lifts, enumerate_splittings,
                        pairing, validate_insertion)
from .jk import jk_at_point, jk_homogeneous
from .ratfun import ZERO, AffineForm, ArrangementFraction, Polynomial, ScalarZ

THREADS_ENV = "QUASIMAPS_THREADS"

EQUIVARIANT = "equivariant"
NONEQUIVARIANT = "nonequivariant"


def _shifted(w: Sequence[int], k: int) -> AffineForm:
    """The affine form w + k z."""
    return AffineForm(w, ScalarZ.z() * k if k else 0)


def _product(w, ks: Iterable[int], rank: int) -> Polynomial:
    out = Polynomial.constant(1, rank)
    for k in ks:
        out = out * _shifted(w, k).as_polynomial()
    return out


def d_factor(delta_t: Sequence[int], w: Sequence[int]) -> ArrangementFraction:
    """Products of the shifted forms w + k z determined by m = <delta_t, w>.

    m < -1 gives 1 / prod_{k=m+1}^{-1}(w + kz), m = -1 gives 1 and
    m > -1 gives prod_{k=0}^{m}(w + kz).
    """
    r = len(w)
    m = pairing(delta_t, w)
    if m < -1:
        return ArrangementFraction(Polynomial.constant(1, r),
                                   [(_shifted(w, k), 1) for k in range(m + 1, 0)])
    if m == -1:
        return ArrangementFraction.one(r)
    return ArrangementFraction.polynomial(_product(w, range(0, m + 1), r))


def _inverse_d_factor(delta_t, w, multiplicity: int = 1) -> ArrangementFraction:
    r = len(w)
    m = pairing(delta_t, w)
    if m < -1:
        return ArrangementFraction.polynomial(_product(w, range(m + 1, 0), r) ** multiplicity)
    if m == -1:
        return ArrangementFraction.one(r)
    return ArrangementFraction(Polynomial.constant(1, r),
                               [(_shifted(w, k), multiplicity) for k in range(0, m + 1)])


def root_factor(delta_t: Sequence[int], p: GitPresentation) -> ArrangementFraction:
    """Product over positive roots a of (-1)^(m+1) a (a + m z), m = <delta_t, a>."""
    r = p.rank
    out = Polynomial.constant(1, r)
    for a in p.positive_roots:
        m = pairing(delta_t, a)
        term = _product(a, (0, m), r)
        out = out * (term if m % 2 else -term)
    return ArrangementFraction.polynomial(out)


def z_integrand(delta_t: Sequence[int], p: GitPresentation) -> ArrangementFraction:
    """Equivariant integrand: inverse D-factors of all weights times the root factor."""
    out = root_factor(delta_t, p)
    for w, mult in sorted(Counter(p.weights).items()):
        out = out * _inverse_d_factor(delta_t, w, mult)
    return out


def nonequivariant_integrand(delta_t: Sequence[int], p: GitPresentation) -> ArrangementFraction:
    """prod_rho rho^(-1-<d,rho>) times prod_{a>0} (-1)^(1+<d,a>) a^2."""
    r = p.rank
    num = Polynomial.constant(1, r)
    den = []
    for a in p.positive_roots:
        sq = Polynomial.linear(a) ** 2
        num = num * (sq if pairing(delta_t, a) % 2 else -sq)
    for w, mult in sorted(Counter(p.weights).items()):
        e = (1 + pairing(delta_t, w)) * mult
        if e > 0:
            den.append((AffineForm(w), e))
        elif e < 0:
            num = num * Polynomial.linear(w) ** (-e)
    return ArrangementFraction(num, den)


# ---------------------------------------------------------------------------
# requests and results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantRequest:
    presentation: GitPresentation
    degree: GDegree
    insertion: Polynomial
    mode: str = NONEQUIVARIANT
    dualize: bool = False
    skip_insertion_check: bool = False

    def __post_init__(self):
        object.__setattr__(self, "degree", tuple(int(x) for x in self.degree))
        if self.mode not in (EQUIVARIANT, NONEQUIVARIANT):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.insertion.rank != self.presentation.rank:
            raise ValueError(f"insertion has rank {self.insertion.rank}, presentation has "
                             f"rank {self.presentation.rank}")
        if not self.skip_insertion_check and not validate_insertion(self.insertion,
                                                                    self.presentation):
            raise InsertionError(
                f"insertion {self.insertion} is not Weyl-invariant for {self.presentation}")

    def effective_insertion(self) -> Polynomial:
        """The insertion, composed with u -> -u when ``dualize`` is set."""
        if not self.dualize:
            return self.insertion
        r = self.insertion.rank
        return self.insertion.substitute_linear(
            [-Polynomial.variable(i, r) for i in range(r)])


@dataclass(frozen=True)
class TermContribution:
    lift: DegreeVector
    split: Optional[Tuple[DegreeVector, DegreeVector]]
    value: ScalarZ

    def to_json(self) -> dict:
        return {"lift": list(self.lift),
                "split": None if self.split is None else [list(s) for s in self.split],
                "value": self.value.to_json()}


@dataclass(frozen=True)
class InvariantResult:
    value: ScalarZ
    term_breakdown: Tuple[TermContribution, ...] = ()
    request: Optional[InvariantRequest] = field(default=None, compare=False)
    residue_report: Optional[list] = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {"value": self.value.to_json(),
                "breakdown": [t.to_json() for t in self.term_breakdown]}

    def as_fraction(self) -> Fraction:
        """Exact value of a z-free result."""
        return self.value.constant_value()


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _run(tasks, fn, threads):
    if threads is None:
        threads = default_threads()
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, tasks))


def _total(values: Sequence[ScalarZ], weyl_order: int) -> ScalarZ:
    total = ZERO
    for v in values:
        total = total + v
    return total / weyl_order


def equivariant_invariant(req: InvariantRequest, threads: Optional[int] = None,
                          explain: bool = False) -> InvariantResult:
    p = req.presentation
    insertion = req.effective_insertion()
    tasks = []
    for lift in enumerate_lifts(req.degree, p):
        integrand = z_integrand(lift, p) * insertion
        for d1, d2 in enumerate_splittings(lift, p):
            tasks.append((lift, d1, d2, integrand))

    def term(task):
        lift, d1, d2, integrand = task
        point = [ScalarZ.z() * (-c) for c in d2]
        report = [] if explain else None
        return jk_at_point(integrand, point, p.stability, report), report

    results = _run(tasks, term, threads)
    breakdown = tuple(TermContribution(t[0], (t[1], t[2]), v) for t, (v, _) in zip(tasks, results))
    value = _total([b.value for b in breakdown], p.weyl_order)
    report = None
    if explain:
        report = [{"lift": list(t[0]), "split": [list(t[1]), list(t[2])], "residues": rep}
                  for t, (_, rep) in zip(tasks, results)]
    result = InvariantResult(value, breakdown, req, report)
    if not value.is_polynomial():
        raise ConsistencyError(f"equivariant invariant {value} is not polynomial in z",
                               breakdown=result.to_json()["breakdown"])
    return result


def nonequivariant_invariant(req: InvariantRequest, threads: Optional[int] = None,
                             explain: bool = False) -> InvariantResult:
    p = req.presentation
    insertion = req.effective_insertion().map_coefficients(lambda c: c.at_zero())
    lifts = enumerate_lifts(req.degree, p)

    def term(lift):
        report = [] if explain else None
        f = nonequivariant_integrand(lift, p) * insertion
        return jk_homogeneous(f, p.stability, report), report

    results = _run(lifts, term, threads)
    breakdown = tuple(TermContribution(lift, None, v) for lift, (v, _) in zip(lifts, results))
    value = _total([b.value for b in breakdown], p.weyl_order)
    report = None
    if explain:
        report = [{"lift": list(lift), "residues": rep} for lift, (_, rep) in zip(lifts, results)]
    return InvariantResult(value, breakdown, req, report)


def invariant(req: InvariantRequest, threads: Optional[int] = None,
              explain: bool = False) -> InvariantResult:
    fn = equivariant_invariant if req.mode == EQUIVARIANT else nonequivariant_invariant
    return fn(req, threads=threads, explain=explain)


def integral(p: GitPresentation, degree: Sequence[int], insertion: Polynomial,
             mode: str = NONEQUIVARIANT, **kw) -> ScalarZ:
    """Shortcut returning only the value."""
    return invariant(InvariantRequest(p, tuple(degree), insertion, mode, **kw)).value


# ---------------------------------------------------------------------------
# dimensions
# ---------------------------------------------------------------------------

def _kappa_on_degree(delta: Sequence[int], p: GitPresentation) -> Fraction:
    """<lift, kappa> for any lift of the G-degree ``delta``."""
    k = anticanonical(p)
    basis = list(p.degree_basis)
    # solve kappa = sum c_j b_j in the span of the degree basis
    gram = [[Fraction(pairing(a, b)) for b in basis] for a in basis]
    rhs = [Fraction(pairing(a, k)) for a in basis]
    c = la.solve(gram, rhs)
    if c is None or any(sum(cj * b[i] for cj, b in zip(c, basis)) != k[i]
                        for i in range(p.rank)):
        raise ContractViolation(f"anticanonical character {k} is not in the span of the "
                                f"degree basis of {p}")
    return sum(cj * dj for cj, dj in zip(c, delta))


def virtual_dimension(delta: Sequence[int], p: GitPresentation, lifted: Optional[bool] = None) -> int:
    """Expected dimension |weights| - dim G + <lift, kappa>.

    ``delta`` is a G-degree unless ``lifted`` is set, or unless its length
    only matches the rank of the torus.
    """
    delta = tuple(int(x) for x in delta)
    if lifted is None:
        lifted = len(delta) != len(p.degree_basis)
    if lifted:
        if len(delta) != p.rank:
            raise ValueError(f"T-degree {delta} must have {p.rank} entries")
        kd = pairing(delta, anticanonical(p))
    else:
        kd = _kappa_on_degree(delta, p)
        if kd.denominator != 1:
            raise ContractViolation(f"degree {delta} pairs non-integrally with kappa")
        kd = int(kd)
    return p.dim_v - p.dim_g + kd


def toric_dimension_actual(delta_t: Sequence[int], p: GitPresentation) -> int:
    """Dimension of the space of sections for a torus presentation."""
    if not p.is_torus:
        raise ContractViolation(f"{p} is not a torus presentation")
    return sum(1 + pairing(delta_t, w) for w in p.weights if pairing(delta_t, w) >= 0) - p.rank


# ---------------------------------------------------------------------------
# generating series
# ---------------------------------------------------------------------------

def series_terms(p: GitPresentation, insertion: Polynomial, kappa_bound: int,
                 threads: Optional[int] = None, **kw) -> List[Tuple[GDegree, Fraction]]:
    """(degree, invariant) for every degree with <lift, kappa> <= kappa_bound."""
    out = []
    for delta in enumerate_effective_degrees(p, kappa_bound):
        req = InvariantRequest(p, delta, insertion, NONEQUIVARIANT, **kw)
        out.append((delta, nonequivariant_invariant(req, threads=threads).as_fraction()))
    return out


def generating_series_truncated(p: GitPresentation, insertion: Polynomial, q, kappa_bound: int,
                                mode: str = NONEQUIVARIANT, threads: Optional[int] = None,
                                **kw) -> complex:
    """|W| * sum_delta q^delta * invariant(delta), over the bounded degree set."""
    if mode != NONEQUIVARIANT:
        raise ContractViolation("generating series are evaluated in nonequivariant mode")
    return sum_series(p, series_terms(p, insertion, kappa_bound, threads, **kw), q)


def sum_series(p: GitPresentation, terms: Sequence[Tuple[GDegree, Fraction]], q) -> complex:
    """|W| * sum q^delta * value over precomputed terms."""
    q = as_dual_point(q)
    if len(q) != len(p.degree_basis):
        raise ValueError(f"q needs {len(p.degree_basis)} coordinates, got {len(q)}")
    total = complex(0)
    for delta, value in terms:
        if value:
            total += q.power(delta) * float(value)
    return p.weyl_order * total
