"""Finite fiber sums over the dual torus and their comparison with series.

A T-degree basis ``lambda_1..lambda_r`` (rows of ``basis``) gives
coordinates on the dual torus.  The map p sends u to
``p_i(u) = prod_rho rho(u)^<lambda_i, rho>`` and the Jacobian function is
``det(sum_rho <lambda_i,rho><lambda_j,rho> / rho(u))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import (ContractViolation, DegenerateQError, PoleError,
                     UnsupportedSystemError)
from .git_model import (DualTorusPoint, GitPresentation, anticanonical, as_dual_point,
                        enumerate_lifts, pairing)
from .invariants import series_terms
from .ratfun import Polynomial

RESIDUAL_TOL = 1e-9
WEIGHT_TOL = 1e-12
JACOBIAN_TOL = 1e-10

__all__ = ["DualTorusPoint", "FiberSolution", "p_map", "jacobian_matrix", "jacobian_dA",
           "sigma_shift", "sigma_shift_g", "embed_g_point", "solve_fiber", "vi_sum",
           "vi_vs_series_check"]


def _basis(p: GitPresentation, basis) -> np.ndarray:
    if basis is None:
        return np.eye(p.rank, dtype=int)
    b = np.array(basis, dtype=int)
    if b.shape != (p.rank, p.rank) or round(abs(np.linalg.det(b))) != 1:
        raise ValueError(f"basis must be a unimodular {p.rank}x{p.rank} integer matrix")
    return b


def _weight_values(u, p: GitPresentation) -> np.ndarray:
    w = np.array(p.weights, dtype=float)
    vals = w @ np.asarray(u, dtype=complex)
    bad = np.flatnonzero(np.abs(vals) <= WEIGHT_TOL)
    if bad.size:
        raise PoleError(f"weight {p.weights[bad[0]]} vanishes at u={list(u)}")
    return vals


@dataclass(frozen=True)
class FiberSolution:
    u: Tuple[complex, ...]

    def check(self, p: GitPresentation) -> "FiberSolution":
        _weight_values(self.u, p)
        return self

    def sort_key(self):
        return tuple((round(x.real, 9), round(x.imag, 9)) for x in self.u)


def p_map(u: Sequence[complex], p: GitPresentation, basis=None) -> DualTorusPoint:
    lam = _basis(p, basis)
    vals = _weight_values(u, p)
    exps = lam @ np.array(p.weights, dtype=int).T          # <lambda_i, rho>
    coords = [complex(np.prod(vals ** row)) for row in exps]
    return DualTorusPoint(tuple(coords), "custom" if basis is not None else "standard")


def jacobian_matrix(u: Sequence[complex], p: GitPresentation, basis=None) -> np.ndarray:
    """sum_rho <lambda_i,rho><lambda_j,rho> / rho(u)."""
    lam = _basis(p, basis)
    vals = _weight_values(u, p)
    exps = (lam @ np.array(p.weights, dtype=int).T).astype(float)
    return (exps / vals) @ exps.T


def jacobian_dA(u: Sequence[complex], p: GitPresentation, basis=None) -> complex:
    return complex(np.linalg.det(jacobian_matrix(u, p, basis)))


def _root_sum(p: GitPresentation) -> Tuple[int, ...]:
    return tuple(sum(a[i] for a in p.positive_roots) for i in range(p.rank))


def sigma_shift(q: DualTorusPoint, p: GitPresentation, basis=None) -> DualTorusPoint:
    """Multiply q_i by exp(pi i <lambda_i, sum of positive roots>)."""
    lam = _basis(p, basis)
    s = _root_sum(p)
    coords = tuple(c * (-1) ** (pairing(row, s) % 2) for c, row in zip(q.q_coords, lam.tolist()))
    return DualTorusPoint(coords, q.basis_id)


def _sigma_character(p: GitPresentation) -> Tuple[int, ...]:
    """m in {0,1}^s with sum_j m_j b_j congruent to the root sum modulo 2."""
    s = _root_sum(p)
    for m in itertools.product((0, 1), repeat=len(p.degree_basis)):
        c = [sum(mj * b[i] for mj, b in zip(m, p.degree_basis)) for i in range(p.rank)]
        if all((ci - si) % 2 == 0 for ci, si in zip(c, s)):
            return m
    raise ContractViolation(f"the sign character of {p} does not factor through its "
                            f"degree lattice")


def sigma_shift_g(q: DualTorusPoint, p: GitPresentation) -> DualTorusPoint:
    """The same shift on coordinates attached to the degree basis."""
    m = _sigma_character(p)
    return DualTorusPoint(tuple(c * (-1) ** mj for c, mj in zip(q.q_coords, m)), q.basis_id)


def embed_g_point(q, p: GitPresentation, basis=None) -> DualTorusPoint:
    """q_i = prod_j qG_j^<lambda_i, b_j>."""
    q = as_dual_point(q)
    if len(q) != len(p.degree_basis):
        raise ValueError(f"expected {len(p.degree_basis)} coordinates, got {len(q)}")
    lam = _basis(p, basis)
    coords = tuple(q.power([pairing(row, b) for b in p.degree_basis]) for row in lam.tolist())
    return DualTorusPoint(coords, "custom" if basis is not None else "standard")


# ---------------------------------------------------------------------------
# fibers
# ---------------------------------------------------------------------------

def _decoupled_equations(p: GitPresentation, lam: np.ndarray):
    """For each equation i: (coordinate j, degree n_i, constant C_i) with p_i = C_i u_j^n_i."""
    out = []
    used = set()
    for i, row in enumerate(lam.tolist()):
        coord = None
        n = 0
        const = 1.0
        for w in p.weights:
            e = pairing(row, w)
            if e == 0:
                continue
            support = [k for k, x in enumerate(w) if x]
            if len(support) != 1 or (coord is not None and support[0] != coord):
                raise UnsupportedSystemError(
                    f"equation {i} couples coordinates through weight {w}")
            coord = support[0]
            n += e
            const *= float(w[coord]) ** e
        if coord is None or n == 0 or coord in used:
            raise UnsupportedSystemError(f"equation {i} does not determine a single coordinate")
        used.add(coord)
        out.append((coord, n, const))
    return out


def _newton(u, q, p, lam, iters=60):
    u = np.array(u, dtype=complex)
    target = np.array(q.q_coords)
    for _ in range(iters):
        pu = np.array(p_map(u, p, lam).q_coords)
        resid = pu - target
        if np.max(np.abs(resid)) < 1e-14 * max(1.0, np.max(np.abs(target))):
            break
        vals = _weight_values(u, p)
        exps = (lam @ np.array(p.weights, dtype=int).T).astype(float)
        jac = pu[:, None] * ((exps / vals) @ np.array(p.weights, dtype=float))
        u = u - np.linalg.solve(jac, resid)
    return u


def solve_fiber(q: DualTorusPoint, p: GitPresentation, basis=None,
                candidates: Optional[Sequence[Sequence[complex]]] = None) -> List[FiberSolution]:
    """Points u with p(u) = q, sorted."""
    lam = _basis(p, basis)
    q = as_dual_point(q)
    if len(q) != p.rank:
        raise ValueError(f"q needs {p.rank} coordinates, got {len(q)}")
    if candidates is None:
        try:
            eqs = _decoupled_equations(p, lam)
            q_eq = q.q_coords
        except UnsupportedSystemError:
            if basis is None:
                raise
            # same fiber, written in standard coordinates
            eqs = _decoupled_equations(p, np.eye(p.rank, dtype=int))
            inv = np.rint(np.linalg.inv(lam)).astype(int)
            q_eq = tuple(q.power(row) for row in inv.tolist())
        per_coord = {}
        for (j, n, const), qi in zip(eqs, q_eq):
            rhs = qi / const
            k = abs(n)
            if n < 0:
                rhs = 1 / rhs
            mod = abs(rhs) ** (1.0 / k)
            # cmath.phase overflows on subnormal imaginary parts
            arg = float(np.angle(rhs))
            per_coord[j] = [complex(mod * np.exp(1j * (arg + 2 * np.pi * t) / k))
                            for t in range(k)]
        raw = itertools.product(*(per_coord[j] for j in range(p.rank)))
    else:
        raw = (_newton(c, q, p, lam) for c in candidates)
    out = {}
    target = np.array(q.q_coords)
    for u in raw:
        try:
            sol = FiberSolution(tuple(complex(x) for x in u)).check(p)
            resid = np.max(np.abs(np.array(p_map(sol.u, p, lam).q_coords) - target))
        except (PoleError, np.linalg.LinAlgError):
            continue
        if resid < RESIDUAL_TOL:
            out.setdefault(sol.sort_key(), sol)
    return [out[k] for k in sorted(out)]


def _root_product(u, p: GitPresentation) -> complex:
    """Product over all roots, i.e. (-1)^|positive roots| prod a(u)^2."""
    out = complex(1)
    for a in p.positive_roots:
        v = sum(x * y for x, y in zip(a, u))
        out *= -v * v
    return out


def vi_sum(insertion: Polynomial, q: DualTorusPoint, p: GitPresentation, basis=None,
           candidates=None) -> complex:
    """sum over the fiber of P(w) prod_roots a(w) / (D(w) prod_rho rho(w))."""
    q = as_dual_point(q)
    fiber = solve_fiber(q, p, basis, candidates)
    total = complex(0)
    for sol in fiber:
        d = jacobian_dA(sol.u, p, basis)
        if abs(d) < JACOBIAN_TOL:
            raise DegenerateQError(f"Jacobian function vanishes at fiber point {sol.u} "
                                   f"over q={q.q_coords}")
        num = complex(insertion.evaluate(sol.u, 0)) * _root_product(sol.u, p)
        total += num / (d * complex(np.prod(_weight_values(sol.u, p))))
    return total


def _pair(c: complex):
    return [float(c.real), float(c.imag)]


def vi_vs_series_check(insertion: Polynomial, q, p: GitPresentation, kappa_bound: int,
                       basis=None, threads=None) -> dict:
    """Truncated series at q on the degree torus against the fiber sum at the shifted point."""
    q = as_dual_point(q)
    terms = series_terms(p, insertion, kappa_bound, threads)
    kappa = anticanonical(p)
    series = complex(0)
    shells = {}
    for delta, value in terms:
        t = p.weyl_order * q.power(delta) * float(value)
        series += t
        lifts = enumerate_lifts(delta, p)
        k = pairing(lifts[0], kappa) if lifts else 0
        shells[k] = shells.get(k, 0) + t
    last = abs(shells[max(shells)]) if shells else 0.0
    q_t = embed_g_point(q, p, basis)
    sq = sigma_shift(q_t, p, basis)
    vi = vi_sum(insertion.map_coefficients(lambda c: c.at_zero()), sq, p, basis)
    diff = abs(series - vi)
    return {"q": [_pair(c) for c in q.q_coords],
            "sigma_q": [_pair(c) for c in sq.q_coords],
            "series_value": _pair(series),
            "vi_value": _pair(vi),
            "abs_diff": diff,
            "rel_diff": diff / abs(vi) if abs(vi) > 0 else (0.0 if diff == 0 else float("inf")),
            "last_term": last,
            "kappa_bound": kappa_bound}
