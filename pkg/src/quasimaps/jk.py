"""Jeffrey-Kirwan residues of arrangement fractions.

The homogeneous residue reduces a fraction to terms with linearly
independent denominator forms and applies the defining property

    JK_eta(1 / (b_1 ... b_r)) = 1 / |det(b)|   if eta lies in cone(b), else 0.

The residue at a point translates the point to the origin, expands the
forms that do not vanish there as power series and keeps the degree -r
part.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import _linalg as la
from .errors import ContractViolation, DegenerateArrangementError
from .ratfun import (ZERO, ArrangementFraction, Polynomial, ScalarZ,
                     as_scalar, homogeneous_component, unit_expand)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class BasicTerm:
    """``coefficient * y^numerator_monomial / prod(y_i ^ exponents_i)`` where
    ``y_i`` is the linear form ``basis_forms[i]``.

    Forms with exponent 0 only complete the denominator forms to a basis.
    """

    coefficient: ScalarZ
    basis_forms: Tuple[Vector, ...]
    exponents: Tuple[int, ...]
    numerator_monomial: Tuple[int, ...]

    @property
    def det(self) -> Fraction:
        return la.det(self.basis_forms)

    @property
    def is_pole_term(self) -> bool:
        """True for the pattern 1 / (y_1 ... y_r) carrying the whole residue."""
        return all(e > 0 and m == e - 1
                   for e, m in zip(self.exponents, self.numerator_monomial))


# ---------------------------------------------------------------------------
# partial fractions
# ---------------------------------------------------------------------------

def _express(vec, basis):
    """Coefficients c with vec = sum c_i basis_i, or None if vec is independent."""
    if not basis:
        return None
    r = len(vec)
    k = len(basis)
    rows = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(vec[i])] for i in range(r)]
    piv_cols = []
    row = 0
    for c in range(k + 1):
        p = next((i for i in range(row, r) if rows[i][c] != 0), None)
        if p is None:
            continue
        if c == k:
            return None
        rows[row], rows[p] = rows[p], rows[row]
        pv = rows[row][c]
        rows[row] = [x / pv for x in rows[row]]
        for i in range(r):
            if i != row and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[row])]
        piv_cols.append(c)
        row += 1
    coeffs = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        coeffs[c] = rows[i][k]
    return coeffs


def _first_dependency(forms, support):
    """First index of ``support`` dependent on earlier ones, with the relation."""
    basis_idx: List[int] = []
    for i in support:
        coeffs = _express(forms[i], [forms[b] for b in basis_idx])
        if coeffs is None:
            basis_idx.append(i)
            continue
        return i, {b: c for b, c in zip(basis_idx, coeffs) if c}
    return None


def _reduce_independent(forms: Sequence[Vector], exps: Tuple[int, ...],
                        numerator: Polynomial) -> Dict[Tuple[int, ...], Polynomial]:
    """Rewrite numerator / prod(forms^exps) as a sum over independent supports."""
    work: Dict[Tuple[int, ...], Polynomial] = {exps: numerator}
    done: Dict[Tuple[int, ...], Polynomial] = {}
    while work:
        # each split yields lexicographically smaller exponent vectors, so the
        # largest key has already received every contribution
        key = max(work)
        num = work.pop(key)
        if not num:
            continue
        support = [i for i, e in enumerate(key) if e > 0]
        dep = _first_dependency(forms, support)
        if dep is None:
            prev = done.get(key)
            done[key] = num if prev is None else prev + num
            continue
        k, relation = dep
        # forms[k] = sum_b c_b forms[b], hence 1 = sum_b c_b forms[b] / forms[k]
        for b, c in relation.items():
            new = list(key)
            new[b] -= 1
            new[k] += 1
            new = tuple(new)
            term = num.scale(c)
            prev = work.get(new)
            work[new] = term if prev is None else prev + term
    return {k: v for k, v in done.items() if v}


def _complete_basis(forms: List[Vector], r: int) -> List[Vector]:
    out = list(forms)
    for i in range(r):
        if len(out) == r:
            break
        e = tuple(int(j == i) for j in range(r))
        if la.rank(out + [e]) > len(out):
            out.append(e)
    return out


def _change_coordinates(num: Polynomial, basis: Sequence[Vector]) -> Polynomial:
    """Express num(u) in the coordinates y = basis . u."""
    r = num.rank
    if all(basis[i] == tuple(int(j == i) for j in range(r)) for i in range(r)):
        return num
    inv = la.inverse(basis)
    images = [Polynomial(r, {tuple(int(k == j) for k in range(r)): inv[i][j]
                             for j in range(r) if inv[i][j]}) for i in range(r)]
    return num.substitute_linear(images)


def _homogeneous_input(f: ArrangementFraction):
    if not f.is_homogeneous():
        raise ContractViolation(f"partial fraction reduction needs homogeneous forms: {f}")
    r = f.rank
    forms = [form.linear for form in f.forms]
    exps = tuple(k for _, k in f.denominator)
    num = homogeneous_component(f.numerator, f.denominator_degree() - r)
    return r, forms, exps, num


def _independent_pieces(f: ArrangementFraction):
    r, forms, exps, num = _homogeneous_input(f)
    if not num:
        return r, []
    pieces = []
    for key, piece in sorted(_reduce_independent(forms, exps, num).items()):
        support = [i for i, e in enumerate(key) if e > 0]
        basis = _complete_basis([forms[i] for i in support], r)
        full_exps = tuple(key[i] for i in support) + (0,) * (r - len(support))
        pieces.append((tuple(basis), full_exps, piece))
    return r, pieces


def partial_fraction_reduce(f: ArrangementFraction) -> List[BasicTerm]:
    """Degree -r part of a homogeneous fraction as a list of basic terms."""
    r, pieces = _independent_pieces(f)
    merged: Dict[tuple, ScalarZ] = {}
    for basis, exps, piece in pieces:
        y = _change_coordinates(piece, basis)
        for mono, c in y.terms.items():
            # cancel y^mono against the denominator powers
            left = tuple(max(e - m, 0) for e, m in zip(exps, mono))
            over = tuple(max(m - e, 0) for e, m in zip(exps, mono))
            idle = [i for i in range(r) if left[i] == 0]
            if idle and all(over[i] == 0 for i in idle):
                # padding coordinates are free: complete the basis canonically
                keep = [i for i in range(r) if left[i]]
                new_basis = tuple(_complete_basis([basis[i] for i in keep], r))
                left = tuple(left[i] for i in keep) + (0,) * len(idle)
                over = tuple(over[i] for i in keep) + (0,) * len(idle)
                key = (new_basis, left, over)
            else:
                key = (basis, left, over)
            merged[key] = merged.get(key, ZERO) + c
    return [BasicTerm(c, *key) for key, c in sorted(merged.items(), key=lambda kv: kv[0]) if c]


# ---------------------------------------------------------------------------
# residues
# ---------------------------------------------------------------------------

def _cone_coordinates(basis, eta):
    return la.solve(la.transpose(basis), eta)


def is_generic(forms: Sequence[Vector], eta: Sequence, r: int) -> bool:
    """eta avoids every hyperplane spanned by r - 1 of the forms."""
    distinct = sorted(set(forms))
    if r == 1:
        return any(eta)
    for subset in itertools.combinations(distinct, r - 1):
        n = la.normal_vector(subset, r)
        if any(n) and la.dot(n, eta) == 0:
            return False
    return True


def generic_direction(forms: Sequence[Vector], eta: Sequence, r: int):
    """Return ``(eta', perturbed)`` with eta' generic and, if perturbed, close to eta."""
    eta = [Fraction(x) for x in eta]
    if is_generic(forms, eta, r):
        return eta, False
    w = [Fraction(1, p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)[:r]]
    t = Fraction(1, 1000)
    for _ in range(60):
        cand = [a + t * b for a, b in zip(eta, w)]
        if is_generic(forms, cand, r):
            return cand, True
        t /= 7
    raise DegenerateArrangementError(f"could not perturb {eta} to a generic direction")


def jk_homogeneous(f: ArrangementFraction, eta: Sequence, report: Optional[list] = None) -> ScalarZ:
    """Jeffrey-Kirwan residue of a fraction with homogeneous denominator forms.

    If ``report`` is a list, one dict per independent term is appended to it.
    """
    r = f.rank
    if not f.denominator:
        return ZERO
    forms = [form.linear for form in f.forms]
    if la.rank(forms) < r:
        raise DegenerateArrangementError(
            f"denominator forms {forms} do not span a space of dimension {r}")
    eta_g, perturbed = generic_direction(forms, eta, r)
    if perturbed and report is not None:
        report.append({"perturbed_eta": [str(x) for x in eta_g], "original_eta":
                       [str(Fraction(x)) for x in eta]})
    _, pieces = _independent_pieces(f)
    total = ZERO
    for basis, exps, piece in pieces:
        entry = None
        if report is not None:
            entry = {"forms": [list(b) for b in basis], "exponents": list(exps)}
            report.append(entry)
        if 0 in exps:
            if entry is not None:
                entry.update(det=None, in_cone=None, contribution="0")
            continue
        d = la.det(basis)
        coords = _cone_coordinates(basis, eta_g)
        inside = all(c > 0 for c in coords)
        contribution = ZERO
        if inside:
            y = _change_coordinates(piece, basis)
            c = y.coefficient(tuple(e - 1 for e in exps))
            contribution = c / abs(d)
            total = total + contribution
        if entry is not None:
            entry.update(det=str(d), in_cone=inside, contribution=str(contribution))
    return total


def jk_at_point(f: ArrangementFraction, point: Sequence, eta: Sequence,
                report: Optional[list] = None) -> ScalarZ:
    """Residue at ``point`` using only the forms that vanish there."""
    r = f.rank
    point = [as_scalar(p) for p in point]
    g = f.translate(point)
    vanishing = [(form, k) for form, k in g.denominator if not form.constant]
    units = [(form, k) for form, k in g.denominator if form.constant]
    if not vanishing or la.rank([form.linear for form, _ in vanishing]) < r:
        return ZERO
    target = sum(k for _, k in vanishing) - r
    num = g.numerator.truncate(target)
    if not num:
        return ZERO
    bound = target - num.min_degree()
    expansion = Polynomial.constant(1, r)
    for form, k in units:
        expansion = expansion.mul_truncated(unit_expand(form, k, bound), bound)
    local = homogeneous_component(num.mul_truncated(expansion, target), target)
    if not local:
        return ZERO
    return jk_homogeneous(ArrangementFraction(local, vanishing), eta, report)
