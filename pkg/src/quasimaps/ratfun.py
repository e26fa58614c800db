"""Exact arithmetic over Q(z): scalars, polynomials in u1..ur, affine forms
and arrangement fractions.

Univariate polynomials in z are tuples of :class:`fractions.Fraction`, lowest
degree first, with no trailing zeros.  The empty tuple is the zero polynomial.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import NotAUnitError, PoleError, PolynomialSyntaxError

Exponent = Tuple[int, ...]
UPoly = Tuple[Fraction, ...]

_ZERO: UPoly = ()
_ONE: UPoly = (Fraction(1),)


# ---------------------------------------------------------------------------
# univariate helpers
# ---------------------------------------------------------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a: UPoly) -> UPoly:
    return tuple(-x for x in a)


def _pmul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return _ZERO
    if len(a) == 1:
        return tuple(a[0] * x for x in b)
    if len(b) == 1:
        return tuple(b[0] * x for x in a)
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a: UPoly, c) -> UPoly:
    if c == 0:
        return _ZERO
    return tuple(x * c for x in a)


def _pdivmod(a: UPoly, b: UPoly):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    if len(a) - 1 < db:
        return _ZERO, tuple(a)
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lb
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def _order(a: UPoly) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    return len(a)


def _is_monomial(a: UPoly) -> bool:
    return bool(a) and all(x == 0 for x in a[:-1])


def _pmonic(a: UPoly) -> UPoly:
    lc = a[-1]
    if lc == 1:
        return a
    return tuple(x / lc for x in a)


def _pgcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a) if a else _ZERO


def _peval(a: UPoly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pformat(a: UPoly, var: str = "z") -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and abs(c) == 1:
            s = mono
        else:
            s = str(abs(c)) + ("*" + mono if mono else "")
        parts.append(("-" if c < 0 else "+", s))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, s in parts[1:]:
        out += f" {sign} {s}"
    return out


# ---------------------------------------------------------------------------
# scalars in Q(z)
# ---------------------------------------------------------------------------

class ScalarZ:
    """An element of Q(z), kept as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, _normalized=False):
        if _normalized:
            self.num, self.den = num, den
            self._hash = None
            return
        if isinstance(num, ScalarZ):
            if den is not None:
                raise TypeError("den must be omitted when copying a ScalarZ")
            self.num, self.den = num.num, num.den
            self._hash = None
            return
        if isinstance(num, (int, Fraction)):
            num = (Fraction(num),)
        num = _trim(Fraction(x) for x in num)
        if den is None:
            den = _ONE
        else:
            den = _trim(Fraction(x) for x in den)
            if not den:
                raise ZeroDivisionError("ScalarZ with zero denominator")
        if not _normalized:
            num, den = self._reduce(num, den)
        self.num, self.den = num, den
        self._hash = None

    @staticmethod
    def _reduce(num: UPoly, den: UPoly):
        if not num:
            return _ZERO, _ONE
        if den == _ONE:
            return num, den
        if _is_monomial(den):
            k = len(den) - 1
            m = min(_order(num), k)
            if m:
                num, den = num[m:], den[m:]
        elif len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        lc = den[-1]
        if lc != 1:
            num = tuple(x / lc for x in num)
            den = tuple(x / lc for x in den)
        return num, den

    # construction helpers
    @classmethod
    def z(cls, power: int = 1) -> "ScalarZ":
        if power >= 0:
            return cls((Fraction(0),) * power + _ONE, _ONE, _normalized=True)
        return cls(_ONE, (Fraction(0),) * (-power) + _ONE, _normalized=True)

    @classmethod
    def from_poly(cls, coeffs: Sequence) -> "ScalarZ":
        return cls(tuple(coeffs))

    # predicates
    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def is_constant(self) -> bool:
        return self.den == _ONE and len(self.num) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on z")
        return self.num[0] if self.num else Fraction(0)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return ScalarZ(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return ScalarZ(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return ScalarZ(_pneg(self.num), self.den, _normalized=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ScalarZ()
            return ScalarZ(_pscale(self.num, other), self.den, _normalized=True)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ScalarZ()
        if self.den == _ONE and other.den == _ONE:
            return ScalarZ(_pmul(self.num, other.num), _ONE, _normalized=True)
        return ScalarZ(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "ScalarZ":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(z)")
        return ScalarZ(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return ScalarZ(_pscale(self.num, Fraction(1) / Fraction(other)), self.den,
                           _normalized=True)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ScalarZ(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison / hashing
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.den == _ONE and len(self.num) <= 1:
                self._hash = hash(self.num[0] if self.num else 0)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    # evaluation / output
    def evaluate(self, z):
        d = _peval(self.den, z)
        if d == 0:
            raise PoleError(f"{self} has a pole at z={z}")
        n = _peval(self.num, z)
        if isinstance(n, Rational) and isinstance(d, Rational):
            return Fraction(n) / Fraction(d)
        return complex(n) / complex(d)

    def at_zero(self) -> Fraction:
        """Value at z = 0 (exact)."""
        return Fraction(self.evaluate(Fraction(0)))

    def degree(self) -> int:
        """Degree of the numerator minus degree of the denominator."""
        return len(self.num) - len(self.den)

    def to_json(self) -> dict:
        return {"num_z_coeffs": [str(c) for c in self.num] or ["0"],
                "den_z_coeffs": [str(c) for c in self.den]}

    def __str__(self):
        if self.den == _ONE:
            return _pformat(self.num)
        return f"({_pformat(self.num)})/({_pformat(self.den)})"

    def __repr__(self):
        return f"ScalarZ({self})"


def _coerce(x):
    if isinstance(x, ScalarZ):
        return x
    if isinstance(x, (int, Fraction)):
        return ScalarZ(x)
    return NotImplemented


def as_scalar(x) -> ScalarZ:
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(z)")
    return s


ZERO = ScalarZ(0)
ONE = ScalarZ(1)


# ---------------------------------------------------------------------------
# polynomials in u1..ur over Q(z)
# ---------------------------------------------------------------------------

class Polynomial:
    """Polynomial in ``rank`` variables with :class:`ScalarZ` coefficients."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[Exponent, object] | None = None):
        self.rank = rank
        clean: Dict[Exponent, ScalarZ] = {}
        if terms:
            for e, c in terms.items():
                c = as_scalar(c)
                if c:
                    if len(e) != rank:
                        raise ValueError(f"exponent {e} has wrong length for rank {rank}")
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, rank, terms):
        obj = cls.__new__(cls)
        obj.rank = rank
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, c, rank: int) -> "Polynomial":
        return cls(rank, {(0,) * rank: c})

    @classmethod
    def variable(cls, i: int, rank: int) -> "Polynomial":
        e = [0] * rank
        e[i] = 1
        return cls._raw(rank, {tuple(e): ONE})

    @classmethod
    def linear(cls, coeffs: Sequence[int], constant=0) -> "Polynomial":
        rank = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * rank
                e[i] = 1
                terms[tuple(e)] = c
        terms[(0,) * rank] = constant
        return cls(rank, terms)

    # basic queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=0)

    def coefficient(self, e: Exponent) -> ScalarZ:
        return self.terms.get(tuple(e), ZERO)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self) -> ScalarZ:
        return self.coefficient((0,) * self.rank)

    # arithmetic
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.rank != self.rank:
                raise ValueError("rank mismatch")
            return other
        return Polynomial.constant(as_scalar(other), self.rank)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.rank, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = as_scalar(c)
        if not c:
            return Polynomial._raw(self.rank, {})
        if c == ONE:
            return self
        return Polynomial._raw(self.rank, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        return self.mul_truncated(other, None)

    __rmul__ = __mul__

    def mul_truncated(self, other: "Polynomial", max_degree: int | None) -> "Polynomial":
        """Product keeping only monomials of total degree <= ``max_degree``."""
        other = self._check(other)
        out: Dict[Exponent, ScalarZ] = {}
        a_items = list(self.terms.items())
        b_items = list(other.terms.items())
        if max_degree is not None:
            a_items = [(e, c) for e, c in a_items if sum(e) <= max_degree]
            b_items = [(e, c) for e, c in b_items if sum(e) <= max_degree]
        b_deg = [sum(e) for e, _ in b_items]
        for ea, ca in a_items:
            da = sum(ea)
            for (eb, cb), db in zip(b_items, b_deg):
                if max_degree is not None and da + db > max_degree:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                v = ca * cb
                w = out.get(e)
                out[e] = v if w is None else w + v
        return Polynomial._raw(self.rank, {e: c for e, c in out.items() if c})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        out = Polynomial.constant(1, self.rank)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.rank == other.rank and self.terms == other.terms
        try:
            return self == Polynomial.constant(as_scalar(other), self.rank)
        except TypeError:
            return False

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    # transformations
    def truncate(self, max_degree: int) -> "Polynomial":
        return Polynomial._raw(self.rank, {e: c for e, c in self.terms.items()
                                           if sum(e) <= max_degree})

    def substitute_linear(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace u_i by the polynomial ``images[i]`` (all of the same rank)."""
        if len(images) != self.rank:
            raise ValueError("need one image per variable")
        out_rank = images[0].rank if images else self.rank
        cache = [dict() for _ in images]

        def power(i, k):
            p = cache[i].get(k)
            if p is None:
                if k == 0:
                    p = Polynomial.constant(1, out_rank)
                else:
                    p = power(i, k - 1) * images[i]
                cache[i][k] = p
            return p

        out = Polynomial._raw(out_rank, {})
        for e, c in self.terms.items():
            term = Polynomial.constant(c, out_rank)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def translate(self, point: Sequence) -> "Polynomial":
        """Compose with u -> u + point."""
        point = [as_scalar(p) for p in point]
        if all(not p for p in point):
            return self
        images = [Polynomial.variable(i, self.rank) + p for i, p in enumerate(point)]
        return self.substitute_linear(images)

    def act(self, matrix: Sequence[Sequence[int]]) -> "Polynomial":
        """Substitute u_i by the linear form with coefficients column i of ``matrix``."""
        r = self.rank
        images = [Polynomial.linear([matrix[j][i] for j in range(r)]) for i in range(r)]
        return self.substitute_linear(images)

    def map_coefficients(self, fn) -> "Polynomial":
        return Polynomial(self.rank, {e: fn(c) for e, c in self.terms.items()})

    def evaluate(self, u: Sequence, z=0):
        acc = 0
        for e, c in self.terms.items():
            m = c.evaluate(z)
            for x, k in zip(u, e):
                if k:
                    m = m * x ** k
            acc = acc + m
        return acc

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(f"u{i + 1}" + (f"^{k}" if k > 1 else "")
                            for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c) if c.is_constant() else f"({c})")
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            elif c.is_constant():
                parts.append(f"{c}*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self})"


def homogeneous_component(p: Polynomial, d: int) -> Polynomial:
    """Terms of total u-degree exactly ``d``; z never counts toward the degree."""
    return Polynomial._raw(p.rank, {e: c for e, c in p.terms.items() if sum(e) == d})


# ---------------------------------------------------------------------------
# affine forms and arrangement fractions
# ---------------------------------------------------------------------------

class AffineForm:
    """``<linear, u> + constant`` with integer linear part and constant in Q(z)."""

    __slots__ = ("linear", "constant")

    def __init__(self, linear: Sequence[int], constant=0):
        self.linear = tuple(int(x) for x in linear)
        self.constant = as_scalar(constant)
        if not any(self.linear) and not self.constant:
            raise ValueError("affine form is identically zero")

    @property
    def rank(self) -> int:
        return len(self.linear)

    def is_homogeneous(self) -> bool:
        return not self.constant

    def normalized(self):
        """Return ``(scale, primitive)`` with ``self == scale * primitive``.

        The primitive form has coprime integer linear part pointing in the
        same direction; the positive integer ``scale`` is the gcd.  A form
        with zero linear part is returned as ``(constant, None)``.
        """
        if not any(self.linear):
            return self.constant, None
        g = math.gcd(*self.linear)
        if g == 1:
            return 1, self
        return g, AffineForm([x // g for x in self.linear], self.constant / g)

    def __neg__(self):
        return AffineForm([-x for x in self.linear], -self.constant)

    def shifted(self, point: Sequence) -> "AffineForm":
        c = self.constant
        for a, p in zip(self.linear, point):
            if a:
                c = c + as_scalar(p) * a
        return AffineForm(self.linear, c)

    def value_at(self, point: Sequence) -> ScalarZ:
        c = self.constant
        for a, p in zip(self.linear, point):
            if a:
                c = c + as_scalar(p) * a
        return c

    def as_polynomial(self) -> Polynomial:
        return Polynomial.linear(self.linear, self.constant)

    def evaluate(self, u: Sequence, z=0):
        return sum(a * x for a, x in zip(self.linear, u)) + self.constant.evaluate(z)

    def __eq__(self, other):
        return (isinstance(other, AffineForm) and self.linear == other.linear
                and self.constant == other.constant)

    def __hash__(self):
        return hash((self.linear, self.constant))

    def sort_key(self):
        return (self.linear, str(self.constant))

    def __str__(self):
        p = Polynomial.linear(self.linear, self.constant)
        return str(p)

    def __repr__(self):
        return f"AffineForm({self.linear}, {self.constant})"


class ArrangementFraction:
    """``numerator / prod(form_i ** e_i)`` with a factored denominator.

    Denominator forms are primitive and pairwise non-proportional.  Scalars
    produced by normalization are moved into the numerator.  Numerator and
    denominator are never cancelled against each other here.
    """

    __slots__ = ("rank", "numerator", "denominator")

    def __init__(self, numerator: Polynomial, denominator: Iterable[Tuple[AffineForm, int]] = ()):
        self.rank = numerator.rank
        num = numerator
        den: Dict[AffineForm, int] = {}
        for form, k in denominator:
            if k == 0:
                continue
            if k < 0:
                num = num * (form.as_polynomial() ** (-k))
                continue
            if form.rank != self.rank:
                raise ValueError("form rank mismatch")
            scale, prim = form.normalized()
            if prim is None:
                num = num.scale(as_scalar(scale) ** (-k))
                continue
            if scale != 1:
                num = num.scale(Fraction(1, scale ** k))
            if prim in den:
                den[prim] += k
                continue
            neg = -prim
            if neg in den:
                den[neg] += k
                if k % 2:
                    num = -num
                continue
            den[prim] = k
        self.numerator = num
        self.denominator = tuple(sorted(den.items(), key=lambda fk: fk[0].sort_key()))

    @classmethod
    def polynomial(cls, p: Polynomial) -> "ArrangementFraction":
        return cls(p, ())

    @classmethod
    def one(cls, rank: int) -> "ArrangementFraction":
        return cls(Polynomial.constant(1, rank))

    @property
    def forms(self):
        return [f for f, _ in self.denominator]

    def denominator_degree(self) -> int:
        return sum(k for _, k in self.denominator)

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f, _ in self.denominator)

    def __mul__(self, other):
        if isinstance(other, ArrangementFraction):
            if other.rank != self.rank:
                raise ValueError("rank mismatch")
            return ArrangementFraction(self.numerator * other.numerator,
                                       self.denominator + other.denominator)
        if isinstance(other, Polynomial):
            return ArrangementFraction(self.numerator * other, self.denominator)
        return ArrangementFraction(self.numerator.scale(other), self.denominator)

    __rmul__ = __mul__

    def translate(self, point: Sequence) -> "ArrangementFraction":
        point = [as_scalar(p) for p in point]
        return ArrangementFraction(self.numerator.translate(point),
                                   [(f.shifted(point), k) for f, k in self.denominator])

    def evaluate(self, u: Sequence, z=0, tol: float = 1e-12):
        return evaluate_numeric(self, u, z, tol)

    def __eq__(self, other):
        return (isinstance(other, ArrangementFraction) and self.numerator == other.numerator
                and self.denominator == other.denominator)

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __str__(self):
        if not self.denominator:
            return f"({self.numerator})"
        den = " * ".join(f"({f})" + (f"^{k}" if k > 1 else "") for f, k in self.denominator)
        return f"({self.numerator}) / ({den})"

    def __repr__(self):
        return f"ArrangementFraction({self})"


def multiply(a: ArrangementFraction, b: ArrangementFraction) -> ArrangementFraction:
    return a * b


def translate(f: ArrangementFraction, point: Sequence) -> ArrangementFraction:
    return f.translate(point)


def unit_expand(form: AffineForm, exponent: int, max_total_degree: int) -> Polynomial:
    """Taylor expansion of ``form ** -exponent`` around u = 0, truncated."""
    c = form.constant
    if not c:
        raise NotAUnitError(f"form {form} vanishes at the expansion point")
    r = form.rank
    if max_total_degree < 0:
        return Polynomial._raw(r, {})
    lead = c ** (-exponent)
    if not any(form.linear):
        return Polynomial.constant(lead, r)
    # (c + L)^-k = c^-k * sum_m binom(-k, m) (L/c)^m
    lin = Polynomial.linear(form.linear).scale(c.inverse())
    out = Polynomial.constant(lead, r)
    power = Polynomial.constant(1, r)
    binom = Fraction(1)
    for m in range(1, max_total_degree + 1):
        binom = binom * (-exponent - m + 1) / m
        power = power * lin
        out = out + power.scale(lead * binom)
    return out


def evaluate_numeric(f: ArrangementFraction, u: Sequence, z=0, tol: float = 1e-12):
    """Floating evaluation; raises :class:`PoleError` near a denominator zero."""
    den = 1
    for form, k in f.denominator:
        v = form.evaluate(u, z)
        if abs(v) < tol:
            raise PoleError(f"denominator form {form} vanishes at u={list(u)}, z={z}")
        den = den * v ** k
    return f.numerator.evaluate(u, z) / den


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

def parse_polynomial(text: str, rank: int) -> Polynomial:
    """Parse text like ``"3/2*u1^2*u2 - (u1*u2)^2 + z*u1"``.

    Variables are ``u1`` .. ``u<rank>`` and the coefficient variable ``z``.
    Supported operators: ``+ - * / ^ **`` and parentheses; division only by
    u-free expressions, powers only by non-negative integer literals.
    """
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise PolynomialSyntaxError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            return Polynomial.constant(node.value, rank)
        if isinstance(node, ast.Name):
            name = node.id
            if name == "z":
                return Polynomial.constant(ScalarZ.z(), rank)
            if name.startswith("u") and name[1:].isdigit():
                i = int(name[1:])
                if 1 <= i <= rank:
                    return Polynomial.variable(i - 1, rank)
            raise PolynomialSyntaxError(f"unknown variable {name!r} (rank {rank})")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if isinstance(exp, ast.Constant) and isinstance(exp.value, int) and exp.value >= 0:
                    return ev(node.left) ** exp.value
                raise PolynomialSyntaxError("exponents must be non-negative integer literals")
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b.total_degree() > 0:
                    raise PolynomialSyntaxError("division by a non-constant polynomial")
                c = b.constant_term()
                if not c:
                    raise PolynomialSyntaxError("division by zero")
                return a.scale(c.inverse())
        raise PolynomialSyntaxError(f"unsupported syntax in {text!r}")

    return ev(tree)


def monomials(rank: int, degree: int):
    """All exponent vectors of the given total degree, lexicographically descending."""
    if rank == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials(rank - 1, degree - first):
            yield (first,) + rest


def all_exponents(rank: int, max_degree: int):
    return [e for e in product(range(max_degree + 1), repeat=rank) if sum(e) <= max_degree]
