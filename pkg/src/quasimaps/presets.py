"""Ready-made presentations: projective spaces, their products, Grassmannians."""

from __future__ import annotations

import math
from typing import Sequence

from .errors import PresentationError
from .git_model import GitPresentation, load_presentation


def _unit(i: int, r: int):
    return tuple(int(j == i) for j in range(r))


def projective(n: int) -> GitPresentation:
    """C^n // C^*, i.e. P^(n-1): a single weight 1 repeated n times."""
    if n < 1:
        raise PresentationError(f"projective({n}): need n >= 1")
    return GitPresentation(rank=1, weights=[(1,)] * n, stability=(1,), degree_basis=[(1,)],
                           label=f"P^{n - 1}")


def product_projective(ns: Sequence[int]) -> GitPresentation:
    """Product of projective(n_i), with block-diagonal torus data."""
    ns = list(ns)
    if not ns or any(n < 1 for n in ns):
        raise PresentationError(f"product_projective({ns}): all factors need n >= 1")
    k = len(ns)
    weights = []
    for i, n in enumerate(ns):
        weights += [_unit(i, k)] * n
    return GitPresentation(rank=k, weights=weights, stability=(1,) * k,
                           degree_basis=[_unit(i, k) for i in range(k)],
                           label=" x ".join(f"P^{n - 1}" for n in ns))


def grassmannian(r: int, n: int) -> GitPresentation:
    """Mat(r x n) // GL_r with the determinant stability."""
    if not 1 <= r < n:
        raise PresentationError(f"grassmannian({r},{n}): need 1 <= r < n")
    weights = []
    for i in range(r):
        weights += [_unit(i, r)] * n
    roots = [tuple(int(k == i) - int(k == j) for k in range(r))
             for i in range(r) for j in range(i + 1, r)]
    gens = []
    for i in range(r - 1):
        g = [list(_unit(k, r)) for k in range(r)]
        g[i], g[i + 1] = g[i + 1], g[i]
        gens.append(g)
    return GitPresentation(rank=r, weights=weights, positive_roots=roots,
                           weyl_order=math.factorial(r), weyl_generators=gens or None,
                           stability=(1,) * r, degree_basis=[(1,) * r],
                           label=f"Gr({r},{n})")


def custom(path) -> GitPresentation:
    return load_presentation(path)


def build(text: str) -> GitPresentation:
    """Build from a preset string.

    ``projective:n`` (n weights, i.e. P^(n-1)), ``product:n1,n2,...``,
    ``grassmannian:r,n`` and ``custom:path``.  The short forms ``p:k``
    (P^k), ``pp:k1,k2`` (P^k1 x P^k2) and ``gr:r,n`` are also accepted.
    """
    name, _, args = text.partition(":")
    name = name.strip().lower()
    if name == "custom":
        return custom(args)
    try:
        nums = [int(x) for x in args.split(",")] if args.strip() else []
    except ValueError:
        raise PresentationError(f"bad preset parameters in {text!r}") from None
    if name in ("projective", "p"):
        if len(nums) != 1:
            raise PresentationError(f"{text!r}: expected one parameter")
        return projective(nums[0] + (name == "p"))
    if name in ("product", "pp"):
        return product_projective([n + (name == "pp") for n in nums])
    if name in ("grassmannian", "gr"):
        if len(nums) != 2:
            raise PresentationError(f"{text!r}: expected two parameters r,n")
        return grassmannian(*nums)
    raise PresentationError(f"unknown preset {text!r}")


CATALOG = {
    "p:k": "projective space P^k (k+1 weights equal to 1)",
    "pp:k1,...,km": "product P^k1 x ... x P^km",
    "gr:r,n": "Grassmannian Gr(r,n) = Mat(r x n) // GL_r",
    "projective:n": "C^n // C^* = P^(n-1)",
    "product:n1,...,nm": "product of projective(n_i)",
    "grassmannian:r,n": "same as gr:r,n",
    "custom:path": "presentation JSON file",
}
