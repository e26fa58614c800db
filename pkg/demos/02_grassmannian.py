"""Intersection numbers of Gr(2,4) quasimap spaces, two ways."""

from quasimaps import InvariantRequest, grassmannian, integral, parse_polynomial
from quasimaps.invariants import EQUIVARIANT, equivariant_invariant, virtual_dimension

gr = grassmannian(2, 4)

# degree 0 is classical Schubert calculus: sigma_1^4 = 2, sigma_2^2 = 1
for text in ["(u1+u2)^4", "(u1*u2)^2", "(u1+u2)^2*u1*u2"]:
    print(f"<{text}>_0 =", integral(gr, (0,), parse_polynomial(text, 2)))

# virtual dimension grows by n = 4 per degree
print([virtual_dimension((d,), gr) for d in range(4)])

# degree one quasimaps: only insertions of degree 8 survive
eight = parse_polynomial("(u1+u2)^8", 2)
print("<sigma_1^8>_1 =", integral(gr, (1,), eight))

# the equivariant route keeps z and splits into one term per (lift, splitting)
req = InvariantRequest(gr, (1,), eight, EQUIVARIANT)
res = equivariant_invariant(req)
print("equivariant value:", res.value)
for term in res.term_breakdown:
    print("  lift", term.lift, "split", term.split, "->", term.value)

# rational in z term by term, yet the total is a polynomial in z
shifted = eight + parse_polynomial("z*(u1+u2)^7", 2)
print("with a z-term:", integral(gr, (1,), shifted, EQUIVARIANT))
