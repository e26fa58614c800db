"""Jeffrey-Kirwan residues by hand, then through the library."""

from quasimaps import AffineForm, ArrangementFraction, Polynomial, jk_homogeneous
from quasimaps.jk import partial_fraction_reduce

x, y = AffineForm((1, 0)), AffineForm((0, 1))
diag = AffineForm((1, 1))

# (2x + y) / (x y (x + y)) has three lines through the origin
f = ArrangementFraction(Polynomial.linear((2, 1)), [(x, 1), (y, 1), (diag, 1)])

# the residue depends on which chamber the direction sits in
print("eta below the diagonal:", jk_homogeneous(f, (2, 1)))   # 1
print("eta above the diagonal:", jk_homogeneous(f, (1, 2)))   # 2

# the reduction behind it: basic fractions with independent denominators
for term in partial_fraction_reduce(f):
    print(term.coefficient, term.basis_forms, term.exponents)

# a detailed account of every basic fraction and its cone test
report = []
jk_homogeneous(f, (1, 2), report)
for entry in report:
    print(entry)
