"""Generating series against the finite sum over the fiber of p."""

from quasimaps import grassmannian, parse_polynomial, projective
from quasimaps.git_model import DualTorusPoint
from quasimaps.invariants import generating_series_truncated
from quasimaps.vafa_intriligator import (embed_g_point, sigma_shift, solve_fiber, vi_sum,
                                         vi_vs_series_check)

# P^2: u^5 pairs with degree 1 only, so the series is exactly q
p2 = projective(3)
u5 = parse_polynomial("u1^5", 1)
print("series:", generating_series_truncated(p2, u5, 0.1, 8))
print("fiber sum:", vi_sum(u5, DualTorusPoint((0.1,)), p2))

# Gr(2,4): the fiber over q is sixteen points u_i^4 = q_i
gr = grassmannian(2, 4)
q = sigma_shift(embed_g_point(0.1, gr), gr)
print("shifted point:", q.q_coords)
print("fiber size:", len(solve_fiber(q, gr)))

# the check report compares both sides and records the last series shell
for text in ["(u1*u2)^2", "(u1+u2)^8", "(u1*u2)^2*(u1+u2)^4"]:
    rep = vi_vs_series_check(parse_polynomial(text, 2), 0.1, gr, 8)
    print(f"{text:22s} series {rep['series_value'][0]: .6f}  "
          f"fiber {rep['vi_value'][0]: .6f}  diff {rep['abs_diff']:.1e}")
