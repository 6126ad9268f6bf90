"""
Which functions does a test set control?
========================================

A point x is determined by a test set G when the only positive functional
agreeing with evaluation at x on G is evaluation at x itself.  On a grid
that is a small linear program over nonnegative node weights.
"""

from korovkin_lab import Interval, make_monomial
from korovkin_lab.korovkin import (
    MomentSystem,
    membership_rows,
    representing_measure_extremes,
    verify_korovkin_set,
)

unit = Interval(0.0, 1.0)
m = 33


def monomials(*degrees):
    return [make_monomial(unit, m, d) for d in degrees]


###############################################################################
# 1, t and t^2 pin every node
# ---------------------------

for degrees in [(0,), (0, 1), (0, 1, 2)]:
    rep = verify_korovkin_set(monomials(*degrees))
    print(f"G = {degrees}: determined fraction {rep.determined_fraction:.3f}, "
          f"nodes {rep.determined_nodes.tolist() if rep.determined_fraction < 0.5 else '...'}")

###############################################################################
# With only 1 and t, the midpoint is not pinned: half a unit mass at each
# endpoint has the same moments as a point mass at 1/2.  The value of t^2
# can therefore lie anywhere between 1/4 and 1/2.

msys = MomentSystem(monomials(0, 1), m // 2)
lo, hi = representing_measure_extremes(msys, make_monomial(unit, m, 2))
print(f"\nt^2 at x=1/2 under G={{1, t}}: range [{lo:.4f}, {hi:.4f}]")

###############################################################################
# Membership in the extension space is the same range collapsing to f(x)
# at every node.

rows = membership_rows(monomials(0, 1), make_monomial(unit, m, 2))
print("nodes where t^2 is forced:", [r.x for r in rows if r.passed])
