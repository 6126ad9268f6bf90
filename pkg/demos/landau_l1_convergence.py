"""
Landau-Stieltjes operators in L^1
=================================

Positive integral operators with a polynomial kernel converge to the
identity in L^1 once they converge on 1, t and t^2 and their norms stay
bounded.  This script checks both hypotheses on a grid and then watches
the error shrink on a kink and a jump.
"""

import numpy as np

from korovkin_lab import Interval, LandauStieltjesKernel, operator_l1_norm
from korovkin_lab.harness import run_landau_l1_experiment
from korovkin_lab.operators import landau_mass_closed_form

###############################################################################
# Operator norms
# --------------
# The L^1 operator norm is the largest kernel mass over t.  It peaks at the
# midpoint and stays below one, approaching the closed form from below.

for n in (1, 8, 32, 128):
    k = LandauStieltjesKernel(n, Interval(0.0, 1.0))
    print(f"n={n:4d}  ||T_n|| = {operator_l1_norm(k):.6f}   "
          f"full-line mass = {landau_mass_closed_form(n):.6f}")

###############################################################################
# The experiment
# --------------
# Monomials 1, t, t^2 form the test set.  The targets are |t - 1/3|, exp
# and a unit step.  The verdict asks for a 25% drop over the schedule.

rep = run_landau_l1_experiment(Interval(0.0, 1.0), m=257, schedule=(8, 32, 128), p=1)
print()
print(f"{'target':10s}" + "".join(f"{n:>12d}" for n in rep.schedule))
for c in rep.test_curves + rep.target_curves:
    print(f"{c.name:10s}" + "".join(f"{e:12.5f}" for e in c.errors) + f"   {c.verdict}")

###############################################################################
# The errors fall roughly like n^(-1/2): the kernel has width about
# (b - a) / sqrt(n).

e = np.array(rep.curve("pi0").errors)
print("\nobserved slope:", np.polyfit(np.log(rep.schedule), np.log(e), 1)[0].round(3))
print(rep.summary())
