"""
Function-space axioms for discrete L^p
======================================

Solid norms, monotone convergence, invariance under null sets and density
of continuous functions, each checked on a grid.
"""

import numpy as np

from korovkin_lab import GridFunction, Interval
from korovkin_lab.axioms import (
    NormKind,
    capped_sequence,
    density_demo,
    null_perturbation_bound,
    null_perturbation_shift,
    ramp_error_rate,
    run_axiom_suite,
)
from korovkin_lab.quadrature import lp_norm

unit = Interval(0.0, 1.0)

###############################################################################
# Monotone convergence: min(f, k/K) increases to f and so do the norms.

f = GridFunction.from_callable(unit, 257, lambda t: t**2)
print("capped norms:", [round(lp_norm(g, 1), 5) for g in capped_sequence(f, 6)])

###############################################################################
# A single node is a null set in the limit.  Changing one value moves the
# norm by at most a multiple of h^(1/p), which halves under refinement at
# p = 1.

for m in (129, 257, 513, 1025):
    g = GridFunction(unit, np.cos(3 * unit.nodes(m)))
    print(f"m={m:5d}  shift={null_perturbation_shift(g, NormKind(1)):.3e}  "
          f"bound={null_perturbation_bound(g, NormKind(1)):.3e}")

###############################################################################
# Density: a linear ramp of width w replaces a jump.  The L^p error is
# (w / (2^p (p + 1)))^(1/p).

t = unit.nodes(4097)
step = GridFunction(unit, (t >= 0.5).astype(float))
widths = [0.2, 0.1, 0.05, 0.025]
for p in (1.0, 2.0):
    errs = density_demo(step, NormKind(p), widths)
    print(f"p={p:g}", " ".join(f"{e:.4f}/{ramp_error_rate(w, p):.4f}" for e, w in zip(errs, widths)))

###############################################################################
# The whole randomised suite.

recs = run_axiom_suite(unit, 65, trials=100, seed=0)
print(f"\n{sum(r.passed for r in recs)}/{len(recs)} axiom checks passed")
