"""
Small test sets in R^m
======================

For generators u_1..u_k of a vector lattice, convergence of positive maps
to a lattice homomorphism P on the 2k + 1 vectors u, u_i and u_i^2 / u
already forces convergence on everything the generators produce.  Here
the lattice is R^m with the componentwise order.
"""

import numpy as np

from korovkin_lab.lattice import (
    LatticeHom,
    PositiveMap,
    is_lattice_hom,
    korovkin_test_set,
    run_campaign,
    verify_test_set_convergence,
)

###############################################################################
# A positive map is a lattice homomorphism exactly when every row has at
# most one nonzero entry.

chk = is_lattice_hom(np.array([[1.0, 1.0, 0.0], [0, 1, 0], [0, 0, 1]]))
print("row (1, 1, 0):", bool(chk), "witness:", chk.witness)

###############################################################################
# Two generators in R^3 give five test vectors.

gens = np.array([[0.3, 0.9, 0.4], [0.8, 0.2, 0.5]])
for v in korovkin_test_set(gens):
    print(np.round(v, 4))

###############################################################################
# Maps T_n = P + R_n / n with random positive R_n.

rng = np.random.default_rng(1)
P = LatticeHom.from_assignment(3, [2, 0, 1], [1.0, 0.5, 2.0])
maps = [PositiveMap(P.matrix + rng.uniform(size=(3, 3)) / n) for n in 2 ** np.arange(10)]
rep = verify_test_set_convergence(gens, maps, P)
print(f"\nverdict {rep.verdict}, constant C = {rep.constant:.2f}")
for te, se in zip(rep.test_errors[::3], rep.sample_errors[::3]):
    print(f"  test-set error {te:.2e}   sampled error {se:.2e}")

###############################################################################
# The seeded campaign.

rows = run_campaign(trials=200, seed=0)
print(f"\ncampaign: {sum(r.verdict == 'PASS' for r in rows)}/200 PASS")
