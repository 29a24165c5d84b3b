# Moving a pseudo-expectation from 3XOR to graph isomorphism.
#
# Every isomorphism indeterminate Pi[u -> v] is replaced by a product of at
# most three assignment indicators A[x -> a].  The script checks that the
# isomorphism axioms become consequences of the 3XOR axioms.

from giso_forge.poly import MultilinearPoly
from giso_forge.sos import (
    Pi,
    clique_edge_certificate,
    edge_identity_poly,
    pseudoexpectation_from_assignment,
    substitute_pi,
    verify_sos_reduction,
)
from giso_forge.xor import ThreeXorInstance, plant

inst = ThreeXorInstance(3, [(0, 1, 2, 1)])

# %% the substitution itself
print(substitute_pi(0, 1, inst))   # (x0 -> 0) to (x0 -> 1)
print(substitute_pi(6, 6, inst))   # constraint vertex to constraint vertex
print(substitute_pi(0, 6, inst))   # variable to constraint vertex: zero

# %% one edge identity, written out
print(edge_identity_poly(6, 7, inst))
print("second route agrees:", clique_edge_certificate((6, 7), inst))

# %% every axiom on a small random instance
inst, tau = plant(8, 10, 0, seed=2)
rep = verify_sos_reduction(inst)
for cls, counts in rep["classes"].items():
    print(cls, counts)

# %% a true solution gives a point operator on the Pi-polynomials
E = pseudoexpectation_from_assignment(tau, inst, degree=6)
p = Pi(0, 0) + Pi(0, 1) - 1
print("E[(row sum - 1)^2] =", E.on_pi(p * p))
print("E[1] =", E(MultilinearPoly.const(1)))
