# Variable gadgets over abelian groups.
#
# A gadget for a variable over H has one vertex per group element, with stars
# on the rows and small cycles to fix the orientation, so that its
# automorphisms act on the group vertices exactly as the translations b -> b + a.

from giso_forge.abelian import (
    additive_completeness_map,
    gadget_audit,
    plant_additive,
    reduce_additive,
    sum_zero_predicate,
)
from giso_forge.abelian.groups import AbelianGroup, check_pairwise_independent_subgroup
from giso_forge.graphs import gi_score

# %% audit table
print(f"{'H':8s}{'aux':>5}{'edges':>7}{'|Aut|':>7}{'actions':>9}{'clique':>8}")
for name in ("Z2", "Z3", "Z4", "Z5", "Z2xZ2", "Z6", "Z2xZ4"):
    a = gadget_audit(AbelianGroup.parse(name))
    print(f"{name:8s}{a['aux']:>5}{a['edges']:>7}{a['automorphisms']:>7}"
          f"{a['distinct_group_actions']:>9}{a['max_clique']:>8}")
# Z2xZ2 and Z2xZ4 have more automorphisms than group elements: the leaves of a
# star can be swapped.  The action on the group vertices is still a translation.

# %% a sum-zero predicate and a planted instance over Z3
H = AbelianGroup.parse("Z3")
psi = sum_zero_predicate(H, 3)
print("balanced pairwise independent:", check_pairwise_independent_subgroup(psi))
inst, tau = plant_additive(10, 15, psi, eps=0.2, seed=5)
G, Gh = reduce_additive(inst)
print("N1, N2, M1, M2 =", G.N1, G.N2, G.M1, G.M2)
s = gi_score(G.graph, Gh.graph, additive_completeness_map(inst, tau))
print("completeness score", s.ratio, "=", float(s.ratio))
