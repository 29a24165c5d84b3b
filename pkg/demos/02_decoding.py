# Reading an assignment back out of a near-isomorphism.
#
# The decoder looks at which constraint cliques and variable pairs a map keeps
# intact, builds a variable permutation sigma from them, and reads tau off the
# pairs that are fixed by sigma.

import numpy as np

from giso_forge import completeness_map, decode, reduce
from giso_forge.baseline import best_iso_local_search, exact_iso
from giso_forge.xor import plant, sample_random_3xor

# %% round trip through the completeness map
inst, tau = plant(8, 12, 0, seed=1)
pair = reduce(inst)
rep = decode(pair, completeness_map(inst, tau), eps=0, beta=1, gamma=1)
print("val of decoded tau:", rep.val_tau, " |A| =", len(rep.A), " |B| =", len(rep.B))

# %% a map the exact solver finds on its own
for seed in range(50):
    inst = sample_random_3xor(7, 10, seed=seed, replacement=False)
    G, Gh = reduce(inst)
    pi = exact_iso(G.graph, Gh.graph)
    if pi is not None:
        break
    print(f"seed {seed}: no isomorphism, the instance is unsatisfiable")
if pi is not None:
    rep = decode((G, Gh), pi, eps="1/2000", beta="1/2", gamma="1/10")
    print("gi =", rep.gi.ratio, " val_tau =", rep.val_tau, " claims asserted:", rep.asserted)
    for name, (lhs, rhs, ok) in rep.claims.items():
        print(f"  {name:10s} {str(lhs):>8} >= {str(rhs):<10} {ok}")

# %% a local-search map on a random instance is only reported on
inst = sample_random_3xor(10, 30, seed=4)
G, Gh = reduce(inst)
pi = best_iso_local_search(G.graph, Gh.graph, restarts=3, seed=0)
rep = decode((G, Gh), pi, eps=0.1, beta=0.1, gamma=0.5)
print("local search gi =", float(rep.gi.ratio), " val_tau =", float(rep.val_tau), " asserted:", rep.asserted)
print(np.round([float(l) for l, _, _ in rep.claims.values()], 3))
