# Turning a 3XOR instance into a pair of graphs.
#
# Each constraint x1 + x2 + x3 = b becomes a 10-vertex gadget: two vertices per
# variable value and one vertex per satisfying assignment.  The second graph
# uses the same constraints with every right-hand side set to 0.

from giso_forge import completeness_map, gi_score, reduce
from giso_forge.formats import to_graph6
from giso_forge.xor import ThreeXorInstance, plant, val

# %% one constraint
inst = ThreeXorInstance(3, [(0, 1, 2, 1)])
G, Gh = reduce(inst)
print("vertices", G.N, "edges", G.M)
print("graph6:", to_graph6(G.graph), to_graph6(Gh.graph))
for v in range(G.N):
    print(v, G.graph.names[v], sorted(G.graph.adjacency[v]))

# %% an assignment gives a map between the graphs
tau = [1, 0, 0]
pi = completeness_map(inst, tau)
print("tau satisfies:", val(inst, tau) == 1, " score:", gi_score(G.graph, Gh.graph, pi).ratio)

# %% planted instances: every unsatisfied constraint costs exactly 12 edges
for eps in (0, 0.05, 0.1, 0.2):
    inst, tau = plant(20, 40, eps, seed=7)
    G, Gh = reduce(inst)
    s = gi_score(G.graph, Gh.graph, completeness_map(inst, tau))
    u = round(float(1 - val(inst, tau)) * inst.m)
    print(f"eps={eps:<5} unsatisfied={u:2d} score={s.ratio} (M - 12u)/M = {(G.M - 12 * u)}/{G.M}")
