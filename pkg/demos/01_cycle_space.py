"""Cycle spaces over GF(2): fundamental cycles versus a minimum cycle basis."""

# %% [markdown]
# A cycle is stored as a bitmask over edge ids, so adding cycles is XOR.
# The cycle space of a connected graph has dimension m - n + 1; any basis
# has that many cycles, but only some bases have minimum total length.

# %%
from hamcycles import build_graph, cyclomatic_number, fundamental_basis, horton_mcb, named_graph, xor_all

# a 4 x 4 grid: vertex r*4 + c
pairs = [(r * 4 + c, r * 4 + c + 1) for r in range(4) for c in range(3)]
pairs += [(r * 4 + c, (r + 1) * 4 + c) for r in range(3) for c in range(4)]
g = build_graph(16, pairs)
print(f"grid: n={g.n}, m={g.m}, dimension={cyclomatic_number(g)}")

# %% [markdown]
# A BFS spanning tree gives one cycle per non-tree edge.  Those
# fundamental cycles wrap around the tree and get long; the minimum
# basis is just the nine unit squares.

# %%
fb = fundamental_basis(g)
mcb = horton_mcb(g)
print("fundamental orders:", sorted(c.order for c in fb), "weight", fb.weight)
print("minimum orders    :", sorted(c.order for c in mcb), "weight", mcb.weight)

# %% [markdown]
# The Petersen graph has girth 5 and a minimum basis of six pentagons.

# %%
p = named_graph("petersen")
print("petersen minimum basis:", [str(c) for c in horton_mcb(p)])

# %% [markdown]
# Summing the triangles of a fan over GF(2) cancels every chord and
# leaves exactly the outer polygon: a Hamilton cycle.

# %%
f = named_graph("fan(8)")
rim = xor_all(list(horton_mcb(f)), f.m)
print("fan(8) triangles sum to edges", [(f.edges[k].u, f.edges[k].v) for k in rim.ids()])
