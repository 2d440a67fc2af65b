"""Solving the Grinberg equation over a cycle pool."""

# %% [markdown]
# Pick cycles whose values (order - 2) add up to n - 2.  If a Hamilton
# cycle is the GF(2) sum of some basis cycles, those cycles form such a
# pick, so an empty solution list rules the basis route out.

# %%
from hamcycles import SolutionConfig, build_pool, enumerate_solutions, named_graph

for name in ("cycle(6)", "fan(6)", "wheel(6)", "petersen"):
    g = named_graph(name)
    pool = build_pool(g, SolutionConfig())
    sols = enumerate_solutions(pool, g.n)
    orders = [c.order for c in pool]
    print(f"{name:9s} pool orders {orders} target {g.n - 2}: {len(sols)} solution(s)")

# %% [markdown]
# Petersen: six pentagons are worth 3 each, and 8 is not a multiple of 3.
#
# With every simple cycle in the pool the count grows quickly, so
# ``max_solutions`` caps it and the result says when it was cut short.

# %%
g = named_graph("k5")
cfg = SolutionConfig(pool="all", max_solutions=50)
sols = enumerate_solutions(build_pool(g, cfg), g.n, cfg)
print(f"k5, all cycles: kept {len(sols)}, truncated={sols.truncated}")
