"""Running the deletion criterion and reading its trace."""

# %% [markdown]
# ``decide`` builds a pool, solves the equation, checks the global
# obstructions and then, per solution, deletes co-solution cycles one at
# a time while the rest stay removable.  If a whole co-solution goes, the
# XOR of what is left is checked as a Hamilton cycle.

# %%
from hamcycles import build_graph, decide, named_graph, oracle_hamiltonian

for name in ("wheel(5)", "fan(7)", "petersen", "k5"):
    g = named_graph(name)
    verdict, trace = decide(g)
    truth = oracle_hamiltonian(g, budget=None) is not None
    print(f"{name:9s} {verdict.outcome.value:32s} reason={verdict.reason and verdict.reason.value} oracle={truth}")

# %% [markdown]
# The trace is a list of plain records; here is the wheel step by step.

# %%
verdict, trace = decide(named_graph("wheel(5)"))
for event in trace.to_records():
    print(event)

# %% [markdown]
# The criterion is not complete.  A triangle with a pendant path is not
# Hamiltonian and is rejected; a Hamiltonian graph can still be rejected
# when no deletion order works, which is what the audit demo counts.

# %%
g = build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
print(decide(g)[0])
