"""Auditing the criterion against the exact oracle on every small graph."""

# %% [markdown]
# Every connected labelled graph on n vertices is decided and compared
# with the exact search.  Disagreements are archived as graph6 strings so
# each one can be replayed on its own.

# %%
import sys
import tempfile
from pathlib import Path

from hamcycles import CorpusSpec, ExhaustiveLabeled, SolutionConfig, emit_report, run_corpus
from hamcycles.graph import parse_graph6
from hamcycles.harness import evaluate_graph

n = int(sys.argv[1]) if len(sys.argv) > 1 else 5
spec = CorpusSpec(ExhaustiveLabeled(n), SolutionConfig(pool="mcb"))
report = run_corpus(spec)
m = report.matrix
print(f"n={n}: {m.total} graphs  hh={m.hh} hn={m.hn} nh={m.nh} nn={m.nn} unverified={m.unverified}")

# %% [markdown]
# ``hn`` (a verified Hamilton cycle on a non-Hamiltonian graph) is zero by
# construction: every positive verdict carries a checked certificate.

# %%
out = Path(tempfile.mkdtemp()) / f"audit-n{n}.txt"
emit_report(report, out, format="text")
print(out.read_text().split("mismatches")[0])

# %%
if report.mismatches:
    g6 = report.mismatches[0]
    row = evaluate_graph("replay", parse_graph6(g6), spec.config)
    print(f"replaying {g6}: verdict={row.verdict}/{row.reason} oracle={row.oracle}")
