"""Hamiltonicity by Grinberg solutions and removable cycles, plus an exact oracle.

:func:`decide` runs the cycle-basis criterion: build a cycle pool, solve
the Grinberg equation over it, check the global obstructions, then for
each solution delete co-solution cycles one at a time while every
remaining co-solution cycle stays removable.  When a solution's whole
co-solution can be deleted, the GF(2) sum of what is left is checked
as a Hamilton cycle.

:func:`oracle_hamiltonian` is an independent exact search used as
ground truth.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .cycles import Cycle, CycleError, EdgeSet, cycle_from_edge_set, xor
from .graph import Graph, is_connected
from .grinberg import SolutionConfig, build_pool, enumerate_solutions
from .removal import (
    Contradiction,
    WorkingSet,
    _propagate,
    lemma31_check,
    prop31_witness,
    prop32_violation,
)

__all__ = [
    "DEFAULT_ORACLE_BUDGET",
    "EXHAUSTIVE_ORACLE_MAX_N",
    "Certificate",
    "Outcome",
    "Reason",
    "Verdict",
    "TraceLog",
    "BudgetExceeded",
    "oracle_hamiltonian",
    "verify_certificate",
    "xor_all",
    "decide",
]

DEFAULT_ORACLE_BUDGET = 10_000_000
EXHAUSTIVE_ORACLE_MAX_N = 12


@dataclass(frozen=True)
class Certificate:
    """A Hamilton cycle given as a closed vertex walk (first vertex not repeated)."""

    walk: tuple[int, ...]

    @classmethod
    def from_cycle(cls, c: Cycle) -> Certificate:
        return cls(tuple(c.walk))


def verify_certificate(g: Graph, cert: Certificate | Sequence[int]) -> bool:
    walk = list(cert.walk if isinstance(cert, Certificate) else cert)
    if len(walk) != g.n or g.n < 3:
        return False
    if sorted(walk) != list(range(g.n)):
        return False
    return all(g.has_edge(a, b) for a, b in zip(walk, walk[1:] + walk[:1]))


def xor_all(cycles: Sequence[Cycle], m: int | None = None) -> EdgeSet:
    """GF(2) sum of the cycles' edge sets (empty set for an empty list)."""
    if not cycles:
        return EdgeSet.empty(m or 0)
    acc = cycles[0].edges
    for c in cycles[1:]:
        acc = xor(acc, c.edges)
    return acc


# oracle ------------------------------------------------------------------------


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


def _usable_connected(g: Graph, forb: int) -> bool:
    usable = g.full_mask & ~forb
    seen = 1
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w, k in g.adjacency[v]:
            if usable >> k & 1 and not seen >> w & 1:
                seen |= 1 << w
                frontier.append(w)
    return seen == (1 << g.n) - 1


def oracle_hamiltonian(g: Graph, budget: int | None = DEFAULT_ORACLE_BUDGET) -> Certificate | None:
    """Exact Hamilton cycle search.

    Branches on one undecided edge at a time (at the vertex with the
    fewest undecided edges), runs rule propagation at every node and
    prunes when the usable edges no longer connect the graph.  ``budget``
    bounds the number of search nodes; ``None`` means unbounded.
    Returns a certificate, or ``None`` when no Hamilton cycle exists.
    """
    n = g.n
    if n < 3 or not is_connected(g):
        return None
    nodes = 0
    inc = g.incident

    def search(req: int, forb: int) -> int:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(nodes)
        try:
            req, forb = _propagate(g, req, forb)
        except Contradiction:
            return 0
        if req.bit_count() == n:
            return req
        if not _usable_connected(g, forb):
            return 0
        undecided = g.full_mask & ~(req | forb)
        best, best_count = -1, None
        for v in range(n):
            if (req & inc[v]).bit_count() == 2:
                continue
            count = (inc[v] & undecided).bit_count()
            if count and (best_count is None or count < best_count):
                best, best_count = v, count
        choice = inc[best] & undecided
        bit = choice & -choice
        return search(req | bit, forb) or search(req, forb | bit)

    found = search(0, 0)
    if not found:
        return None
    cert = Certificate.from_cycle(cycle_from_edge_set(EdgeSet(found, g.m), g))
    assert verify_certificate(g, cert)
    return cert


# decision pipeline -------------------------------------------------------------


class Outcome(str, enum.Enum):
    HAMILTONIAN = "hamiltonian"
    CLAIMED_UNVERIFIED = "claimed_hamiltonian_unverified"
    NON_HAMILTONIAN = "non_hamiltonian"


class Reason(str, enum.Enum):
    DISCONNECTED = "disconnected"
    NO_SOLUTION = "no_solution"
    PROP31 = "prop31"
    PROP32 = "prop32"
    LEMMA31 = "lemma31"
    STUCK_DELETION = "stuck_deletion"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    reason: Reason | None = None
    certificate: Certificate | None = None

    @property
    def says_hamiltonian(self) -> bool:
        return self.outcome is not Outcome.NON_HAMILTONIAN

    def to_record(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "reason": self.reason.value if self.reason else None,
            "certificate": list(self.certificate.walk) if self.certificate else None,
        }


@dataclass
class TraceLog:
    events: list[dict] = field(default_factory=list)

    def add(self, event: str, **data) -> None:
        self.events.append({"event": event, **data})

    def of(self, event: str) -> list[dict]:
        return [e for e in self.events if e["event"] == event]

    def to_records(self) -> list[dict]:
        return [dict(e) for e in self.events]

    def replay(self, solution: int) -> list[int]:
        """Apply the logged deletions for one solution attempt to the logged pool."""
        pool = self.of("pool")[0]
        remaining = list(range(len(pool["cycles"])))
        for e in self.events:
            if e["event"] == "delete" and e["solution"] == solution:
                remaining.remove(e["cycle"])
        return remaining


def _verdict(trace: TraceLog, outcome: Outcome, reason: Reason | None = None, cert=None) -> tuple[Verdict, TraceLog]:
    v = Verdict(outcome, reason, cert)
    trace.add("verdict", **v.to_record())
    return v, trace


def _delete_cosolution(work: WorkingSet, cosolution: list[int], trace: TraceLog, si: int) -> WorkingSet | None:
    """Delete co-solution cycles while the rest stay removable; None when stuck."""
    pending = list(cosolution)
    known_removable = None
    while pending:
        candidates = known_removable if known_removable is not None else [i for i in pending if work.removable(i)]
        picked = None
        for c in candidates:
            after = work.without(c)
            others = [d for d in pending if d != c]
            if all(after.removable(d) for d in others):
                picked = c
                break
        if picked is None:
            trace.add("stuck", solution=si, remaining_cosolution=pending, removable=candidates)
            return None
        trace.add("delete", solution=si, cycle=picked)
        pending.remove(picked)
        work = after
        known_removable = others
    return work


def decide(
    g: Graph,
    cfg: SolutionConfig | None = None,
    *,
    prop32_fatal: bool = False,
) -> tuple[Verdict, TraceLog]:
    """Run the cycle-basis Hamiltonicity criterion on ``g``.

    ``prop32_fatal`` turns a vertex with three or more R_1 edges in the
    full pool into an immediate non-Hamiltonian verdict instead of a
    logged observation.
    """
    cfg = cfg or SolutionConfig()
    trace = TraceLog()
    trace.add("note", removability="coverage + R_1 recount + rule propagation")
    if not is_connected(g) or g.n == 0:
        return _verdict(trace, Outcome.NON_HAMILTONIAN, Reason.DISCONNECTED)

    pool = build_pool(g, cfg)
    trace.add(
        "pool",
        kind=cfg.pool_id,
        cycles=[list(c.walk) for c in pool],
        orders=[c.order for c in pool],
    )
    solutions = enumerate_solutions(pool, g.n, cfg)
    trace.add("solutions", count=len(solutions), truncated=solutions.truncated, target=g.n - 2)
    if solutions.truncated:
        trace.add("warning", kind="solution_cap_exceeded", max_solutions=cfg.max_solutions)
    if not solutions:
        return _verdict(trace, Outcome.NON_HAMILTONIAN, Reason.NO_SOLUTION)

    full = WorkingSet(g, pool)
    witness = prop31_witness(pool, g)
    if witness is not None:
        trace.add("obstruction", kind="prop31", vertex=witness[0], cycles=witness[1])
        return _verdict(trace, Outcome.NON_HAMILTONIAN, Reason.PROP31)
    v32 = prop32_violation(full.multiplicities(), g)
    trace.add("prop32_pool", vertex=v32, fatal=prop32_fatal)
    if v32 is not None and prop32_fatal:
        return _verdict(trace, Outcome.NON_HAMILTONIAN, Reason.PROP32)
    ck = lemma31_check(pool, solutions, g)
    if ck is not None:
        trace.add("obstruction", kind="lemma31", cycle=pool.index(ck))
        return _verdict(trace, Outcome.NON_HAMILTONIAN, Reason.LEMMA31)

    for si, sol in enumerate(solutions):
        trace.add("attempt", solution=si, solution_set=list(sol.solution), cosolution=list(sol.cosolution))
        if sol.cosolution and not WorkingSet(g, pool, sol.solution, full.memo).consistent():
            # the last deletion would leave exactly the solution set, which fails the checks
            trace.add("stuck", solution=si, remaining_cosolution=list(sol.cosolution), prescreen=True)
            continue
        final = _delete_cosolution(full, list(sol.cosolution), trace, si)
        if final is None:
            continue
        remaining = [pool[i] for i in final.alive]
        es = xor_all(remaining, g.m)
        cert = None
        try:
            cert = Certificate.from_cycle(cycle_from_edge_set(es, g))
        except CycleError:
            pass
        ok = cert is not None and verify_certificate(g, cert)
        trace.add("xor", solution=si, remaining=list(final.alive), edges=es.ids(), certificate_ok=ok)
        if ok:
            return _verdict(trace, Outcome.HAMILTONIAN, None, cert)
        return _verdict(trace, Outcome.CLAIMED_UNVERIFIED)

    return _verdict(trace, Outcome.NON_HAMILTONIAN, Reason.STUCK_DELETION)
