"""Edge multiplicities, Hamilton-cycle construction rules and removable cycles.

The constraint propagator works on two edge bitmasks, *required* and
*forbidden*, and applies three rules to a fixed point:

* a vertex with exactly two usable edges needs both of them;
* a vertex that already has two required edges loses all its others;
* no required edges may close a cycle shorter than ``n``.

A cycle of a working set is *removable* when the set without it still
covers every vertex, has no vertex with three or more edges of
multiplicity one, and those multiplicity-one edges survive propagation
when seeded as required (edges in no remaining cycle seeded forbidden).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .cycles import Cycle
from .graph import Graph

__all__ = [
    "MultiplicityMap",
    "edge_multiplicities",
    "VertexClass",
    "IsolatedInSet",
    "classify_vertex",
    "ConstraintState",
    "Contradiction",
    "propagate_rules",
    "RemovabilityReport",
    "CycleNotInSet",
    "is_removable",
    "prop32_violation",
    "prop31_witness",
    "prop31_violation",
    "lemma31_check",
    "WorkingSet",
]


@dataclass(frozen=True)
class MultiplicityMap:
    """``counts[k]`` is the number of working-set cycles through edge ``k``."""

    counts: tuple[int, ...]

    def mask(self, i: int) -> int:
        """Edges contained in exactly ``i`` cycles (the R_i edges)."""
        bits = 0
        for k, c in enumerate(self.counts):
            if c == i:
                bits |= 1 << k
        return bits

    @property
    def support(self) -> int:
        bits = 0
        for k, c in enumerate(self.counts):
            if c:
                bits |= 1 << k
        return bits

    def __getitem__(self, k: int) -> int:
        return self.counts[k]


def edge_multiplicities(working_set: Sequence[Cycle], g: Graph) -> MultiplicityMap:
    counts = [0] * g.m
    for c in working_set:
        for k in c.edges.ids():
            counts[k] += 1
    return MultiplicityMap(tuple(counts))


class VertexClass(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    MIXED = "mixed"


class IsolatedInSet(ValueError):
    pass


def classify_vertex(v: int, mm: MultiplicityMap, g: Graph) -> VertexClass:
    """Interior: every used incident edge is R_2.  Boundary: exactly two used edges, both R_1."""
    used = [mm[k] for _, k in g.adjacency[v] if mm[k] >= 1]
    if not used:
        raise IsolatedInSet(f"vertex {v} lies on no cycle of the working set")
    if all(c == 2 for c in used):
        return VertexClass.INTERIOR
    if len(used) == 2 and used == [1, 1]:
        return VertexClass.BOUNDARY
    return VertexClass.MIXED


# constraint propagation -----------------------------------------------------


class Contradiction(Exception):
    """Propagation failed.  ``rule`` is 1, 2 or 3 (or 0 for an inconsistent seed)."""

    def __init__(self, rule: int, vertex: int | None = None, edge: int | None = None):
        where = f"vertex {vertex}" if vertex is not None else f"edge {edge}"
        super().__init__(f"rule {rule} violated at {where}")
        self.rule = rule
        self.vertex = vertex
        self.edge = edge

    def to_record(self) -> dict:
        return {"rule": self.rule, "vertex": self.vertex, "edge": self.edge}


@dataclass(frozen=True)
class ConstraintState:
    graph: Graph
    required: int = 0
    forbidden: int = 0

    def status(self, k: int) -> str:
        if self.required >> k & 1:
            return "required"
        if self.forbidden >> k & 1:
            return "forbidden"
        return "undecided"

    @property
    def undecided(self) -> int:
        return self.graph.full_mask & ~(self.required | self.forbidden)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _propagate(g: Graph, req: int, forb: int) -> tuple[int, int]:
    if req & forb:
        raise Contradiction(0, edge=(req & forb).bit_length() - 1)
    n = g.n
    inc = g.incident
    edges = g.edges
    full = g.full_mask
    while True:
        changed = False
        for v in range(n):
            iv = inc[v]
            r = req & iv
            nr = r.bit_count()
            if nr > 2:
                raise Contradiction(3, vertex=v)
            avail = iv & ~forb
            na = avail.bit_count()
            if na < 2:
                raise Contradiction(1, vertex=v)
            if na == 2:
                if r != avail:
                    req |= avail
                    changed = True
            elif nr == 2:
                forb |= avail & ~r
                changed = True

        parent = list(range(n))
        size = [1] * n

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k in _bits(req):
            a, b = find(edges[k].u), find(edges[k].v)
            if a == b:
                if size[a] < n:
                    raise Contradiction(2, edge=k)
            else:
                parent[a] = b
                size[b] += size[a]
        for k in _bits(full & ~(req | forb)):
            a = find(edges[k].u)
            if a == find(edges[k].v) and size[a] < n:
                forb |= 1 << k
                changed = True
        if not changed:
            return req, forb


def propagate_rules(g: Graph, state: ConstraintState) -> ConstraintState:
    """Least fixed point of the three rules; raises :class:`Contradiction`."""
    req, forb = _propagate(g, state.required, state.forbidden)
    return ConstraintState(g, req, forb)


# working sets -----------------------------------------------------------------


def _set_consistent(g: Graph, ones: int, support: int) -> bool:
    for iv in g.incident:
        if not iv & support or (iv & ones).bit_count() >= 3:
            return False
    try:
        _propagate(g, ones, g.full_mask & ~support)
    except Contradiction:
        return False
    return True


class WorkingSet:
    """Mutable multiplicity bookkeeping over a subset of a cycle pool.

    Used by the decision loop so that removability checks are a handful
    of mask operations instead of a full recount.
    """

    def __init__(
        self,
        g: Graph,
        pool: Sequence[Cycle],
        alive: Sequence[int] | None = None,
        memo: dict | None = None,
    ):
        self.graph = g
        self.pool = pool
        # consistency depends only on (R_1 mask, support mask); shared by clones
        self.memo = {} if memo is None else memo
        self.alive = sorted(range(len(pool)) if alive is None else alive)
        counts = [0] * g.m
        for i in self.alive:
            for k in pool[i].edges.ids():
                counts[k] += 1
        self.counts = counts
        self._masks()

    def _masks(self) -> None:
        ones = twos = support = 0
        for k, c in enumerate(self.counts):
            if c:
                support |= 1 << k
                if c == 1:
                    ones |= 1 << k
                elif c == 2:
                    twos |= 1 << k
        self.ones, self.twos, self.support = ones, twos, support

    def multiplicities(self) -> MultiplicityMap:
        return MultiplicityMap(tuple(self.counts))

    def without(self, i: int) -> WorkingSet:
        clone = object.__new__(WorkingSet)
        clone.graph, clone.pool, clone.memo = self.graph, self.pool, self.memo
        clone.alive = [j for j in self.alive if j != i]
        clone.counts = list(self.counts)
        for k in self.pool[i].edges.ids():
            clone.counts[k] -= 1
        clone._masks()
        return clone

    def _consistent(self, ones: int, support: int) -> bool:
        key = (ones, support)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = _set_consistent(self.graph, ones, support)
        return hit

    def consistent(self) -> bool:
        """Whether this set itself passes the coverage, R_1 and rule checks."""
        return self._consistent(self.ones, self.support)

    def removable(self, i: int) -> bool:
        c = self.pool[i].bits
        ones = (self.ones & ~c) | (self.twos & c)
        support = self.support & ~(self.ones & c)
        return self._consistent(ones, support)


@dataclass
class RemovabilityReport:
    removable: bool
    reasons: list[dict] = field(default_factory=list)


class CycleNotInSet(ValueError):
    pass


def _index_of(c: Cycle, working_set: Sequence[Cycle]) -> int:
    for i, d in enumerate(working_set):
        if d.bits == c.bits:
            return i
    raise CycleNotInSet(f"cycle {c} is not in the working set")


def is_removable(c: Cycle, working_set: Sequence[Cycle], g: Graph) -> RemovabilityReport:
    """Check whether deleting ``c`` from ``working_set`` keeps it a viable Hamilton set."""
    idx = _index_of(c, working_set)
    rest = [d for i, d in enumerate(working_set) if i != idx]
    mm = edge_multiplicities(rest, g)
    support = mm.support
    ones = mm.mask(1)
    reasons = []
    uncovered = [v for v in range(g.n) if not g.incident[v] & support]
    if uncovered:
        reasons.append({"kind": "coverage", "vertices": uncovered})
    v = prop32_violation(mm, g)
    if v is not None:
        reasons.append({"kind": "prop32", "vertex": v})
    try:
        _propagate(g, ones, g.full_mask & ~support)
    except Contradiction as exc:
        reasons.append({"kind": "rules", **exc.to_record()})
    return RemovabilityReport(not reasons, reasons)


# obstructions -------------------------------------------------------------------


def prop32_violation(mm: MultiplicityMap, g: Graph) -> int | None:
    """Lowest vertex with three or more incident R_1 edges."""
    ones = mm.mask(1)
    for v in range(g.n):
        if (g.incident[v] & ones).bit_count() >= 3:
            return v
    return None


def prop31_witness(working_set: Sequence[Cycle], g: Graph) -> tuple[int, list[int]] | None:
    """A vertex met by three or more irremovable cycles that each have an R_1 edge there.

    Returns ``(vertex, cycle indices)`` for the lowest such vertex.
    """
    if len(working_set) < 3:
        return None
    work = WorkingSet(g, working_set)
    irremovable = [i for i in range(len(working_set)) if not work.removable(i)]
    if len(irremovable) < 3:
        return None
    for v in range(g.n):
        at_v = g.incident[v] & work.ones
        hits = [i for i in irremovable if working_set[i].bits & at_v]
        if len(hits) >= 3:
            return v, hits
    return None


def prop31_violation(working_set: Sequence[Cycle], g: Graph) -> bool:
    return prop31_witness(working_set, g) is not None


def lemma31_check(working_set: Sequence[Cycle], solutions: Sequence, g: Graph) -> Cycle | None:
    """An R_1-free co-solution cycle when the solution is unique and nothing is removable."""
    if len(solutions) != 1:
        return None
    work = WorkingSet(g, working_set)
    if any(work.removable(i) for i in range(len(working_set))):
        return None
    for i in solutions[0].cosolution:
        if not working_set[i].bits & work.ones:
            return working_set[i]
    return None
