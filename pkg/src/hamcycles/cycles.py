"""GF(2) cycle space of a graph: edge sets, simple cycles and cycle bases.

An :class:`EdgeSet` is a bitmask over the graph's edge indices, so vector
addition in the cycle space is integer XOR.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import Graph, is_connected

__all__ = [
    "EdgeSet",
    "Cycle",
    "CycleBasis",
    "SpanningTree",
    "CycleError",
    "NotTwoRegular",
    "Disconnected",
    "DimensionMismatch",
    "DisconnectedGraph",
    "xor",
    "gf2_rank",
    "GF2Basis",
    "cycle_from_edge_set",
    "cycle_from_walk",
    "cycle_sort_key",
    "spanning_tree",
    "fundamental_basis",
    "shortest_path_tree",
    "horton_candidates",
    "horton_mcb",
    "is_cycle_basis",
    "span_contains",
    "simple_cycles",
    "cyclomatic_number",
    "format_basis",
    "parse_basis",
]


class DimensionMismatch(ValueError):
    pass


class DisconnectedGraph(ValueError):
    pass


class CycleError(ValueError):
    pass


class NotTwoRegular(CycleError):
    pass


class Disconnected(CycleError):
    """Edge set is a union of two or more disjoint cycles."""


@dataclass(frozen=True)
class EdgeSet:
    bits: int
    m: int

    @classmethod
    def empty(cls, m: int) -> EdgeSet:
        return cls(0, m)

    @classmethod
    def from_ids(cls, ids: Iterable[int], m: int) -> EdgeSet:
        bits = 0
        for k in ids:
            if not 0 <= k < m:
                raise IndexError(f"edge id {k} outside [0, {m})")
            bits |= 1 << k
        return cls(bits, m)

    def ids(self) -> list[int]:
        out, mask = [], self.bits
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def __xor__(self, other: EdgeSet) -> EdgeSet:
        return xor(self, other)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, k: int) -> bool:
        return bool(self.bits >> k & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ids())

    def issubset(self, other: EdgeSet) -> bool:
        _check_dims(self, other)
        return self.bits & ~other.bits == 0


def _check_dims(*sets: EdgeSet) -> int:
    dims = {s.m for s in sets}
    if len(dims) > 1:
        raise DimensionMismatch(f"edge sets of different lengths {sorted(dims)}")
    return dims.pop() if dims else 0


def xor(a: EdgeSet, b: EdgeSet) -> EdgeSet:
    _check_dims(a, b)
    return EdgeSet(a.bits ^ b.bits, a.m)


class GF2Basis:
    """Incremental row-echelon basis over GF(2), keyed by leading bit."""

    def __init__(self) -> None:
        self._rows: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: int) -> int:
        while vec:
            lead = vec.bit_length() - 1
            row = self._rows.get(lead)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> bool:
        """Insert ``vec``; False if it was already in the span."""
        vec = self.reduce(vec)
        if not vec:
            return False
        self._rows[vec.bit_length() - 1] = vec
        return True


def gf2_rank(vectors: Sequence[EdgeSet]) -> int:
    _check_dims(*vectors)
    basis = GF2Basis()
    for v in vectors:
        basis.add(v.bits)
    return len(basis)


# cycles --------------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    """A simple cycle: its edge set plus a canonical vertex walk.

    The walk starts at the smallest vertex and heads towards the smaller
    of its two cycle neighbours.
    """

    edges: EdgeSet
    walk: tuple[int, ...]
    weight: float

    @property
    def order(self) -> int:
        return len(self.walk)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.walk)

    @property
    def bits(self) -> int:
        return self.edges.bits

    def __str__(self) -> str:
        return " ".join(map(str, self.walk))


def cycle_sort_key(c: Cycle) -> tuple:
    return (c.weight, c.order, tuple(c.edges.ids()))


def cycle_from_edge_set(es: EdgeSet, g: Graph) -> Cycle:
    if es.m != g.m:
        raise DimensionMismatch(f"edge set of length {es.m} for graph with m={g.m}")
    ids = es.ids()
    if not ids:
        raise CycleError("empty edge set")
    nbrs: dict[int, list[int]] = {}
    for k in ids:
        e = g.edges[k]
        nbrs.setdefault(e.u, []).append(e.v)
        nbrs.setdefault(e.v, []).append(e.u)
    bad = sorted(v for v, ws in nbrs.items() if len(ws) != 2)
    if bad:
        raise NotTwoRegular(f"vertices {bad} do not have degree 2 in the edge set")
    start = min(nbrs)
    walk = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        walk.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    if len(walk) != len(nbrs):
        raise Disconnected(
            f"edge set splits into several cycles ({len(walk)} of {len(nbrs)} vertices reached)"
        )
    return Cycle(es, tuple(walk), g.mask_weight(es.bits))


def cycle_from_walk(walk: Sequence[int], g: Graph) -> Cycle:
    """Build a cycle from a closed vertex sequence (last vertex not repeated)."""
    walk = list(walk)
    if len(walk) >= 2 and walk[0] == walk[-1]:
        walk.pop()
    if len(walk) < 3 or len(set(walk)) != len(walk):
        raise CycleError(f"walk {walk} is not a simple closed walk")
    bits = 0
    for a, b in zip(walk, walk[1:] + walk[:1]):
        k = g.edge_id(a, b)
        if k is None:
            raise CycleError(f"{{{a}, {b}}} is not an edge")
        bits |= 1 << k
    return cycle_from_edge_set(EdgeSet(bits, g.m), g)


def cyclomatic_number(g: Graph) -> int:
    """Cycle-space dimension ``m - n + c`` (``c`` = number of components)."""
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = g.n
    for e in g.edges:
        a, b = find(e.u), find(e.v)
        if a != b:
            parent[a] = b
            comps -= 1
    return g.m - g.n + comps


@dataclass(frozen=True)
class CycleBasis:
    graph: Graph
    cycles: tuple[Cycle, ...]

    @property
    def weight(self) -> float:
        return sum(c.weight for c in self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self) -> Iterator[Cycle]:
        return iter(self.cycles)

    def __getitem__(self, k: int) -> Cycle:
        return self.cycles[k]


# spanning trees and fundamental cycles -------------------------------------


@dataclass(frozen=True)
class SpanningTree:
    tree_edges: EdgeSet
    parent: tuple[int, ...]
    parent_edge: tuple[int, ...]
    depth: tuple[int, ...]


def spanning_tree(g: Graph) -> SpanningTree:
    """Breadth-first spanning tree rooted at vertex 0."""
    if not is_connected(g):
        raise DisconnectedGraph("graph is not connected")
    parent = [-1] * g.n
    parent_edge = [-1] * g.n
    depth = [0] * g.n
    bits = 0
    if g.n:
        seen = [False] * g.n
        seen[0] = True
        order = [0]
        for v in order:
            for w, k in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w], parent_edge[w], depth[w] = v, k, depth[v] + 1
                    bits |= 1 << k
                    order.append(w)
    return SpanningTree(EdgeSet(bits, g.m), tuple(parent), tuple(parent_edge), tuple(depth))


def fundamental_basis(g: Graph) -> CycleBasis:
    """One cycle per non-tree edge: the chord plus the tree path between its ends."""
    tree = spanning_tree(g)
    cycles = []
    for k, e in enumerate(g.edges):
        if k in tree.tree_edges:
            continue
        bits = 1 << k
        a, b = e.u, e.v
        while a != b:
            if tree.depth[a] < tree.depth[b]:
                a, b = b, a
            bits ^= 1 << tree.parent_edge[a]
            a = tree.parent[a]
        cycles.append(cycle_from_edge_set(EdgeSet(bits, g.m), g))
    return CycleBasis(g, tuple(cycles))


# Horton ----------------------------------------------------------------------


def shortest_path_tree(g: Graph, source: int) -> tuple[list[float], list[int]]:
    """Dijkstra from ``source``; returns distances and path edge masks.

    Ties are broken by popping the smallest ``(distance, vertex)`` first and
    only replacing a parent on strict improvement, so the tree is fixed by
    the vertex numbering.
    """
    inf = float("inf")
    dist = [inf] * g.n
    paths = [0] * g.n
    dist[source] = 0
    done = [False] * g.n
    heap = [(0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for w, k in g.adjacency[v]:
            nd = d + g.edges[k].weight
            if nd < dist[w]:
                dist[w] = nd
                paths[w] = paths[v] | (1 << k)
                heapq.heappush(heap, (nd, w))
    return dist, paths


def horton_candidates(g: Graph) -> list[Cycle]:
    """Distinct simple cycles ``P(v, x) + {x, y} + P(y, v)`` over all v and edges.

    Combinations that do not form a single simple cycle are dropped.
    Returned sorted by :func:`cycle_sort_key`.
    """
    seen = set()
    out = []
    for v in range(g.n):
        dist, paths = shortest_path_tree(g, v)
        for k, e in enumerate(g.edges):
            if dist[e.u] == float("inf"):
                continue
            bits = paths[e.u] ^ paths[e.v] ^ (1 << k)
            if not bits or bits in seen:
                continue
            seen.add(bits)
            try:
                out.append(cycle_from_edge_set(EdgeSet(bits, g.m), g))
            except CycleError:
                continue
    out.sort(key=cycle_sort_key)
    return out


def horton_mcb(g: Graph) -> CycleBasis:
    """Minimum-weight cycle basis by Horton's candidate set and a greedy GF(2) sieve."""
    if not is_connected(g):
        raise DisconnectedGraph("graph is not connected")
    need = g.m - g.n + 1
    basis = GF2Basis()
    chosen = []
    if need > 0:
        for c in horton_candidates(g):
            if basis.add(c.bits):
                chosen.append(c)
                if len(chosen) == need:
                    break
    return CycleBasis(g, tuple(chosen))


def is_cycle_basis(g: Graph, cycles: Sequence[Cycle]) -> bool:
    if len(cycles) != cyclomatic_number(g):
        return False
    return gf2_rank([c.edges for c in cycles]) == len(cycles)


def span_contains(basis: CycleBasis | Sequence[Cycle], es: EdgeSet) -> bool:
    cycles = list(basis)
    _check_dims(es, *(c.edges for c in cycles))
    rows = GF2Basis()
    for c in cycles:
        rows.add(c.bits)
    return rows.reduce(es.bits) == 0


# enumeration -----------------------------------------------------------------


def simple_cycles(g: Graph, length_bound: int | None = None) -> Iterator[Cycle]:
    """Yield every simple cycle of ``g`` once, optionally up to ``length_bound`` edges.

    Each cycle is found from its smallest vertex ``s`` by a path through
    larger vertices only; the orientation is fixed by requiring the second
    vertex to be smaller than the last.
    """
    limit = g.n if length_bound is None else min(length_bound, g.n)
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(v: int, bits: int) -> Iterator[Cycle]:
            for w, k in g.adjacency[v]:
                if w <= s:
                    if w == s and len(path) >= 3 and path[1] < v:
                        yield Cycle(EdgeSet(bits | 1 << k, g.m), tuple(path), g.mask_weight(bits | 1 << k))
                    continue
                if w in on_path or len(path) >= limit:
                    continue
                path.append(w)
                on_path.add(w)
                yield from extend(w, bits | 1 << k)
                path.pop()
                on_path.discard(w)

        yield from extend(s, 0)


# text format -----------------------------------------------------------------


def format_basis(cycles: Iterable[Cycle]) -> str:
    return "".join(f"{c}\n" for c in cycles)


def parse_basis(text: str, g: Graph) -> list[Cycle]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            walk = [int(tok) for tok in line.split()]
        except ValueError:
            raise CycleError(f"line {lineno}: non-integer vertex") from None
        out.append(cycle_from_walk(walk, g))
    return out
