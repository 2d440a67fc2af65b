"""Simple undirected graphs with stable edge indexing.

Every edge gets an index at construction time and keeps it; edge sets
elsewhere in the package are bitmasks over these indices (bit ``k`` is
edge ``k``).  Graphs are immutable once built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "Edge",
    "Graph",
    "GraphError",
    "DuplicateEdge",
    "SelfLoop",
    "VertexOutOfRange",
    "NegativeWeight",
    "MalformedGraph6",
    "MalformedEdgeList",
    "build_graph",
    "is_connected",
    "parse_graph6",
    "encode_graph6",
    "parse_edge_list",
    "format_edge_list",
    "read_graph",
]


class GraphError(ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class NegativeWeight(GraphError):
    pass


class MalformedGraph6(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class MalformedEdgeList(GraphError):
    pass


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: float = 1

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edges are stored with ``u < v`` in input order.  ``incident[v]`` is a
    bitmask of the edge indices touching ``v``.
    """

    __slots__ = ("n", "edges", "adjacency", "incident", "_index")

    def __init__(self, n: int, edges: Sequence[Edge]):
        self.n = n
        self.edges = tuple(edges)
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        incident = [0] * n
        index = {}
        for k, e in enumerate(self.edges):
            adjacency[e.u].append((e.v, k))
            adjacency[e.v].append((e.u, k))
            incident[e.u] |= 1 << k
            incident[e.v] |= 1 << k
            index[(e.u, e.v)] = k
        self.adjacency = tuple(tuple(sorted(a)) for a in adjacency)
        self.incident = tuple(incident)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]

    def edge_id(self, u: int, v: int) -> int | None:
        if u > v:
            u, v = v, u
        return self._index.get((u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return self.edge_id(u, v) is not None

    def pairs(self) -> list[tuple[int, int]]:
        return [(e.u, e.v) for e in self.edges]

    def weights(self) -> list[float]:
        return [e.weight for e in self.edges]

    def edge_ids(self, mask: int) -> list[int]:
        """Edge indices set in ``mask``, ascending."""
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def mask_weight(self, mask: int) -> float:
        return sum(self.edges[k].weight for k in self.edge_ids(mask))

    def mask_vertices(self, mask: int) -> set[int]:
        verts = set()
        for k in self.edge_ids(mask):
            verts.add(self.edges[k].u)
            verts.add(self.edges[k].v)
        return verts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(
    n: int,
    pairs: Iterable[Sequence[int]],
    weights: Sequence[float] | None = None,
) -> Graph:
    """Validate ``pairs`` and build a graph with edges in input order."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    pairs = [tuple(p) for p in pairs]
    if weights is not None and len(weights) != len(pairs):
        raise GraphError(f"{len(weights)} weights for {len(pairs)} edges")
    seen: dict[tuple[int, int], int] = {}
    edges = []
    for k, pair in enumerate(pairs):
        if len(pair) != 2:
            raise GraphError(f"edge {k} is not a pair: {pair!r}")
        u, v = pair
        for x in (u, v):
            if not 0 <= x < n:
                raise VertexOutOfRange(f"edge {k} {pair!r}: vertex {x} not in [0, {n})")
        if u == v:
            raise SelfLoop(f"edge {k} {pair!r} is a self-loop")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge {k} {pair!r} duplicates edge {seen[key]}")
        seen[key] = k
        w = 1 if weights is None else weights[k]
        if w < 0:
            raise NegativeWeight(f"edge {k} {pair!r} has weight {w}")
        edges.append(Edge(key[0], key[1], w))
    return Graph(n, edges)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        v = queue.popleft()
        for w, _ in g.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == g.n


# graph6 -------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _upper_pairs(n: int):
    # graph6 bit order: column by column through the upper triangle
    for j in range(1, n):
        for i in range(j):
            yield i, j


def _encode_size(n: int) -> str:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError(f"graph6 cannot encode n={n}")


def encode_graph6(g: Graph) -> str:
    """graph6 record for ``g`` (weights are dropped)."""
    bits = [0] * (g.n * (g.n - 1) // 2)
    for e in g.edges:
        # position of (u, v), u < v, in column order
        bits[e.v * (e.v - 1) // 2 + e.u] = 1
    bits.extend([0] * (-len(bits) % 6))
    chars = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = (value << 1) | b
        chars.append(chr(value + 63))
    return _encode_size(g.n) + "".join(chars)


def parse_graph6(line: str) -> Graph:
    """Parse one graph6 record; edges come out in column order."""
    text = line.strip("\r\n")
    start = 0
    if text.startswith(_G6_HEADER):
        start = len(_G6_HEADER)
    data = text[start:]
    for k, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise MalformedGraph6(f"byte {ord(ch)} outside graph6 alphabet", start + k)
    if not data:
        raise MalformedGraph6("empty record", start)

    if data[0] != "~":
        n, pos = ord(data[0]) - 63, 1
    else:
        width = 6 if data[1:2] == "~" else 3
        skip = 2 if width == 6 else 1
        head = data[skip : skip + width]
        if len(head) < width:
            raise MalformedGraph6("truncated size header", start + len(data))
        n = 0
        for ch in head:
            n = (n << 6) | (ord(ch) - 63)
        pos = skip + width

    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != expected:
        offset = start + pos + min(len(body), expected)
        raise MalformedGraph6(
            f"expected {expected} adjacency bytes for n={n}, got {len(body)}", offset
        )
    pairs = []
    bit = 0
    for i, j in _upper_pairs(n):
        byte = ord(body[bit // 6]) - 63
        if (byte >> (5 - bit % 6)) & 1:
            pairs.append((i, j))
        bit += 1
    if expected:
        pad = expected * 6 - nbits
        if (ord(body[-1]) - 63) & ((1 << pad) - 1):
            raise MalformedGraph6("nonzero padding bits", start + pos + expected - 1)
    return build_graph(n, pairs)


# edge lists ---------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v [w]``; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if body:
            rows.append((lineno, body))
    if not rows:
        raise MalformedEdgeList("missing 'n m' header")
    lineno, head = rows[0]
    if len(head) != 2:
        raise MalformedEdgeList(f"line {lineno}: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise MalformedEdgeList(f"line {lineno}: non-integer header") from None
    if len(rows) - 1 != m:
        raise MalformedEdgeList(f"header declares {m} edges, found {len(rows) - 1}")
    pairs, weights = [], []
    weighted = False
    for lineno, body in rows[1:]:
        if len(body) not in (2, 3):
            raise MalformedEdgeList(f"line {lineno}: expected 'u v [w]'")
        try:
            pairs.append((int(body[0]), int(body[1])))
            if len(body) == 3:
                weighted = True
                w = float(body[2])
                weights.append(int(w) if w.is_integer() else w)
            else:
                weights.append(1)
        except ValueError:
            raise MalformedEdgeList(f"line {lineno}: bad number") from None
    return build_graph(n, pairs, weights if weighted else None)


def format_edge_list(g: Graph) -> str:
    weighted = any(e.weight != 1 for e in g.edges)
    lines = [f"{g.n} {g.m}"]
    for e in g.edges:
        lines.append(f"{e.u} {e.v} {e.weight}" if weighted else f"{e.u} {e.v}")
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Graph:
    """Load a graph from an edge-list or single-record graph6 file.

    Files ending in ``.g6`` or ``.graph6`` are read as graph6; anything
    else is tried as an edge list first.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix in (".g6", ".graph6"):
        records = [ln for ln in text.splitlines() if ln.strip()]
        if len(records) != 1:
            raise GraphError(f"{path}: expected one graph6 record, found {len(records)}")
        return parse_graph6(records[0])
    try:
        return parse_edge_list(text)
    except MalformedEdgeList:
        records = [ln for ln in text.splitlines() if ln.strip()]
        if len(records) == 1:
            return parse_graph6(records[0])
        raise
