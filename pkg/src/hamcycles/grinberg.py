"""The Grinberg equation over a pool of cycles.

For a graph of order ``n`` a *solution* is a subset ``S`` of the pool with

    sum over c in S of (order(c) - 2) == n - 2

and the rest of the pool is its *co-solution*.  The planar face form
``sum (i - 2)(inside_i - outside_i) == 0`` is kept alongside for faces
supplied by the caller.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .cycles import (
    Cycle,
    DisconnectedGraph,
    cycle_sort_key,
    fundamental_basis,
    horton_mcb,
    simple_cycles,
)
from .graph import Graph, is_connected

__all__ = [
    "FaceSpec",
    "DegreeTooSmall",
    "SolutionConfig",
    "GrinbergSolution",
    "SolutionList",
    "planar_criterion_sum",
    "equation_residual",
    "build_pool",
    "enumerate_solutions",
    "verify_hamilton_set_identity",
    "InclusionExclusionAudit",
    "inclusion_exclusion_audit",
]


class DegreeTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class FaceSpec:
    inside: tuple[int, ...] = ()
    outside: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inside", tuple(self.inside))
        object.__setattr__(self, "outside", tuple(self.outside))
        small = [d for d in self.inside + self.outside if d < 3]
        if small:
            raise DegreeTooSmall(f"face degrees must be >= 3, got {small}")

    def swapped(self) -> FaceSpec:
        return FaceSpec(self.outside, self.inside)


def planar_criterion_sum(spec: FaceSpec) -> int:
    """``sum (i - 2)(f'_i - f''_i)``; nonzero rules out a Hamilton cycle with this split."""
    return sum(d - 2 for d in spec.inside) - sum(d - 2 for d in spec.outside)


def equation_residual(cycle_orders: Iterable[int], n: int) -> int:
    """Left minus right side of the Grinberg equation for a multiset of orders."""
    return sum(k - 2 for k in cycle_orders) - (n - 2)


@dataclass(frozen=True)
class SolutionConfig:
    """Which cycle pool to solve over and how many solutions to keep.

    ``pool`` is ``"mcb"``, ``"fundamental"`` or ``"all"``; for ``"all"``,
    ``length_bound`` caps the cycle length (``None`` means ``n``).
    """

    pool: str = "mcb"
    length_bound: int | None = None
    max_solutions: int = 10_000
    deterministic: bool = True

    def __post_init__(self):
        if self.pool not in ("mcb", "fundamental", "all"):
            raise ValueError(f"unknown pool kind {self.pool!r}")
        if self.max_solutions < 1:
            raise ValueError("max_solutions must be >= 1")
        if self.length_bound is not None and self.pool != "all":
            raise ValueError("length_bound only applies to the 'all' pool")

    @classmethod
    def parse(cls, text: str, **kwargs) -> SolutionConfig:
        """Parse ``mcb``, ``fundamental``, ``all`` or ``all:<L>``."""
        kind, _, bound = text.partition(":")
        if bound:
            if kind != "all":
                raise ValueError(f"pool {text!r}: only 'all' takes a length bound")
            return cls(pool="all", length_bound=int(bound), **kwargs)
        return cls(pool=kind, **kwargs)

    @property
    def pool_id(self) -> str:
        if self.pool == "all":
            return "all" if self.length_bound is None else f"all:{self.length_bound}"
        return self.pool


def build_pool(g: Graph, cfg: SolutionConfig) -> list[Cycle]:
    """The cycle pool selected by ``cfg``, sorted by (weight, order, edge ids)."""
    if not is_connected(g):
        raise DisconnectedGraph("graph is not connected")
    if cfg.pool == "mcb":
        cycles = list(horton_mcb(g))
    elif cfg.pool == "fundamental":
        cycles = list(fundamental_basis(g))
    else:
        cycles = list(simple_cycles(g, cfg.length_bound))
    cycles.sort(key=cycle_sort_key)
    return cycles


@dataclass(frozen=True)
class GrinbergSolution:
    """Indices into a pool of size ``pool_size``; ``cosolution`` is the complement."""

    solution: tuple[int, ...]
    pool_size: int
    pool_id: str = ""

    @property
    def cosolution(self) -> tuple[int, ...]:
        picked = set(self.solution)
        return tuple(i for i in range(self.pool_size) if i not in picked)

    def to_record(self, pool: Sequence[Cycle], n: int) -> dict:
        return {
            "pool_id": self.pool_id,
            "target": n - 2,
            "solution": [[i, pool[i].order] for i in self.solution],
            "cosolution": [[i, pool[i].order] for i in self.cosolution],
        }


class SolutionList(list):
    """List of solutions; ``truncated`` is set when the cap cut enumeration short."""

    truncated: bool = False


def enumerate_solutions(
    pool: Sequence[Cycle],
    n: int,
    cfg: SolutionConfig | None = None,
    pool_id: str | None = None,
) -> SolutionList:
    """All subsets of ``pool`` solving the equation for order ``n``.

    Depth-first over pool indices, taking index ``i`` before skipping it,
    so solutions come out in lexicographic order of their index tuples.
    Solutions are never empty; for ``n < 3`` the result is empty.
    """
    cfg = cfg or SolutionConfig()
    pool_id = cfg.pool_id if pool_id is None else pool_id
    values = [c.order - 2 for c in pool]
    size = len(values)
    suffix = [0] * (size + 1)
    for i in range(size - 1, -1, -1):
        suffix[i] = suffix[i + 1] + values[i]

    out = SolutionList()
    target = n - 2
    if target <= 0:
        return out
    chosen: list[int] = []

    def walk(start: int, remaining: int) -> bool:
        # returns False once the cap is hit; depth is bounded by n - 2
        for j in range(start, size):
            if suffix[j] < remaining:
                break
            if values[j] > remaining:
                continue
            chosen.append(j)
            if remaining == values[j]:
                if len(out) >= cfg.max_solutions:
                    out.truncated = True
                    return False
                out.append(GrinbergSolution(tuple(chosen), size, pool_id))
                ok = True
            else:
                ok = walk(j + 1, remaining - values[j])
            chosen.pop()
            if not ok:
                return False
        return True

    walk(0, target)
    return out


def verify_hamilton_set_identity(cycles: Sequence[Cycle], n: int) -> bool:
    """Check ``sum(order) - 2 * (count - 1) == n``."""
    if not cycles:
        return False
    return sum(c.order for c in cycles) - 2 * (len(cycles) - 1) == n


@dataclass
class InclusionExclusionAudit:
    union_size: int
    #: intersection totals by subset size k: sum over k-subsets of |V_1 & ... & V_k|
    terms: dict[int, int] = field(default_factory=dict)
    #: pairs (a, b) sharing at least one edge
    jointed_pairs: list[tuple[int, int]] = field(default_factory=list)
    #: sum of |V_a & V_b| over jointed pairs only
    jointed_term: int = 0
    hamilton_shape: bool = False

    @property
    def pairwise_term(self) -> int:
        return self.terms.get(2, 0)

    def alternating_sum(self) -> int:
        return sum((-1) ** (k + 1) * t for k, t in self.terms.items())


def inclusion_exclusion_audit(cycles: Sequence[Cycle]) -> InclusionExclusionAudit:
    """Inclusion-exclusion bookkeeping over the vertex sets of ``cycles``.

    ``hamilton_shape`` holds when there are exactly ``count - 1`` jointed
    pairs and each of them meets in two vertices and one common edge.
    """
    vsets = [c.vertices for c in cycles]
    union = frozenset().union(*vsets) if vsets else frozenset()
    terms: Counter[int] = Counter()
    terms[1] = sum(len(v) for v in vsets)

    # higher terms only follow non-empty running intersections
    def grow(start: int, k: int, inter: frozenset) -> None:
        for j in range(start, len(vsets)):
            nxt = inter & vsets[j]
            if nxt:
                terms[k + 1] += len(nxt)
                grow(j + 1, k + 1, nxt)

    for i, v in enumerate(vsets):
        grow(i + 1, 1, v)

    jointed = []
    jointed_term = 0
    shape = True
    for a, b in combinations(range(len(cycles)), 2):
        common = cycles[a].bits & cycles[b].bits
        if common:
            jointed.append((a, b))
            size = len(vsets[a] & vsets[b])
            jointed_term += size
            if size != 2 or common.bit_count() != 1:
                shape = False
    if len(jointed) != len(cycles) - 1:
        shape = False
    return InclusionExclusionAudit(
        union_size=len(union),
        terms={k: terms[k] for k in sorted(terms) if terms[k]},
        jointed_pairs=jointed,
        jointed_term=jointed_term,
        hamilton_shape=shape,
    )
