"""Graph catalog, corpus generation and the criterion-versus-oracle audit.

A corpus run decides every graph with :func:`~hamcycles.decision.decide`,
asks the exact oracle for ground truth and tabulates the two against
each other.  Rows never abort the sweep: failures are recorded in-row.
"""

from __future__ import annotations

import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .decision import (
    DEFAULT_ORACLE_BUDGET,
    EXHAUSTIVE_ORACLE_MAX_N,
    BudgetExceeded,
    Outcome,
    decide,
    oracle_hamiltonian,
    verify_certificate,
)
from .graph import Graph, build_graph, encode_graph6, is_connected, parse_edge_list, parse_graph6
from .grinberg import SolutionConfig

__all__ = [
    "CATALOG",
    "UnknownName",
    "NTooLarge",
    "named_graph",
    "generate_gnp",
    "graph6_pairs",
    "enumerate_labeled_graphs",
    "Named",
    "Gnp",
    "ExhaustiveLabeled",
    "FileSource",
    "CorpusSpec",
    "load_corpus_spec",
    "ReportRow",
    "ConfusionMatrix",
    "Report",
    "evaluate_graph",
    "run_corpus",
    "emit_report",
    "render_report",
    "REPORT_SCHEMA",
    "REPORT_VERSION",
]

REPORT_SCHEMA = "hamcycles.corpus-report"
REPORT_VERSION = 1


class UnknownName(KeyError):
    pass


class NTooLarge(ValueError):
    pass


# catalog -------------------------------------------------------------------------

_HERSCHEL = {
    0: (2, 3, 4, 5),
    1: (2, 3, 6, 7),
    2: (8,),
    3: (9,),
    4: (8, 10),
    5: (9, 10),
    6: (8, 10),
    7: (9, 10),
}

_TUTTE = [
    (0, 1), (0, 2), (0, 3), (1, 4), (1, 26), (2, 10), (2, 11), (3, 18), (3, 19),
    (4, 5), (4, 33), (5, 6), (5, 29), (6, 7), (6, 27), (7, 8), (7, 14), (8, 9),
    (8, 38), (9, 10), (9, 37), (10, 39), (11, 12), (11, 39), (12, 13), (12, 35),
    (13, 14), (13, 15), (14, 34), (15, 16), (15, 22), (16, 17), (16, 44), (17, 18),
    (17, 43), (18, 45), (19, 20), (19, 45), (20, 21), (20, 41), (21, 22), (21, 23),
    (22, 40), (23, 24), (23, 27), (24, 25), (24, 32), (25, 26), (25, 31), (26, 33),
    (27, 28), (28, 29), (28, 32), (29, 30), (30, 31), (30, 33), (31, 32), (34, 35),
    (34, 38), (35, 36), (36, 37), (36, 39), (37, 38), (40, 41), (40, 44), (41, 42),
    (42, 43), (42, 45), (43, 44),
]


def _complete(n: int) -> Graph:
    return build_graph(n, list(combinations(range(n), 2)))


def _cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle(n) needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def _wheel(n: int) -> Graph:
    """Hub 0 joined to a rim cycle on vertices 1..n-1."""
    if n < 4:
        raise ValueError("wheel(n) needs n >= 4")
    rim = n - 1
    return build_graph(n, [(0, i) for i in range(1, n)] + [(1 + i, 1 + (i + 1) % rim) for i in range(rim)])


def _fan(n: int) -> Graph:
    """Polygon 0..n-1 triangulated by chords from vertex 0."""
    if n < 3:
        raise ValueError("fan(n) needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)] + [(0, j) for j in range(2, n - 1)])


def _petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return build_graph(10, outer + inner + spokes)


def _herschel() -> Graph:
    return build_graph(11, [(u, v) for u, vs in _HERSCHEL.items() for v in vs])


CATALOG = {
    "k4": lambda: _complete(4),
    "k5": lambda: _complete(5),
    "cycle": _cycle,
    "wheel": _wheel,
    "fan": _fan,
    "petersen": _petersen,
    "herschel": _herschel,
    "tutte": lambda: build_graph(46, _TUTTE),
}

_PARAMETRIC = {"cycle", "wheel", "fan"}
_NAME_RE = re.compile(r"^([a-z0-9]+?)(?:\((\d+)\)|:(\d+))?$")


def named_graph(name: str, n: int | None = None) -> Graph:
    """Look up a catalog graph: ``petersen``, ``cycle(7)``, ``wheel:5`` or ``("fan", 6)``."""
    match = _NAME_RE.match(name.strip().lower())
    if not match or match.group(1) not in CATALOG:
        raise UnknownName(name)
    key = match.group(1)
    arg = match.group(2) or match.group(3)
    if arg is not None:
        n = int(arg)
    if key in _PARAMETRIC:
        if n is None:
            raise UnknownName(f"{name}: '{key}' needs a size, e.g. {key}(6)")
        return CATALOG[key](n)
    if n is not None:
        raise UnknownName(f"{name}: '{key}' takes no size")
    return CATALOG[key]()


# generators ----------------------------------------------------------------------


def graph6_pairs(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 bit order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def generate_gnp(n: int, p: float, seed) -> Graph:
    """Erdos-Renyi G(n, p).

    Uses ``numpy.random.default_rng(seed)`` and draws one uniform per
    vertex pair in graph6 order, keeping the pair when the draw is below
    ``p``.  ``seed`` may be anything ``default_rng`` accepts.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    pairs = graph6_pairs(n)
    draws = np.random.default_rng(seed).random(len(pairs))
    return build_graph(n, [pq for pq, x in zip(pairs, draws) if x < p])


def enumerate_labeled_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices, by edge mask over graph6-ordered pairs."""
    if n > 7:
        raise NTooLarge(f"labelled enumeration is limited to n <= 7, got {n}")
    pairs = graph6_pairs(n)
    for mask in range(1 << len(pairs)):
        g = build_graph(n, [pq for k, pq in enumerate(pairs) if mask >> k & 1])
        if not connected_only or is_connected(g):
            yield g


# corpus specs --------------------------------------------------------------------


@dataclass(frozen=True)
class Named:
    names: tuple[str, ...]

    def graphs(self):
        for name in self.names:
            yield name, named_graph(name)


@dataclass(frozen=True)
class Gnp:
    """``count`` graphs; graph ``i`` is seeded with ``[seed, i]``."""

    n: int
    p: float
    seed: int
    count: int = 1

    def graphs(self):
        for i in range(self.count):
            yield f"gnp({self.n},{self.p},{self.seed})#{i}", generate_gnp(self.n, self.p, [self.seed, i])


@dataclass(frozen=True)
class ExhaustiveLabeled:
    n: int
    connected_only: bool = True

    def __post_init__(self):
        if self.n > EXHAUSTIVE_ORACLE_MAX_N:
            raise NTooLarge(f"exhaustive corpora are limited to n <= {EXHAUSTIVE_ORACLE_MAX_N}")

    def graphs(self):
        for i, g in enumerate(enumerate_labeled_graphs(self.n, self.connected_only)):
            yield f"labeled({self.n})#{i}", g


@dataclass(frozen=True)
class FileSource:
    """One graph6 record per line, or a single edge list."""

    path: str
    format: str = "graph6"

    def graphs(self):
        text = Path(self.path).read_text()
        if self.format == "graph6":
            for i, line in enumerate(ln for ln in text.splitlines() if ln.strip()):
                yield f"{Path(self.path).name}:{i + 1}", parse_graph6(line)
        elif self.format == "edgelist":
            yield Path(self.path).name, parse_edge_list(text)
        else:
            raise ValueError(f"unknown file format {self.format!r}")


@dataclass(frozen=True)
class CorpusSpec:
    source: Named | Gnp | ExhaustiveLabeled | FileSource
    config: SolutionConfig = field(default_factory=SolutionConfig)
    oracle_budget: int | None = DEFAULT_ORACLE_BUDGET

    def describe(self) -> dict:
        return {
            "source": {"kind": type(self.source).__name__, **_jsonable(asdict(self.source))},
            "pool": self.config.pool_id,
            "max_solutions": self.config.max_solutions,
            "oracle_budget": self.oracle_budget,
        }


def _jsonable(d: dict) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}


def load_corpus_spec(data: dict | str | Path) -> CorpusSpec:
    """Build a spec from a dict or a JSON file.

    Example::

        {"source": {"kind": "exhaustive", "n": 5, "connected_only": true},
         "pool": "mcb", "max_solutions": 10000, "oracle_budget": 10000000}
    """
    if not isinstance(data, dict):
        data = json.loads(Path(data).read_text())
    src = dict(data["source"])
    kind = src.pop("kind").lower()
    if kind == "named":
        source = Named(tuple(src["names"]))
    elif kind == "gnp":
        source = Gnp(src["n"], src["p"], src["seed"], src.get("count", 1))
    elif kind in ("exhaustive", "exhaustivelabeled"):
        source = ExhaustiveLabeled(src["n"], src.get("connected_only", True))
    elif kind in ("file", "filesource"):
        source = FileSource(src["path"], src.get("format", "graph6"))
    else:
        raise ValueError(f"unknown corpus source kind {kind!r}")
    cfg = SolutionConfig.parse(data.get("pool", "mcb"), max_solutions=data.get("max_solutions", 10_000))
    return CorpusSpec(source, cfg, data.get("oracle_budget", DEFAULT_ORACLE_BUDGET))


# reports -------------------------------------------------------------------------


@dataclass
class ReportRow:
    graph_id: str
    graph6: str
    n: int
    m: int
    verdict: str | None = None
    reason: str | None = None
    oracle: str | None = None  # "hamiltonian", "non_hamiltonian" or "budget_exceeded"
    agreement: bool | None = None
    certificate_ok: bool | None = None
    solutions: int | None = None
    truncated: bool = False
    decide_seconds: float = 0.0
    oracle_seconds: float = 0.0
    error: str | None = None

    @property
    def criterion_says_hamiltonian(self) -> bool | None:
        if self.verdict is None:
            return None
        return self.verdict != Outcome.NON_HAMILTONIAN.value

    def to_record(self, timings: bool = True) -> dict:
        rec = asdict(self)
        if not timings:
            rec.pop("decide_seconds")
            rec.pop("oracle_seconds")
        return rec


@dataclass
class ConfusionMatrix:
    """Criterion (first) against oracle (second); H = Hamiltonian, N = not."""

    hh: int = 0
    hn: int = 0
    nh: int = 0
    nn: int = 0
    unverified: int = 0
    budget_exceeded: int = 0
    errors: int = 0

    def add(self, row: ReportRow) -> None:
        if row.error is not None:
            self.errors += 1
        elif row.oracle == "budget_exceeded":
            self.budget_exceeded += 1
        elif row.verdict == Outcome.CLAIMED_UNVERIFIED.value:
            self.unverified += 1
        else:
            key = ("h" if row.criterion_says_hamiltonian else "n") + ("h" if row.oracle == "hamiltonian" else "n")
            setattr(self, key, getattr(self, key) + 1)

    @property
    def total(self) -> int:
        return self.hh + self.hn + self.nh + self.nn + self.unverified + self.budget_exceeded + self.errors


@dataclass
class Report:
    spec: dict
    rows: list[ReportRow] = field(default_factory=list)
    matrix: ConfusionMatrix = field(default_factory=ConfusionMatrix)

    @property
    def mismatches(self) -> list[str]:
        return [r.graph6 for r in self.rows if r.agreement is False]

    @property
    def unsound(self) -> int:
        """Rows claiming a verified Hamilton cycle whose certificate fails; always 0."""
        return sum(1 for r in self.rows if r.verdict == Outcome.HAMILTONIAN.value and not r.certificate_ok)

    def solution_rate(self) -> float | None:
        """Share of oracle-Hamiltonian graphs whose pool had at least one solution."""
        ham = [r for r in self.rows if r.oracle == "hamiltonian" and r.solutions is not None]
        if not ham:
            return None
        return sum(1 for r in ham if r.solutions > 0) / len(ham)

    def to_record(self, timings: bool = True) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "version": REPORT_VERSION,
            "spec": self.spec,
            "matrix": {**asdict(self.matrix), "total": self.matrix.total},
            "unsound": self.unsound,
            "solution_rate_on_hamiltonian": self.solution_rate(),
            "mismatches": self.mismatches,
            "rows": [r.to_record(timings) for r in self.rows],
        }


def _canonical(g: Graph) -> Graph:
    # unit-weight graphs are relabelled through graph6 so every row replays from its record
    if all(e.weight == 1 for e in g.edges):
        return parse_graph6(encode_graph6(g))
    return g


def evaluate_graph(
    graph_id: str,
    g: Graph,
    config: SolutionConfig,
    oracle_budget: int | None = DEFAULT_ORACLE_BUDGET,
) -> ReportRow:
    """Decide one graph and compare with the oracle; exceptions land in ``row.error``."""
    g = _canonical(g)
    row = ReportRow(graph_id, encode_graph6(g), g.n, g.m)
    try:
        t0 = time.perf_counter()
        verdict, trace = decide(g, config)
        row.decide_seconds = time.perf_counter() - t0
        row.verdict = verdict.outcome.value
        row.reason = verdict.reason.value if verdict.reason else None
        sol = trace.of("solutions")
        if sol:
            row.solutions = sol[0]["count"]
            row.truncated = sol[0]["truncated"]
        else:
            row.solutions = 0
        if verdict.outcome is Outcome.HAMILTONIAN:
            row.certificate_ok = verify_certificate(g, verdict.certificate)

        budget = None if g.n <= EXHAUSTIVE_ORACLE_MAX_N else oracle_budget
        t0 = time.perf_counter()
        try:
            cert = oracle_hamiltonian(g, budget)
            row.oracle = "hamiltonian" if cert is not None else "non_hamiltonian"
        except BudgetExceeded:
            row.oracle = "budget_exceeded"
        row.oracle_seconds = time.perf_counter() - t0
        if row.oracle != "budget_exceeded":
            row.agreement = row.criterion_says_hamiltonian == (row.oracle == "hamiltonian")
    except Exception as exc:  # recorded per row, the sweep carries on
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def _evaluate_item(args):
    return evaluate_graph(*args)


def run_corpus(spec: CorpusSpec, workers: int = 1) -> Report:
    """Evaluate every corpus graph; rows keep corpus order whatever ``workers`` is."""
    report = Report(spec.describe())
    items = ((gid, g, spec.config, spec.oracle_budget) for gid, g in spec.source.graphs())
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_evaluate_item, items, chunksize=64))
    else:
        rows = [_evaluate_item(item) for item in items]
    for row in rows:
        report.rows.append(row)
        report.matrix.add(row)
    return report


def _text_report(report: Report) -> str:
    m = report.matrix
    lines = [
        f"corpus: {json.dumps(report.spec, sort_keys=True)}",
        f"graphs: {m.total}",
        "",
        "                    oracle H   oracle non-H",
        f"criterion H       {m.hh:>9}   {m.hn:>12}",
        f"criterion non-H   {m.nh:>9}   {m.nn:>12}",
        "",
        f"claimed but unverified: {m.unverified}",
        f"oracle budget exceeded: {m.budget_exceeded}",
        f"row errors:             {m.errors}",
        f"unsound certificates:   {report.unsound}",
    ]
    rate = report.solution_rate()
    if rate is not None:
        lines.append(f"solution rate on Hamiltonian graphs: {rate:.4f}")
    reasons: dict[str, int] = {}
    for r in report.rows:
        key = r.verdict if r.reason is None else f"{r.verdict}/{r.reason}"
        if key:
            reasons[key] = reasons.get(key, 0) + 1
    if reasons:
        lines += ["", "verdicts:"] + [f"  {k}: {v}" for k, v in sorted(reasons.items())]
    lines += ["", f"mismatches ({len(report.mismatches)}):"] + [f"  {g6}" for g6 in report.mismatches]
    return "\n".join(lines) + "\n"


def render_report(report: Report, format: str = "structured", timings: bool = True) -> str:
    """``report`` as JSON (``structured``) or a plain-text summary (``text``)."""
    if format == "structured":
        return json.dumps(report.to_record(timings), indent=1, sort_keys=True) + "\n"
    if format == "text":
        return _text_report(report)
    raise ValueError(f"unknown report format {format!r}")


def emit_report(report: Report, path: str | Path, format: str = "structured", timings: bool = True) -> Path:
    """Write :func:`render_report` output to ``path``."""
    path = Path(path)
    path.write_text(render_report(report, format, timings))
    return path
