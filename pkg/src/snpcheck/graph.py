"""Configuration graph construction by breadth-first exploration.

Vertices are distinct configurations reachable from the initial one; edges
are labelled with the spiking vector that produces them.  Exploration is
level-synchronous so that a thread pool can compute successors of a whole
frontier at once while the merge into the graph stays sequential (and the
result byte-identical to a single-threaded run).
"""

from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .system import (
    SNPSystem,
    _apply,
    build_matrix,
    enumerate_spiking_vectors,
    net_gain,
)

__all__ = [
    "ExploreLimits",
    "ConfigGraph",
    "ReachResult",
    "explore",
    "directly_reachable",
    "reachable",
    "to_json",
    "from_json",
    "to_dot",
    "export",
    "parse_config",
]

VERTEX_LIMIT = "vertex-limit"
DEPTH_LIMIT = "depth-limit"
SPIKE_LIMIT = "spike-limit"


@dataclass(frozen=True)
class ExploreLimits:
    """Exploration bounds; 0 means unlimited for that dimension."""

    max_vertices: int = 10_000
    max_depth: int = 0
    max_spikes: int = 0
    unbounded: bool = False

    def __post_init__(self):
        if min(self.max_vertices, self.max_depth, self.max_spikes) < 0:
            raise ValueError("limits must be non-negative")
        if not self.unbounded and not (self.max_vertices or self.max_depth or self.max_spikes):
            raise ValueError("all limits are 0; pass unbounded=True to explore without limits")


@dataclass
class ConfigGraph:
    n_rules: int
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    expanded: list = field(default_factory=list)
    depth: list = field(default_factory=list)
    status: str = "complete"
    reason: Optional[str] = None
    root: int = 0

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.vertices)}

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    @property
    def m(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0

    def index(self, config) -> Optional[int]:
        return self._index.get(tuple(config))

    def __contains__(self, config) -> bool:
        return tuple(config) in self._index

    def _add_vertex(self, config, depth) -> int:
        self._index[config] = len(self.vertices)
        self.vertices.append(config)
        self.expanded.append(False)
        self.depth.append(depth)
        return len(self.vertices) - 1

    def successors(self) -> list:
        """Adjacency lists of ``(label, dst)`` by source index."""
        adj = [[] for _ in self.vertices]
        for src, label, dst in self.edges:
            adj[src].append((label, dst))
        return adj

    def predecessors(self) -> list:
        adj = [[] for _ in self.vertices]
        for src, _label, dst in self.edges:
            adj[dst].append(src)
        return adj

    def out_degree(self) -> list:
        deg = [0] * len(self.vertices)
        for src, _l, _d in self.edges:
            deg[src] += 1
        return deg

    def edge_set(self) -> set:
        return {(self.vertices[s], lab, self.vertices[d]) for s, lab, d in self.edges}

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConfigGraph):
            return NotImplemented
        return (self.n_rules, self.vertices, self.edges, self.expanded, self.status,
                self.reason, self.root) == (other.n_rules, other.vertices, other.edges,
                                            other.expanded, other.status, other.reason,
                                            other.root)


def _successors(system, matrix, config) -> list:
    return [(sp, _apply(config, net_gain(matrix, sp, system.m)))
            for sp in enumerate_spiking_vectors(system, config)]


def explore(system: SNPSystem, limits: ExploreLimits | None = None, threads: int = 1,
            initial=None) -> ConfigGraph:
    """Build the configuration graph reachable from ``initial`` (default C0).

    A vertex is expanded atomically: either all its out-edges are recorded
    or none are, in which case it stays on the unexpanded frontier and the
    graph is marked truncated with the first limit that tripped.
    """
    limits = limits or ExploreLimits()
    matrix = build_matrix(system)
    root = tuple(system.initial if initial is None else initial)
    g = ConfigGraph(system.n)
    g._add_vertex(root, 0)
    reasons: list = []
    level = [0]
    stopped = False
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        while level and not stopped:
            configs = [g.vertices[i] for i in level]
            if pool is not None:
                succ_lists = list(pool.map(lambda c: _successors(system, matrix, c), configs))
            else:
                succ_lists = [_successors(system, matrix, c) for c in configs]
            nxt_level = []
            for vi, succ in zip(level, succ_lists):
                d = g.depth[vi]
                fresh = sorted({c for _sp, c in succ if c not in g})
                if limits.max_spikes and any(max(c) > limits.max_spikes for c in fresh):
                    reasons.append(SPIKE_LIMIT)
                    continue
                if fresh and limits.max_depth and d >= limits.max_depth:
                    reasons.append(DEPTH_LIMIT)
                    continue
                if limits.max_vertices and len(g.vertices) + len(fresh) > limits.max_vertices:
                    reasons.append(VERTEX_LIMIT)
                    stopped = True
                    break
                for c in fresh:
                    nxt_level.append(g._add_vertex(c, d + 1))
                for sp, c in succ:
                    g.edges.append((vi, sp, g.index(c)))
                g.expanded[vi] = True
            level = nxt_level
    finally:
        if pool is not None:
            pool.shutdown()
    if reasons or stopped:
        g.status = "truncated"
        g.reason = reasons[0]
    return g


def directly_reachable(system: SNPSystem, source, target) -> Optional[tuple]:
    """Smallest valid spiking vector taking ``source`` to ``target``, if any."""
    matrix = build_matrix(system)
    target = tuple(target)
    hits = [sp for sp in enumerate_spiking_vectors(system, source)
            if _apply(tuple(source), net_gain(matrix, sp, system.m)) == target]
    return min(hits) if hits else None


@dataclass
class ReachResult:
    verdict: str  # "reachable" | "not-reachable" | "inconclusive"
    path: list = field(default_factory=list)
    status: str = "complete"

    @property
    def configs(self) -> list:
        """Configurations along the witness, starting with C0."""
        if not self.path:
            return []
        return [c for c, _label, _dst in self.path] + [self.path[-1][2]]


def reachable(system: SNPSystem, target, limits: ExploreLimits | None = None,
              graph: ConfigGraph | None = None) -> ReachResult:
    """Shortest witness path to ``target``.

    ``path`` is a list of ``(config, label, next_config)`` triples; empty
    when the target is the initial configuration.
    """
    g = graph if graph is not None else explore(system, limits)
    target = tuple(target)
    ti = g.index(target)
    if ti is None:
        return ReachResult("not-reachable" if g.complete else "inconclusive", [], g.status)
    # BFS parents over the recorded edges; first-found parent gives a
    # deterministic shortest path
    parent = {g.root: None}
    queue = deque([g.root])
    adj = g.successors()
    while queue and ti not in parent:
        u = queue.popleft()
        for label, v in adj[u]:
            if v not in parent:
                parent[v] = (u, label)
                queue.append(v)
    path = []
    cur = ti
    while parent[cur] is not None:
        u, label = parent[cur]
        path.append((g.vertices[u], label, g.vertices[cur]))
        cur = u
    path.reverse()
    return ReachResult("reachable", path, g.status)


# ------------------------------------------------------------------ export


def to_json(g: ConfigGraph) -> str:
    """Serialize with one vertex / edge per line, in insertion order."""
    dump = lambda obj: json.dumps(obj, separators=(",", ":"))  # noqa: E731
    verts = ",\n".join("    " + dump(list(v)) for v in g.vertices)
    edges = ",\n".join("    " + dump({"src": s, "dst": d, "label": list(lab)})
                        for s, lab, d in g.edges)
    parts = [
        '  "vertices": [\n' + verts + "\n  ]" if verts else '  "vertices": []',
        f'  "root": {g.root}',
        '  "edges": [\n' + edges + "\n  ]" if edges else '  "edges": []',
        f'  "status": {dump(g.status)}',
        f'  "reason": {dump(g.reason)}',
        f'  "rules": {g.n_rules}',
        f'  "expanded": {dump(list(g.expanded))}',
        f'  "depth": {dump(list(g.depth))}',
    ]
    return "{\n" + ",\n".join(parts) + "\n}\n"


def from_json(text: str) -> ConfigGraph:
    doc = json.loads(text)
    vertices = [tuple(v) for v in doc["vertices"]]
    edges = [(e["src"], tuple(e["label"]), e["dst"]) for e in doc["edges"]]
    n_rules = doc.get("rules")
    if n_rules is None:
        n_rules = len(edges[0][1]) if edges else 0
    complete = doc["status"] == "complete"
    return ConfigGraph(
        n_rules=n_rules,
        vertices=vertices,
        edges=edges,
        expanded=list(doc.get("expanded", [complete] * len(vertices))),
        depth=list(doc.get("depth", [0] * len(vertices))),
        status=doc["status"],
        reason=doc.get("reason"),
        root=doc["root"],
    )


def _fmt(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def to_dot(g: ConfigGraph, name: str = "CG") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=TB;", "  node [shape=ellipse];"]
    for i, v in enumerate(g.vertices):
        attrs = [f'label="{_fmt(v)}"']
        if i == g.root:
            attrs.append("shape=doublecircle")
        if not g.expanded[i]:
            attrs.append("style=dashed")
        lines.append(f"  v{i} [{', '.join(attrs)}];")
    for s, lab, d in g.edges:
        lines.append(f'  v{s} -> v{d} [label="{_fmt(lab)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(g: ConfigGraph, fmt: str) -> bytes:
    fmt = fmt.lower()
    if fmt == "json":
        return to_json(g).encode()
    if fmt == "dot":
        return to_dot(g).encode()
    raise ValueError(f"unknown export format {fmt!r}")


def parse_config(text: str) -> tuple:
    """Parse ``"(2,1,1)"`` (parentheses optional) into a tuple."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        vals = tuple(int(x) for x in body.split(",")) if body.strip() else ()
    except ValueError:
        raise ValueError(f"bad configuration literal {text!r}") from None
    if any(v < 0 for v in vals):
        raise ValueError(f"configuration {text!r} has a negative entry")
    return vals
