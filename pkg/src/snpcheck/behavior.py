"""Behavioral properties decided on an explored configuration graph.

On a complete graph every checker gives a definite answer.  On a truncated
graph an answer is given only when a finite witness settles it regardless
of the unexplored part; otherwise the verdict is ``inconclusive``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from .graph import ConfigGraph

__all__ = [
    "Answer",
    "Verdict",
    "check_bounded",
    "check_safe",
    "check_deadlock_free",
    "check_quasi_live",
    "check_live",
    "check_reversible",
]


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    prop: str
    answer: Answer
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)
    graph_status: Optional[str] = None
    # structural verdicts keep the live objects behind details["certificate"]
    certificate: Any = field(default=None, repr=False, compare=False)
    problem: Any = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"answer": self.answer.value}
        if self.graph_status is not None:
            d["graph_status"] = self.graph_status
        if self.witness is not None:
            d["witness"] = self.witness
        if self.details:
            d["details"] = self.details
        return d


def _status(g: ConfigGraph) -> str:
    return g.status if g.complete else f"truncated:{g.reason}"


def _backward_closure(g: ConfigGraph, seeds, preds=None) -> set:
    preds = preds if preds is not None else g.predecessors()
    seen = set(seeds)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for u in preds[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def _closed_vertices(g: ConfigGraph, preds) -> set:
    """Vertices whose whole forward closure is expanded.

    Anything such a vertex can reach is already in the graph, so negative
    reachability facts about it hold in the full (possibly infinite) graph.
    """
    open_reach = _backward_closure(g, [i for i, e in enumerate(g.expanded) if not e], preds)
    return set(range(len(g.vertices))) - open_reach


def _pick(candidates, deg) -> int:
    """Prefer a deadlock among failing vertices: it fails for the plainest reason."""
    return next((v for v in candidates if deg[v] == 0), candidates[0])


def check_bounded(g: ConfigGraph) -> Verdict:
    if not g.complete:
        return Verdict("bounded", Answer.INCONCLUSIVE, graph_status=_status(g))
    s = max((max(v, default=0) for v in g.vertices), default=0)
    neuron_bounds = [max(col) for col in zip(*g.vertices)] if g.m else []
    return Verdict("bounded", Answer.YES, details={"s": s, "neuron_bounds": neuron_bounds},
                   graph_status=_status(g))


def check_safe(g: ConfigGraph) -> Verdict:
    for v in g.vertices:
        if any(x > 1 for x in v):
            return Verdict("safe", Answer.NO, witness={"vertex": list(v)},
                           graph_status=_status(g))
    if not g.complete:
        return Verdict("safe", Answer.INCONCLUSIVE, graph_status=_status(g))
    return Verdict("safe", Answer.YES, graph_status=_status(g))


def check_deadlock_free(g: ConfigGraph) -> Verdict:
    deg = g.out_degree()
    for i, v in enumerate(g.vertices):
        if g.expanded[i] and deg[i] == 0:
            return Verdict("deadlock-free", Answer.NO, witness={"vertex": list(v)},
                           graph_status=_status(g))
    answer = Answer.YES if g.complete else Answer.INCONCLUSIVE
    return Verdict("deadlock-free", answer, graph_status=_status(g))


def _fired_rules(g: ConfigGraph) -> list:
    fired = [False] * g.n_rules
    for _s, label, _d in g.edges:
        for i, bit in enumerate(label):
            if bit:
                fired[i] = True
    return fired


def check_quasi_live(g: ConfigGraph) -> Verdict:
    """A rule is quasi-live iff some edge label fires it."""
    fired = _fired_rules(g)
    if g.complete:
        table = {f"r{i}": ("yes" if f else "no") for i, f in enumerate(fired, 1)}
    else:
        table = {f"r{i}": ("yes" if f else "inconclusive") for i, f in enumerate(fired, 1)}
    if all(fired):
        answer = Answer.YES
    elif g.complete:
        answer = Answer.NO
    else:
        answer = Answer.INCONCLUSIVE
    witness = None
    if answer is Answer.NO:
        witness = {"rule": next(i for i, f in enumerate(fired, 1) if not f)}
    return Verdict("quasi-live", answer, witness=witness, details={"rules": table},
                   graph_status=_status(g))


def live_table(g: ConfigGraph) -> list:
    """Per rule: ``(answer, vertex index or None)``.

    Rule ``r`` is live iff every vertex reaches the source of an edge that
    fires ``r``.
    """
    preds = g.predecessors()
    deg = g.out_degree()
    closed = None if g.complete else _closed_vertices(g, preds)
    sources = [set() for _ in range(g.n_rules)]
    for s, label, _d in g.edges:
        for i, bit in enumerate(label):
            if bit:
                sources[i].add(s)
    out = []
    for r in range(g.n_rules):
        can = _backward_closure(g, sources[r], preds)
        bad = [v for v in range(len(g.vertices)) if v not in can]
        if g.complete:
            out.append((Answer.NO, _pick(bad, deg)) if bad else (Answer.YES, None))
        else:
            sure = [v for v in bad if v in closed]
            out.append((Answer.NO, _pick(sure, deg)) if sure else (Answer.INCONCLUSIVE, None))
    return out


def check_live(g: ConfigGraph) -> Verdict:
    table = live_table(g)
    rules = {f"r{i}": a.value for i, (a, _v) in enumerate(table, 1)}
    failing = [(i, v) for i, (a, v) in enumerate(table, 1) if a is Answer.NO]
    if failing:
        rule, v = failing[0]
        return Verdict("live", Answer.NO,
                       witness={"rule": rule, "vertex": list(g.vertices[v])},
                       details={"rules": rules}, graph_status=_status(g))
    answer = Answer.YES if g.complete else Answer.INCONCLUSIVE
    return Verdict("live", answer, details={"rules": rules}, graph_status=_status(g))


def check_reversible(g: ConfigGraph) -> Verdict:
    import networkx as nx

    preds = g.predecessors()
    back = _backward_closure(g, [g.root], preds)
    if g.complete:
        dg = nx.DiGraph()
        dg.add_nodes_from(range(len(g.vertices)))
        dg.add_edges_from((s, d) for s, _l, d in g.edges)
        n_scc = nx.number_strongly_connected_components(dg)
        details = {"scc_count": n_scc}
        if n_scc == 1:
            return Verdict("reversible", Answer.YES, details=details, graph_status=_status(g))
        v = _pick([i for i in range(len(g.vertices)) if i not in back], g.out_degree())
        return Verdict("reversible", Answer.NO, witness={"vertex": list(g.vertices[v])},
                       details=details, graph_status=_status(g))
    closed = _closed_vertices(g, preds)
    sure = [v for v in range(len(g.vertices)) if v in closed and v not in back]
    if sure:
        v = _pick(sure, g.out_degree())
        return Verdict("reversible", Answer.NO, witness={"vertex": list(g.vertices[v])},
                       graph_status=_status(g))
    return Verdict("reversible", Answer.INCONCLUSIVE, graph_status=_status(g))
