"""Initial-configuration-independent properties read off the matrix.

Weights ``y`` have one entry per neuron so that both ``M·y`` and the
weighted spike total ``C·y`` are defined.
"""

from __future__ import annotations

from fractions import Fraction

from .behavior import Answer, Verdict
from .farkas import EQ, LE, NONNEGATIVE, POSITIVE, FeasibilityProblem, solve_feasibility
from .system import SNPSystem

__all__ = [
    "check_structurally_bounded",
    "check_conservative",
    "check_partial_conservative",
    "struct_matrix",
    "rational_rank",
    "find_synapse_cycle",
    "has_synapse_cycle",
]


def _feasibility_verdict(name, matrix, m, relation, bound) -> Verdict:
    problem = FeasibilityProblem(matrix, relation, bound, m=m)
    cert = solve_feasibility(problem)
    answer = Answer.YES if cert.feasible else Answer.NO
    return Verdict(name, answer, details={"certificate": cert.to_dict(problem)},
                   certificate=cert, problem=problem)


def check_structurally_bounded(matrix, m: int | None = None) -> Verdict:
    """Yes iff some integer ``y >= 1`` has ``M·y <= 0``."""
    m = len(matrix[0]) if m is None else m
    return _feasibility_verdict("structurally-bounded", matrix, m, LE, POSITIVE)


def check_conservative(matrix, m: int | None = None) -> Verdict:
    m = len(matrix[0]) if m is None else m
    return _feasibility_verdict("conservative", matrix, m, EQ, POSITIVE)


def check_partial_conservative(matrix, m: int | None = None) -> Verdict:
    """Yes iff some integer ``y >= 0``, ``y != 0`` has ``M·y = 0``."""
    m = len(matrix[0]) if m is None else m
    return _feasibility_verdict("partial-conservative", matrix, m, EQ, NONNEGATIVE)


def struct_matrix(system: SNPSystem) -> tuple:
    """0/1 synapse adjacency; entry ``[i][j]`` is 1 iff ``(i+1, j+1)`` is a synapse."""
    rows = [[0] * system.m for _ in range(system.m)]
    for s, t in system.synapses:
        rows[s - 1][t - 1] = 1
    return tuple(tuple(r) for r in rows)


def rational_rank(matrix) -> int:
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return 0
    rank, ncols = 0, len(rows[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def find_synapse_cycle(system: SNPSystem):
    """A directed cycle of neurons (1-based, first repeated at the end) or None."""
    adj = {j: sorted(system.targets(j)) for j in range(1, system.m + 1)}
    color = dict.fromkeys(adj, 0)  # 0 new, 1 on stack, 2 done
    for start in adj:
        if color[start]:
            continue
        stack = [(start, iter(adj[start]))]
        path = [start]
        color[start] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = 2
                stack.pop()
                path.pop()
            elif color[w] == 1:
                return path[path.index(w):] + [w]
            elif color[w] == 0:
                color[w] = 1
                stack.append((w, iter(adj[w])))
                path.append(w)
    return None


def has_synapse_cycle(system: SNPSystem) -> Verdict:
    cycle = find_synapse_cycle(system)
    sm = struct_matrix(system)
    rank = rational_rank(sm)
    details = {"struct_rank": rank, "m": system.m, "rank_below_m": rank < system.m}
    if cycle is None:
        return Verdict("cycle", Answer.NO, details=details)
    return Verdict("cycle", Answer.YES, witness={"neurons": [system.names[j - 1] for j in cycle]},
                   details=details)
