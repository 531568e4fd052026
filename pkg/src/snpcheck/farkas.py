"""Exact homogeneous feasibility problems via Fourier-Motzkin elimination.

A problem asks for ``y`` with ``A y <= 0`` or ``A y = 0`` row by row,
under either ``y >= 1`` componentwise (``bound="positive"``) or
``y >= 0, y != 0`` (``bound="nonnegative"``, encoded as ``sum(y) >= 1``).
Both encodings are exact because the constraint rows are homogeneous,
so any rational solution scales to an integer one.

Every derived inequality carries the non-negative multipliers that produce
it from the original ones.  When elimination reaches ``0 <= h`` with
``h < 0`` those multipliers are a Farkas certificate: ``lam >= 0``,
``lam G = 0``, ``lam h < 0`` for the canonical system ``G y <= h``.
Arithmetic is :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["FeasibilityProblem", "Certificate", "solve_feasibility", "canonical_system"]

LE, EQ = "<=", "="
POSITIVE, NONNEGATIVE = "positive", "nonnegative"


@dataclass(frozen=True)
class FeasibilityProblem:
    matrix: tuple
    relations: tuple
    bound: str = POSITIVE
    m: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in r) for r in self.matrix))
        rel = self.relations
        if isinstance(rel, str):
            rel = (rel,) * len(self.matrix)
        object.__setattr__(self, "relations", tuple(rel))
        if self.m is None:
            if not self.matrix:
                raise ValueError("m is required for a problem with no rows")
            object.__setattr__(self, "m", len(self.matrix[0]))
        if any(len(r) != self.m for r in self.matrix):
            raise ValueError("ragged matrix")
        if len(self.relations) != len(self.matrix):
            raise ValueError("one relation per row is required")
        if any(r not in (LE, EQ) for r in self.relations):
            raise ValueError(f"relations must be {LE!r} or {EQ!r}")
        if self.bound not in (POSITIVE, NONNEGATIVE):
            raise ValueError(f"unknown bound {self.bound!r}")

    def satisfied_by(self, y: Sequence[int]) -> bool:
        if len(y) != self.m:
            return False
        if self.bound == POSITIVE and any(v < 1 for v in y):
            return False
        if self.bound == NONNEGATIVE and (any(v < 0 for v in y) or not any(y)):
            return False
        for row, rel in zip(self.matrix, self.relations):
            val = sum(a * b for a, b in zip(row, y))
            if val > 0 or (rel == EQ and val != 0):
                return False
        return True


def canonical_system(p: FeasibilityProblem) -> list:
    """``(coeffs, rhs, origin)`` triples of the system ``G y <= h``."""
    out = []
    for i, (row, rel) in enumerate(zip(p.matrix, p.relations)):
        out.append((row, 0, ("row", i, 1)))
        if rel == EQ:
            out.append((tuple(-a for a in row), 0, ("row", i, -1)))
    for j in range(p.m):
        unit = tuple(-1 if k == j else 0 for k in range(p.m))
        out.append((unit, -1 if p.bound == POSITIVE else 0, ("bound", j)))
    if p.bound == NONNEGATIVE:
        out.append(((-1,) * p.m, -1, ("sum",)))
    return out


def _integerize(vals) -> tuple:
    """Scale non-negative-direction rationals to coprime integers."""
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints) if g > 1 else tuple(ints)


@dataclass
class Certificate:
    """Either a solution ``y`` or a Farkas infeasibility witness."""

    feasible: bool
    solution: Optional[tuple] = None
    multipliers: Optional[tuple] = None
    trace: list = field(default_factory=list)

    @property
    def kind(self) -> str:
        return "solution" if self.feasible else "infeasibility"

    def row_multipliers(self, p: FeasibilityProblem) -> tuple:
        """Signed weight per matrix row (non-negative on ``<=`` rows)."""
        x = [0] * len(p.matrix)
        for lam, (_g, _h, origin) in zip(self.multipliers, canonical_system(p)):
            if origin[0] == "row":
                x[origin[1]] += origin[2] * lam
        return tuple(x)

    def combination(self, p: FeasibilityProblem) -> tuple:
        """``x·A`` for the row multipliers; non-negative and nonzero when the
        certificate is valid."""
        x = self.row_multipliers(p)
        return tuple(sum(x[i] * p.matrix[i][j] for i in range(len(p.matrix)))
                     for j in range(p.m))

    def verify(self, p: FeasibilityProblem) -> bool:
        if self.feasible:
            return self.solution is not None and p.satisfied_by(self.solution)
        system = canonical_system(p)
        lam = self.multipliers
        if lam is None or len(lam) != len(system) or any(v < 0 for v in lam):
            return False
        for j in range(p.m):
            if sum(l * g[j] for l, (g, _h, _o) in zip(lam, system)) != 0:
                return False
        return sum(l * h for l, (_g, h, _o) in zip(lam, system)) < 0

    def to_dict(self, p: FeasibilityProblem | None = None) -> dict:
        if self.feasible:
            return {"kind": "solution", "y": list(self.solution)}
        d = {"kind": "infeasibility", "multipliers": list(self.multipliers)}
        if p is not None:
            d["row_multipliers"] = list(self.row_multipliers(p))
            d["combination"] = list(self.combination(p))
        d["trace"] = self.trace
        return d


class _Ineq:
    __slots__ = ("g", "h", "lam")

    def __init__(self, g, h, lam):
        self.g, self.h, self.lam = g, h, lam

    def normalized(self) -> "_Ineq":
        lead = next((abs(c) for c in self.g if c), None)
        if lead is None or lead == 1:
            return self
        return _Ineq([c / lead for c in self.g], self.h / lead, [l / lead for l in self.lam])


def _combine(pos: _Ineq, neg: _Ineq, j: int) -> _Ineq:
    a, b = pos.g[j], -neg.g[j]
    return _Ineq([b * x + a * y for x, y in zip(pos.g, neg.g)],
                 b * pos.h + a * neg.h,
                 [b * x + a * y for x, y in zip(pos.lam, neg.lam)]).normalized()


def _infeasible(ineq: _Ineq, trace) -> Certificate:
    trace = trace + [{"contradiction": f"0 <= {ineq.h}"}]
    return Certificate(False, multipliers=_integerize(ineq.lam), trace=trace)


def _prune(ineqs) -> tuple:
    """Drop trivial rows and keep the tightest row per direction.

    Returns ``(kept, contradiction)``.
    """
    best: dict = {}
    for q in ineqs:
        if not any(q.g):
            if q.h < 0:
                return [], q
            continue
        key = tuple(q.g)
        if key not in best or q.h < best[key].h:
            best[key] = q
    return list(best.values()), None


def solve_feasibility(p: FeasibilityProblem) -> Certificate:
    system = canonical_system(p)
    k = len(system)
    ineqs = []
    for idx, (g, h, _o) in enumerate(system):
        lam = [Fraction(0)] * k
        lam[idx] = Fraction(1)
        ineqs.append(_Ineq([Fraction(c) for c in g], Fraction(h), lam).normalized())
    ineqs, bad = _prune(ineqs)
    trace: list = []
    if bad is not None:
        return _check(p, _infeasible(bad, trace))

    remaining = list(range(p.m))
    stages = []  # (variable, system before eliminating it)
    while remaining:
        def cost(j):
            # net change in row count if j is eliminated next
            pos = sum(1 for q in ineqs if q.g[j] > 0)
            neg = sum(1 for q in ineqs if q.g[j] < 0)
            return pos * neg - pos - neg

        j = min(remaining, key=lambda v: (cost(v), v))
        remaining.remove(j)
        stages.append((j, ineqs))
        pos = [q for q in ineqs if q.g[j] > 0]
        neg = [q for q in ineqs if q.g[j] < 0]
        zero = [q for q in ineqs if q.g[j] == 0]
        nxt = zero + [_combine(a, b, j) for a in pos for b in neg]
        nxt, bad = _prune(nxt)
        trace.append({"eliminate": f"y{j + 1}", "positive": len(pos), "negative": len(neg),
                      "untouched": len(zero), "result": len(nxt)})
        if bad is not None:
            return _check(p, _infeasible(bad, trace))
        ineqs = nxt

    y = [Fraction(0)] * p.m
    for j, stage in reversed(stages):
        lo = hi = None
        for q in stage:
            c = q.g[j]
            if c == 0:
                continue
            rest = q.h - sum(q.g[v] * y[v] for v in range(p.m) if v != j)
            bound = rest / c
            if c > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is not None:
            val = Fraction(math.ceil(lo))
            if hi is not None and val > hi:
                val = lo
        elif hi is not None:
            val = min(Fraction(0), Fraction(math.floor(hi)))
        else:
            val = Fraction(0)
        y[j] = val
    return _check(p, Certificate(True, solution=_integerize(y), trace=trace))


def _check(p: FeasibilityProblem, cert: Certificate) -> Certificate:
    if not cert.verify(p):
        raise AssertionError(f"certificate failed re-verification: {cert}")
    return cert
