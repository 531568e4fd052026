"""Regular expressions over the one-letter alphabet ``{a}``.

A unary language is a set of word lengths, and every unary regular language
is an ultimately periodic subset of the naturals.  Expressions are parsed to
a small AST, compiled through a Thompson NFA, and the NFA's state-set
sequence is folded into a :class:`UnarySet` with O(1) membership.

Concrete syntax::

    a        one spike
    a^k      k spikes (k >= 1), sugar for k-fold concatenation
    e f      concatenation (juxtaposition or an explicit ``.``)
    e | f    union
    e*  e+   star / plus
    ( e )    grouping;  ``()`` or ``λ`` is the empty word

Postfix operators bind tightest, then concatenation, then union.
Whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union as _U

__all__ = [
    "RegexSyntaxError",
    "Symbol",
    "Concat",
    "Union",
    "Star",
    "Plus",
    "Epsilon",
    "RegexAst",
    "UnaryNfa",
    "UnarySet",
    "parse_regex",
    "thompson",
    "compile",
    "compile_regex",
    "member",
    "is_exactly",
]


class RegexSyntaxError(ValueError):
    """Malformed unary regex; ``pos`` is the 0-based offset into the text."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.message = message


# --------------------------------------------------------------------- AST


@dataclass(frozen=True)
class Symbol:
    count: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("Symbol count must be >= 1")


@dataclass(frozen=True)
class Concat:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Concat needs at least two children")


@dataclass(frozen=True)
class Union:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Union needs at least two children")


@dataclass(frozen=True)
class Star:
    child: "RegexAst"


@dataclass(frozen=True)
class Plus:
    child: "RegexAst"


@dataclass(frozen=True)
class Epsilon:
    pass


RegexAst = _U[Symbol, Concat, Union, Star, Plus, Epsilon]


# ------------------------------------------------------------------ parser


class _Parser:
    def __init__(self, text: str):
        # keep original offsets so errors point into the caller's text
        self.toks = [(ch, i) for i, ch in enumerate(text) if not ch.isspace()]
        self.i = 0
        self.end = len(text)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self) -> int:
        return self.toks[self.i][1] if self.i < len(self.toks) else self.end

    def take(self):
        ch = self.toks[self.i][0]
        self.i += 1
        return ch

    def parse(self) -> RegexAst:
        if self.peek() is None:
            raise RegexSyntaxError("empty expression", self.pos())
        node = self.union()
        if self.peek() is not None:
            raise RegexSyntaxError(f"unexpected {self.peek()!r}", self.pos())
        return node

    def union(self) -> RegexAst:
        parts = [self.concat()]
        while self.peek() == "|":
            self.take()
            parts.append(self.concat())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def concat(self) -> RegexAst:
        parts = [self.postfix()]
        while True:
            ch = self.peek()
            if ch == ".":
                self.take()
                parts.append(self.postfix())
            elif ch in ("a", "(", "λ"):
                parts.append(self.postfix())
            else:
                break
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def postfix(self) -> RegexAst:
        node = self.atom()
        while self.peek() in ("*", "+"):
            node = Star(node) if self.take() == "*" else Plus(node)
        return node

    def atom(self) -> RegexAst:
        ch, pos = self.peek(), self.pos()
        if ch == "a":
            self.take()
            if self.peek() != "^":
                return Symbol(1)
            self.take()
            digits_pos = self.pos()
            digits = ""
            while self.peek() is not None and self.peek().isdigit():
                digits += self.take()
            if not digits:
                raise RegexSyntaxError("expected exponent after '^'", digits_pos)
            k = int(digits)
            if k == 0:
                raise RegexSyntaxError("a^0 is not allowed", digits_pos)
            return Symbol(k)
        if ch == "λ":
            self.take()
            return Epsilon()
        if ch == "(":
            self.take()
            if self.peek() == ")":
                self.take()
                return Epsilon()
            node = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError("expected ')'", self.pos())
            self.take()
            return node
        if ch is None:
            raise RegexSyntaxError("unexpected end of expression", pos)
        raise RegexSyntaxError(f"unexpected {ch!r}", pos)


def parse_regex(text: str) -> RegexAst:
    """Parse unary regex ``text`` into an AST."""
    return _Parser(text).parse()


# --------------------------------------------------------------------- NFA


@dataclass
class UnaryNfa:
    """Thompson NFA over ``{a}``; states are ``0..n_states-1``."""

    n_states: int
    eps: list
    step: list
    start: int
    accepting: frozenset

    def closure(self, states) -> frozenset:
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for r in self.eps[q]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)

    def advance(self, states: frozenset) -> frozenset:
        return self.closure({r for q in states for r in self.step[q]})

    def state_sets(self) -> Iterator[frozenset]:
        """Yield S_0, S_1, ... where S_n is the state set after reading a^n."""
        cur = self.closure({self.start})
        while True:
            yield cur
            cur = self.advance(cur)

    def accepts(self, n: int) -> bool:
        cur = self.closure({self.start})
        for _ in range(n):
            cur = self.advance(cur)
        return bool(cur & self.accepting)


class _Builder:
    def __init__(self):
        self.eps: list = []
        self.step: list = []

    def new(self) -> int:
        self.eps.append([])
        self.step.append([])
        return len(self.eps) - 1

    def build(self, node) -> tuple:
        """Return (entry, exit) of the fragment for ``node``."""
        if isinstance(node, Symbol):
            s = cur = self.new()
            for _ in range(node.count):
                nxt = self.new()
                self.step[cur].append(nxt)
                cur = nxt
            return s, cur
        if isinstance(node, Epsilon):
            s, f = self.new(), self.new()
            self.eps[s].append(f)
            return s, f
        if isinstance(node, Concat):
            s, f = self.build(node.children[0])
            for child in node.children[1:]:
                cs, cf = self.build(child)
                self.eps[f].append(cs)
                f = cf
            return s, f
        if isinstance(node, Union):
            s, f = self.new(), self.new()
            for child in node.children:
                cs, cf = self.build(child)
                self.eps[s].append(cs)
                self.eps[cf].append(f)
            return s, f
        if isinstance(node, (Star, Plus)):
            s, f = self.new(), self.new()
            cs, cf = self.build(node.child)
            self.eps[s].append(cs)
            self.eps[cf].append(cs)
            self.eps[cf].append(f)
            if isinstance(node, Star):
                self.eps[s].append(f)
            return s, f
        raise TypeError(f"not a regex node: {node!r}")


def thompson(ast: RegexAst) -> UnaryNfa:
    b = _Builder()
    start, final = b.build(ast)
    return UnaryNfa(len(b.eps), b.eps, b.step, start, frozenset({final}))


# ------------------------------------------------------- ultimately periodic


@dataclass(frozen=True)
class UnarySet:
    """Ultimately periodic subset of the naturals.

    ``head[n]`` gives membership for ``n < threshold``; for larger ``n``
    membership is ``tail[n % period]``.  Instances built through
    :meth:`canonical` have minimal period and, for it, minimal threshold,
    so two sets are equal iff their fields are equal.
    """

    threshold: int
    period: int
    head: tuple
    tail: tuple

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be positive")
        if len(self.head) != self.threshold or len(self.tail) != self.period:
            raise ValueError("head/tail sizes do not match threshold/period")

    @classmethod
    def canonical(cls, threshold, period, head, tail) -> "UnarySet":
        head, tail = list(head), list(tail)
        for d in range(1, period + 1):
            if period % d:
                continue
            # tail residues are absolute (n mod period), so a divisor period
            # keeps the same indexing
            if all(tail[r] == tail[r % d] for r in range(period)):
                tail = tail[:d]
                period = d
                break
        while threshold > 0 and head[threshold - 1] == tail[(threshold - 1) % period]:
            threshold -= 1
            head.pop()
        return cls(threshold, period, tuple(head), tuple(tail))

    @classmethod
    def singleton(cls, s: int) -> "UnarySet":
        return cls.canonical(s + 1, 1, [n == s for n in range(s + 1)], [False])

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.threshold:
            return self.head[n]
        return self.tail[n % self.period]

    def is_empty(self) -> bool:
        return not any(self.head) and not any(self.tail)

    def is_finite(self) -> bool:
        return not any(self.tail)

    def min(self):
        """Smallest member, or None for the empty set."""
        for n in range(self.threshold + self.period):
            if n in self:
                return n
        return None

    def members(self, limit: int) -> list:
        return [n for n in range(limit + 1) if n in self]

    def __str__(self) -> str:
        if self.is_empty():
            return "{}"
        if self.is_finite():
            return "{" + ",".join(map(str, self.members(self.threshold))) + "}"
        res = [r for r in range(self.period) if self.tail[r]]
        head = [n for n in range(self.threshold) if self.head[n]]
        desc = f"n>={self.threshold}, n mod {self.period} in {{{','.join(map(str, res))}}}"
        return "{" + ",".join(map(str, head)) + (" ; " if head else "") + desc + "}"


def compile(ast: RegexAst) -> UnarySet:  # noqa: A001 - mirrors re.compile
    """Compile an AST into its canonical :class:`UnarySet`."""
    nfa = thompson(ast)
    first_seen: dict = {}
    seq = []
    for idx, states in enumerate(nfa.state_sets()):
        if states in first_seen:
            start = first_seen[states]
            break
        first_seen[states] = idx
        seq.append(bool(states & nfa.accepting))
    period = len(seq) - start
    tail = [False] * period
    for n in range(start, len(seq)):
        tail[n % period] = seq[n]
    return UnarySet.canonical(start, period, seq[:start], tail)


def compile_regex(text: str) -> UnarySet:
    return compile(parse_regex(text))


def member(uset: UnarySet, n: int) -> bool:
    return n in uset


def is_exactly(uset: UnarySet, s: int) -> bool:
    """True iff ``uset`` is the singleton ``{s}``."""
    return uset == UnarySet.singleton(s)
