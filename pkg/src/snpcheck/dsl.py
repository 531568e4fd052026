"""Text format for SN P systems.

::

    system ex1 {
      neuron n1 { spikes 2; rule r1: a^2/a -> a; rule r2: a^2 -> a; }
      neuron n2 { spikes 1; rule r3: a -> a; }
      neuron n3 { spikes 1; rule r4: a -> a; rule r5: a^2 -> lambda; }
      syn n1 -> n2; syn n1 -> n3; syn n2 -> n1; syn n2 -> n3;
      out n3;
    }

A rule is ``[E /] a^c -> a^p`` or ``a^s -> lambda``; without ``E`` the
guard is exactly ``{c}``.  ``#`` starts a comment that runs to end of line.
"""

from __future__ import annotations

import re
from pathlib import Path

from .system import SNPSystem, forgetting_rule, spiking_rule, validate
from .unary import RegexSyntaxError, Symbol, parse_regex

__all__ = ["DslSyntaxError", "parse_system", "load_system", "dump_system"]

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<arrow>->)|(?P<punct>[{};:])|(?P<num>\d+)"
                    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)")


class DslSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message, self.line, self.col = message, line, col


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self._peeked = None

    def where(self, pos: int) -> tuple:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg: str, pos: int | None = None):
        line, col = self.where(self.pos if pos is None else pos)
        return DslSyntaxError(msg, line, col)

    def _scan(self):
        while self.pos < len(self.text):
            mt = _TOKEN.match(self.text, self.pos)
            if mt is None:
                raise self.error(f"unexpected character {self.text[self.pos]!r}")
            start, self.pos = self.pos, mt.end()
            if mt.lastgroup:
                return mt.lastgroup, mt.group(), start
        return "eof", "", self.pos

    def next(self):
        if self._peeked is not None:
            tok, self._peeked = self._peeked, None
            return tok
        return self._scan()

    def peek(self):
        if self._peeked is None:
            self._peeked = self._scan()
        return self._peeked

    def expect(self, kind: str, value: str | None = None):
        k, v, p = self.next()
        if k != kind or (value is not None and v != value):
            want = repr(value) if value else kind
            got = repr(v) if v else "end of input"
            raise self.error(f"expected {want}, got {got}", p)
        return v, p

    def raw_until_semicolon(self) -> tuple:
        assert self._peeked is None
        end = self.text.find(";", self.pos)
        if end < 0:
            raise self.error("rule is missing its terminating ';'")
        start = self.pos
        self.pos = end + 1
        return self.text[start:end], start


def _symbol(lx: _Lexer, text: str, base: int, what: str) -> int:
    stripped = text.strip()
    offset = base + (len(text) - len(text.lstrip()))
    try:
        node = parse_regex(stripped)
    except RegexSyntaxError as exc:
        raise lx.error(f"{what}: {exc.message}", offset + exc.pos) from None
    if not isinstance(node, Symbol):
        raise lx.error(f"{what} must be of the form a or a^k", offset)
    return node.count


def _rule(lx: _Lexer, owner: int, name: str, body: str, base: int):
    if body.count("->") != 1:
        raise lx.error("rule needs exactly one '->'", base)
    arrow = body.index("->")
    lhs, rhs = body[:arrow], body[arrow + 2:]
    rhs_base = base + arrow + 2
    guard = None
    if "/" in lhs:
        slash = lhs.rindex("/")
        guard_text = lhs[:slash].strip()
        if not guard_text:
            raise lx.error("empty regular expression before '/'", base)
        g_off = base + (len(lhs[:slash]) - len(lhs[:slash].lstrip()))
        try:
            parse_regex(guard_text)
        except RegexSyntaxError as exc:
            raise lx.error(f"regex: {exc.message}", g_off + exc.pos) from None
        guard = guard_text
        consumed = _symbol(lx, lhs[slash + 1:], base + slash + 1, "consumed spikes")
    else:
        consumed = _symbol(lx, lhs, base, "left-hand side")
    if rhs.strip() in ("lambda", "λ"):
        if guard is not None:
            raise lx.error("forgetting rules take no regular expression", base)
        return forgetting_rule(owner, consumed, name)
    produced = _symbol(lx, rhs, rhs_base, "right-hand side")
    return spiking_rule(owner, consumed, produced, guard, name)


def _parse(text: str, validate_system: bool) -> SNPSystem:
    lx = _Lexer(text)
    lx.expect("ident", "system")
    sys_name, _ = lx.expect("ident")
    lx.expect("punct", "{")
    names, spikes, rules = [], [], []
    syn, out, inp = [], None, None
    index: dict = {}
    rule_names: set = set()

    def neuron_ref():
        nm, p = lx.expect("ident")
        if nm not in index:
            raise lx.error(f"unknown neuron {nm!r}", p)
        return index[nm]

    while True:
        kind, word, pos = lx.next()
        if (kind, word) == ("punct", "}"):
            break
        if kind != "ident":
            raise lx.error(f"expected a declaration, got {word or 'end of input'!r}", pos)
        if word == "neuron":
            nm, p = lx.expect("ident")
            if nm in index:
                raise lx.error(f"duplicate neuron {nm!r}", p)
            names.append(nm)
            index[nm] = len(names)
            spikes.append(0)
            lx.expect("punct", "{")
            while True:
                k, w, p = lx.next()
                if (k, w) == ("punct", "}"):
                    break
                if (k, w) == ("ident", "spikes"):
                    num, _ = lx.expect("num")
                    spikes[-1] = int(num)
                    lx.expect("punct", ";")
                elif (k, w) == ("ident", "rule"):
                    rname, rp = lx.expect("ident")
                    if rname in rule_names:
                        raise lx.error(f"duplicate rule name {rname!r}", rp)
                    rule_names.add(rname)
                    lx.expect("punct", ":")
                    body, base = lx.raw_until_semicolon()
                    rules.append(_rule(lx, len(names), rname, body, base))
                else:
                    raise lx.error(f"unknown neuron item {w or 'end of input'!r}", p)
        elif word == "syn":
            s = neuron_ref()
            lx.expect("arrow")
            t = neuron_ref()
            lx.expect("punct", ";")
            syn.append((s, t))
        elif word in ("out", "in"):
            j = neuron_ref()
            lx.expect("punct", ";")
            if word == "out":
                out = j
            else:
                inp = j
        else:
            raise lx.error(f"unknown keyword {word!r}", pos)
    k, w, p = lx.next()
    if k != "eof":
        raise lx.error(f"trailing input {w!r}", p)
    if out is None:
        raise lx.error("missing 'out' declaration", len(text))
    system = SNPSystem.create(spikes, rules, syn, out, inp, names, sys_name)
    if validate_system:
        validate(system).raise_for_errors()
    return system


def parse_system(text: str, validate_system: bool = True) -> SNPSystem:
    """Parse DSL text.  Raises :class:`DslSyntaxError` or ``ValidationError``."""
    return _parse(text, validate_system)


def load_system(path, validate_system: bool = True) -> SNPSystem:
    return parse_system(Path(path).read_text(encoding="utf-8"), validate_system)


def dump_system(system: SNPSystem) -> str:
    """Render ``system`` back to DSL text."""
    lines = [f"system {system.name} {{"]
    for j in range(1, system.m + 1):
        items = [f"spikes {system.spikes[j - 1]};"]
        for i in system.rules_of(j):
            items.append(f"rule {system.rule_label(i)}: {system.rules[i - 1]};")
        lines.append(f"  neuron {system.names[j - 1]} {{ " + " ".join(items) + " }")
    for s, t in system.synapses:
        lines.append(f"  syn {system.names[s - 1]} -> {system.names[t - 1]};")
    lines.append(f"  out {system.names[system.out - 1]};")
    if system.inp is not None:
        lines.append(f"  in {system.names[system.inp - 1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
