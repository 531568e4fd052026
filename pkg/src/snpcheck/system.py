"""SN P systems without delay and their matrix semantics.

Rules are numbered globally ``1..n`` in neuron order, then declaration
order; rule ``i`` occupies position ``i - 1`` of a spiking vector and row
``i - 1`` of the spiking transition matrix.  Neurons are 1-based in the
public API, and configurations are plain tuples of ints.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .unary import UnarySet, compile_regex

__all__ = [
    "RuleKind",
    "Rule",
    "SNPSystem",
    "ValidationReport",
    "ValidationError",
    "InvalidSpikingVector",
    "Trace",
    "spiking_rule",
    "forgetting_rule",
    "validate",
    "build_matrix",
    "applicable_rules",
    "enumerate_spiking_vectors",
    "net_gain",
    "step",
    "run",
    "output_gaps",
]


class RuleKind(str, Enum):
    SPIKING = "spiking"
    FORGETTING = "forgetting"


@dataclass(frozen=True)
class Rule:
    owner: int
    kind: RuleKind
    guard: UnarySet
    consumed: int
    produced: int
    name: str = ""
    guard_text: str = ""

    def applicable(self, spikes: int) -> bool:
        return spikes in self.guard

    def __str__(self) -> str:
        lhs = f"a^{self.consumed}"
        if self.guard_text:
            lhs = f"{self.guard_text}/{lhs}"
        rhs = "λ" if self.kind is RuleKind.FORGETTING else f"a^{self.produced}"
        return f"{lhs} -> {rhs}"


def spiking_rule(owner: int, consumed: int, produced: int, guard: str | None = None,
                 name: str = "") -> Rule:
    """Build ``E/a^c -> a^p``; without ``guard`` the guard is exactly ``{c}``."""
    if guard is None:
        uset = UnarySet.singleton(consumed)
    else:
        uset = compile_regex(guard)
    return Rule(owner, RuleKind.SPIKING, uset, consumed, produced, name, guard or "")


def forgetting_rule(owner: int, amount: int, name: str = "") -> Rule:
    return Rule(owner, RuleKind.FORGETTING, UnarySet.singleton(amount), amount, 0, name)


@dataclass(frozen=True)
class SNPSystem:
    """An SN P system without delay.

    ``rules`` must already be sorted by owner (stable within a neuron);
    :meth:`create` does that for you.  ``synapses`` holds 1-based
    ``(source, target)`` pairs.
    """

    names: tuple
    spikes: tuple
    rules: tuple
    synapses: tuple
    out: int
    inp: Optional[int] = None
    name: str = "system"

    @classmethod
    def create(cls, spikes: Sequence[int], rules: Sequence[Rule], synapses,
               out: int, inp: Optional[int] = None, names: Sequence[str] | None = None,
               name: str = "system") -> "SNPSystem":
        m = len(spikes)
        if names is None:
            names = [f"n{j}" for j in range(1, m + 1)]
        # stable: keeps declaration order inside each neuron
        ordered = sorted(rules, key=lambda r: r.owner)
        return cls(tuple(names), tuple(spikes), tuple(ordered),
                   tuple(sorted(set(map(tuple, synapses)))), out, inp, name)

    @property
    def m(self) -> int:
        return len(self.spikes)

    @property
    def n(self) -> int:
        return len(self.rules)

    @property
    def initial(self) -> tuple:
        return tuple(self.spikes)

    def rules_of(self, j: int) -> list:
        """Global 1-based ids of the rules owned by neuron ``j``."""
        return [i for i, r in enumerate(self.rules, 1) if r.owner == j]

    def rule_label(self, i: int) -> str:
        r = self.rules[i - 1]
        return r.name or f"r{i}"

    def targets(self, j: int) -> list:
        return [t for s, t in self.synapses if s == j]

    def with_initial(self, spikes: Sequence[int]) -> "SNPSystem":
        return SNPSystem(self.names, tuple(spikes), self.rules, self.synapses,
                         self.out, self.inp, self.name)


class ValidationError(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.errors))
        self.report = report


class InvalidSpikingVector(ValueError):
    pass


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def raise_for_errors(self) -> None:
        if self.errors:
            raise ValidationError(self)


def validate(system: SNPSystem) -> ValidationReport:
    """Check every structural constraint, collecting all violations."""
    rep = ValidationReport()
    m = system.m
    if m < 1:
        rep.errors.append("system needs at least one neuron")
    if len(system.names) != m:
        rep.errors.append("neuron name count does not match neuron count")
    for j, s in enumerate(system.spikes, 1):
        if s < 0:
            rep.errors.append(f"neuron {system.names[j - 1]}: negative initial spikes {s}")

    owners = [r.owner for r in system.rules]
    if owners != sorted(owners):
        rep.errors.append("rules are not grouped by owning neuron")

    for i, r in enumerate(system.rules, 1):
        label = system.rule_label(i)
        if not 1 <= r.owner <= m:
            rep.errors.append(f"rule {label}: owner {r.owner} out of range")
            continue
        where = f"rule {label} in {system.names[r.owner - 1]}"
        if r.kind is RuleKind.SPIKING:
            if r.consumed < 1 or r.produced < 1:
                rep.errors.append(f"{where}: spiking rule needs c >= 1 and p >= 1")
            elif r.consumed < r.produced:
                rep.errors.append(
                    f"{where}: c >= p violated (c={r.consumed}, p={r.produced})")
            if r.guard.is_empty():
                rep.warnings.append(f"{where}: guard language is empty, rule can never fire")
            else:
                lo = r.guard.min()
                if lo < r.consumed:
                    rep.errors.append(
                        f"{where}: guard admits {lo} spikes but the rule consumes {r.consumed}")
        else:
            if r.consumed < 1 or r.produced != 0:
                rep.errors.append(f"{where}: forgetting rule needs s >= 1 and no output")
            if r.guard != UnarySet.singleton(r.consumed):
                rep.errors.append(f"{where}: forgetting guard must be exactly {{{r.consumed}}}")

    for j in range(1, m + 1):
        mine = [(i, system.rules[i - 1]) for i in system.rules_of(j)]
        for fi, f in mine:
            if f.kind is not RuleKind.FORGETTING:
                continue
            for si, s in mine:
                if s.kind is RuleKind.SPIKING and f.consumed in s.guard:
                    rep.errors.append(
                        f"neuron {system.names[j - 1]}: forgetting rule "
                        f"{system.rule_label(fi)} amount s={f.consumed} belongs to the "
                        f"guard of spiking rule {system.rule_label(si)}")

    for s, t in system.synapses:
        if not (1 <= s <= m and 1 <= t <= m):
            rep.errors.append(f"synapse ({s},{t}) references a missing neuron")
        elif s == t:
            rep.errors.append(f"self-synapse on {system.names[s - 1]} is not allowed")
    if not 1 <= system.out <= m:
        rep.errors.append(f"output neuron {system.out} out of range")
    if system.inp is not None and not 1 <= system.inp <= m:
        rep.errors.append(f"input neuron {system.inp} out of range")
    return rep


def build_matrix(system: SNPSystem) -> tuple:
    """Spiking transition matrix as an ``n x m`` tuple of int tuples."""
    rows = []
    for r in system.rules:
        row = [0] * system.m
        row[r.owner - 1] = -r.consumed
        for t in system.targets(r.owner):
            row[t - 1] = r.produced
        rows.append(tuple(row))
    return tuple(rows)


def applicable_rules(system: SNPSystem, config: Sequence[int]) -> list:
    """Per-neuron lists of applicable rule ids (index ``j - 1`` for neuron ``j``)."""
    out = [[] for _ in range(system.m)]
    for i, r in enumerate(system.rules, 1):
        if r.applicable(config[r.owner - 1]):
            out[r.owner - 1].append(i)
    return out


def enumerate_spiking_vectors(system: SNPSystem, config: Sequence[int]) -> list:
    """All valid spiking vectors at ``config``.

    Every neuron with an applicable rule fires exactly one of them.  Output
    is ordered by the tuple of selected rule ids, smallest first.
    """
    choices = [c for c in applicable_rules(system, config) if c]
    if not choices:
        return []
    vectors = []
    for picked in itertools.product(*choices):
        bits = [0] * system.n
        for i in picked:
            bits[i - 1] = 1
        vectors.append(tuple(bits))
    return vectors


def net_gain(matrix: Sequence[Sequence[int]], sp: Sequence[int], m: int | None = None) -> tuple:
    if m is None:
        m = len(matrix[0]) if matrix else 0
    if len(sp) != len(matrix):
        raise ValueError(f"spiking vector has length {len(sp)}, expected {len(matrix)}")
    gain = [0] * m
    for bit, row in zip(sp, matrix):
        if bit:
            for j in range(m):
                gain[j] += bit * row[j]
    return tuple(gain)


def _apply(config, gain) -> tuple:
    nxt = tuple(c + g for c, g in zip(config, gain))
    assert all(v >= 0 for v in nxt), f"negative spike count in {nxt}"
    return nxt


def step(system: SNPSystem, config: Sequence[int], sp: Sequence[int],
         matrix=None) -> tuple:
    """One application of the fundamental state equation ``C' = C + sp·M``."""
    sp = tuple(sp)
    if sp not in enumerate_spiking_vectors(system, config):
        raise InvalidSpikingVector(f"{sp} is not a valid spiking vector at {tuple(config)}")
    if matrix is None:
        matrix = build_matrix(system)
    return _apply(tuple(config), net_gain(matrix, sp, system.m))


def _fires_output(system: SNPSystem, sp) -> bool:
    return any(bit and system.rules[i].owner == system.out
               and system.rules[i].kind is RuleKind.SPIKING
               for i, bit in enumerate(sp))


@dataclass
class Trace:
    """A computation prefix.

    ``configs`` has one more entry than ``vectors``.  ``spike_times`` holds
    the 1-based indices of steps in which the output neuron spiked.
    """

    configs: list
    vectors: list
    halted: bool
    spike_times: list

    @property
    def steps(self) -> int:
        return len(self.vectors)

    @property
    def final(self) -> tuple:
        return self.configs[-1]

    @property
    def gap(self) -> Optional[int]:
        if len(self.spike_times) < 2:
            return None
        return self.spike_times[1] - self.spike_times[0]


def run(system: SNPSystem, strategy: str = "first", max_steps: int = 100,
        seed: int | None = None) -> Trace:
    """Simulate one computation.

    ``strategy`` is ``"first"`` (always the first enumerated vector) or
    ``"random"`` (uniform choice from ``random.Random(seed)``).
    """
    if strategy not in ("first", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    rng = random.Random(seed)
    matrix = build_matrix(system)
    config = system.initial
    configs, vectors, times = [config], [], []
    halted = False
    for k in range(1, max_steps + 1):
        options = enumerate_spiking_vectors(system, config)
        if not options:
            halted = True
            break
        sp = options[0] if strategy == "first" else rng.choice(options)
        config = _apply(config, net_gain(matrix, sp, system.m))
        vectors.append(sp)
        configs.append(config)
        if _fires_output(system, sp):
            times.append(k)
    else:
        halted = not enumerate_spiking_vectors(system, config)

    total = [sum(col) for col in zip(*vectors)] if vectors else [0] * system.n
    assert configs[-1] == _apply(system.initial, net_gain(matrix, total, system.m)), \
        "accumulated spiking vectors do not reproduce the final configuration"
    return Trace(configs, vectors, halted, times)


def output_gaps(system: SNPSystem, depth: int) -> set:
    """Gaps between the first two output spikes over all computations of
    at most ``depth`` steps."""
    matrix = build_matrix(system)
    gaps: set = set()
    seen: set = set()

    def visit(config, k, first):
        key = (config, k, first)
        if key in seen or k == depth:
            return
        seen.add(key)
        for sp in enumerate_spiking_vectors(system, config):
            nxt = _apply(config, net_gain(matrix, sp, system.m))
            if _fires_output(system, sp):
                if first is None:
                    visit(nxt, k + 1, k + 1)
                else:
                    gaps.add(k + 1 - first)
            else:
                visit(nxt, k + 1, first)

    visit(system.initial, 0, None)
    return gaps
