import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXAMPLE1_MATRIX
from oracles import all_gaps, raw_successors
from snpcheck.system import (
    InvalidSpikingVector,
    Rule,
    RuleKind,
    SNPSystem,
    applicable_rules,
    build_matrix,
    enumerate_spiking_vectors,
    forgetting_rule,
    net_gain,
    output_gaps,
    run,
    spiking_rule,
    step,
    validate,
)
from snpcheck.unary import UnarySet


def test_example1_valid(example1):
    rep = validate(example1)
    assert rep.ok, rep.errors


class TestValidate:
    def test_forgetting_inside_guard(self):
        s = SNPSystem.create([1], [spiking_rule(1, 1, 1), forgetting_rule(1, 1)], [], out=1)
        rep = validate(s)
        assert any("s=1" in e for e in rep.errors)

    def test_p_exceeds_c(self):
        s = SNPSystem.create([2], [spiking_rule(1, 1, 3, "a^2")], [], out=1)
        assert any("c >= p" in e for e in validate(s).errors)

    def test_guard_below_consumption(self):
        s = SNPSystem.create([2], [spiking_rule(1, 2, 1, "a*")], [], out=1)
        assert any("consumes 2" in e for e in validate(s).errors)

    def test_self_synapse_and_ranges(self):
        s = SNPSystem.create([0, 0], [spiking_rule(1, 1, 1)], [(1, 1), (1, 3)], out=4)
        errs = validate(s).errors
        assert len(errs) == 3

    def test_empty_guard_is_warning(self):
        empty = UnarySet.canonical(0, 1, [], [False])
        s = SNPSystem.create([0], [Rule(1, RuleKind.SPIKING, empty, 1, 1)], [], out=1)
        rep = validate(s)
        assert rep.ok and rep.warnings

    def test_all_errors_reported(self):
        s = SNPSystem.create([1], [spiking_rule(1, 1, 2), spiking_rule(1, 1, 1),
                                   forgetting_rule(1, 1)], [], out=1)
        assert len(validate(s).errors) >= 2


class TestMatrix:
    def test_example1(self, example1):
        assert build_matrix(example1) == EXAMPLE1_MATRIX

    def test_no_synapses(self):
        s = SNPSystem.create([1, 0], [spiking_rule(1, 1, 1)], [], out=1)
        assert build_matrix(s) == ((-1, 0),)

    def test_ring(self, ring):
        assert build_matrix(ring) == ((-1, 1), (1, -1))

    def test_shape_invariant(self, example1):
        mat = build_matrix(example1)
        for i, row in enumerate(mat):
            negs = [j for j, x in enumerate(row) if x < 0]
            assert negs == [example1.rules[i].owner - 1]


class TestSpikingVectors:
    def test_applicable(self, example1):
        assert applicable_rules(example1, (2, 1, 1)) == [[1, 2], [3], [4]]
        assert applicable_rules(example1, (1, 0, 0)) == [[], [], []]

    def test_zero_config(self, ring):
        assert applicable_rules(ring, (0, 0)) == [[], []]
        assert enumerate_spiking_vectors(ring, (0, 0)) == []

    @pytest.mark.parametrize("config,expected", [
        ((2, 1, 1), [(1, 0, 1, 1, 0), (0, 1, 1, 1, 0)]),
        ((2, 1, 2), [(1, 0, 1, 0, 1), (0, 1, 1, 0, 1)]),
        ((1, 0, 0), []),
    ])
    def test_enumerate(self, example1, config, expected):
        assert enumerate_spiking_vectors(example1, config) == expected

    def test_invalid_vector_rejected(self, example1):
        with pytest.raises(InvalidSpikingVector):
            step(example1, (2, 1, 1), (1, 1, 1, 1, 0))
        with pytest.raises(InvalidSpikingVector):
            step(example1, (2, 1, 1), (1, 0, 0, 1, 0))  # n2 must fire

    def test_net_gain(self, example1):
        mat = build_matrix(example1)
        assert net_gain(mat, (0, 1, 1, 1, 0)) == (-1, 0, 1)
        assert net_gain(mat, (0,) * 5) == (0, 0, 0)
        assert net_gain(mat, (1, 0, 1, 0, 1)) == (0, 0, 0)
        with pytest.raises(ValueError):
            net_gain(mat, (1, 0))

    @pytest.mark.parametrize("config,sp,nxt", [
        ((2, 1, 1), (0, 1, 1, 1, 0), (1, 1, 2)),
        ((2, 1, 1), (1, 0, 1, 1, 0), (2, 1, 2)),
        ((1, 0, 1), (0, 0, 0, 1, 0), (1, 0, 0)),
    ])
    def test_step(self, example1, config, sp, nxt):
        assert step(example1, config, sp) == nxt


class TestRun:
    def test_first_strategy(self, example1):
        tr = run(example1, "first", 12)
        assert tr.steps == 12 and not tr.halted
        mat = build_matrix(example1)
        for c, sp, d in zip(tr.configs, tr.vectors, tr.configs[1:]):
            assert d == tuple(x + g for x, g in zip(c, net_gain(mat, sp)))

    def test_halting_immediately(self):
        s = SNPSystem.create([0], [spiking_rule(1, 1, 1)], [], out=1)
        tr = run(s, "first", 10)
        assert tr.halted and tr.steps == 0 and tr.configs == [(0,)]

    def test_zero_steps(self, example1):
        tr = run(example1, "first", 0)
        assert tr.configs == [(2, 1, 1)] and not tr.halted

    def test_random_reproducible(self, example1):
        a = run(example1, "random", 30, seed=7)
        b = run(example1, "random", 30, seed=7)
        assert a.configs == b.configs and a.vectors == b.vectors

    def test_gap_path(self, example1):
        # C0 -> (1,1,2) -> (2,0,1) -> fire: spikes at steps 1 and 3
        for seed in range(200):
            tr = run(example1, "random", 3, seed=seed)
            if tr.configs[:3] == [(2, 1, 1), (1, 1, 2), (2, 0, 1)]:
                assert tr.spike_times[:2] == [1, 3] and tr.gap == 2
                break
        else:
            pytest.fail("path not sampled")

    def test_bad_strategy(self, example1):
        with pytest.raises(ValueError):
            run(example1, "greedy", 3)


def test_output_gaps_match_path_enumeration(example1):
    assert output_gaps(example1, 12) == all_gaps(example1, 12) == set(range(2, 12))


@settings(max_examples=60, deadline=None)
@given(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)))
def test_vectors_match_raw_semantics(config):
    from conftest import example1_system

    s = example1_system()
    mat = build_matrix(s)
    vecs = enumerate_spiking_vectors(s, config)
    raw = raw_successors(s, config)
    assert vecs == [b for b, _ in raw]
    for sp, (_b, nxt) in zip(vecs, raw):
        for j in range(1, s.m + 1):
            fired = sum(sp[i - 1] for i in s.rules_of(j))
            assert fired == (1 if any(applicable_rules(s, config)[j - 1]) else 0)
        assert step(s, config, sp) == nxt == tuple(
            c + g for c, g in zip(config, net_gain(mat, sp)))
