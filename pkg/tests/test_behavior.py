import random

import pytest

from oracles import (
    brute_rule_live,
    brute_states,
    brute_strongly_connected,
    random_system,
    raw_successors,
)
from snpcheck.behavior import (
    Answer,
    check_bounded,
    check_deadlock_free,
    check_live,
    check_quasi_live,
    check_reversible,
    check_safe,
)
from snpcheck.graph import ExploreLimits, explore
from snpcheck.system import SNPSystem, spiking_rule

LIMITS = ExploreLimits(1000, 100, 100)
SMALL = ExploreLimits(max_vertices=100)

YES, NO, INC = Answer.YES, Answer.NO, Answer.INCONCLUSIVE


@pytest.fixture
def g1(example1):
    return explore(example1, LIMITS)


@pytest.fixture
def gring(ring):
    return explore(ring, LIMITS)


@pytest.fixture
def ggrowth(growth):
    return explore(growth, SMALL)


def _single(spikes=1, rules=None):
    rules = rules or [spiking_rule(1, 1, 1)]
    return SNPSystem.create([spikes], rules, [], out=1)


class TestBounded:
    def test_example1(self, g1):
        v = check_bounded(g1)
        assert v.answer is YES and v.details["s"] == 2

    def test_one_step_halt(self):
        v = check_bounded(explore(_single(), LIMITS))
        assert v.answer is YES and v.details["s"] == 1

    def test_growth(self, ggrowth):
        assert check_bounded(ggrowth).answer is INC


class TestSafe:
    def test_example1(self, g1):
        v = check_safe(g1)
        assert v.answer is NO and max(v.witness["vertex"]) == 2

    def test_ring(self, gring):
        assert check_safe(gring).answer is YES

    def test_zero(self):
        assert check_safe(explore(_single(0), LIMITS)).answer is YES

    def test_truncated_witness_is_definite(self, ggrowth):
        assert check_safe(ggrowth).answer is NO


class TestDeadlock:
    def test_example1(self, g1):
        v = check_deadlock_free(g1)
        assert v.answer is NO and v.witness["vertex"] == [1, 0, 0]

    def test_ring(self, gring):
        assert check_deadlock_free(gring).answer is YES

    def test_growth(self, ggrowth):
        assert check_deadlock_free(ggrowth).answer is INC


class TestQuasiLive:
    def test_example1(self, g1):
        v = check_quasi_live(g1)
        assert v.answer is YES and set(v.details["rules"].values()) == {"yes"}

    def test_unsatisfiable_rule(self):
        s = _single(1, [spiking_rule(1, 1, 1), spiking_rule(1, 3, 1)])
        v = check_quasi_live(explore(s, LIMITS))
        assert v.answer is NO and v.details["rules"]["r2"] == "no" and v.witness == {"rule": 2}

    def test_truncated_fired_rules_are_yes(self, ggrowth):
        v = check_quasi_live(ggrowth)
        assert v.details["rules"]["r1"] == "yes"
        assert v.answer is YES

    def test_truncated_unfired_is_inconclusive(self, example1):
        # only the root is expanded: r1..r4 fire there, r5 is never seen
        g = explore(example1, ExploreLimits(max_vertices=3))
        v = check_quasi_live(g)
        assert v.details["rules"]["r2"] == "yes"
        assert v.details["rules"]["r5"] == "inconclusive"
        assert v.answer is INC


class TestLive:
    def test_example1(self, g1):
        v = check_live(g1)
        assert v.answer is NO and v.witness == {"rule": 1, "vertex": [1, 0, 0]}
        assert set(v.details["rules"].values()) == {"no"}

    def test_ring(self, gring):
        assert check_live(gring).answer is YES

    def test_single_vertex(self):
        assert check_live(explore(_single(0), LIMITS)).answer is NO

    def test_truncated_definite_no(self, example1):
        # the sink (1,0,0) is expanded at depth 5 while deeper levels are cut
        g = explore(example1, ExploreLimits(max_depth=5))
        assert check_live(g).answer in (NO, INC)
        g = explore(example1, ExploreLimits(max_depth=6))
        assert g.complete


class TestReversible:
    def test_example1(self, g1):
        v = check_reversible(g1)
        assert v.answer is NO and v.witness["vertex"] == [1, 0, 0]
        assert v.details["scc_count"] > 1

    def test_ring(self, gring):
        assert check_reversible(gring).answer is YES

    def test_single_vertex(self):
        assert check_reversible(explore(_single(0), LIMITS)).answer is YES

    def test_growth(self, ggrowth):
        assert check_reversible(ggrowth).answer is INC


def test_complete_graphs_never_inconclusive(g1, gring):
    for g in (g1, gring):
        for check in (check_bounded, check_safe, check_deadlock_free, check_quasi_live,
                      check_live, check_reversible):
            assert check(g).answer is not INC


def _random_complete(n_wanted, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n_wanted:
        s = random_system(rng)
        if s is None:
            continue
        g = explore(s, ExploreLimits(max_vertices=2000))
        if g.complete:
            out.append((s, g))
    return out


@pytest.mark.parametrize("system,g", _random_complete(40, seed=11))
def test_random_against_oracles(system, g):
    states = brute_states(system)
    assert set(g.vertices) == states
    sinks = [v for v in states if not raw_successors(system, v)]
    assert (check_deadlock_free(g).answer is YES) == (not sinks)
    assert (check_reversible(g).answer is YES) == brute_strongly_connected(system, states)
    live = check_live(g)
    for r in range(1, system.n + 1):
        assert (live.details["rules"][f"r{r}"] == "yes") == brute_rule_live(system, states, r)
    if live.answer is YES:
        assert check_quasi_live(g).answer is YES
    if check_reversible(g).answer is YES and g.edges:
        assert check_deadlock_free(g).answer is YES
    b = check_bounded(g)
    assert b.answer is YES and b.details["s"] == max(max(v) for v in states)
