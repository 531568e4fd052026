import pytest

from conftest import EXAMPLE1_VERTICES
from oracles import brute_states, raw_successors
from snpcheck.graph import (
    ConfigGraph,
    ExploreLimits,
    directly_reachable,
    explore,
    export,
    from_json,
    parse_config,
    reachable,
    to_dot,
    to_json,
)
from snpcheck.system import SNPSystem, enumerate_spiking_vectors, spiking_rule, step

LIMITS = ExploreLimits(1000, 100, 100)


class TestExplore:
    def test_example1(self, example1):
        g = explore(example1, LIMITS)
        assert g.complete
        assert set(g.vertices) == EXAMPLE1_VERTICES
        assert len(g.edges) == 10
        assert ((2, 1, 2), (1, 0, 1, 0, 1), (2, 1, 2)) in g.edge_set()

    def test_fig2_edges(self, example1):
        expected = {
            ((2, 1, 1), (0, 1, 1, 1, 0), (1, 1, 2)),
            ((2, 1, 1), (1, 0, 1, 1, 0), (2, 1, 2)),
            ((2, 1, 2), (0, 1, 1, 0, 1), (1, 1, 2)),
            ((2, 1, 2), (1, 0, 1, 0, 1), (2, 1, 2)),
            ((1, 1, 2), (0, 0, 1, 0, 1), (2, 0, 1)),
            ((2, 0, 1), (0, 1, 0, 1, 0), (0, 1, 1)),
            ((2, 0, 1), (1, 0, 0, 1, 0), (1, 1, 1)),
            ((1, 1, 1), (0, 0, 1, 1, 0), (2, 0, 1)),
            ((0, 1, 1), (0, 0, 1, 1, 0), (1, 0, 1)),
            ((1, 0, 1), (0, 0, 0, 1, 0), (1, 0, 0)),
        }
        assert explore(example1, LIMITS).edge_set() == expected

    def test_no_rules_fire(self):
        s = SNPSystem.create([0], [spiking_rule(1, 1, 1)], [], out=1)
        g = explore(s, LIMITS)
        assert g.complete and g.vertices == [(0,)] and g.edges == []

    def test_ring(self, ring):
        g = explore(ring, LIMITS)
        assert g.complete and set(g.vertices) == {(1, 0), (0, 1)} and len(g.edges) == 2

    def test_vertex_limit(self, example1):
        g = explore(example1, ExploreLimits(max_vertices=1))
        assert g.status == "truncated" and g.reason == "vertex-limit"
        assert g.vertices == [(2, 1, 1)] and g.expanded == [False]

    def test_depth_limit(self, example1):
        g = explore(example1, ExploreLimits(max_depth=2))
        assert g.reason == "depth-limit"
        assert max(g.depth) == 2
        assert all(e or d == 2 for e, d in zip(g.expanded, g.depth))

    def test_spike_limit(self, growth):
        g = explore(growth, ExploreLimits(max_spikes=3))
        assert g.reason == "spike-limit"
        assert all(max(v) <= 3 for v in g.vertices)

    def test_growth_truncates(self, growth):
        g = explore(growth, ExploreLimits(max_vertices=100))
        assert g.reason == "vertex-limit" and len(g.vertices) <= 100

    def test_unbounded_needs_opt_in(self):
        with pytest.raises(ValueError):
            ExploreLimits(0, 0, 0)
        ExploreLimits(0, 0, 0, unbounded=True)

    def test_edges_satisfy_state_equation(self, example1):
        g = explore(example1, LIMITS)
        for s, label, d in g.edges:
            assert step(example1, g.vertices[s], label) == g.vertices[d]

    def test_completeness_soundness(self, example1, ring):
        for system in (example1, ring):
            g = explore(system, LIMITS)
            adj = g.successors()
            for i, v in enumerate(g.vertices):
                assert [lab for lab, _ in adj[i]] == enumerate_spiking_vectors(system, v)

    def test_matches_naive_worklist(self, example1, ring_forget):
        for system in (example1, ring_forget):
            assert set(explore(system, LIMITS).vertices) == brute_states(system)

    def test_threads_identical(self, example1, growth):
        for system, lim in ((example1, LIMITS), (growth, ExploreLimits(max_vertices=300))):
            assert to_json(explore(system, lim)) == to_json(explore(system, lim, threads=4))

    def test_every_vertex_reachable_from_root(self, example1):
        g = explore(example1, LIMITS)
        seen, stack = {0}, [0]
        adj = g.successors()
        while stack:
            for _l, d in adj[stack.pop()]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        assert seen == set(range(len(g.vertices)))


class TestReach:
    def test_directly(self, example1):
        assert directly_reachable(example1, (2, 1, 1), (1, 1, 2)) == (0, 1, 1, 1, 0)
        assert directly_reachable(example1, (2, 1, 1), (0, 0, 0)) is None
        assert directly_reachable(example1, (1, 0, 0), (1, 0, 0)) is None

    def test_sink(self, example1):
        res = reachable(example1, (1, 0, 0), LIMITS)
        assert res.verdict == "reachable" and len(res.path) == 5
        assert res.configs == [(2, 1, 1), (1, 1, 2), (2, 0, 1), (0, 1, 1), (1, 0, 1), (1, 0, 0)]
        for a, label, b in res.path:
            assert step(example1, a, label) == b

    def test_not_reachable(self, example1):
        assert reachable(example1, (9, 9, 9), LIMITS).verdict == "not-reachable"

    def test_root(self, example1):
        res = reachable(example1, (2, 1, 1), LIMITS)
        assert res.verdict == "reachable" and res.path == []

    def test_inconclusive(self, growth):
        res = reachable(growth, (0, 0, 7), ExploreLimits(max_vertices=50))
        assert res.verdict == "inconclusive"


class TestExport:
    def test_json_shape(self, example1):
        import json

        doc = json.loads(to_json(explore(example1, LIMITS)))
        assert len(doc["vertices"]) == 8 and len(doc["edges"]) == 10
        assert doc["root"] == 0 and doc["status"] == "complete"
        assert set(doc["edges"][0]) == {"src", "dst", "label"}

    def test_empty_edges(self):
        s = SNPSystem.create([0], [spiking_rule(1, 1, 1)], [], out=1)
        text = to_json(explore(s, LIMITS))
        assert '"edges": []' in text

    def test_roundtrip(self, example1, growth):
        for g in (explore(example1, LIMITS), explore(growth, ExploreLimits(max_vertices=40))):
            back = from_json(to_json(g))
            assert back == g
            assert to_json(back) == to_json(g)

    def test_dot(self, example1):
        g = explore(example1, LIMITS)
        dot = to_dot(g)
        assert dot.count("->") == len(g.edges)
        assert 'label="(2,1,1)", shape=doublecircle' in dot
        assert export(g, "DOT") == dot.encode()
        with pytest.raises(ValueError):
            export(g, "png")

    def test_json_stable(self, example1):
        assert export(explore(example1, LIMITS), "json") == export(explore(example1, LIMITS), "json")


def test_parse_config():
    assert parse_config("(2,1,1)") == (2, 1, 1)
    assert parse_config(" 3, 0 ") == (3, 0)
    with pytest.raises(ValueError):
        parse_config("(1,x)")
    with pytest.raises(ValueError):
        parse_config("(1,-1)")


def test_raw_successor_oracle_agrees(example1):
    g = explore(example1, LIMITS)
    for v in g.vertices:
        assert {d for _b, d in raw_successors(example1, v)} == {
            g.vertices[d] for s, _l, d in g.edges if g.vertices[s] == v}
