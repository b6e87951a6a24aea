import random

from amcp.baseline import climb, compare_runs, hillclimb_turbomq
from amcp.benchgen import BenchSpec, generate
from amcp.graph import Partition, apply_move, build_graph, enumerate_moves
from amcp.metrics import turbomq
from amcp.negotiation import ThresholdConfig, negotiate

from conftest import random_graph, random_partition


def is_turbomq_local_optimum(graph, partition):
    base = turbomq(graph, partition)
    return all(turbomq(graph, apply_move(partition, m)) - base <= 1e-12 for m in enumerate_moves(partition))


def test_two_cliques_already_optimal():
    g, truth, _ = generate(BenchSpec(12, 2, 1.0, 0.0, 0.0, seed=1))
    final, steps = hillclimb_turbomq(g, truth)
    assert steps == 0 and final == truth


def test_three_module_example(three):
    graph, prev = three
    # A joining C keeps 2/3; B joining C leaves {A} and {B,C} without
    # internal edges -> 0; C joining {A,B} reaches 1
    after = [turbomq(graph, apply_move(prev, m)) for m in enumerate_moves(prev)]
    assert after == [2 / 3, 0.0, 1.0]
    final, steps = hillclimb_turbomq(graph, prev)
    assert final == Partition((0, 0, 0))
    assert steps == 1


def test_ascent_and_local_optimum():
    rng = random.Random(12)
    for _ in range(100):
        n = rng.randint(2, 8)
        g = random_graph(rng, n, rng.random())
        start = random_partition(rng, n)
        values = [turbomq(g, start)]
        for _, partition, tmq in climb(g, start):
            assert tmq == turbomq(g, partition)
            values.append(tmq)
        assert all(b > a for a, b in zip(values, values[1:]))
        final, steps = hillclimb_turbomq(g, start)
        assert steps == len(values) - 1
        assert turbomq(g, final) >= turbomq(g, start)
        assert is_turbomq_local_optimum(g, final)


def test_step_cap():
    g, _, prev = generate(BenchSpec(30, 3, 0.7, 0.05, 0.5, seed=3))
    _, steps = hillclimb_turbomq(g, prev, max_steps=2)
    assert steps == 2


def test_steepest_tie_break():
    # a->b and c->b both pull a lone module into {b}; the lower module wins
    g = build_graph([("a", "b", 1), ("c", "b", 1)])
    move, _, _ = next(climb(g, Partition((0, 1, 2))))
    assert move.module == 0


class TestCompareRuns:
    def test_schema(self, three):
        graph, prev = three
        rows = compare_runs(graph, prev, None, ThresholdConfig(0.7, 0.9))
        assert [r.system for r in rows] == ["AMCP", "hill-climb"]
        assert rows[0].tau_sta == 0.7
        assert rows[-1].tau_sta is None

    def test_baseline_beats_binding_budget(self):
        g, _, prev = generate(BenchSpec(24, 3, 0.8, 0.05, 0.2, seed=42))
        rows = compare_runs(g, prev, None, ThresholdConfig(0.9, 0.9), [0.9, 0.95])
        baseline = rows[-1]
        for row in rows[:-1]:
            assert row.steps < negotiate(g, prev, None, ThresholdConfig(0.0, 0.9)).steps
            assert baseline.u_coh >= row.u_coh

    def test_unconstrained_both_local_optima(self):
        g, _, prev = generate(BenchSpec(20, 4, 0.6, 0.1, 0.3, seed=9))
        result = negotiate(g, prev, None, ThresholdConfig(0.0, 1.0))
        final, _ = hillclimb_turbomq(g, prev)
        assert result.termination == "deadlock"
        assert is_turbomq_local_optimum(g, final)
