import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from amcp.graph import GraphError, Partition, apply_move, enumerate_moves
from amcp.mojo import mno_bruteforce, mojo, mojo_bruteforce, mno_table, contingency, u_sta

from conftest import random_partition, set_partitions

partitions = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(lambda xs: Partition(tuple(xs)))
)


def test_identical():
    p = Partition((0, 1, 1, 2))
    assert mojo(p, p) == 0
    assert mojo_bruteforce(p, p) == 0


def test_worked_example_one_join():
    single = Partition((0, 0, 0))
    prev = Partition((0, 0, 1))
    assert mojo(single, prev) == 1
    assert mojo(single, prev, "ab") == 1
    assert mojo(single, prev, "ba") == 1


def test_two_modules_one_join():
    assert mojo_bruteforce(Partition((0, 1)), Partition((0, 0))) == 1


def test_directions_differ():
    # A = {0,1,2,3}, B = four singletons: splitting needs moves, joining is cheap
    a, b = Partition((0, 0, 0, 0)), Partition((0, 1, 2, 3))
    assert mojo(a, b, "ab") == mno_bruteforce(a, b) == 3
    assert mojo(a, b, "ba") == mno_bruteforce(b, a) == 3
    a, b = Partition((0, 0, 1, 1, 2)), Partition((0, 1, 0, 1, 0))
    assert mojo(a, b, "ab") == mno_bruteforce(a, b)
    assert mojo(a, b, "ba") == mno_bruteforce(b, a)


def test_exhaustive_n4():
    parts = set_partitions(4)
    assert len(parts) == 15
    for a, b in itertools.product(parts, parts):
        assert mojo(a, b, "ab") == mno_bruteforce(a, b)
        assert mojo(a, b) == mojo_bruteforce(a, b)


def test_random_n5_n6():
    rng = random.Random(2024)
    for _ in range(1500):
        n = rng.choice((5, 6))
        a, b = random_partition(rng, n), random_partition(rng, n)
        assert mojo(a, b) == mojo_bruteforce(a, b)
        assert mojo(a, b, "ab") == mojo_bruteforce(a, b, "ab")


def test_oracle_limit():
    p = Partition(tuple(range(7)))
    with pytest.raises(GraphError, match="oracle limit"):
        mojo_bruteforce(p, p)


def test_size_mismatch():
    with pytest.raises(GraphError):
        mojo(Partition((0, 1)), Partition((0, 1, 1)))


def test_bad_mode():
    with pytest.raises(ValueError):
        mojo(Partition((0,)), Partition((0,)), "sideways")


def test_zero_rows_ignored():
    # an emptied cluster row must not count as a cluster to join
    table = contingency(Partition((0, 0, 1)), Partition((0, 0, 1)))
    table.append([0, 0])
    assert mno_table(table) == 0


@given(partitions, st.data())
def test_symmetric_and_identity(a, data):
    b = Partition(tuple(data.draw(st.integers(0, a.n - 1)) for _ in range(a.n)))
    assert mojo(a, a) == 0
    assert mojo(a, b) == mojo(b, a)
    assert mojo(a, b) == min(mojo(a, b, "ab"), mojo(a, b, "ba"))


class TestUSta:
    def test_same(self):
        p = Partition((0, 1, 0))
        assert u_sta(p, p, 3) == 1.0

    def test_worked_example(self):
        assert u_sta(Partition((0, 0, 0)), Partition((0, 0, 1)), 3) == pytest.approx(2 / 3, abs=1e-12)

    def test_against_oracle_n6(self):
        rng = random.Random(8)
        for _ in range(200):
            a, b = random_partition(rng, 6), random_partition(rng, 6)
            assert u_sta(a, b, 6) == 1 - mojo_bruteforce(a, b) / 6

    def test_no_common(self):
        with pytest.raises(GraphError, match="no common modules"):
            u_sta(Partition(()), Partition(()), 0)

    def test_single_move_bound(self):
        rng = random.Random(99)
        for _ in range(3000):
            n = rng.randint(2, 12)
            prev = random_partition(rng, n)
            cur = random_partition(rng, n)
            moves = enumerate_moves(cur)
            if not moves:
                continue
            after = apply_move(cur, rng.choice(moves))
            assert abs(u_sta(after, prev, n) - u_sta(cur, prev, n)) <= 1 / n + 1e-12
