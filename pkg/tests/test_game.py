import numpy as np
import pytest
from hypothesis import given, strategies as st

from coalitions import (DomainError, GameInstance, Graph, InvalidPartitionError, Partition,
                        blocks, break_off, canonical_form, coalition_weight, parse_canonical,
                        social_welfare, utilities, utility)
from coalitions.fixtures import FIG1_OPTIMUM, complete, fig1, fig5_empty_core

from conftest import games, graphs, partitions_of


def test_graph_rejects_bad_edges():
    with pytest.raises(DomainError):
        Graph(3, ((1, 1),))
    with pytest.raises(DomainError):
        Graph(3, ((1, 2), (2, 1)))
    with pytest.raises(DomainError):
        Graph(3, ((1, 4),))
    with pytest.raises(DomainError):
        Graph(3, ((1, 2, 0),))


def test_game_instance_checks_k_and_scale():
    with pytest.raises(DomainError):
        GameInstance(Graph(2), 1)
    with pytest.raises(DomainError):
        GameInstance(Graph(2), 2, 0)


def test_matrix_round_trip():
    g = fig5_empty_core().graph
    assert Graph.from_matrix(g.to_matrix()) == g


def test_coalition_weight_examples():
    assert coalition_weight(fig5_empty_core(), 8, {8, 9}) == 6
    assert coalition_weight(fig1(), 1, {1, 3, 6}) == 2
    assert coalition_weight(fig1(), 4, {4}) == 0
    with pytest.raises(DomainError):
        coalition_weight(fig1(), 2, {1, 3})


def test_utility_examples():
    p = Partition(FIG1_OPTIMUM)
    assert utility(fig1(), 5, p) == 1
    assert utility(fig1(), 5, Partition.singletons(8)) == 0
    q = Partition(((1, 2),) + tuple((v,) for v in range(3, 10)))
    assert utility(fig5_empty_core(), 1, q) == 6


def test_social_welfare_examples():
    assert social_welfare(fig1(), Partition(FIG1_OPTIMUM)) == 14
    assert social_welfare(fig1(), Partition.singletons(8)) == 0
    assert social_welfare(complete(4, 4), Partition(((1, 2, 3, 4),))) == 12


def test_blocks_examples():
    g5 = fig5_empty_core()
    w = blocks(g5, {1, 2}, Partition.singletons(9))
    assert w is not None and w.per_agent == ((1, 6, 0), (2, 6, 0))
    k4 = complete(4, 3)
    p = Partition(((1, 2), (3, 4)))
    w = blocks(k4, {1, 2, 3}, p)
    assert w is not None and w.recheck(k4, p)
    assert blocks(k4, (1, 2), p, "weak") is None
    with pytest.raises(DomainError):
        blocks(k4, (1, 2, 3, 4), p)


def test_blocks_eps_modes_exact():
    g = complete(3, 3)
    p = Partition(((1, 2), (3,)))
    # u = (1, 1, 0); W in the triangle = 2
    assert blocks(g, (1, 2, 3), p, "eps_a", "0.99") is not None
    assert blocks(g, (1, 2, 3), p, "eps_a", 1) is None
    assert blocks(g, (1, 2, 3), p, "eps_m", "1.99") is not None
    assert blocks(g, (1, 2, 3), p, "eps_m", 2) is None


def test_eps_a_uses_unscaled_units():
    g = GameInstance(Graph(3, ((1, 2, 10), (2, 3, 10), (1, 3, 10))), 3, weight_scale=10)
    p = Partition(((1, 2), (3,)))
    assert blocks(g, (1, 2, 3), p, "eps_a", "0.9") is not None
    assert blocks(g, (1, 2, 3), p, "eps_a", 1) is None


def test_break_off_examples():
    assert break_off(Partition(((1, 2, 3),)), {1}) == Partition(((1,), (2, 3)))
    assert break_off(Partition(((1, 2), (3, 4))), {2, 3}) == Partition(((2, 3), (1,), (4,)))
    assert break_off(Partition(((1,), (2,))), {1, 2}) == Partition(((1, 2),))
    with pytest.raises(DomainError):
        break_off(Partition(((1, 2, 3),)), {1, 2, 3}, k=2)


def test_canonical_form_examples():
    assert canonical_form(Partition(((2, 1), (3,)))) == canonical_form(Partition(((3,), (1, 2))))
    assert canonical_form(Partition(((1,), (2,)))) != canonical_form(Partition(((1, 2),)))
    assert canonical_form(Partition(((2, 1), (3,)))) == b"1,2;3"


def test_partition_validation():
    with pytest.raises(InvalidPartitionError):
        Partition(((1, 2), (2, 3)))
    with pytest.raises(InvalidPartitionError):
        Partition(((1,), ())).validate(1)
    with pytest.raises(InvalidPartitionError):
        Partition(((1, 2),)).validate(3)
    with pytest.raises(InvalidPartitionError):
        Partition(((1, 2, 3),)).validate(3, 2)


def test_labels_round_trip():
    p = Partition(((1, 4), (2,), (3, 5)))
    assert p.labels.tolist() == [0, 1, 2, 0, 2]
    assert Partition.from_labels(p.labels) == p


@given(st.data())
def test_welfare_is_twice_intra_weight(data):
    g = data.draw(graphs(weighted=True))
    p = data.draw(partitions_of(g.n))
    owner = {v: i for i, b in enumerate(p.blocks) for v in b}
    intra = sum(w for u, v, w in g.edges if owner[u] == owner[v])
    assert social_welfare(g, p) == 2 * intra
    assert sum(utilities(g, p)) == social_welfare(g, p)


@given(st.data())
def test_break_off_isolates_coalition(data):
    n = data.draw(st.integers(1, 8))
    p = data.draw(partitions_of(n))
    s = data.draw(st.sets(st.integers(1, n), min_size=1))
    q = break_off(p, s)
    q.validate(n)
    for v in s:
        assert set(q.block_of(v)) == s


@given(st.data())
def test_strong_implies_weak_and_eps_zero_equivalences(data):
    game = data.draw(games(min_n=2, weighted=True))
    p = data.draw(partitions_of(game.n, game.k))
    s = data.draw(st.sets(st.integers(1, game.n), min_size=1, max_size=game.k))
    strong = blocks(game, s, p, "strong")
    if strong is not None:
        assert blocks(game, s, p, "weak") is not None
        assert strong.recheck(game, p)
    assert (blocks(game, s, p, "eps_a", 0) is None) == (strong is None)
    assert (blocks(game, s, p, "eps_m", 1) is None) == (strong is None)


@given(st.data())
def test_canonical_form_invariant_and_injective(data):
    n = data.draw(st.integers(1, 8))
    p = data.draw(partitions_of(n))
    shuffled = data.draw(st.permutations([tuple(reversed(b)) for b in p.blocks]))
    assert canonical_form(Partition(tuple(shuffled))) == canonical_form(p)
    assert parse_canonical(canonical_form(p)) == p
    q = data.draw(partitions_of(n))
    assert (canonical_form(p) == canonical_form(q)) == (p == q)


def test_labels_dtype():
    assert Partition.singletons(3).labels.dtype == np.int64
