import networkx as nx
import pytest
from hypothesis import given, strategies as st

from coalitions import (DomainError, GameInstance, Graph, NonConvergenceError, Partition, arbmax,
                        find_blocking_coalition, find_core_k3, find_csc, find_eps_a_core,
                        find_eps_m_core, find_nash_stable, social_welfare, verify_membership)
from coalitions.fixtures import complete, fig1, fig5_empty_core, star_chain, star_chain_orders
from coalitions.oracle import core_emptiness
from coalitions.random_graphs import uniform_tree

from conftest import games

TRIANGLE = Graph(3, ((1, 2), (2, 3), (1, 3)))


def _connected(game, block):
    h = nx.Graph()
    h.add_nodes_from(block)
    h.add_edges_from((u, v) for u, v, _ in game.graph.edges if u in block and v in block)
    return nx.is_connected(h)


def _frozen_never_reused(stats):
    frozen = set()
    for step in stats.steps:
        assert not frozen & set(step.coalition)
        if step.frozen:
            frozen |= set(step.coalition)


# core, k = 3

def test_core_k3_triangle():
    p, stats = find_core_k3(GameInstance(TRIANGLE, 3))
    assert p == Partition(((1, 2, 3),))
    assert stats.removed_agents == 3


def test_core_k3_fig1():
    p, _ = find_core_k3(fig1())
    assert verify_membership(fig1(), p, "core")


def test_core_k3_edgeless():
    p, stats = find_core_k3(GameInstance(Graph(4), 3))
    assert p == Partition.singletons(4) and stats.outer_iterations == 0


def test_core_k3_domain():
    with pytest.raises(DomainError):
        find_core_k3(fig5_empty_core())
    with pytest.raises(DomainError):
        find_core_k3(fig1(4))


@given(games(max_n=10, ks=(3,)))
def test_core_k3_properties(game):
    p, stats = find_core_k3(game)
    assert verify_membership(game, p, "core")
    assert stats.outer_iterations <= game.graph.m + game.n / 3
    prev = 0
    for step in stats.steps:
        assert step.welfare >= prev + 2 or (step.frozen and len(step.coalition) == 3)
        prev = step.welfare
    _frozen_never_reused(stats)


# additive eps-core

def test_eps_a_k5_clique():
    game = complete(5, 4)
    p, _ = find_eps_a_core(game, 1)
    assert verify_membership(game, p, "eps_a", 1)


def test_eps_a_large_eps_keeps_singletons():
    p, stats = find_eps_a_core(fig1(4), 3)
    assert p == Partition.singletons(8) and stats.outer_iterations == 0


@pytest.mark.parametrize("seed", range(10))
def test_eps_a_trees(seed):
    game = GameInstance(uniform_tree(12, seed), 6)
    p, _ = find_eps_a_core(game, 2)
    assert verify_membership(game, p, "eps_a", 2)


def test_eps_a_budget():
    with pytest.raises(NonConvergenceError) as info:
        find_eps_a_core(complete(6, 4), 0, budget=0)
    assert info.value.stats.outer_iterations == 0


@given(games(max_n=10, ks=(4, 5, 6)))
def test_eps_a_properties(game):
    eps = game.k // 2 - 1
    p, stats = find_eps_a_core(game)
    assert verify_membership(game, p, "eps_a", eps)
    assert stats.outer_iterations <= game.graph.m + game.n / game.k
    prev = 0
    for step in stats.steps:
        assert step.welfare >= prev
        if step.welfare == prev:
            assert step.frozen
        prev = step.welfare
    _frozen_never_reused(stats)


# multiplicative eps-core

def test_eps_m_examples():
    game = complete(5, 4)
    p, _ = find_eps_m_core(game, 2)
    assert verify_membership(game, p, "eps_m", 2)
    p, _ = find_eps_m_core(GameInstance(Graph(4), 3))
    assert p == Partition.singletons(4)
    p, _ = find_eps_m_core(fig1(4))
    assert verify_membership(fig1(4), p, "eps_m", 2)


@given(games(max_n=10, ks=(3, 4, 5, 6)))
def test_eps_m_properties(game):
    p, stats = find_eps_m_core(game, 2)
    assert verify_membership(game, p, "eps_m", 2)
    traj = stats.welfare_trajectory
    assert all(b > a for a, b in zip([0] + traj, traj))
    _frozen_never_reused(stats)


# contractual strict core

def test_csc_examples():
    two = GameInstance(Graph(4, ((1, 2), (3, 4))), 4)
    assert find_csc(two)[0] == Partition(((1, 2), (3, 4)))
    p, _ = find_csc(fig5_empty_core())
    assert verify_membership(fig5_empty_core(), p, "csc")
    star = GameInstance(Graph(4, ((1, 2), (1, 3), (1, 4))), 4)
    assert find_csc(star)[0] == Partition(((1, 2, 3, 4),))


@given(games(max_n=9, ks=(2, 3, 4, 5), weighted=True))
def test_csc_properties(game):
    p, stats = find_csc(game)
    assert verify_membership(game, p, "csc")
    assert stats.outer_iterations <= max(0, game.n - 1)
    for a in p.blocks:
        assert _connected(game, a)
        for b in p.blocks:
            if a < b and len(a) + len(b) <= game.k:
                assert not any(game.graph.weight(x, y) for x in a for y in b)


# Nash stability

def test_nash_examples():
    assert find_nash_stable(GameInstance(Graph(2, ((1, 2),)), 2))[0] == Partition(((1, 2),))
    p, _ = find_nash_stable(complete(4, 3))
    assert sorted(len(b) for b in p.blocks) == [1, 3]
    p, _ = find_nash_stable(fig1())
    assert verify_membership(fig1(), p, "nash")


@given(games(max_n=10, ks=(2, 3, 4, 5)))
def test_nash_properties(game):
    p, stats = find_nash_stable(game)
    assert verify_membership(game, p, "nash")
    assert stats.outer_iterations <= game.graph.m


@given(games(max_n=9, ks=(2, 3, 4), weighted=True))
def test_nash_weighted(game):
    p, stats = find_nash_stable(game)
    assert verify_membership(game, p, "nash")
    traj = stats.welfare_trajectory
    assert all(b > a for a, b in zip([0] + traj, traj))


# arbmax

@pytest.mark.parametrize("k", [3, 4, 5])
def test_arbmax_star_chain(k):
    game = star_chain(k)
    bad, good = star_chain_orders(k)
    assert social_welfare(game, arbmax(game, bad)) == 2 * (k - 1)
    assert social_welfare(game, arbmax(game, good)) == 2 * k * (k - 1)


def test_arbmax_edgeless():
    assert arbmax(GameInstance(Graph(3), 2), [(1, 2)]) == Partition.singletons(3)


@given(games(max_n=9, ks=(2, 3, 4), weighted=True), st.integers(0, 10**6))
def test_arbmax_maximal(game, seed):
    p = arbmax(game, random_state=seed)
    p.validate(game.n, game.k)
    for a in p.blocks:
        assert _connected(game, a)
        for b in p.blocks:
            if a < b and len(a) + len(b) <= game.k:
                assert not any(game.graph.weight(x, y) for x in a for y in b)


# blocking coalition scan

def test_find_blocking_coalition_examples():
    w = find_blocking_coalition(GameInstance(Graph(3, ((2, 3),)), 2), Partition.singletons(3))
    assert w.coalition == (2, 3)
    game = fig1()
    cert = core_emptiness(game)
    assert find_blocking_coalition(game, cert.witness) is None


def test_fig5_always_blocked_spot_check():
    game = fig5_empty_core()
    for p in [Partition.singletons(9), find_csc(game)[0], find_nash_stable(game)[0]]:
        w = find_blocking_coalition(game, p)
        assert w is not None and w.recheck(game, p)


def test_seeded_scan_is_reproducible():
    game = complete(6, 3)
    p = Partition.singletons(6)
    a = find_blocking_coalition(game, p, scan_order=7)
    b = find_blocking_coalition(game, p, scan_order=7)
    assert a == b and a.recheck(game, p)
