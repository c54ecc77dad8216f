"""Constructive stability solvers.

All solvers start from the all-singletons partition and repeatedly apply an
improving deviation until none is left. Scan orders are fixed so runs are
reproducible:

* blocking coalitions: subsets of the active agents by size (2, 3, ..., k),
  lexicographic within a size, restarting from the top after each applied
  coalition;
* contractual strict core merges: block pairs in canonical partition order;
* Nash moves: agents ascending, target blocks in canonical partition order.

Every solver carries an iteration budget (default ``10 * (|E| + n)``) and
raises :class:`NonConvergenceError` if it runs out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional

from .errors import DomainError, NonConvergenceError
from .game import (BlockingWitness, GameInstance, Partition, _as_eps, break_off,
                   social_welfare, utilities)


@dataclass
class AppliedStep:
    coalition: tuple
    welfare: int
    frozen: bool = False


@dataclass
class SolverStats:
    """Bookkeeping for one solver run.

    ``outer_iterations`` counts applied deviations (blocking coalitions,
    merges or moves); the final scan that finds nothing is not counted.
    """

    outer_iterations: int = 0
    welfare_trajectory: list = field(default_factory=list)
    removed_agents: int = 0
    steps: list = field(default_factory=list)

    def record(self, coalition, welfare: int, frozen: bool = False) -> None:
        self.outer_iterations += 1
        self.welfare_trajectory.append(welfare)
        self.steps.append(AppliedStep(tuple(coalition), welfare, frozen))

    def to_dict(self) -> dict:
        return {
            "outer_iterations": self.outer_iterations,
            "welfare_trajectory": list(self.welfare_trajectory),
            "removed_agents": self.removed_agents,
        }


def default_budget(game: GameInstance) -> int:
    return 10 * (game.graph.m + game.n)


def _agent_test(mode: str, eps: Optional[Fraction], scale: int) -> Callable[[int, int], bool]:
    if mode == "strong":
        return lambda w, u: w > u
    if mode == "weak":
        return lambda w, u: w >= u
    if mode == "eps_a":
        p, q = eps.numerator, eps.denominator
        return lambda w, u: q * (w - u) > p * scale
    if mode == "eps_m":
        p, q = eps.numerator, eps.denominator
        return lambda w, u: q * w > p * u
    raise DomainError(f"unknown blocking mode {mode!r}")


def _scan_order(active, k: int, scan_order):
    if scan_order is None or scan_order == "lex":
        for size in range(2, k + 1):
            yield from combinations(active, size)
        return
    rng = scan_order if isinstance(scan_order, random.Random) else random.Random(scan_order)
    subsets = [s for size in range(2, k + 1) for s in combinations(active, size)]
    rng.shuffle(subsets)
    yield from subsets


def _first_blocking(game: GameInstance, u: list, active, mode: str, eps, scan_order=None):
    adj = game.graph.adj
    ok = _agent_test(mode, eps, game.weight_scale)
    for s in _scan_order(active, game.k, scan_order):
        per_agent = []
        for v in s:
            nb = adj[v]
            w = sum(nb.get(x, 0) for x in s)
            if not ok(w, u[v]):
                break
            per_agent.append((v, w, u[v]))
        else:
            if mode == "weak" and all(w == uv for _, w, uv in per_agent):
                continue
            return BlockingWitness(s, mode, tuple(per_agent), eps, game.weight_scale)
    return None


def find_blocking_coalition(game: GameInstance, p: Partition, mode: str = "strong", eps=None,
                            scan_order=None, active: Optional[Iterable[int]] = None
                            ) -> Optional[BlockingWitness]:
    """First coalition of size 2..k (drawn from ``active``) that blocks ``p``, or ``None``.

    ``scan_order`` is ``"lex"``/``None`` for size-ascending lexicographic order,
    or a seed / :class:`random.Random` for a uniformly shuffled full pass.
    ``None`` as a result certifies that ``p`` is stable under ``mode``
    with respect to coalitions inside ``active``.
    """
    eps = _as_eps(mode, eps)
    p.validate(game.n, game.k)
    active = sorted(game.graph.agents if active is None else set(active))
    return _first_blocking(game, utilities(game, p), active, mode, eps, scan_order)


def _require_unweighted(game: GameInstance, name: str) -> None:
    if not game.graph.is_unweighted:
        raise DomainError(f"{name} is only defined for unweighted games")


def _block_until_stable(game: GameInstance, mode: str, eps, freeze, budget: Optional[int],
                        name: str):
    g = game.graph
    budget = default_budget(game) if budget is None else budget
    p = Partition.singletons(g.n)
    u = [0] * (g.n + 1)
    active = list(g.agents)
    stats = SolverStats()
    while True:
        witness = _first_blocking(game, u, active, mode, eps)
        if witness is None:
            return p, stats
        if stats.outer_iterations >= budget:
            raise NonConvergenceError(f"{name} did not converge within {budget} iterations", stats)
        p = break_off(p, witness.coalition)
        u = utilities(g, p)
        frozen = freeze(witness)
        if frozen:
            gone = set(witness.coalition)
            active = [v for v in active if v not in gone]
            stats.removed_agents += len(gone)
        stats.record(witness.coalition, social_welfare(g, p), frozen)


def find_core_k3(game: GameInstance, budget: Optional[int] = None):
    """Core partition for an unweighted game with ``k = 3``.

    Strongly blocking pairs and triples are applied until none remains; a
    triangle that breaks off can never be part of a later blocking coalition,
    so its agents leave the active set.
    """
    _require_unweighted(game, "find_core_k3")
    if game.k != 3:
        raise DomainError(f"find_core_k3 needs k = 3, got k = {game.k}")

    def is_triangle(w: BlockingWitness) -> bool:
        return len(w.coalition) == 3 and all(ws == 2 for _, ws, _ in w.per_agent)

    return _block_until_stable(game, "strong", None, is_triangle, budget, "find_core_k3")


def find_eps_a_core(game: GameInstance, eps_a=None, budget: Optional[int] = None):
    """Additive eps-core partition for an unweighted game.

    ``eps_a`` defaults to ``floor(k / 2) - 1``, the smallest value for which
    termination is guaranteed. A coalition whose members all reach
    ``W >= k - 1 - eps_a`` is frozen.
    """
    _require_unweighted(game, "find_eps_a_core")
    k = game.k
    eps = _as_eps("eps_a", k // 2 - 1 if eps_a is None else eps_a)
    threshold = k - 1 - eps

    def freeze(w: BlockingWitness) -> bool:
        return all(ws >= threshold for _, ws, _ in w.per_agent)

    return _block_until_stable(game, "eps_a", eps, freeze, budget, "find_eps_a_core")


def find_eps_m_core(game: GameInstance, eps_m=2, budget: Optional[int] = None):
    """Multiplicative eps-core partition for an unweighted game.

    A coalition blocks when every member gets ``W > eps_m * u``; it is frozen
    when every member reaches ``W >= (k - 1) / eps_m``. For ``eps_m >= 2``
    each applied coalition raises welfare, so the run terminates.
    """
    _require_unweighted(game, "find_eps_m_core")
    eps = _as_eps("eps_m", eps_m)
    if eps == 0:
        raise DomainError("eps_m must be positive")
    k = game.k

    def freeze(w: BlockingWitness) -> bool:
        return all(ws * eps >= k - 1 for _, ws, _ in w.per_agent)

    return _block_until_stable(game, "eps_m", eps, freeze, budget, "find_eps_m_core")


def _cross_weight(adj, a, b) -> int:
    return sum(adj[x].get(y, 0) for x in a for y in b)


def find_csc(game: GameInstance, budget: Optional[int] = None):
    """Contractual strict core partition by greedy pairwise merging.

    Two blocks merge when they fit within ``k`` together and some edge runs
    between them (which is exactly when the merge raises welfare). Every
    block therefore stays connected, and no strict subset can leave it
    without hurting someone left behind.
    """
    g, k = game.graph, game.k
    budget = default_budget(game) if budget is None else budget
    p = Partition.singletons(g.n)
    stats = SolverStats()
    merged = True
    while merged:
        merged = False
        for a, b in combinations(p.blocks, 2):
            if len(a) + len(b) <= k and _cross_weight(g.adj, a, b) > 0:
                if stats.outer_iterations >= budget:
                    raise NonConvergenceError(f"find_csc did not converge within {budget} merges",
                                              stats)
                p = break_off(p, a + b)
                stats.record(a + b, social_welfare(g, p))
                merged = True
                break
    return p, stats


def find_nash_stable(game: GameInstance, budget: Optional[int] = None):
    """Nash stable partition via improving unilateral moves.

    An agent moves to a block of size at most ``k - 1`` whenever its utility
    there is strictly higher. Each move raises welfare, so on unweighted games
    there are at most ``|E|`` moves; weighted games also terminate.
    """
    g, k = game.graph, game.k
    budget = default_budget(game) if budget is None else budget
    p = Partition.singletons(g.n)
    stats = SolverStats()
    moved = True
    while moved:
        moved = False
        u = utilities(g, p)
        for v in g.agents:
            nb = g.adj[v]
            for s in p.blocks:
                if v in s or len(s) > k - 1:
                    continue
                if sum(nb.get(x, 0) for x in s) > u[v]:
                    if stats.outer_iterations >= budget:
                        raise NonConvergenceError(
                            f"find_nash_stable did not converge within {budget} moves", stats)
                    target = s + (v,)
                    p = break_off(p, target)
                    stats.record(target, social_welfare(g, p))
                    moved = True
                    break
            if moved:
                break
    return p, stats


def arbmax(game: GameInstance, merge_order=None, random_state=None) -> Partition:
    """A partition that is maximal under welfare-improving pairwise merges.

    ``merge_order`` is a sequence of agent pairs ``(a, b)``; each asks to
    merge the blocks currently holding ``a`` and ``b``, which happens when
    they are different, fit within ``k`` together and have an edge between
    them. Pairs that do not qualify are skipped. When the order is
    exhausted (or was not given) the remaining merges are made by sweeping
    the edge list, in sorted order or shuffled by ``random_state`` when one is
    supplied, until no merge is possible.
    """
    g, k = game.graph, game.k
    owner = {v: (v,) for v in g.agents}

    def try_merge(a: int, b: int) -> bool:
        ba, bb = owner[a], owner[b]
        if ba == bb or len(ba) + len(bb) > k or _cross_weight(g.adj, ba, bb) == 0:
            return False
        new = tuple(sorted(ba + bb))
        for v in new:
            owner[v] = new
        return True

    for a, b in merge_order or ():
        if not (1 <= a <= g.n and 1 <= b <= g.n):
            raise DomainError(f"merge pair ({a}, {b}) names an agent outside 1..{g.n}")
        try_merge(a, b)

    sweep = [(u, v) for u, v, _ in sorted(g.edges)]
    if random_state is not None:
        rng = random_state if isinstance(random_state, random.Random) else random.Random(random_state)
        rng.shuffle(sweep)
    changed = True
    while changed:
        changed = False
        for a, b in sweep:
            changed |= try_merge(a, b)
    return Partition(tuple(set(owner.values())))
