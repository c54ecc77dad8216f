"""Random-restart local search for a core partition.

Starting from singletons, a randomly chosen strongly blocking coalition
``S`` of size at most ``k`` is applied (``P <- P^{-S}``) until none is left.
Every partition reached is stored in a seen-set. If ``restart_threshold``
consecutive updates only reach partitions that were already seen, the run
restarts from singletons (the seen-set is kept).

Choosing the coalition: a handful of uniform draws (size weighted by the
number of subsets of that size, then a uniform subset) usually hits a
blocking coalition quickly. When they all miss, every blocking coalition is
enumerated by a pruned depth-first search and one is picked uniformly. Both
routes pick a uniformly random blocking coalition, which is what a pass over
a random ordering of all coalitions would return. An empty enumeration
certifies that the partition is in the core.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .errors import DomainError, NonConvergenceError
from .game import GameInstance, Partition, canonical_form


@dataclass
class HeuristicStats:
    restarts: int = 0
    applied_blocks: int = 0
    final_attempt_blocks: int = 0
    seen_partitions: int = 0
    sampled_hits: int = 0
    full_scans: int = 0
    steps: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "restarts": self.restarts,
            "applied_blocks": self.applied_blocks,
            "final_attempt_blocks": self.final_attempt_blocks,
            "seen_partitions": self.seen_partitions,
            "sampled_hits": self.sampled_hits,
            "full_scans": self.full_scans,
        }


class HeuristicFailure(NonConvergenceError):
    """The restart budget ran out before a core partition was found."""


class _State:
    """Mutable partition with cached utilities."""

    def __init__(self, game: GameInstance):
        self.adj = game.graph.adj
        n = game.n
        self.owner = list(range(n + 1))
        self.blocks = {v: {v} for v in range(1, n + 1)}
        self.u = [0] * (n + 1)
        self.next_id = n + 1

    def apply(self, s) -> None:
        touched = set()
        for v in s:
            bid = self.owner[v]
            block = self.blocks[bid]
            block.discard(v)
            if block:
                touched.add(bid)
            else:
                del self.blocks[bid]
        bid = self.next_id
        self.next_id += 1
        self.blocks[bid] = set(s)
        for v in s:
            self.owner[v] = bid
        touched.add(bid)
        adj = self.adj
        for t in touched:
            block = self.blocks.get(t)
            if block is None:
                continue
            for x in block:
                nb = adj[x]
                self.u[x] = sum(nb.get(y, 0) for y in block)

    def partition(self) -> Partition:
        return Partition(tuple(tuple(b) for b in self.blocks.values()))


def _per_agent(adj, u, s) -> Optional[tuple]:
    out = []
    for v in s:
        nb = adj[v]
        w = sum(nb.get(x, 0) for x in s)
        if w <= u[v]:
            return None
        out.append((v, w, u[v]))
    return tuple(out)


def all_blocking_coalitions(game: GameInstance, u) -> list:
    """Every strongly blocking coalition of size 2..k, in lexicographic order.

    ``u[v]`` is agent ``v``'s current utility. Only agents that could gain at
    all take part, and a branch is cut as soon as some member can no longer
    reach ``u + 1`` with the remaining slots.
    """
    adj = game.graph.adj
    k = game.k
    cand = []
    for v in game.graph.agents:
        best = sorted(adj[v].values(), reverse=True)[:k - 1]
        if sum(best) > u[v]:
            cand.append(v)
    pos = {v: i for i, v in enumerate(cand)}
    nbr_pos = {v: sorted(pos[x] for x in adj[v] if x in pos) for v in cand}
    nbr_set = {v: frozenset(ps) for v, ps in nbr_pos.items()}
    maxw = {v: max((adj[v][x] for x in adj[v] if x in pos), default=0) for v in cand}
    found = []
    members: list = []
    wsum: dict = {}

    def rec(last: int) -> None:
        size = len(members)
        if size >= 2 and all(wsum[v] > u[v] for v in members):
            found.append(tuple(members))
        if size == k:
            return
        room = k - size
        allowed = None
        for v in members:
            need = u[v] + 1 - wsum[v]
            if need > 0:
                ahead = len(nbr_pos[v]) - bisect_right(nbr_pos[v], last)
                if min(room, ahead) * maxw[v] < need:
                    return
                if need > (room - 1) * maxw[v]:
                    # the next member must be a neighbour of v
                    allowed = nbr_set[v] if allowed is None else allowed & nbr_set[v]
        if allowed is None:
            nxt = range(last + 1, len(cand))
        else:
            nxt = sorted(i for i in allowed if i > last)
        for i in nxt:
            c = cand[i]
            nb = adj[c]
            wc = 0
            for v in members:
                w = nb.get(v, 0)
                wsum[v] += w
                wc += w
            wsum[c] = wc
            members.append(c)
            rec(i)
            members.pop()
            del wsum[c]
            for v in members:
                wsum[v] -= nb.get(v, 0)

    rec(-1)
    return found


def core_heuristic(game: GameInstance, rng=None, restart_threshold: int = 100,
                   max_restarts: int = 50, samples: int = 200, record_steps: bool = False):
    """Search for a core partition of ``game``; returns ``(partition, stats)``.

    ``rng`` is a seed or :class:`random.Random`. Raises
    :class:`HeuristicFailure` once more than ``max_restarts`` restarts would
    be needed. With ``record_steps`` every applied coalition is kept in
    ``stats.steps`` as ``(v, W(v, S), u(v, P))`` triples.
    """
    if restart_threshold < 1 or max_restarts < 0:
        raise DomainError("restart_threshold must be >= 1 and max_restarts >= 0")
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    n, k = game.n, game.k
    adj = game.graph.adj
    agents = list(game.graph.agents)
    sizes = list(range(2, min(k, n) + 1))
    cum, total = [], 0
    for j in sizes:
        total += comb(n, j)
        cum.append(total)

    stats = HeuristicStats()
    seen = set()
    while True:
        state = _State(game)
        seen.add(canonical_form(state.partition()))
        stale = 0
        stats.final_attempt_blocks = 0
        while True:
            chosen = None
            for _ in range(samples if sizes else 0):
                j = rng.choices(sizes, cum_weights=cum)[0]
                s = tuple(sorted(rng.sample(agents, j)))
                chosen = _per_agent(adj, state.u, s)
                if chosen is not None:
                    stats.sampled_hits += 1
                    break
            if chosen is None:
                stats.full_scans += 1
                options = all_blocking_coalitions(game, state.u)
                if not options:
                    stats.seen_partitions = len(seen)
                    return state.partition(), stats
                chosen = _per_agent(adj, state.u, rng.choice(options))
            if record_steps:
                stats.steps.append(chosen)
            state.apply([v for v, _, _ in chosen])
            stats.applied_blocks += 1
            stats.final_attempt_blocks += 1
            key = canonical_form(state.partition())
            if key in seen:
                stale += 1
            else:
                seen.add(key)
                stale = 0
            if stale >= restart_threshold:
                break
        if stats.restarts >= max_restarts:
            stats.seen_partitions = len(seen)
            raise HeuristicFailure(
                f"no core partition found after {max_restarts} restarts", stats)
        stats.restarts += 1
