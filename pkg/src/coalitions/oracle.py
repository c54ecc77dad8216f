"""Brute-force ground truth for small games.

Everything here is exhaustive and deliberately independent of the solvers
in :mod:`coalitions.stability`: membership checks scan every coalition of
size 2..k with numpy, partitions are enumerated outright, and optimal
welfare comes from a dynamic program over subsets.

Partition enumeration order: the block holding the smallest unplaced agent
is chosen first, trying extra members by size (0, 1, ..., k - 1) and then
lexicographically, recursively for the rest. ``opt_max_util`` breaks ties
toward the first optimal partition in this order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Optional

import numpy as np

from .errors import DomainError, InstanceTooLargeError
from .game import (BlockingWitness, GameInstance, Graph, Partition, _as_eps, blocks,
                   break_off, utilities)
from .matching import Matching

ENUMERATION_GUARD = 14
SUBSET_GUARD = 200_000  # about C(30, <=5): the largest simulation instances
SEARCH_GUARD = 30
CONCEPTS = ("core", "sc", "csc", "eps_a", "eps_m", "nash")


def _check_guard(n: int, limit: int, what: str, force: bool) -> None:
    if not force and n > limit:
        raise InstanceTooLargeError(f"{what} refuses n={n} > {limit}; pass force=True to override")


def enumerate_partitions(n: int, k: int, force: bool = False) -> Iterator[Partition]:
    """Yield every partition of ``1..n`` whose blocks have at most ``k`` agents, once each."""
    if n < 0 or k < 1:
        raise DomainError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    _check_guard(n, ENUMERATION_GUARD, "enumerate_partitions", force)

    def rec(remaining: tuple, chosen: list):
        if not remaining:
            yield Partition(tuple(chosen))
            return
        head, rest = remaining[0], remaining[1:]
        for size in range(min(k - 1, len(rest)) + 1):
            for extra in combinations(rest, size):
                taken = set(extra)
                chosen.append((head,) + extra)
                yield from rec(tuple(v for v in rest if v not in taken), chosen)
                chosen.pop()

    yield from rec(tuple(range(1, n + 1)), [])


def opt_max_util(game: GameInstance, force: bool = False):
    """Welfare-maximal k-bounded partition; returns ``(partition, welfare)``."""
    g, k, n = game.graph, game.k, game.n
    _check_guard(n, ENUMERATION_GUARD, "opt_max_util", force)
    adj = g.adj

    @lru_cache(maxsize=None)
    def inner(bits: int) -> int:
        # total weight of the edges inside the agent set encoded by ``bits``
        if bits == 0:
            return 0
        low = bits & -bits
        v = low.bit_length()
        rest = bits ^ low
        return inner(rest) + sum(w for x, w in adj[v].items() if rest >> (x - 1) & 1)

    @lru_cache(maxsize=None)
    def best(remaining: tuple):
        if not remaining:
            return 0, ()
        head, rest = remaining[0], remaining[1:]
        top, top_choice = -1, None
        for size in range(min(k - 1, len(rest)) + 1):
            for extra in combinations(rest, size):
                bits = 1 << (head - 1)
                for x in extra:
                    bits |= 1 << (x - 1)
                taken = set(extra)
                value, tail = best(tuple(v for v in rest if v not in taken))
                value += 2 * inner(bits)
                if value > top:
                    top, top_choice = value, (((head,) + extra),) + tail
        return top, top_choice

    value, chosen = best(tuple(range(1, n + 1)))
    best.cache_clear()
    inner.cache_clear()
    return Partition(chosen), value


@dataclass
class EmptinessCertificate:
    """Outcome of an exhaustive emptiness check.

    For a non-empty verdict ``witness`` is a stable partition. For an empty
    verdict ``samples`` pairs a few partitions (the first ones in
    enumeration order) with coalitions that block them.
    """

    concept: str
    verdict: str
    witness: Optional[Partition] = None
    samples: list = field(default_factory=list)
    method: str = "exhaustive"
    explored: int = 0

    @property
    def empty(self) -> bool:
        return self.verdict == "empty"

    def to_dict(self) -> dict:
        return {
            "concept": self.concept,
            "verdict": self.verdict,
            "method": self.method,
            "explored": self.explored,
            "witness": None if self.witness is None else self.witness.as_lists(),
            "samples": [{"partition": p.as_lists(), "blocking": w.to_dict()} for p, w in self.samples],
        }


def _first_blocking_any(game: GameInstance, p: Partition, mode: str) -> Optional[BlockingWitness]:
    for size in range(2, game.k + 1):
        for s in combinations(game.graph.agents, size):
            w = blocks(game, s, p, mode)
            if w is not None:
                return w
    return None


def _connected_sets(adj, start: int, allowed, k: int) -> list:
    """All connected vertex sets of size <= k that contain ``start`` and lie in ``allowed``."""
    found = {frozenset((start,))}
    frontier = [frozenset((start,))]
    while frontier:
        nxt = []
        for s in frontier:
            if len(s) == k:
                continue
            for v in s:
                for x in adj[v]:
                    if x in allowed and x not in s:
                        t = s | {x}
                        if t not in found:
                            found.add(t)
                            nxt.append(t)
        frontier = nxt
    return list(found)


def _search_stable(game: GameInstance, mode: str):
    """Backtracking search for a partition with no ``mode``-blocking coalition.

    Splitting a disconnected block into its components changes no agent's
    utility, so it suffices to search partitions whose blocks induce
    connected subgraphs. A branch dies as soon as some connected coalition
    made only of placed agents blocks, since later choices cannot change
    those agents' utilities.
    """
    g, k = game.graph, game.k
    adj = g.adj
    u = [0] * (g.n + 1)
    placed: set = set()
    chosen: list = []
    explored = 0

    def blocked_by_new(block) -> bool:
        seen = set()
        for v in block:
            for s in _connected_sets(adj, v, placed, k):
                if len(s) < 2 or s in seen:
                    continue
                seen.add(s)
                ws = [(x, sum(adj[x].get(y, 0) for y in s)) for x in s]
                if mode == "strong":
                    if all(w > u[x] for x, w in ws):
                        return True
                elif all(w >= u[x] for x, w in ws) and any(w > u[x] for x, w in ws):
                    return True
        return False

    def pick() -> int:
        best = None
        for v in g.agents:
            if v in placed:
                continue
            key = (-sum(1 for x in adj[v] if x in placed), len(adj[v]), v)
            if best is None or key < best:
                best = key
        return best[2]

    def rec() -> bool:
        nonlocal explored
        if len(placed) == g.n:
            return True
        a = pick()
        free = set(g.agents) - placed
        options = _connected_sets(adj, a, free, k)
        options.sort(key=lambda s: (-sum(adj[x].get(y, 0) for x in s for y in s), sorted(s)))
        for s in options:
            explored += 1
            for x in s:
                u[x] = sum(adj[x].get(y, 0) for y in s)
            placed.update(s)
            chosen.append(tuple(s))
            if not blocked_by_new(s) and rec():
                return True
            chosen.pop()
            placed.difference_update(s)
        return False

    found = rec()
    return (Partition(tuple(chosen)) if found else None), explored


def _emptiness(game: GameInstance, mode: str, concept: str, method: str, force: bool,
               sample: int) -> EmptinessCertificate:
    n = game.n
    if method == "auto":
        method = "exhaustive" if n <= 10 else "search"
    if method == "exhaustive":
        _check_guard(n, ENUMERATION_GUARD, f"{concept} emptiness (exhaustive)", force)
        samples = []
        explored = 0
        for p in enumerate_partitions(n, game.k, force=True):
            explored += 1
            w = _first_blocking_any(game, p, mode)
            if w is None:
                return EmptinessCertificate(concept, "nonempty", p, [], method, explored)
            if len(samples) < sample:
                samples.append((p, w))
        return EmptinessCertificate(concept, "empty", None, samples, method, explored)
    if method == "search":
        _check_guard(n, SEARCH_GUARD, f"{concept} emptiness (search)", force)
        p, explored = _search_stable(game, mode)
        if p is not None:
            return EmptinessCertificate(concept, "nonempty", p, [], method, explored)
        samples = []
        for q in enumerate_partitions(n, game.k, force=True):
            if len(samples) >= sample:
                break
            samples.append((q, _first_blocking_any(game, q, mode)))
        return EmptinessCertificate(concept, "empty", None, samples, method, explored)
    raise DomainError(f"unknown method {method!r}; expected auto, exhaustive or search")


def core_emptiness(game: GameInstance, method: str = "auto", force: bool = False,
                   sample: int = 5) -> EmptinessCertificate:
    """Decide whether any k-bounded partition has no strongly blocking coalition.

    ``method="exhaustive"`` walks every k-bounded partition; ``"search"``
    runs the pruned backtracking search over connected blocks. ``"auto"``
    enumerates up to 10 agents and searches beyond that.
    """
    return _emptiness(game, "strong", "core", method, force, sample)


def sc_emptiness(game: GameInstance, method: str = "auto", force: bool = False,
                 sample: int = 5) -> EmptinessCertificate:
    """Decide whether any k-bounded partition has no weakly blocking coalition."""
    return _emptiness(game, "weak", "sc", method, force, sample)


@lru_cache(maxsize=64)
def _combos(n: int, size: int) -> np.ndarray:
    return np.array(list(combinations(range(n), size)), dtype=np.intp).reshape(-1, size)


def _subset_count(n: int, k: int) -> int:
    return sum(comb(n, j) for j in range(2, min(k, n) + 1))


def _vector_blocking(game: GameInstance, p: Partition, mode: str, eps, first_only: bool = True,
                     chunk: int = 20_000):
    """Coalitions (0-based index arrays) that block ``p``, scanning every subset of size 2..k."""
    g = game.graph
    a = g.to_matrix()
    u = np.array(utilities(g, p)[1:], dtype=np.int64)
    found = []
    for size in range(2, min(game.k, g.n) + 1):
        combos = _combos(g.n, size)
        for start in range(0, len(combos), chunk):
            c = combos[start:start + chunk]
            w = a[c[:, :, None], c[:, None, :]].sum(axis=2)
            uc = u[c]
            if mode == "strong":
                hit = (w > uc).all(axis=1)
            elif mode == "weak":
                hit = (w >= uc).all(axis=1) & (w > uc).any(axis=1)
            elif mode == "eps_a":
                hit = (eps.denominator * (w - uc) > eps.numerator * game.weight_scale).all(axis=1)
            else:
                hit = (eps.denominator * w > eps.numerator * uc).all(axis=1)
            idx = np.flatnonzero(hit)
            if len(idx):
                if first_only:
                    return [c[idx[0]]]
                found.extend(c[idx])
    return found


def _nash_violation(game: GameInstance, p: Partition) -> Optional[dict]:
    g = game.graph
    u = utilities(g, p)
    for v in g.agents:
        for s in p.blocks:
            if v in s or len(s) > game.k - 1:
                continue
            w = sum(g.adj[v].get(x, 0) for x in s)
            if w > u[v]:
                return {"agent": v, "target": list(s), "W": w, "u": u[v]}
    return None


def membership_violation(game: GameInstance, p: Partition, concept: str, eps=None,
                         force: bool = False):
    """Return evidence that ``p`` is not in ``concept``, or ``None`` if it is.

    Evidence is a :class:`BlockingWitness` for the coalition-based concepts
    and a dict describing the improving move for ``nash``.
    """
    if concept not in CONCEPTS:
        raise DomainError(f"unknown concept {concept!r}; expected one of {CONCEPTS}")
    p.validate(game.n, game.k)
    if concept == "nash":
        return _nash_violation(game, p)
    if not force and _subset_count(game.n, game.k) > SUBSET_GUARD:
        raise InstanceTooLargeError(f"membership check would scan {_subset_count(game.n, game.k)}"
                                    f" coalitions (guard {SUBSET_GUARD}); pass force=True to override")
    mode = {"core": "strong", "sc": "weak", "csc": "weak", "eps_a": "eps_a", "eps_m": "eps_m"}[concept]
    eps = _as_eps(mode, eps)
    if concept != "csc":
        hits = _vector_blocking(game, p, mode, eps)
        if not hits:
            return None
        return blocks(game, [int(x) + 1 for x in hits[0]], p, mode, eps)
    u = utilities(game, p)
    for c in _vector_blocking(game, p, "weak", None, first_only=False):
        s = [int(x) + 1 for x in c]
        after = utilities(game, break_off(p, s))
        if all(after[v] >= u[v] for v in game.graph.agents):
            return blocks(game, s, p, "weak")
    return None


def verify_membership(game: GameInstance, p: Partition, concept: str, eps=None,
                      force: bool = False) -> bool:
    return membership_violation(game, p, concept, eps, force) is None


def kn_matching_partition(n: int) -> list:
    """Split the edges of ``K_n`` into ``n`` matchings by parallel classes of a regular polygon.

    Chords ``(a, b)`` of a regular ``n``-gon are parallel exactly when
    ``a + b`` agrees modulo ``n``, so each residue class is a matching. The
    classes are listed starting from the one holding the side ``(1, 2)``.
    """
    if n < 3:
        raise DomainError(f"kn_matching_partition needs n >= 3, got {n}")
    out = []
    for s in range(3, n + 3):
        r = s % n
        out.append(Matching(tuple((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
                                  if (a + b) % n == r)))
    return out


def all_matchings(g: Graph) -> Iterator[tuple]:
    """Every matching of ``g`` (including the empty one) as a tuple of edges."""
    edges = [(u, v) for u, v, _ in sorted(g.edges)]

    def rec(i: int, used: frozenset, acc: tuple):
        if i == len(edges):
            yield acc
            return
        yield from rec(i + 1, used, acc)
        u, v = edges[i]
        if u not in used and v not in used:
            yield from rec(i + 1, used | {u, v}, acc + ((u, v),))

    yield from rec(0, frozenset(), ())


def brute_force_matching_optimum(g: Graph, cardinality: bool = False) -> int:
    if cardinality:
        return max(len(m) for m in all_matchings(g))
    return max(sum(g.weight(u, v) for u, v in m) for m in all_matchings(g))
