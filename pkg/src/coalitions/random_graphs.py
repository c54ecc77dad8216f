"""Seeded random graph families for the core-heuristic simulations.

Every generator draws from a :class:`random.Random` (Mersenne Twister), so
an integer seed reproduces the same graph on any platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import networkx as nx

from .errors import DomainError
from .game import GameInstance, Graph

FAMILIES = ("gnp", "uniform_tree", "watts_strogatz")


@dataclass(frozen=True)
class RngStream:
    """A named deterministic random stream."""

    seed: int
    algorithm: str = "mt19937"

    def generator(self) -> random.Random:
        return random.Random(self.seed)


def _as_rng(rng) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    return random.Random(rng)


def _from_nx(n: int, g: nx.Graph) -> Graph:
    return Graph(n, tuple(sorted((min(a, b) + 1, max(a, b) + 1) for a, b in g.edges())))


def gnp(n: int, p: float, rng=None) -> Graph:
    """Each of the ``n(n-1)/2`` pairs is an edge independently with probability ``p``."""
    if not 0 <= p <= 1:
        raise DomainError(f"edge probability must lie in [0, 1], got {p}")
    return _from_nx(n, nx.gnp_random_graph(n, p, seed=_as_rng(rng)))


def uniform_tree(n: int, rng=None) -> Graph:
    """Uniform labelled tree on ``n`` agents via a random Pruefer sequence."""
    if n < 1:
        raise DomainError(f"a tree needs at least one agent, got n={n}")
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, ((1, 2),))
    r = _as_rng(rng)
    seq = [r.randrange(n) for _ in range(n - 2)]
    return _from_nx(n, nx.from_prufer_sequence(seq))


def watts_strogatz(n: int, k_nbrs: int, p_rewire: float, rng=None, tries: int = 100) -> Graph:
    """Connected small-world graph.

    A ring lattice joins each agent to ``k_nbrs // 2`` neighbours on each
    side; every lattice edge is then rewired with probability ``p_rewire``.
    The whole draw is repeated until the result is connected, at most
    ``tries`` times. Rewiring keeps the edge count at ``n * (k_nbrs // 2)``.
    """
    try:
        g = nx.connected_watts_strogatz_graph(n, k_nbrs, p_rewire, tries=tries, seed=_as_rng(rng))
    except nx.NetworkXError as exc:
        raise DomainError(f"no connected Watts-Strogatz graph after {tries} tries") from exc
    return _from_nx(n, g)


def parse_family(spec: str):
    """Split ``"name(a, b)"`` into ``("name", [a, b])`` with numeric arguments."""
    name, _, rest = spec.strip().partition("(")
    args = []
    for a in rest.rstrip(") ").split(","):
        a = a.strip()
        if a:
            args.append(float(a) if any(c in a for c in ".eE") else int(a))
    return name.strip(), args


def gen_random(family: str, n: int, k: int, rng=None, params=()) -> GameInstance:
    """Draw a game from one of the named families.

    ``family`` is ``gnp``, ``uniform_tree`` or ``watts_strogatz``; its
    parameters come from ``params`` or inline, as in ``"gnp(0.5)"`` or
    ``"watts_strogatz(5, 0.5)"``.
    """
    name, inline = parse_family(family)
    args = list(inline) + list(params)
    if name == "gnp":
        graph = gnp(n, *(args or [0.5]), rng=rng)
    elif name == "uniform_tree":
        graph = uniform_tree(n, rng=rng)
    elif name == "watts_strogatz":
        graph = watts_strogatz(n, *(args or [5, 0.5]), rng=rng)
    else:
        raise DomainError(f"unknown random family {family!r}; expected one of {FAMILIES}")
    return GameInstance(graph, k)
