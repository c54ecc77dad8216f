"""Exact maximum-weight and maximum-cardinality matching on general graphs.

The blossom search itself is delegated to :func:`networkx.max_weight_matching`.
What this module adds is a deterministic tie-break: among all optimal
matchings it returns the one whose sorted edge list is lexicographically
smallest. This is done by perturbing weights,

    w'(e_i) = w(e_i) * 2**m + 2**(m - 1 - i)

where ``e_0 < e_1 < ... < e_{m-1}`` are the edges in sorted order. The bonus
terms sum to less than ``2**m``, so they never override a real weight
difference, and among equal-weight matchings the bonus is largest exactly for
the one containing the smallest edge of the symmetric difference. Python
integers keep the perturbed weights exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .errors import DomainError
from .game import Graph


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint edges, stored as sorted ``(u, v)`` pairs with ``u < v``."""

    edges: tuple

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in self.edges))
        used = set()
        for a, b in pairs:
            if a == b or a in used or b in used:
                raise DomainError(f"edge ({a}, {b}) is not vertex-disjoint from the rest")
            used.update((a, b))
        object.__setattr__(self, "edges", pairs)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def weight(self, g: Graph) -> int:
        return sum(g.weight(a, b) for a, b in self.edges)

    def is_matching_of(self, g: Graph) -> bool:
        return all(g.weight(a, b) > 0 for a, b in self.edges)


def lexmin_max_weight_matching(edges) -> list:
    """Maximum-weight matching of an edge list ``[(a, b, w), ...]`` with positive integer weights.

    Vertices may be any sortable hashable labels. Returns sorted ``(a, b)``
    pairs with ``a < b``; ties are broken towards the lexicographically
    smallest sorted edge list.
    """
    order = sorted((min(a, b), max(a, b), int(w)) for a, b, w in edges)
    if not order:
        return []
    m = len(order)
    scale = 1 << m
    g = nx.Graph()
    for rank, (a, b, w) in enumerate(order):
        if w <= 0:
            raise DomainError(f"matching weights must be positive, edge ({a}, {b}) has {w}")
        g.add_edge(a, b, weight=w * scale + (1 << (m - 1 - rank)))
    mate = nx.max_weight_matching(g, maxcardinality=False, weight="weight")
    return sorted((min(a, b), max(a, b)) for a, b in mate)


def max_weight_matching(g: Graph) -> Matching:
    return Matching(tuple(lexmin_max_weight_matching(g.edges)))


def max_cardinality_matching(g: Graph) -> Matching:
    # with unit weights a maximum-weight matching is a maximum-cardinality one
    return Matching(tuple(lexmin_max_weight_matching((u, v, 1) for u, v, _ in g.edges)))
