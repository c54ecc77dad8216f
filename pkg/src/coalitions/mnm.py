"""Match and Merge: ``k - 1`` rounds of maximum (weight) matching and contraction.

Round ``l`` computes a maximum-weight matching ``M_l`` of the current merged
graph ``G_l`` and contracts every matched pair into one node. The next graph
``G_{l+1}`` keeps every unmatched node and receives an edge between a freshly
merged node ``N = a + b`` and an unmatched node ``q`` exactly when ``a`` or
``b`` was adjacent to ``q`` in ``G_l``. Edges between two unmatched nodes
are kept as they are (a maximum matching leaves none). Two conventions fill
gaps in that construction:

* an edge is only kept when ``|N| + |q| <= k``, so no block can outgrow the
  cap; the matchings the approximation argument relies on (one original agent
  joining a node of size ``l``) always satisfy it;
* the weight of ``(N, q)`` is the total original weight between their
  constituents, so the final welfare equals twice the summed matched weight.

Freshly merged nodes are never joined to each other. Merging two unified
nodes would break the fixed points of the construction (for example, on the
complete graph ``K_{2k}`` the first perfect matching is final).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .game import GameInstance, Graph, Partition, social_welfare
from .matching import lexmin_max_weight_matching


@dataclass(frozen=True)
class MergedGraph:
    """The contracted graph ``G_l``.

    ``nodes[i]`` is the sorted tuple of original agents merged into node ``i``;
    nodes are ordered by their smallest agent. ``edges`` maps index pairs
    ``(i, j)`` with ``i < j`` to the original weight running between them.
    """

    graph: Graph
    nodes: tuple
    edges: dict = field(hash=False, compare=False)
    round: int = 1

    @classmethod
    def from_graph(cls, g: Graph) -> "MergedGraph":
        return cls(g, tuple((v,) for v in g.agents),
                   {(u - 1, v - 1): w for u, v, w in g.edges}, 1)

    def edge_list(self) -> list:
        return [(i, j, w) for (i, j), w in self.edges.items()]

    def index_of(self, constituents) -> int:
        return self.nodes.index(tuple(sorted(constituents)))

    def summary(self) -> dict:
        return {"round": self.round, "nodes": [list(c) for c in self.nodes],
                "edges": [[list(self.nodes[i]), list(self.nodes[j]), w]
                          for (i, j), w in sorted(self.edges.items())]}


@dataclass(frozen=True)
class RoundRecord:
    round: int
    n_nodes: int
    n_edges: int
    matching: tuple  # pairs of constituent tuples
    matched_weight: int

    def to_dict(self) -> dict:
        return {"round": self.round, "nodes": self.n_nodes, "edges": self.n_edges,
                "matching": [[list(a), list(b)] for a, b in self.matching],
                "matched_weight": self.matched_weight}


@dataclass(frozen=True)
class MnMTrace:
    rounds: tuple

    def __len__(self) -> int:
        return len(self.rounds)

    def total_matched_weight(self) -> int:
        return sum(r.matched_weight for r in self.rounds)

    def to_dict(self) -> dict:
        return {"rounds": [r.to_dict() for r in self.rounds]}


def _cross_weight(g: Graph, a, b) -> int:
    total = 0
    for u in a:
        nb = g.adj[u]
        for v in b:
            total += nb.get(v, 0)
    return total


def merge_round(mg: MergedGraph, matching, k: int) -> MergedGraph:
    """Contract the matched node pairs of ``mg`` and build the next merged graph.

    ``matching`` is a collection of node-index pairs of ``mg``.
    """
    used = set()
    for a, b in matching:
        if (min(a, b), max(a, b)) not in mg.edges:
            raise DomainError(f"({a}, {b}) is not an edge of the merged graph")
        if a in used or b in used:
            raise DomainError(f"node {a if a in used else b} is matched twice")
        used.update((a, b))
        if len(mg.nodes[a]) + len(mg.nodes[b]) > k:
            raise DomainError(f"merging nodes {a} and {b} would exceed k={k}")

    g = mg.graph
    adjacent: dict = {}
    for (i, j) in mg.edges:
        adjacent.setdefault(i, set()).add(j)
        adjacent.setdefault(j, set()).add(i)

    merged = [(tuple(sorted(mg.nodes[a] + mg.nodes[b])), (a, b)) for a, b in matching]
    kept = [i for i in range(len(mg.nodes)) if i not in used]
    new_nodes = sorted([c for c, _ in merged] + [mg.nodes[i] for i in kept])
    index = {c: i for i, c in enumerate(new_nodes)}

    edges = {}
    # a maximum matching leaves no edge between two unmatched nodes, but a
    # caller-supplied matching may, and such edges carry over unchanged
    for (i, j), w in mg.edges.items():
        if i not in used and j not in used:
            x, y = index[mg.nodes[i]], index[mg.nodes[j]]
            edges[(min(x, y), max(x, y))] = w
    for constituents, (a, b) in merged:
        x = index[constituents]
        for q in (adjacent.get(a, set()) | adjacent.get(b, set())) - used:
            other = mg.nodes[q]
            if len(constituents) + len(other) > k:
                continue
            y = index[other]
            edges[(min(x, y), max(x, y))] = _cross_weight(g, constituents, other)
    return MergedGraph(g, tuple(new_nodes), edges, mg.round + 1)


def match_and_merge(game: GameInstance):
    """Run Match and Merge on ``game``; returns ``(partition, trace)``."""
    mg = MergedGraph.from_graph(game.graph)
    records = []
    for l in range(1, game.k):
        pairs = lexmin_max_weight_matching(mg.edge_list())
        weight = sum(mg.edges[(a, b)] for a, b in pairs)
        records.append(RoundRecord(l, len(mg.nodes), len(mg.edges),
                                   tuple((mg.nodes[a], mg.nodes[b]) for a, b in pairs), weight))
        mg = merge_round(mg, pairs, game.k)
    partition = Partition(mg.nodes)
    trace = MnMTrace(tuple(records))
    assert social_welfare(game, partition) == 2 * trace.total_matched_weight()
    return partition, trace
