"""Data model for additively separable hedonic games with a coalition size cap.

Agents are the integers ``1..n``. Edge weights are exact positive integers;
decimal inputs are scaled by a power of ten recorded as ``weight_scale`` on the
game so that every stability comparison stays in integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, GraphParseError, InvalidPartitionError

MODES = ("strong", "weak", "eps_a", "eps_m")


@dataclass(frozen=True, eq=False)
class Graph:
    """Weighted undirected social graph on agents ``1..n``.

    ``edges`` holds ``(u, v, w)`` triples with ``u < v`` in insertion order.
    Zero weights are rejected: an absent friendship is simply a missing edge.
    Two graphs are equal when they have the same agents and weighted edge
    set, whatever the edge order.
    """

    n: int
    edges: tuple = ()

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise DomainError(f"agent count must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        seen = set()
        norm = []
        for e in self.edges:
            if len(e) == 2:
                u, v = e
                w = 1
            elif len(e) == 3:
                u, v, w = e
            else:
                raise DomainError(f"edge must be (u, v) or (u, v, w), got {e!r}")
            u, v = int(u), int(v)
            if isinstance(w, (float, Fraction)) and w != int(w):
                raise DomainError(f"edge weight must be an integer, got {w!r}")
            w = int(w)
            if u == v:
                raise DomainError(f"self-loop on agent {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise DomainError(f"edge ({u}, {v}) has an endpoint outside 1..{self.n}")
            if w <= 0:
                raise DomainError(f"edge ({u}, {v}) has non-positive weight {w}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise DomainError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            norm.append((u, v, w))
        object.__setattr__(self, "edges", tuple(norm))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and sorted(self.edges) == sorted(other.edges)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.edges)))

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        """Build a graph from a symmetric non-negative integer adjacency matrix."""
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"adjacency matrix must be square, got shape {a.shape}")
        if a.size and not np.array_equal(a, a.T):
            raise DomainError("adjacency matrix must be symmetric")
        if a.size and np.any(np.diagonal(a) != 0):
            raise DomainError("adjacency matrix must have a zero diagonal")
        n = a.shape[0]
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if a[i, j] != 0:
                    edges.append((i + 1, j + 1, a[i, j]))
        return cls(n, tuple(edges))

    @cached_property
    def adj(self) -> tuple:
        """``adj[v]`` maps each neighbour of ``v`` to the edge weight (index 0 unused)."""
        out = [dict() for _ in range(self.n + 1)]
        for u, v, w in self.edges:
            out[u][v] = w
            out[v][u] = w
        return tuple(out)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def agents(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def is_unweighted(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def weight(self, u: int, v: int) -> int:
        return self.adj[u].get(v, 0)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def to_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v, w in self.edges:
            a[u - 1, v - 1] = a[v - 1, u - 1] = w
        return a


@dataclass(frozen=True)
class GameInstance:
    """A game ``(G, k)``: social graph plus the coalition size cap."""

    graph: Graph
    k: int
    weight_scale: int = 1

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or self.k < 2:
            raise DomainError(f"coalition cap k must be an integer >= 2, got {self.k!r}")
        if not isinstance(self.weight_scale, int) or self.weight_scale < 1:
            raise DomainError(f"weight_scale must be a positive integer, got {self.weight_scale!r}")
        object.__setattr__(self, "k", int(self.k))

    @property
    def n(self) -> int:
        return self.graph.n

    def with_k(self, k: int) -> "GameInstance":
        return GameInstance(self.graph, k, self.weight_scale)


@dataclass(frozen=True)
class Partition:
    """A partition of agents into coalitions, stored in canonical order.

    Each block is a sorted tuple and blocks are sorted by their smallest
    member, so two partitions compare equal iff they group agents the same way.
    Disjointness is checked on construction; coverage and the size cap are
    checked by :meth:`validate` against a particular game.
    """

    blocks: tuple

    def __post_init__(self):
        norm = []
        seen = set()
        for b in self.blocks:
            b = tuple(sorted(int(v) for v in b))
            if not b:
                raise InvalidPartitionError("partition contains an empty block")
            for v in b:
                if v in seen:
                    raise InvalidPartitionError(f"agent {v} appears in two blocks")
                seen.add(v)
            norm.append(b)
        norm.sort()
        object.__setattr__(self, "blocks", tuple(norm))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple((v,) for v in range(1, n + 1)))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        """Inverse of :attr:`labels`: position ``i`` holds the block label of agent ``i + 1``."""
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i + 1)
        return cls(tuple(groups.values()))

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @cached_property
    def _owner(self) -> dict:
        return {v: b for b in self.blocks for v in b}

    def block_of(self, v: int) -> tuple:
        try:
            return self._owner[v]
        except KeyError:
            raise DomainError(f"agent {v} is not covered by the partition") from None

    @property
    def n_agents(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def labels(self) -> np.ndarray:
        """0-based block index of each agent ``1..n``, blocks in canonical order."""
        out = np.empty(self.n_agents, dtype=np.int64)
        for idx, b in enumerate(self.blocks):
            for v in b:
                out[v - 1] = idx
        return out

    def max_block_size(self) -> int:
        return max((len(b) for b in self.blocks), default=0)

    def validate(self, n: int, k: Optional[int] = None) -> "Partition":
        covered = set(self._owner)
        if covered != set(range(1, n + 1)):
            missing = sorted(set(range(1, n + 1)) - covered)
            extra = sorted(covered - set(range(1, n + 1)))
            raise InvalidPartitionError(
                f"partition does not cover agents 1..{n} (missing {missing[:5]}, extra {extra[:5]})")
        if k is not None and self.max_block_size() > k:
            raise InvalidPartitionError(f"a block has size {self.max_block_size()} > k={k}")
        return self

    def as_lists(self) -> list:
        return [list(b) for b in self.blocks]


@dataclass(frozen=True)
class BlockingWitness:
    """A coalition together with the numbers proving that it blocks.

    ``per_agent`` holds ``(v, W(v, S), u(v, P))`` for each member, in
    scaled integer units. ``eps`` is the relaxation for the ``eps_a`` and
    ``eps_m`` modes (``eps_a`` is in unscaled weight units).
    """

    coalition: tuple
    mode: str
    per_agent: tuple
    eps: Optional[Fraction] = None
    weight_scale: int = 1

    def holds(self) -> bool:
        """Re-evaluate the mode's inequalities on the recorded numbers."""
        return _test(self.mode, self.per_agent, self.eps, self.weight_scale)

    def recheck(self, game: GameInstance, p: Partition) -> bool:
        """Recompute every recorded pair from ``game`` and ``p``, then re-test."""
        g = game.graph
        s = set(self.coalition)
        for v, w_s, u_p in self.per_agent:
            if w_s != _coalition_weight(g, v, s) or u_p != utility(game, v, p):
                return False
        return self.holds()

    def to_dict(self) -> dict:
        return {
            "coalition": list(self.coalition),
            "mode": self.mode,
            "eps": None if self.eps is None else str(self.eps),
            "per_agent": [{"agent": v, "W": w, "u": u} for v, w, u in self.per_agent],
        }


def _graph_of(g: Union[Graph, GameInstance]) -> Graph:
    return g.graph if isinstance(g, GameInstance) else g


def _coalition_weight(g: Graph, v: int, s) -> int:
    nb = g.adj[v]
    return sum(nb.get(x, 0) for x in s)


def coalition_weight(g: Union[Graph, GameInstance], v: int, s: Iterable[int]) -> int:
    """W(v, S): total weight of the edges from ``v`` into ``S``."""
    g = _graph_of(g)
    s = set(s)
    if v not in s:
        raise DomainError(f"agent {v} is not a member of the coalition")
    for x in s:
        if not 1 <= x <= g.n:
            raise DomainError(f"agent {x} is outside 1..{g.n}")
    return _coalition_weight(g, v, s)


def utility(g: Union[Graph, GameInstance], v: int, p: Partition) -> int:
    return _coalition_weight(_graph_of(g), v, p.block_of(v))


def block_welfare(g: Graph, block: Iterable[int]) -> int:
    """Twice the total weight inside one coalition."""
    b = list(block)
    total = 0
    for i, u in enumerate(b):
        nb = g.adj[u]
        for v in b[i + 1:]:
            total += nb.get(v, 0)
    return 2 * total


def social_welfare(g: Union[Graph, GameInstance], p: Partition) -> int:
    g = _graph_of(g)
    return sum(block_welfare(g, b) for b in p.blocks)


def utilities(g: Union[Graph, GameInstance], p: Partition) -> list:
    """``out[v]`` is u(v, P) for v in 1..n; index 0 is unused."""
    g = _graph_of(g)
    out = [0] * (g.n + 1)
    for b in p.blocks:
        for v in b:
            out[v] = _coalition_weight(g, v, b)
    return out


def _as_eps(mode: str, eps) -> Optional[Fraction]:
    if mode not in MODES:
        raise DomainError(f"unknown blocking mode {mode!r}; expected one of {MODES}")
    if mode in ("strong", "weak"):
        return None
    if eps is None:
        raise DomainError(f"mode {mode!r} needs an eps value")
    eps = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
    if eps < 0:
        raise DomainError(f"eps must be non-negative, got {eps}")
    return eps


def _test(mode: str, per_agent, eps: Optional[Fraction], scale: int = 1) -> bool:
    if not per_agent:
        return False
    if mode == "strong":
        return all(w > u for _, w, u in per_agent)
    if mode == "weak":
        return all(w >= u for _, w, u in per_agent) and any(w > u for _, w, u in per_agent)
    if mode == "eps_a":
        # W > u + eps * scale, cross-multiplied by eps's denominator
        p, q = eps.numerator, eps.denominator
        return all(q * (w - u) > p * scale for _, w, u in per_agent)
    if mode == "eps_m":
        p, q = eps.numerator, eps.denominator
        return all(q * w > p * u for _, w, u in per_agent)
    raise DomainError(f"unknown blocking mode {mode!r}")


def blocks(game: GameInstance, s: Iterable[int], p: Partition, mode: str = "strong",
           eps=None) -> Optional[BlockingWitness]:
    """Return a witness if coalition ``s`` blocks ``p`` under ``mode``, else ``None``.

    Modes: ``strong`` (every member strictly gains), ``weak`` (nobody loses,
    someone gains), ``eps_a`` (every member gains more than ``eps`` in
    unscaled weight units) and ``eps_m`` (every member's new utility exceeds
    ``eps`` times the old one). All comparisons are exact.
    """
    s = tuple(sorted(set(s)))
    eps = _as_eps(mode, eps)
    if not s:
        raise DomainError("coalition must be non-empty")
    if len(s) > game.k:
        raise DomainError(f"coalition of size {len(s)} exceeds k={game.k}")
    g = game.graph
    members = set(s)
    per_agent = tuple((v, _coalition_weight(g, v, members), utility(g, v, p)) for v in s)
    if _test(mode, per_agent, eps, game.weight_scale):
        return BlockingWitness(s, mode, per_agent, eps, game.weight_scale)
    return None


def break_off(p: Partition, s: Iterable[int], k: Optional[int] = None) -> Partition:
    """P^{-S}: ``s`` leaves its coalitions and forms its own; empty residues vanish."""
    s = frozenset(s)
    if not s:
        raise DomainError("breaking-off coalition must be non-empty")
    if k is not None and len(s) > k:
        raise DomainError(f"coalition of size {len(s)} exceeds k={k}")
    for v in s:
        p.block_of(v)
    rest = [tuple(v for v in b if v not in s) for b in p.blocks]
    return Partition(tuple(b for b in rest if b) + (tuple(s),))


def canonical_form(p: Partition) -> bytes:
    """Injective byte encoding of a partition, e.g. ``b"1,2;3"``."""
    return ";".join(",".join(map(str, b)) for b in p.blocks).encode("ascii")


def parse_canonical(data: bytes) -> Partition:
    text = data.decode("ascii")
    if not text:
        return Partition(())
    try:
        return Partition(tuple(tuple(int(x) for x in blk.split(",")) for blk in text.split(";")))
    except ValueError as exc:
        raise GraphParseError(f"malformed canonical partition {text!r}") from exc
