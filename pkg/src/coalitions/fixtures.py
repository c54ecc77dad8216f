"""Named example graphs used throughout the tests and the command line."""

from __future__ import annotations

from decimal import Decimal
from itertools import combinations

from .errors import DomainError
from .game import GameInstance, Graph

# 8 agents, 16 edges; optimal welfare 14 for k = 3
FIG1_EDGES = (
    (1, 2), (1, 3), (1, 5), (2, 4), (3, 4), (4, 5), (3, 5), (4, 6),
    (6, 7), (4, 7), (1, 6), (2, 7), (5, 8), (4, 8), (6, 8), (3, 6),
)
FIG1_OPTIMUM = ((1, 3, 6), (2, 4, 7), (5, 8))

# the Match and Merge walk-through (k = 4)
FIG2_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (4, 6))

# weighted graph with an empty core for k = 3
FIG5_EDGES = (
    (1, 2, 6), (2, 3, 7), (2, 6, 5), (3, 6, 4), (3, 4, 5), (3, 7, 4),
    (6, 7, 4), (6, 8, 7), (4, 5, 6), (4, 7, 7), (7, 8, 5), (8, 9, 6),
)


def fig1(k: int = 3) -> GameInstance:
    return GameInstance(Graph(8, FIG1_EDGES), k)


def fig2(k: int = 4) -> GameInstance:
    return GameInstance(Graph(6, FIG2_EDGES), k)


def fig5_empty_core(k: int = 3) -> GameInstance:
    return GameInstance(Graph(9, FIG5_EDGES), k)


def complete(n: int, k: int = 2) -> GameInstance:
    return GameInstance(Graph(n, tuple(combinations(range(1, n + 1), 2))), k)


def clique(size: int, k=None) -> GameInstance:
    """``K_size`` with cap ``size - 1`` by default: the strict-core counterexample."""
    return complete(size, size - 1 if k is None else k)


def star_chain(k: int) -> GameInstance:
    """Hubs ``1..k`` on a path, hub ``i`` owning leaves ``k + (i-1)(k-1) + 1 .. k + i(k-1)``."""
    if k < 2:
        raise DomainError(f"star_chain needs k >= 2, got {k}")
    edges = [(i, i + 1) for i in range(1, k)]
    for i in range(1, k + 1):
        first = k + (i - 1) * (k - 1) + 1
        edges.extend((i, leaf) for leaf in range(first, first + k - 1))
    return GameInstance(Graph(k + k * (k - 1), tuple(edges)), k)


def star_chain_orders(k: int):
    """Merge orders for :func:`coalitions.stability.arbmax` on ``star_chain(k)``.

    Returns ``(adversarial, stars)``: the first joins the hubs into one
    coalition, the second builds every star.
    """
    adversarial = [(i, i + 1) for i in range(1, k)]
    stars = [(i, k + (i - 1) * (k - 1) + j) for i in range(1, k + 1) for j in range(1, k)]
    return adversarial, stars


def mnm_weighted_worst(eps="0.1", k: int = 3) -> GameInstance:
    """Two unit triangles bridged by an edge of weight ``eps`` (``0 < eps <= 1``).

    Weights are scaled by the smallest power of ten that makes ``eps`` an
    integer, e.g. ``eps = 0.1`` gives triangle weight 10 and bridge weight 1.
    """
    d = Decimal(str(eps))
    if not 0 < d <= 1:
        raise DomainError(f"eps must lie in (0, 1], got {eps}")
    places = max(0, -d.as_tuple().exponent)
    scale = 10 ** places
    bridge = int(d * scale)
    t = scale
    edges = ((1, 2, t), (2, 3, t), (1, 3, t), (4, 5, t), (4, 6, t), (5, 6, t), (3, 4, bridge))
    return GameInstance(Graph(6, edges), k, scale)


def sc_gadget(base: Graph, k: int) -> GameInstance:
    """Strict-core reduction gadget built on ``base``.

    Every original agent ``x`` keeps its id and gains a hub ``x_hat`` and
    helpers ``x^1..x^{k-1}``; the helpers form a clique and each is adjacent
    to both ``x`` and ``x_hat``. For ``x`` the new ids are
    ``x_hat = n + (x-1)k + 1`` and ``x^i = x_hat + i``.
    """
    if not base.is_unweighted:
        raise DomainError("sc_gadget expects an unweighted base graph")
    n = base.n
    edges = [(u, v) for u, v, _ in base.edges]
    for x in range(1, n + 1):
        hat = n + (x - 1) * k + 1
        helpers = [hat + i for i in range(1, k)]
        for h in helpers:
            edges.append((x, h))
            edges.append((h, hat))
        edges.extend(combinations(helpers, 2))
    return GameInstance(Graph(n + n * k, tuple(edges)), k)


def cycle(n: int, k: int = 3) -> GameInstance:
    return GameInstance(Graph(n, tuple((i, i % n + 1) for i in range(1, n + 1))), k)


def _parse_args(spec: str):
    if "(" not in spec:
        return spec.strip(), []
    name, _, rest = spec.partition("(")
    args = [a.strip() for a in rest.rstrip(") ").split(",") if a.strip()]
    return name.strip(), args


def gen_fixture(name: str, *params, k=None) -> GameInstance:
    """Build a named fixture.

    ``name`` may carry its parameters inline, e.g. ``"complete(8)"`` or
    ``"star_chain(5)"``. Known names: fig1, fig2, fig5_empty_core,
    complete(n), clique(size), star_chain(k), mnm_weighted_worst(eps),
    sc_gadget(base_n, k) on a base cycle, cycle(n).
    """
    base, inline = _parse_args(name)
    args = list(inline) + [str(p) for p in params]
    ints = lambda: [int(a) for a in args]  # noqa: E731
    if base == "fig1":
        game = fig1()
    elif base == "fig2":
        game = fig2()
    elif base in ("fig5", "fig5_empty_core"):
        game = fig5_empty_core()
    elif base == "complete":
        game = complete(*ints())
    elif base == "clique":
        game = clique(*ints())
    elif base == "star_chain":
        game = star_chain(*ints())
    elif base == "mnm_weighted_worst":
        game = mnm_weighted_worst(*args)
    elif base == "cycle":
        game = cycle(*ints())
    elif base == "sc_gadget":
        n_base, gk = ints()
        game = sc_gadget(cycle(n_base).graph, gk)
    else:
        raise DomainError(f"unknown fixture {name!r}")
    return game if k is None else game.with_k(k)
