import random

from hypothesis import settings, strategies as st

from coalitions import GameInstance, Graph, Partition

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=8, weighted=False, max_w=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if weighted:
        ws = draw(st.lists(st.integers(1, max_w), min_size=len(chosen), max_size=len(chosen)))
    else:
        ws = [1] * len(chosen)
    return Graph(n, tuple((u, v, w) for (u, v), w in zip(chosen, ws)))


@st.composite
def games(draw, min_n=1, max_n=8, ks=(2, 3, 4), weighted=False):
    return GameInstance(draw(graphs(min_n, max_n, weighted)), draw(st.sampled_from(ks)))


@st.composite
def partitions_of(draw, n, k=None):
    """Random partition of 1..n with blocks of size <= k."""
    cap = n if k is None else k
    agents = draw(st.permutations(range(1, n + 1)))
    blocks, i = [], 0
    while i < n:
        size = draw(st.integers(1, min(cap, n - i)))
        blocks.append(tuple(agents[i:i + size]))
        i += size
    return Partition(tuple(blocks))


def random_game(rng: random.Random, n: int, k: int, p: float = 0.5, max_w: int = 1) -> GameInstance:
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                edges.append((u, v, rng.randint(1, max_w)))
    return GameInstance(Graph(n, tuple(edges)), k)
