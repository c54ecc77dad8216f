"""Input coercion shared by the estimator classes."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .errors import DomainError
from .game import GameInstance, Graph


def check_graph(X, weight_scale: int = 1) -> tuple:
    """Coerce ``X`` to ``(graph, weight_scale)``.

    ``X`` may be a :class:`Graph`, a :class:`GameInstance` (its own scale
    wins) or a square symmetric non-negative integer weight matrix.
    """
    if isinstance(X, GameInstance):
        return X.graph, X.weight_scale
    if isinstance(X, Graph):
        return X, weight_scale
    a = check_array(X, dtype=None, ensure_min_samples=1, ensure_min_features=1)
    if a.shape[0] != a.shape[1]:
        raise DomainError(f"adjacency matrix must be square, got shape {a.shape}")
    if not np.issubdtype(a.dtype, np.integer):
        if not np.all(np.mod(a, 1) == 0):
            raise DomainError("adjacency weights must be integers; scale decimals first")
        a = a.astype(np.int64)
    return Graph.from_matrix(a), weight_scale


def check_k(k) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k!r}")
    return int(k)


def check_game(X, k, weight_scale: int = 1) -> GameInstance:
    graph, scale = check_graph(X, weight_scale)
    return GameInstance(graph, check_k(k), scale)
