"""Scikit-learn style wrappers: each solver as a clustering estimator.

``fit`` takes a :class:`Graph`, a :class:`GameInstance` or a square weight
matrix and exposes ``partition_``, ``labels_`` (0-based block index per
agent) and ``welfare_`` (scaled integer). When a :class:`GameInstance` is
passed, the estimator's ``k`` still decides the size cap.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, ClusterMixin

from .game import social_welfare
from .heuristic import core_heuristic
from .mnm import match_and_merge
from .oracle import opt_max_util
from .stability import (arbmax, find_core_k3, find_csc, find_eps_a_core, find_eps_m_core,
                        find_nash_stable)
from .validation import check_game


class _PartitionEstimator(ClusterMixin, BaseEstimator):
    k: int

    def _solve(self, game):
        raise NotImplementedError

    def fit(self, X, y=None):
        game = check_game(X, self.k)
        partition, extra = self._solve(game)
        self.game_ = game
        self.partition_ = partition
        self.labels_ = partition.labels
        self.welfare_ = social_welfare(game, partition)
        self.n_blocks_ = len(partition)
        if extra is not None:
            self.stats_ = extra
        return self


class MatchAndMerge(_PartitionEstimator):
    """Match and Merge approximation for maximum social welfare."""

    def __init__(self, k=3):
        self.k = k

    def _solve(self, game):
        p, trace = match_and_merge(game)
        self.trace_ = trace
        return p, None


class OptimalPartition(_PartitionEstimator):
    """Exact welfare maximiser (small instances only)."""

    def __init__(self, k=3, force=False):
        self.k = k
        self.force = force

    def _solve(self, game):
        p, _ = opt_max_util(game, force=self.force)
        return p, None


class CoreK3(_PartitionEstimator):
    def __init__(self, k=3, budget=None):
        self.k = k
        self.budget = budget

    def _solve(self, game):
        return find_core_k3(game, self.budget)


class AdditiveCore(_PartitionEstimator):
    def __init__(self, k=3, eps_a=None, budget=None):
        self.k = k
        self.eps_a = eps_a
        self.budget = budget

    def _solve(self, game):
        return find_eps_a_core(game, self.eps_a, self.budget)


class MultiplicativeCore(_PartitionEstimator):
    def __init__(self, k=3, eps_m=2, budget=None):
        self.k = k
        self.eps_m = eps_m
        self.budget = budget

    def _solve(self, game):
        return find_eps_m_core(game, self.eps_m, self.budget)


class ContractualStrictCore(_PartitionEstimator):
    def __init__(self, k=3, budget=None):
        self.k = k
        self.budget = budget

    def _solve(self, game):
        return find_csc(game, self.budget)


class NashStable(_PartitionEstimator):
    def __init__(self, k=3, budget=None):
        self.k = k
        self.budget = budget

    def _solve(self, game):
        return find_nash_stable(game, self.budget)


class Arbmax(_PartitionEstimator):
    """Some merge-maximal partition; ``random_state`` shuffles the merge sweep."""

    def __init__(self, k=3, merge_order=None, random_state=None):
        self.k = k
        self.merge_order = merge_order
        self.random_state = random_state

    def _solve(self, game):
        return arbmax(game, self.merge_order, self.random_state), None


class CoreHeuristic(_PartitionEstimator):
    def __init__(self, k=3, restart_threshold=100, max_restarts=50, random_state=None):
        self.k = k
        self.restart_threshold = restart_threshold
        self.max_restarts = max_restarts
        self.random_state = random_state

    def _solve(self, game):
        return core_heuristic(game, self.random_state, self.restart_threshold, self.max_restarts)
