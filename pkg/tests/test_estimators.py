import numpy as np
import pytest
from sklearn.base import clone

from coalitions import (AdditiveCore, Arbmax, ContractualStrictCore, CoreHeuristic, CoreK3,
                        DomainError, MatchAndMerge, MultiplicativeCore, NashStable,
                        OptimalPartition, Partition, verify_membership)
from coalitions.fixtures import fig1, fig5_empty_core

ALL = [MatchAndMerge(), OptimalPartition(), CoreK3(), AdditiveCore(k=4), MultiplicativeCore(),
       ContractualStrictCore(), NashStable(), Arbmax(random_state=0), CoreHeuristic(random_state=0)]


@pytest.mark.parametrize("est", ALL, ids=lambda e: type(e).__name__)
def test_fit_on_graph_and_matrix(est):
    g = fig1().graph
    a = clone(est).fit(g)
    b = clone(est).fit(g.to_matrix())
    assert a.partition_ == b.partition_
    assert Partition.from_labels(a.labels_) == a.partition_
    assert a.welfare_ >= 0 and a.n_blocks_ == len(a.partition_)
    assert np.array_equal(clone(est).fit_predict(g), a.labels_)


def test_params_round_trip():
    est = CoreHeuristic(k=5, restart_threshold=10, max_restarts=3, random_state=1)
    assert est.get_params() == {"k": 5, "restart_threshold": 10, "max_restarts": 3,
                                "random_state": 1}
    assert clone(est).set_params(k=4).k == 4


def test_estimator_results():
    assert OptimalPartition(k=3).fit(fig1()).welfare_ == 14
    est = CoreK3().fit(fig1())
    assert verify_membership(fig1(), est.partition_, "core")
    assert est.stats_.outer_iterations > 0
    assert len(MatchAndMerge(k=3).fit(fig1()).trace_) == 2


def test_game_instance_scale_kept():
    est = ContractualStrictCore(k=3).fit(fig5_empty_core())
    assert est.game_.weight_scale == 1


def test_bad_inputs():
    with pytest.raises(DomainError):
        MatchAndMerge(k=1).fit(fig1())
    with pytest.raises(DomainError):
        MatchAndMerge().fit(np.ones((2, 3)))
    with pytest.raises(DomainError):
        MatchAndMerge().fit(np.array([[0, 0.5], [0.5, 0]]))
    with pytest.raises(DomainError):
        MatchAndMerge().fit(np.array([[0, 1], [2, 0]]))
