"""Additively separable hedonic games with a cap on coalition size."""

from .errors import (CoalitionError, DomainError, GraphParseError, InstanceTooLargeError,
                     InvalidPartitionError, NonConvergenceError)
from .game import (MODES, BlockingWitness, GameInstance, Graph, Partition, blocks, break_off,
                   canonical_form, coalition_weight, parse_canonical, social_welfare, utilities,
                   utility)
from .matching import Matching, max_cardinality_matching, max_weight_matching
from .mnm import MergedGraph, MnMTrace, match_and_merge, merge_round
from .stability import (SolverStats, arbmax, find_blocking_coalition, find_core_k3, find_csc,
                        find_eps_a_core, find_eps_m_core, find_nash_stable)
from .oracle import (EmptinessCertificate, core_emptiness, enumerate_partitions,
                     kn_matching_partition, membership_violation, opt_max_util, sc_emptiness,
                     verify_membership)
from .fixtures import gen_fixture
from .random_graphs import RngStream, gen_random
from .heuristic import HeuristicFailure, HeuristicStats, core_heuristic
from .campaign import CampaignConfig, CampaignReport, run_campaign
from .estimators import (AdditiveCore, Arbmax, ContractualStrictCore, CoreHeuristic, CoreK3,
                         MatchAndMerge, MultiplicativeCore, NashStable, OptimalPartition)

__version__ = "0.1.0"
