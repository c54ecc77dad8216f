"""Command line entry point ``coalitions``.

Exit codes: 0 success, 2 usage error, 3 unreadable or malformed input,
4 domain error, 5 non-convergence, 6 invalid partition, 7 instance too large.
The report goes to stdout (or ``--out``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .campaign import CampaignConfig, run_campaign
from .errors import (CoalitionError, DomainError, GraphParseError, InstanceTooLargeError,
                     InvalidPartitionError, NonConvergenceError)
from .fixtures import gen_fixture
from .heuristic import core_heuristic
from .io import dumps, make_report, read_graph, read_partition, serialize_graph, welfare_payload
from .mnm import match_and_merge
from .oracle import (CONCEPTS, core_emptiness, kn_matching_partition, membership_violation,
                     opt_max_util, sc_emptiness)
from .stability import (arbmax, find_core_k3, find_csc, find_eps_a_core, find_eps_m_core,
                        find_nash_stable)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4
EXIT_NONCONVERGENCE = 5
EXIT_INVALID_PARTITION = 6
EXIT_TOO_LARGE = 7

ALGORITHMS = ("mnm", "core-k3", "eps-a-core", "eps-m-core", "csc", "nash", "arbmax",
              "core-heuristic")
QUESTIONS = ("opt", "core-empty", "sc-empty", "kn-factorize")


def _solve(args) -> dict:
    game = read_graph(args.graph, args.k)
    algo = args.algorithm
    if args.eps_a is not None and algo != "eps-a-core":
        raise DomainError("--eps-a only applies to --algorithm eps-a-core")
    if args.eps_m is not None and algo != "eps-m-core":
        raise DomainError("--eps-m only applies to --algorithm eps-m-core")
    if args.seed is not None and algo not in ("arbmax", "core-heuristic"):
        raise DomainError("--seed only applies to arbmax and core-heuristic")
    stats = {}
    if algo == "mnm":
        p, trace = match_and_merge(game)
        stats = trace.to_dict()
    elif algo == "core-k3":
        p, st = find_core_k3(game)
        stats = st.to_dict()
    elif algo == "eps-a-core":
        p, st = find_eps_a_core(game, args.eps_a)
        stats = st.to_dict()
    elif algo == "eps-m-core":
        p, st = find_eps_m_core(game, 2 if args.eps_m is None else args.eps_m)
        stats = st.to_dict()
    elif algo == "csc":
        p, st = find_csc(game)
        stats = st.to_dict()
    elif algo == "nash":
        p, st = find_nash_stable(game)
        stats = st.to_dict()
    elif algo == "arbmax":
        p = arbmax(game, random_state=args.seed)
    else:
        p, st = core_heuristic(game, args.seed, args.restart_threshold, args.max_restarts)
        stats = st.to_dict()
    result = {"algorithm": algo, "partition": p.as_lists(),
              "welfare": welfare_payload(game, p), "stats": stats}
    seeds = {} if args.seed is None else {"seed": args.seed}
    return make_report("solve", game, result, seeds)


def _verify(args) -> dict:
    game = read_graph(args.graph, args.k)
    p = read_partition(args.partition)
    p.validate(game.n, game.k)
    evidence = membership_violation(game, p, args.concept, args.eps,
                                    force=args.guard_override)
    if evidence is not None and hasattr(evidence, "to_dict"):
        evidence = evidence.to_dict()
    result = {"concept": args.concept, "member": evidence is None, "witness": evidence,
              "partition": p.as_lists(), "welfare": welfare_payload(game, p)}
    return make_report("verify", game, result)


def _oracle(args) -> dict:
    if args.question == "kn-factorize":
        if args.n is None:
            raise DomainError("kn-factorize needs --n")
        classes = kn_matching_partition(args.n)
        result = {"question": "kn-factorize", "n": args.n,
                  "matchings": [[list(e) for e in m.edges] for m in classes]}
        return make_report("oracle", None, result)
    if args.graph is None:
        raise DomainError(f"--question {args.question} needs a graph file")
    game = read_graph(args.graph, args.k)
    force = args.guard_override
    if args.question == "opt":
        p, w = opt_max_util(game, force=force)
        result = {"question": "opt", "partition": p.as_lists(), "welfare": welfare_payload(game, p)}
    else:
        check = core_emptiness if args.question == "core-empty" else sc_emptiness
        cert = check(game, force=force)
        result = {"question": args.question, "certificate": cert.to_dict()}
    return make_report("oracle", game, result)


def _simulate(args) -> dict:
    cfg = CampaignConfig.from_file(args.config)
    overrides = {}
    if args.restart_threshold is not None:
        overrides["restart_threshold"] = args.restart_threshold
    if args.max_restarts is not None:
        overrides["max_restarts"] = args.max_restarts
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        cfg = CampaignConfig(**{**cfg.__dict__, **overrides})
    return run_campaign(cfg, workers=args.workers).to_dict()


def _fixture(args) -> str:
    game = gen_fixture(args.name)
    return serialize_graph(game.graph, game.weight_scale)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coalitions",
                                     description="Hedonic games with bounded coalition size.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph_required=True):
        if graph_required:
            p.add_argument("graph", help="graph file")
        else:
            p.add_argument("graph", nargs="?", help="graph file")
        p.add_argument("--k", type=int, default=3, help="coalition size cap (default 3)")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("solve", help="run a partitioning algorithm")
    common(p)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="mnm")
    p.add_argument("--eps-a", dest="eps_a")
    p.add_argument("--eps-m", dest="eps_m")
    p.add_argument("--seed", type=int)
    p.add_argument("--restart-threshold", type=int, default=100)
    p.add_argument("--max-restarts", type=int, default=50)

    p = sub.add_parser("verify", help="check a partition against a stability concept")
    common(p)
    p.add_argument("--partition", required=True, help="JSON partition or report file")
    p.add_argument("--concept", choices=CONCEPTS, default="core")
    p.add_argument("--eps", help="relaxation for eps_a / eps_m")
    p.add_argument("--guard-override", action="store_true")

    p = sub.add_parser("oracle", help="brute-force answers for small instances")
    common(p, graph_required=False)
    p.add_argument("--question", choices=QUESTIONS, required=True)
    p.add_argument("--n", type=int, help="agent count for kn-factorize")
    p.add_argument("--guard-override", action="store_true")

    p = sub.add_parser("simulate", help="run a core-heuristic campaign")
    p.add_argument("config", help="campaign INI file")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, help="override the master seed")
    p.add_argument("--restart-threshold", type=int)
    p.add_argument("--max-restarts", type=int)
    p.add_argument("--workers", type=int, help="worker processes (default COALITIONS_WORKERS or 1)")

    p = sub.add_parser("fixture", help="print a named example graph as a graph file")
    p.add_argument("name", help="e.g. fig1, fig5_empty_core, complete(8), star_chain(5)")
    p.add_argument("--out")
    return parser


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"solve": _solve, "verify": _verify, "oracle": _oracle, "simulate": _simulate}
    try:
        if args.command == "fixture":
            _emit(_fixture(args), args.out)
        else:
            _emit(dumps(handlers[args.command](args)), args.out)
    except GraphParseError as exc:
        return _fail(exc, EXIT_PARSE)
    except InvalidPartitionError as exc:
        return _fail(exc, EXIT_INVALID_PARTITION)
    except InstanceTooLargeError as exc:
        return _fail(exc, EXIT_TOO_LARGE)
    except NonConvergenceError as exc:
        return _fail(exc, EXIT_NONCONVERGENCE)
    except CoalitionError as exc:
        return _fail(exc, EXIT_DOMAIN)
    return EXIT_OK


def _fail(exc: Exception, code: int) -> int:
    print(f"coalitions: error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
