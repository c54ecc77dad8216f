"""Graph files, partition files and JSON reports.

Graph file::

    # optional comment lines
    n m
    u v [w]      (m lines, 1-indexed endpoints, optional decimal weight, default 1)

All weights are multiplied by ``10 ** d``, where ``d`` is the largest number
of fractional digits in the file, so they become exact integers; ``d`` is
recorded as ``weight_scale = 10 ** d``.
"""

from __future__ import annotations

import json
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from .errors import CoalitionError, GraphParseError, InvalidPartitionError
from .game import GameInstance, Graph, Partition, social_welfare

REPORT_VERSION = 1


def parse_graph_text(text: str):
    """Parse a graph file body; returns ``(graph, weight_scale)``."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphParseError("graph file is empty (expected a header 'n m')")
    lineno, header = rows[0]
    try:
        n, m = (int(x) for x in header)
    except ValueError:
        raise GraphParseError(f"line {lineno}: header must be 'n m', got {' '.join(header)!r}") from None
    if n < 0 or m < 0:
        raise GraphParseError(f"line {lineno}: n and m must be non-negative")
    body = rows[1:]
    if len(body) != m:
        raise GraphParseError(f"header announces {m} edges but the file has {len(body)} edge lines")

    parsed = []
    places = 0
    for lineno, parts in body:
        if len(parts) not in (2, 3):
            raise GraphParseError(f"line {lineno}: expected 'u v [w]'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: endpoints must be integers") from None
        try:
            w = Decimal(parts[2]) if len(parts) == 3 else Decimal(1)
        except InvalidOperation:
            raise GraphParseError(f"line {lineno}: bad weight {parts[2]!r}") from None
        if not w.is_finite() or w <= 0:
            raise GraphParseError(f"line {lineno}: weight must be positive, got {parts[2]}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(f"line {lineno}: endpoint outside 1..{n}")
        places = max(places, -w.as_tuple().exponent)
        parsed.append((lineno, u, v, w))

    scale = 10 ** places
    edges = [(u, v, int(w * scale)) for _, u, v, w in parsed]
    try:
        graph = Graph(n, tuple(edges))
    except CoalitionError as exc:
        raise GraphParseError(str(exc)) from exc
    return graph, scale


def read_graph(path, k: int) -> GameInstance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphParseError(f"cannot read {path}: {exc.strerror}") from exc
    graph, scale = parse_graph_text(text)
    return GameInstance(graph, k, scale)


def _format_weight(w: int, scale: int) -> str:
    if scale == 1:
        return str(w)
    places = len(str(scale)) - 1
    return f"{Decimal(w) / scale:.{places}f}"


def serialize_graph(graph: Graph, weight_scale: int = 1) -> str:
    """Inverse of :func:`parse_graph_text`; weights are written only when needed."""
    lines = [f"{graph.n} {graph.m}"]
    plain = weight_scale == 1 and graph.is_unweighted
    for u, v, w in graph.edges:
        lines.append(f"{u} {v}" if plain else f"{u} {v} {_format_weight(w, weight_scale)}")
    return "\n".join(lines) + "\n"


def partition_from_json(data) -> Partition:
    """Accept a list of blocks, ``{"partition": ...}`` or a full report."""
    if isinstance(data, dict):
        if "result" in data and isinstance(data["result"], dict):
            data = data["result"]
        data = data.get("partition")
    if not isinstance(data, list) or not all(isinstance(b, list) for b in data):
        raise InvalidPartitionError("partition must be a list of lists of agent ids")
    for block in data:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in block):
            raise InvalidPartitionError(f"block {block!r} contains a non-integer agent id")
    return Partition(tuple(tuple(block) for block in data))


def read_partition(path) -> Partition:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidPartitionError(f"partition file is not valid JSON: {exc}") from exc
    return partition_from_json(data)


def welfare_payload(game: GameInstance, p: Partition) -> dict:
    w = social_welfare(game, p)
    return {"scaled": w, "value": str(Fraction(w, game.weight_scale))}


def make_report(command: str, game: GameInstance | None, result: dict, seeds=None) -> dict:
    report = {"version": REPORT_VERSION, "command": command}
    if game is not None:
        report["instance"] = {"n": game.n, "m": game.graph.m, "k": game.k,
                              "weight_scale": game.weight_scale}
    report["result"] = result
    report["seeds"] = seeds or {}
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
