"""Command-line entry point.

Graph files hold one arc per line, ``SRC DST MULT``; ``vertex NAME`` declares
an isolated vertex and ``#`` starts a comment line. Exit codes: 0 success,
1 invalid input, 2 limit exceeded, 3 internal verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import ChipfireError, InternalError, InvalidInput, LimitError, ParseError
from .exact import METHODS, default_node_budget, solve
from .game import classify, compositions
from .heuristics import HEURISTICS, run_heuristic
from .multigraph import DirectedMultigraph, build, random_strongly_connected
from .period import primitive_period_vector

_RESERVED = ("command", "input_digest", "limit_flags", "elapsed_ms")


def parse_graph(text: str) -> DirectedMultigraph:
    names: list[str] = []
    edges: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            if len(tokens) == 2 and tokens[0] == "vertex":
                build([tokens[1]])
                names.append(tokens[1])
            elif len(tokens) == 3:
                src, dst, mult = tokens
                if not mult.lstrip("-").isdigit():
                    raise ParseError(f"multiplicity {mult!r} is not an integer", lineno)
                m = int(mult)
                if m == 0:
                    raise ParseError("multiplicity must be positive", lineno)
                build(edges=[(src, dst, m)])
                edges.append((src, dst, m))
            else:
                raise ParseError(f"cannot parse {line!r}", lineno)
        except ParseError:
            raise
        except InvalidInput as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    if not names and not edges:
        raise ParseError("empty graph")
    return build(names, edges)


@dataclass
class RunReport:
    command: str
    input_digest: str
    result: dict[str, Any]
    elapsed_ms: float = 0.0
    limit_flags: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        doc = dict(self.result)
        doc.update(command=self.command, input_digest=self.input_digest, limit_flags=self.limit_flags, elapsed_ms=self.elapsed_ms)
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        doc = json.loads(text)
        meta = {k: doc.pop(k) for k in _RESERVED}
        return cls(result=doc, **meta)


def _named(g: DirectedMultigraph, values: Sequence[int] | None) -> dict[str, int] | None:
    return None if values is None else dict(zip(g.names, values))


def _labels(g: DirectedMultigraph, seq: Sequence[int] | None) -> list[str] | None:
    return None if seq is None else [g.names[i] for i in seq]


def _fmt(mapping: dict[str, int]) -> str:
    return " ".join(f"{k}={v}" for k, v in mapping.items())


def _cmd_info(g: DirectedMultigraph, args) -> tuple[dict, list[str]]:
    res = {
        "N": g.n,
        "M": g.total_edges(),
        "loop_free": True,
        "strongly_connected": g.is_strongly_connected(),
        "eulerian": g.is_eulerian(),
        "pigeonhole_bound": g.total_edges() - g.n + 1,
    }
    return res, [f"{k} = {v}" for k, v in res.items()]


def _cmd_period(g: DirectedMultigraph, args) -> tuple[dict, list[str]]:
    pd = primitive_period_vector(g)
    res = {"v_G": pd.as_dict(g.names), "P": pd.P}
    return res, [f"v_G: {_fmt(res['v_G'])}", f"P = {pd.P}"]


def _cmd_exact(g: DirectedMultigraph, args) -> tuple[dict, list[str]]:
    r = solve(g, args.method, args.node_budget, args.threads)
    if r.witness is not None and not classify(g, r.witness).infinite:
        raise InternalError(f"witness {r.witness} does not start an infinite game")
    res = {
        "method": r.method,
        "c": r.c,
        "optimal_sequence": _labels(g, r.optimal_sequence),
        "witness": _named(g, r.witness),
        "nodes": r.nodes,
        "note": r.note,
    }
    lines = [f"method: {r.method}"]
    if r.optimal_sequence is not None:
        lines.append("optimal sequence: " + " ".join(res["optimal_sequence"]))
    if r.witness is not None:
        lines.append(f"witness: {_fmt(res['witness'])} (verified infinite)")
    if r.note:
        lines.append(f"note: {r.note}")
    lines.append(f"nodes: {r.nodes}")
    lines.append(f"c = {r.c}")
    return res, lines


def _cmd_bound(g: DirectedMultigraph, args) -> tuple[dict, list[str]]:
    rep = run_heuristic(g, args.heuristic, args.passes)
    res = {
        "heuristic": rep.heuristic,
        "sequence": _labels(g, rep.sequence),
        "bound": rep.bound,
        "trace": [list(t) for t in rep.trace],
    }
    lines = [
        f"heuristic: {rep.heuristic}",
        "sequence: " + " ".join(res["sequence"]),
        "trace: " + ", ".join(f"pass {p}: {b}" for p, b in rep.trace),
        f"bound = {rep.bound}",
    ]
    return res, lines


def _cmd_witness(g: DirectedMultigraph, args) -> tuple[dict, list[str]]:
    r = solve(g, "strategies", args.node_budget, args.threads)
    if r.witness is None:
        res = {"c": r.c, "sequence": None, "witness": None, "verified": False, "note": r.note}
        return res, [f"note: {r.note}", f"c = {r.c}"]
    outcome = classify(g, r.witness)
    if not outcome.infinite or sum(r.witness) != r.c:
        raise InternalError(f"witness {r.witness} failed verification")
    res = {
        "c": r.c,
        "sequence": _labels(g, r.optimal_sequence),
        "witness": _named(g, r.witness),
        "verified": True,
        "cycle_length": outcome.cycle_length,
    }
    lines = [
        "sequence: " + " ".join(res["sequence"]),
        f"witness: {_fmt(res['witness'])}",
        f"infinite game, cycle length {outcome.cycle_length}",
    ]
    if args.check_minimal:
        smaller = [cfg for cfg in compositions(r.c - 1, g.n) if classify(g, cfg).infinite] if r.c else []
        if smaller:
            raise InternalError(f"configuration {smaller[0]} with {r.c - 1} chips is already infinite")
        res["minimal_checked"] = True
        lines.append(f"every configuration of {r.c - 1} chips stabilizes")
    lines.append(f"c = {r.c}")
    return res, lines


_COMMANDS = {
    "info": _cmd_info,
    "period": _cmd_period,
    "exact": _cmd_exact,
    "bound": _cmd_bound,
    "witness": _cmd_witness,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable report")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes for the searches")

    parser = argparse.ArgumentParser(prog="chipfire", parents=[common], description="Instability minimum of chip-firing games.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="graph summary")
    p.add_argument("file")
    p = sub.add_parser("period", parents=[common], help="primitive period vector")
    p.add_argument("file")
    p = sub.add_parser("exact", parents=[common], help="exact instability minimum")
    p.add_argument("file")
    p.add_argument("--method", choices=METHODS, default="strategies")
    p.add_argument("--node-budget", type=int, default=None)
    p = sub.add_parser("bound", parents=[common], help="heuristic upper bound")
    p.add_argument("file")
    p.add_argument("--heuristic", choices=HEURISTICS, default="greedy")
    p.add_argument("--passes", type=int, default=10)
    p = sub.add_parser("witness", parents=[common], help="minimal infinite-game configuration")
    p.add_argument("file")
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--check-minimal", action="store_true", help="also show every smaller total stabilizes")
    p = sub.add_parser("gen", parents=[common], help="random strongly connected graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-mult", type=int, default=1)
    p.add_argument("--density", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, RunReport | None]:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.threads = max(1, getattr(args, "threads", 1))
    start = time.perf_counter()
    flags: dict[str, Any] = {}
    try:
        if args.command == "gen":
            g = random_strongly_connected(args.n, args.max_mult, args.density, args.seed)
            text = g.to_text()
            digest = hashlib.sha256(f"gen {args.n} {args.max_mult} {args.density} {args.seed}".encode()).hexdigest()
            result, lines = {"graph": text}, [text.rstrip("\n")]
        else:
            try:
                with open(args.file, "rb") as fh:
                    data = fh.read()
            except OSError as exc:
                raise InvalidInput(f"cannot read {args.file}: {exc.strerror}") from None
            digest = hashlib.sha256(data).hexdigest()
            try:
                g = parse_graph(data.decode("utf-8"))
            except UnicodeDecodeError:
                raise ParseError("file is not UTF-8") from None
            if getattr(args, "node_budget", None) is None and hasattr(args, "node_budget"):
                args.node_budget = default_node_budget()
            if hasattr(args, "node_budget"):
                flags["node_budget"] = args.node_budget
            result, lines = _COMMANDS[args.command](g, args)
    except ChipfireError as exc:
        kind = type(exc).__name__
        print(f"chipfire: {kind}: {exc}", file=sys.stderr)
        if isinstance(exc, LimitError):
            print("chipfire: hint: try `chipfire bound FILE --heuristic greedy` for an upper bound", file=sys.stderr)
            return 2, None
        if isinstance(exc, InternalError):
            return 3, None
        return 1, None
    report = RunReport(args.command, digest, result, round((time.perf_counter() - start) * 1000, 3), flags)
    if args.json:
        print(report.to_json())
    else:
        print("\n".join(lines))
    return 0, report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
