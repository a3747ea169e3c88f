"""Command line entry point: ``stablecut {cover,solve,sparsify,oracle,gen}``.

Exit codes: 0 when the command completed (and, for decision problems, the
answer is yes), 1 when the answer is no, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from stablecut.covering import (
    ResourceLimitError,
    build_family,
    format_family,
    hash_formula_size,
    lopsided_formula_size,
    modulator_family,
    random_family_size,
    verify_covering,
)
from stablecut.generators import GENERATORS, InstanceSpec, generate
from stablecut.graph import (
    Digraph,
    GraphFormatError,
    TerminalPairs,
    UndirectedGraph,
    format_graph,
    format_terminals,
    parse_graph,
    parse_terminals,
)
from stablecut import oracles
from stablecut.oracles import OracleLimitError
from stablecut.solvers import (
    PROBLEMS,
    stable_dfvs,
    stable_multicut,
    stable_oct,
    stable_st_separator,
)
from stablecut.sparsifier import Thresholds, degeneracy_reduce

SEED_ENV = "STABLECUT_SEED"
FORMULAS = {"lopsided": lopsided_formula_size, "hash": hash_formula_size, "random": random_family_size}


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _read_graph(path: str) -> UndirectedGraph | Digraph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_graph(text)
    except GraphFormatError as e:
        raise UsageError(f"{path}: {e}") from None


def _read_terminals(path: str | None, n: int) -> TerminalPairs:
    if path is None:
        return TerminalPairs(())
    try:
        return parse_terminals(Path(path).read_text(), n)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except (GraphFormatError, ValueError) as e:
        raise UsageError(f"{path}: {e}") from None


def _undirected(g, what: str) -> UndirectedGraph:
    if not isinstance(g, UndirectedGraph):
        raise UsageError(f"{what} needs an undirected graph")
    return g


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


# -- subcommands ----------------------------------------------------------------------

def cmd_cover(args) -> int:
    g = _undirected(_read_graph(args.graph), "cover")
    seed = args.seed
    if args.modulator:
        fam = modulator_family(g, args.modulator, args.k, args.construction, seed)
    else:
        fam = build_family(g, args.k, args.construction, seed)
    payload = {
        "k": fam.k, "d": fam.d, "construction": fam.construction, "seed": fam.seed,
        "size": len(fam), "formula_size": FORMULAS[args.construction](g.n, args.k, fam.d),
        "members": [sorted(m) for m in fam.members],
    }
    if args.verify:
        report = verify_covering(g, args.k, fam)
        payload["verified"] = report.ok
        if not report.ok:
            payload["witness"] = sorted(report.uncovered or report.dependent_member)
    text = format_family(fam)
    _write(args.out, text)
    _emit(args, payload, text if not args.out else f"{len(fam)} members written to {args.out}")
    return 0 if payload.get("verified", True) else 1


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    common = dict(mode=args.mode, seed=args.seed, construction=args.construction)
    if args.problem == "dfvs":
        if not isinstance(g, Digraph):
            raise UsageError("dfvs needs a directed graph (header 'n m directed')")
        res = stable_dfvs(g, args.k, **common)
    elif args.problem == "oct":
        res = stable_oct(_undirected(g, "oct"), args.k, **common)
    elif args.problem == "st-separator":
        g = _undirected(g, "st-separator")
        if args.s is None or args.t is None:
            pairs = list(_read_terminals(args.terminals, g.n))
            if not pairs:
                raise UsageError("st-separator needs --s/--t or a terminal file with one pair")
            s, t = pairs[0]
        else:
            s, t = args.s, args.t
        if not (0 <= s < g.n and 0 <= t < g.n) or s == t:
            raise UsageError("s and t must be distinct vertices")
        res = stable_st_separator(g, s, t, args.k, **common)
    else:
        g = _undirected(g, "multicut")
        T = _read_terminals(args.terminals, g.n)
        res = stable_multicut(g, T, args.k, scope=args.scope, **common)
    payload = dict(res.to_json(), problem=args.problem, k=args.k)
    if res.verdict:
        text = "yes " + " ".join(str(v) for v in sorted(res.solution))
    else:
        text = "no"
    _emit(args, payload, text.rstrip())
    return 0 if res.verdict else 1


def cmd_sparsify(args) -> int:
    g = _undirected(_read_graph(args.graph), "sparsify")
    T = _read_terminals(args.terminals, g.n)
    th = Thresholds(args.case_split, args.relevant_bound, args.connected_size)
    res = degeneracy_reduce(g, T, args.k, th)
    log = "".join(f"{v} {reason}\n" for v, reason in res.deleted)
    _write(args.out_graph, format_graph(res.graph))
    _write(args.out_terminals, format_terminals(res.terminals))
    _write(args.log, log)
    payload = {
        "n": res.graph.n, "m": res.graph.m, "original_ids": list(res.original_ids),
        "terminals": [list(p) for p in res.terminals], "deleted": [[v, r] for v, r in res.deleted],
    }
    text = format_graph(res.graph) + "# terminals\n" + format_terminals(res.terminals) + "# deleted\n" + log
    _emit(args, payload, text)
    return 0


def cmd_oracle(args) -> int:
    g = _read_graph(args.graph)
    kind = args.kind
    if kind == "independent-sets":
        sets = oracles.oracle_independent_sets(_undirected(g, kind), args.k)
        _emit(args, {"sets": [sorted(s) for s in sets]}, "\n".join(" ".join(map(str, sorted(s))) for s in sets))
        return 0
    if kind == "minimal-multicuts":
        g = _undirected(g, kind)
        cuts = sorted(sorted(c) for c in oracles.oracle_minimal_multicuts(g, _read_terminals(args.terminals, g.n), args.k))
        _emit(args, {"multicuts": cuts}, "\n".join(" ".join(map(str, c)) for c in cuts))
        return 0
    if kind == "dfvs":
        if not isinstance(g, Digraph):
            raise UsageError("dfvs needs a directed graph")
        sol = oracles.brute_stable_dfvs(g, args.k)
    elif kind == "oct":
        sol = oracles.brute_stable_oct(_undirected(g, kind), args.k)
    elif kind == "multicut":
        g = _undirected(g, kind)
        sol = oracles.brute_stable_multicut(g, _read_terminals(args.terminals, g.n), args.k)
    else:
        g = _undirected(g, kind)
        pairs = list(_read_terminals(args.terminals, g.n))
        if not pairs:
            raise UsageError("st-separator needs a terminal file with one pair")
        sol = oracles.brute_stable_st_separator(g, pairs[0][0], pairs[0][1], args.k)
    payload = {"verdict": "yes" if sol is not None else "no", "solution": sorted(sol) if sol is not None else None}
    _emit(args, payload, "no" if sol is None else ("yes " + " ".join(map(str, sorted(sol)))).rstrip())
    return 0 if sol is not None else 1


def cmd_gen(args) -> int:
    spec = InstanceSpec(args.generator, args.n, args.k, args.d, args.count, args.pairs, args.seed)
    try:
        inst = generate(spec)
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = format_graph(inst.graph)
    _write(args.out, text)
    if inst.terminals is not None:
        _write(args.terminals_out, format_terminals(inst.terminals))
    if args.json:
        payload = {"graph": text, "terminals": [list(p) for p in inst.terminals] if inst.terminals else []}
        print(json.dumps(payload, sort_keys=True))
    elif not args.out:
        print(text, end="")
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stablecut", description="Stable cut problems on sparse graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k_default=2):
        p.add_argument("--k", type=int, default=k_default, help="solution size bound")
        p.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or 0)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("cover", help="build an independence covering family")
    p.add_argument("graph")
    p.add_argument("--construction", choices=sorted(FORMULAS), default="lopsided")
    p.add_argument("--modulator", type=int, nargs="*", default=None, help="extend via a vertex modulator")
    p.add_argument("--verify", action="store_true", help="check coverage exhaustively")
    p.add_argument("--out", help="write the family file here")
    common(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("solve", help="solve a stable cut problem")
    p.add_argument("problem", choices=PROBLEMS)
    p.add_argument("graph")
    p.add_argument("--terminals", help="terminal pair file")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--mode", choices=("rand", "det"), default="det")
    p.add_argument("--construction", choices=sorted(FORMULAS), default="lopsided")
    p.add_argument("--scope", choices=("degenerate", "general"), default="degenerate")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sparsify", help="delete vertices irrelevant to small multicuts")
    p.add_argument("graph")
    p.add_argument("--terminals")
    p.add_argument("--case-split", type=int)
    p.add_argument("--relevant-bound", type=int)
    p.add_argument("--connected-size", type=int)
    p.add_argument("--out-graph")
    p.add_argument("--out-terminals")
    p.add_argument("--log", help="deletion log, one 'v reason' line per vertex")
    common(p)
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("oracle", help="brute-force reference answers (small inputs only)")
    p.add_argument("kind", choices=("independent-sets", "minimal-multicuts") + PROBLEMS)
    p.add_argument("graph")
    p.add_argument("--terminals")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("generator", choices=GENERATORS)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--pairs", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--terminals-out")
    common(p)
    p.set_defaults(func=cmd_gen)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        if getattr(args, "k", 0) < 0:
            raise UsageError("--k must be non-negative")
        return args.func(args)
    except (UsageError, ResourceLimitError, OracleLimitError) as e:
        print(f"stablecut: error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
