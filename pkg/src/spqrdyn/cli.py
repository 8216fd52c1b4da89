"""Command line: operation scripts, the locality benchmark and oracle lookups."""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Callable, TextIO

from .bench import bench_locality, format_rows
from .decomposition import (
    RIGID,
    VIRTUAL,
    DecompositionError,
    ExtendedSkeletonDecomposition,
    allocation_vertices,
    dump,
    shape,
    trivial_decomposition,
    validate,
)
from .embedding_tree import embedding_tree, reflection_key
from .graph import GraphError, Multigraph, is_biconnected, read_graph
from .oracle import OracleSizeError, menger3_bf, planar_bf, rotations_at_bf, separation_pairs_bf
from .planarity import is_planar, rotation, three_paths
from .spqr import build_spqr, canonical_form, classify_skeleton, insert_graph_spqr, merge_spqr

EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_VIOLATION = 4


class ScriptError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _parse_error(msg: str) -> ScriptError:
    return ScriptError(EXIT_PARSE, msg)


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise _parse_error(f"expected an integer, got {tok!r}") from None


def read_map(path: Path) -> list[tuple[int, int]]:
    pairs = []
    for ln in path.read_text().splitlines():
        parts = ln.split()
        if not parts or parts[0].startswith("#"):
            continue
        if len(parts) != 2:
            raise _parse_error(f"{path.name}: map lines are '<left-id> <right-id>'")
        pairs.append((_int(parts[0]), _int(parts[1])))
    return pairs


class Workspace:
    """Named decompositions plus the state a script runs against."""

    def __init__(self, base: Path, out: TextIO, seed: int = 0) -> None:
        self.base = base
        self.out = out
        self.trees: dict[str, ExtendedSkeletonDecomposition] = {}
        self.rng = random.Random(seed)

    def emit(self, line: str) -> None:
        self.out.write(line + "\n")

    def path(self, name: str) -> Path:
        p = Path(name)
        return p if p.is_absolute() else self.base / p

    def graph(self, name: str) -> Multigraph:
        p = self.path(name)
        try:
            with p.open() as fh:
                return read_graph(fh)
        except OSError as exc:
            raise ScriptError(EXIT_SEMANTIC, f"cannot read {name}: {exc.strerror}") from None
        except (GraphError, ValueError) as exc:
            raise _parse_error(f"{name}: {exc}") from None

    def tree(self, name: str, spqr: bool = True) -> ExtendedSkeletonDecomposition:
        if name not in self.trees:
            raise ScriptError(EXIT_SEMANTIC, f"no tree named {name!r}")
        S = self.trees[name]
        if spqr and not S.spqr:
            # a loaded graph turns into its SPQR-tree on first use
            S = self.trees[name] = build_spqr(S.represented.copy())
        return S

    def summary(self, name: str) -> None:
        S = self.trees[name]
        g = S.represented
        self.emit(f"{name}: n={g.num_vertices()} m={g.num_edges()} skeletons={len(S.skeletons)}")

    def check(self, name: str) -> None:
        bad = validate(self.trees[name])
        if bad:
            for v in bad:
                self.emit(f"violation {v}")
            raise ScriptError(EXIT_VIOLATION, f"{name} failed validation")


# -- commands ------------------------------------------------------------------------


def _need(args: list[str], n: int, usage: str) -> None:
    if len(args) != n:
        raise _parse_error(f"usage: {usage}")


def cmd_load(ws: Workspace, args: list[str]) -> None:
    _need(args, 2, "LOAD <name> <graphfile>")
    g = ws.graph(args[1])
    if not is_biconnected(g):
        raise ScriptError(EXIT_SEMANTIC, f"{args[1]} is not biconnected")
    ws.trees[args[0]] = trivial_decomposition(g)
    ws.summary(args[0])


def cmd_build(ws: Workspace, args: list[str]) -> None:
    _need(args, 2, "BUILD <name> <graphfile>")
    g = ws.graph(args[1])
    if not is_biconnected(g):
        raise ScriptError(EXIT_SEMANTIC, f"{args[1]} is not biconnected")
    ws.trees[args[0]] = build_spqr(g)
    ws.summary(args[0])


def cmd_expand(ws: Workspace, args: list[str]) -> None:
    _need(args, 4, "EXPAND <name> <vertex-id> <graphfile> <mapfile>")
    S = ws.tree(args[0])
    u = _int(args[1])
    g_nu = ws.graph(args[2])
    pairs = read_map(ws.path(args[3]))
    phi = {right: left for left, right in pairs}
    insert_graph_spqr(S, u, g_nu, phi)
    ws.check(args[0])
    ws.summary(args[0])


def cmd_merge(ws: Workspace, args: list[str]) -> None:
    _need(args, 5, "MERGE <name> <name2> <v1> <v2> <edgemapfile>")
    if args[0] == args[1]:
        raise ScriptError(EXIT_SEMANTIC, "cannot merge a tree with itself")
    S1, S2 = ws.tree(args[0]), ws.tree(args[1])
    phi = dict(read_map(ws.path(args[4])))
    merge_spqr(S1, S2, _int(args[2]), _int(args[3]), phi)
    del ws.trees[args[1]]
    ws.check(args[0])
    ws.summary(args[0])


def _edge_label(S: ExtendedSkeletonDecomposition, x: int, e: int) -> tuple[int, int, str]:
    r = S.E[e]
    far = S.V[r.other(x)].orig
    if r.kind == VIRTUAL:
        return (far, 1, f"~{far}")  # type: ignore[return-value]
    return (far, 0, f"e{r.ref}")  # type: ignore[return-value]


def cmd_query(ws: Workspace, args: list[str]) -> None:
    if len(args) < 2:
        raise _parse_error("usage: QUERY <name> PLANAR|ROTATION <v>|3PATHS <u> <v>|EMBEDTREE <v>")
    name, what, rest = args[0], args[1].upper(), args[2:]
    S = ws.tree(name)
    if what == "PLANAR":
        _need(rest, 0, "QUERY <name> PLANAR")
        ws.emit("true" if is_planar(S) else "false")
    elif what == "ROTATION":
        _need(rest, 1, "QUERY <name> ROTATION <v>")
        v = _int(rest[0])
        rigid = [x for x in allocation_vertices(S, v) if shape(S, S.V[x].skel) == RIGID]
        if not rigid:
            raise ScriptError(EXIT_SEMANTIC, f"vertex {v} is in no rigid skeleton")
        lines = []
        for x in rigid:
            labels = [_edge_label(S, x, e) for e in rotation(S, x)]
            keys = {lab[:2]: lab[2] for lab in labels}
            order = reflection_key([lab[:2] for lab in labels])  # type: ignore[list-item]
            lines.append(" ".join(keys[k] for k in order))  # type: ignore[index]
        for line in sorted(lines):
            ws.emit(line)
    elif what == "3PATHS":
        _need(rest, 2, "QUERY <name> 3PATHS <u> <v>")
        ws.emit("true" if three_paths(S, _int(rest[0]), _int(rest[1])) else "false")
    elif what == "EMBEDTREE":
        _need(rest, 1, "QUERY <name> EMBEDTREE <v>")
        ws.emit(embedding_tree(S, _int(rest[0])).term())
    else:
        raise _parse_error(f"unknown query {args[1]!r}")


def cmd_dump(ws: Workspace, args: list[str]) -> None:
    if len(args) == 2 and args[1] == "--canonical":
        ws.out.write(canonical_form(ws.tree(args[0], spqr=False)).decode())
        return
    _need(args, 1, "DUMP <name> [--canonical]")
    S = ws.tree(args[0], spqr=False)
    ws.out.write(dump(S, classify=lambda sid: _safe_class(S, sid)))


def _safe_class(S: ExtendedSkeletonDecomposition, sid: int) -> str:
    try:
        return classify_skeleton(S, sid) or "other"
    except DecompositionError:
        return "extended"


def cmd_validate(ws: Workspace, args: list[str]) -> None:
    _need(args, 1, "VALIDATE <name>")
    ws.tree(args[0], spqr=False)
    ws.check(args[0])
    ws.emit("OK")


def cmd_seed(ws: Workspace, args: list[str]) -> None:
    _need(args, 1, "SEED <int>")
    ws.rng.seed(_int(args[0]))
    ws.emit(f"seed {_int(args[0])}")


def cmd_oracle(ws: Workspace, args: list[str]) -> None:
    """Brute-force answers on a tree's represented graph, for side-by-side checks."""
    if len(args) < 2:
        raise _parse_error("usage: ORACLE <name> PLANAR|ROTATIONS <v>|3PATHS <u> <v>|SEPPAIRS")
    g = ws.tree(args[0], spqr=False).represented
    what, rest = args[1].upper(), args[2:]
    try:
        if what == "PLANAR":
            ws.emit("true" if planar_bf(g, limit=12) else "false")
        elif what == "3PATHS":
            _need(rest, 2, "ORACLE <name> 3PATHS <u> <v>")
            ws.emit("true" if menger3_bf(g, _int(rest[0]), _int(rest[1])) else "false")
        elif what == "ROTATIONS":
            _need(rest, 1, "ORACLE <name> ROTATIONS <v>")
            for rot in sorted(rotations_at_bf(g, _int(rest[0]), limit=12)):
                ws.emit(" ".join(f"e{e}" for e in rot))
        elif what == "SEPPAIRS":
            pairs = sorted(tuple(sorted(p)) for p in separation_pairs_bf(g))
            ws.emit(" ".join(f"{a}-{b}" for a, b in pairs) or "none")
        else:
            raise _parse_error(f"unknown oracle {args[1]!r}")
    except OracleSizeError as exc:
        raise ScriptError(EXIT_SEMANTIC, str(exc)) from None


COMMANDS: dict[str, Callable[[Workspace, list[str]], None]] = {
    "LOAD": cmd_load,
    "BUILD": cmd_build,
    "EXPAND": cmd_expand,
    "MERGE": cmd_merge,
    "QUERY": cmd_query,
    "DUMP": cmd_dump,
    "VALIDATE": cmd_validate,
    "SEED": cmd_seed,
    "ORACLE": cmd_oracle,
}


def parse_script(text: str) -> list[tuple[int, str, list[str]]]:
    """Split a script into ``(line number, command, arguments)``; rejects unknown commands."""
    out = []
    for no, ln in enumerate(text.splitlines(), 1):
        parts = ln.split()
        if not parts or parts[0].startswith("#"):
            continue
        cmd = parts[0].upper()
        if cmd not in COMMANDS:
            raise ScriptError(EXIT_PARSE, f"line {no}: unknown command {parts[0]!r}")
        out.append((no, cmd, parts[1:]))
    return out


def run_script(path: Path, out: TextIO, err: TextIO, seed: int = 0) -> int:
    try:
        text = path.read_text()
    except OSError as exc:
        err.write(f"cannot read {path}: {exc.strerror}\n")
        return EXIT_SEMANTIC
    ws = Workspace(path.parent, out, seed)
    try:
        steps = parse_script(text)
    except ScriptError as exc:
        err.write(f"error: {exc}\n")
        return exc.code
    for no, cmd, args in steps:
        try:
            COMMANDS[cmd](ws, args)
        except ScriptError as exc:
            err.write(f"line {no}: {exc}\n")
            return exc.code
        except (DecompositionError, GraphError) as exc:
            err.write(f"line {no}: {exc}\n")
            return EXIT_SEMANTIC
    return 0


def _oracle_main(ns: argparse.Namespace) -> int:
    with open(ns.graph) as fh:
        g = read_graph(fh)
    if ns.what == "planar":
        print("true" if planar_bf(g, limit=12) else "false")
    elif ns.what == "seppairs":
        pairs = sorted(tuple(sorted(p)) for p in separation_pairs_bf(g))
        print(" ".join(f"{a}-{b}" for a, b in pairs) or "none")
    elif ns.what == "3paths":
        print("true" if menger3_bf(g, ns.args[0], ns.args[1]) else "false")
    elif ns.what == "rotations":
        for rot in sorted(rotations_at_bf(g, ns.args[0], limit=12)):
            print(" ".join(f"e{e}" for e in rot))
    return 0


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="spqrdyn", description="Dynamic SPQR-trees.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="execute an operation script")
    run.add_argument("script", type=Path)
    run.add_argument("--seed", type=int, default=0)
    bench = sub.add_parser("bench", help="locality benchmark")
    bench.add_argument("--sizes", type=int, nargs="+", default=[1000, 10000, 100000])
    bench.add_argument("--k", type=int, default=8)
    bench.add_argument("--trials", type=int, default=30)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--budget", type=float, default=60.0, help="seconds allowed for each baseline rebuild")
    bench.add_argument("--tsv", action="store_true")
    orc = sub.add_parser("oracle", help="brute-force answers for a small graph file")
    orc.add_argument("what", choices=["planar", "seppairs", "3paths", "rotations"])
    orc.add_argument("graph")
    orc.add_argument("args", type=int, nargs="*")
    ns = ap.parse_args(argv)
    if ns.command == "run":
        return run_script(ns.script, sys.stdout, sys.stderr, ns.seed)
    if ns.command == "bench":
        rows = bench_locality(ns.sizes, ns.k, ns.trials, ns.seed, ns.budget)
        sys.stdout.write(format_rows(rows, ns.tsv))
        return 0
    try:
        return _oracle_main(ns)
    except (GraphError, OSError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
