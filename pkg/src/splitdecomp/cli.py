"""Command line: decompose, verify, gen, bench.

Exit status is 0 on success (and on MATCH), 1 for usage, input or size
errors, 2 when a verification finds a MISMATCH.
"""
from __future__ import annotations

import argparse
import statistics
import sys
import time
from dataclasses import dataclass

from .generate import random_connected_graph
from .graph import GraphError, format_edge_list, load_graph
from .split import split_decomposition

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    input: str = "-"
    root: str | None = None
    format: str = "text"
    verify: bool = False
    sizes: tuple = ()
    seed: int = 0
    n: int = 0
    m: int = 0
    repeats: int = 1
    ratio: float = 4.0


def _read_graph(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return load_graph(text)


def _root_index(g, label):
    if label is None:
        return 0
    return g.index(label)


def _render(tree, r, fmt):
    if fmt == "json":
        return tree.to_json(r)
    if fmt == "dot":
        return tree.to_dot()
    return tree.to_text(r)


def _oracle_verdict(g, r, tree):
    from .oracle import reference_tree

    return "MATCH" if tree.same_as(reference_tree(g, r)) else "MISMATCH"


def cmd_decompose(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    g = _read_graph(cfg.input)
    r = _root_index(g, cfg.root)
    tree = split_decomposition(g, r)
    out.write(_render(tree, r, cfg.format))
    if cfg.verify:
        verdict = _oracle_verdict(g, r, tree)
        err.write(verdict + "\n")
        if verdict != "MATCH":
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    g = _read_graph(cfg.input)
    roots = range(g.n) if cfg.root is None else [_root_index(g, cfg.root)]
    status = EXIT_OK
    for r in roots:
        verdict = _oracle_verdict(g, r, split_decomposition(g, r))
        out.write(f"root {g.labels[r]}: {verdict}\n")
        if verdict != "MATCH":
            status = EXIT_MISMATCH
    return status


def cmd_gen(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    if cfg.n < 2:
        raise UsageError("gen needs --n >= 2")
    g = random_connected_graph(cfg.n, cfg.m, cfg.seed)
    out.write(format_edge_list(g))
    return EXIT_OK


def _parse_size(tok: str) -> int:
    try:
        v = float(tok)
    except ValueError:
        raise UsageError(f"bad size {tok!r}") from None
    if v < 1 or v != int(v):
        raise UsageError(f"bad size {tok!r}")
    return int(v)


def bench_rows(sizes, seed=0, repeats=1, ratio=4.0):
    """(m, n, seconds, seconds per (n+m)) per size; the best of ``repeats`` runs."""
    rows = []
    for i, m in enumerate(sizes):
        n = max(2, int(m / ratio))
        m = max(m, n - 1)
        g = random_connected_graph(n, m, seed + i)
        best = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            split_decomposition(g, 0)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        rows.append((m, n, best, best / (n + m)))
    return rows


def doubling_ratios(rows) -> list:
    return [b[2] / a[2] for a, b in zip(rows, rows[1:])]


def cmd_bench(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    sizes = sorted(cfg.sizes)
    rows = bench_rows(sizes, cfg.seed, cfg.repeats, cfg.ratio)
    out.write(f"{'m':>9} {'n':>8} {'seconds':>10} {'us/(n+m)':>10} {'ratio':>7}\n")
    prev = None
    for row in rows:
        m, n, dt, per = row
        ratio = f"{dt / prev:7.2f}" if prev else f"{'':>7}"
        out.write(f"{m:>9} {n:>8} {dt:>10.3f} {per * 1e6:>10.2f} {ratio}\n")
        prev = dt
    ratios = doubling_ratios(rows)
    if ratios:
        out.write(f"median doubling ratio: {statistics.median(ratios):.2f}\n")
    return EXIT_OK


COMMANDS = {"decompose": cmd_decompose, "verify": cmd_verify, "gen": cmd_gen, "bench": cmd_bench}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="splitdecomp", description="Split decomposition of connected graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", help="print the split tree of an edge-list graph")
    d.add_argument("input", nargs="?", default="-", help="edge-list file, '-' for stdin")
    d.add_argument("--root", help="BFS root label (default: first vertex)")
    d.add_argument("--format", choices=["text", "json", "dot"], default="text")
    d.add_argument("--verify", action="store_true", help="compare with the brute-force tree (small graphs)")

    v = sub.add_parser("verify", help="compare with the brute-force tree for every root")
    v.add_argument("input", nargs="?", default="-")
    v.add_argument("--root", help="check this root only")

    g = sub.add_parser("gen", help="seeded random connected graph as an edge list")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("bench", help="time decompositions on random graphs")
    b.add_argument("--sizes", default="4096,8192,16384,32768", help="comma-separated edge counts")
    b.add_argument("--ratio", type=float, default=4.0, help="edges per vertex")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=1)
    return p


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(ns.command)
    for k in ("input", "root", "format", "verify", "seed", "n", "m", "repeats", "ratio"):
        if hasattr(ns, k):
            setattr(cfg, k, getattr(ns, k))
    if ns.command == "bench":
        cfg.sizes = tuple(_parse_size(t) for t in ns.sizes.split(",") if t.strip())
        if not cfg.sizes:
            raise UsageError("no sizes given")
    return cfg


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg, out, err)
    except (UsageError, GraphError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except RuntimeError as e:  # oracle size caps
        err.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
