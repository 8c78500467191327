"""Command-line interface: ``crmq <subcommand> ...``.

Exit status is 0 on success, 1 when verification finds a wrong answer and
2 for usage, I/O or format errors.  All indices are 1-based.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .core import Sequence, build_cartesian, format_sequence, read_sequence, rmq_all_pairs, rmq_naive
from .lowerbound import FamilyError, FamilyParams, family_slp, gen_family
from .slp import Slp, SlpError, build_pairing_slp, expand, format_slp, parse_slp, slp_depth
from .slp2toptree import convert
from .slp_rmq import HeavyForest
from .toptree import InvalidTopTree, TopDag, build_greedy_topdag, format_topdag, parse_topdag
from .toptree_lca import lca

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

BENCH_HEADER = ["family", "n", "sigma", "structure", "size_nodes", "size_bytes",
                "depth", "build_ms", "queries_per_s"]
STRUCTURES = ("slp", "slp_rmq", "topdag_greedy", "topdag_from_slp")
FAMILIES = ("increasing", "random", "periodic", "lowerbound")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _write(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _read_text(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_sequence(path: str, sigma: Optional[int]) -> Sequence:
    try:
        return read_sequence(path, sigma)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _nonempty(seq: Sequence, path: str) -> Sequence:
    if seq.n == 0:
        raise UsageError(f"{path}: empty sequence")
    return seq


def load_structure(text: str):
    """Parse an SLP or a top-DAG file, recognised by its header word."""
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("slp"):
            return parse_slp(text)
        if s.startswith("topdag"):
            return parse_topdag(text)
        break
    raise UsageError("input is neither an SLP nor a top-DAG file")


def parse_queries(text: str) -> List[Tuple[int, int]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if len(toks) != 2:
            raise UsageError(f"query line {lineno}: expected 'i j'")
        out.append((int(toks[0]), int(toks[1])))
    return out


def _query_fn(struct) -> Tuple[int, Callable[[int, int], int]]:
    if isinstance(struct, Slp):
        h = HeavyForest(struct)
        return h.n, h.rmq
    if isinstance(struct, TopDag):
        return struct.n, lambda i, j: lca(struct, i, j)
    raise TypeError(type(struct).__name__)


def _parse_int_list(text: str) -> List[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc
    if not vals:
        raise UsageError("empty integer list")
    return vals


# ---------------------------------------------------------------- subcommands

def cmd_build_slp(args) -> int:
    seq = _nonempty(_load_sequence(args.input, args.sigma), args.input)
    _write(format_slp(build_pairing_slp(seq)), args.output)
    return EXIT_OK


def cmd_build_toptree(args) -> int:
    seq = _load_sequence(args.input, args.sigma)
    if seq.n < 2:
        raise UsageError("a top-DAG needs n >= 2")
    _write(format_topdag(build_greedy_topdag(build_cartesian(seq))), args.output)
    return EXIT_OK


def cmd_slp_to_toptree(args) -> int:
    slp = parse_slp(_read_text(args.input))
    dag = convert(slp)
    if dag is None:
        raise UsageError("a top-DAG needs n >= 2")
    _write(format_topdag(dag), args.output)
    return EXIT_OK


def cmd_query(args) -> int:
    struct = load_structure(_read_text(args.structure))
    n, fn = _query_fn(struct)
    queries = parse_queries(_read_text(args.queries))
    lines = []
    for i, j in queries:
        if not (1 <= i <= n and 1 <= j <= n):
            raise UsageError(f"query ({i}, {j}) outside 1..{n}")
        lo, hi = min(i, j), max(i, j)
        lines.append(str(fn(lo, hi)))
    _write("".join(s + "\n" for s in lines), args.output)
    return EXIT_OK


def _pairs(n: int, exhaustive: bool, samples: int, rng: random.Random) -> Iterable[Tuple[int, int]]:
    if exhaustive:
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                yield i, j
        return
    for _ in range(samples):
        i, j = rng.randint(1, n), rng.randint(1, n)
        yield min(i, j), max(i, j)


def verify_structures(seq: Sequence, structures: Dict[str, Callable[[int, int], int]],
                      max_exhaustive_n: int = 512, samples: int = 10000, seed: int = 0):
    """Compare every structure against the oracle.

    Returns ``[(name, checked, counterexample or None)]`` where a
    counterexample is ``(i, j, expected, got)``.
    """
    n = seq.n
    exhaustive = n <= max_exhaustive_n
    table = rmq_all_pairs(seq) if exhaustive else None
    report = []
    for name, fn in structures.items():
        rng = random.Random(seed)
        bad = None
        checked = 0
        for i, j in _pairs(n, exhaustive, samples, rng):
            want = table[i][j] if table is not None else rmq_naive(seq, i, j)
            got = fn(i, j)
            checked += 1
            if got != want:
                bad = (i, j, want, got)
                break
        report.append((name, checked, bad))
    return report


def cmd_verify(args) -> int:
    seq = _nonempty(_load_sequence(args.input, args.sigma), args.input)
    structures: Dict[str, Callable[[int, int], int]] = {}
    problems: List[str] = []
    slp = parse_slp(_read_text(args.slp)) if args.slp else build_pairing_slp(seq)
    if expand(slp).values != seq.values:
        problems.append("slp: grammar does not derive the input sequence")
    else:
        structures["slp_rmq"] = HeavyForest(slp).rmq
    if seq.n >= 2:
        greedy = parse_topdag(_read_text(args.topdag)) if args.topdag else build_greedy_topdag(build_cartesian(seq))
        if greedy.n != seq.n:
            problems.append(f"topdag_greedy: tree has {greedy.n} nodes, sequence has {seq.n}")
        else:
            structures["topdag_greedy"] = lambda i, j, d=greedy: lca(d, i, j)
        if "slp_rmq" in structures:
            conv = convert(slp)
            structures["topdag_from_slp"] = lambda i, j, d=conv: lca(d, i, j)
    report = verify_structures(seq, structures, args.max_exhaustive_n, args.samples, args.seed)
    rows = []
    status = EXIT_FAIL if problems else EXIT_OK
    for msg in problems:
        print(f"FAIL {msg}")
    for name, checked, bad in report:
        if bad is None:
            print(f"PASS {name} ({checked} queries)")
        else:
            status = EXIT_FAIL
            i, j, want, got = bad
            print(f"FAIL {name}: i={i} j={j} expected={want} got={got}")
        rows.append({"structure": name, "checked": checked, "counterexample": bad})
    if args.json:
        print(json.dumps({"n": seq.n, "results": rows, "problems": problems}))
    print(f"{len(report) - sum(1 for r in report if r[2])} of {len(report)} structures verified")
    return status


# ---------------------------------------------------------------- bench

def family_inputs(family: str, sizes: List[int], sigma: Optional[int], ells: List[int],
                  period: int, seed: int):
    """Yield ``(n, sequence, slp or None)`` cells of one family."""
    if family == "lowerbound":
        for ell in ells:
            p = FamilyParams(sigma if sigma is not None else 10, ell)
            seq = gen_family(p)
            yield seq.n, seq, family_slp(p)
        return
    for n in sizes:
        if n < 2:
            raise UsageError("bench sizes must be >= 2")
        if family == "increasing":
            seq = Sequence(tuple(range(1, n + 1)))
        elif family == "random":
            s = sigma if sigma is not None else 4
            rng = random.Random(f"{seed}:{n}:{s}")
            seq = Sequence(tuple(rng.randrange(s) for _ in range(n)), s)
        elif family == "periodic":
            seq = Sequence(tuple(k % period for k in range(n)))
        else:
            raise UsageError(f"unknown family {family!r}")
        yield n, seq, None


def bench_rows(families: List[str], sizes: List[int], sigma: Optional[int] = None,
               ells: Optional[List[int]] = None, period: int = 3, seed: int = 0,
               queries: int = 1000, timing: bool = False) -> List[Dict[str, object]]:
    ells = ells or [2]
    rows: List[Dict[str, object]] = []
    for family in families:
        if family not in FAMILIES:
            raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
        for n, seq, slp in family_inputs(family, sizes, sigma, ells, period, seed):
            rng = random.Random(f"{seed}:q:{family}:{n}")
            qs = [tuple(sorted((rng.randint(1, n), rng.randint(1, n)))) for _ in range(queries)]
            built: Dict[str, Tuple[object, float]] = {}

            def timed(fn):
                t0 = time.perf_counter()
                out = fn()
                return out, (time.perf_counter() - t0) * 1000.0

            s, ms = timed(lambda: slp if slp is not None else build_pairing_slp(seq))
            built["slp"] = (s, ms)
            built["slp_rmq"] = timed(lambda: HeavyForest(s))
            built["topdag_greedy"] = timed(lambda: build_greedy_topdag(build_cartesian(seq)))
            built["topdag_from_slp"] = timed(lambda: convert(s))
            for name in STRUCTURES:
                obj, ms = built[name]
                if name == "slp":
                    size, nbytes, depth = len(obj.rules), len(format_slp(obj)), slp_depth(obj)
                    fn = None
                elif name == "slp_rmq":
                    size, nbytes, depth = obj.table_entries(), "", max(obj.hdepth)
                    fn = obj.rmq
                else:
                    size, nbytes, depth = obj.node_count, len(format_topdag(obj)), obj.height
                    fn = lambda i, j, d=obj: lca(d, i, j)
                qps = ""
                if timing and fn is not None and qs:
                    t0 = time.perf_counter()
                    for i, j in qs:
                        fn(i, j)
                    dt = time.perf_counter() - t0
                    qps = f"{len(qs) / dt:.0f}" if dt > 0 else ""
                rows.append({
                    "family": family, "n": n, "sigma": seq.sigma, "structure": name,
                    "size_nodes": size, "size_bytes": nbytes, "depth": depth,
                    "build_ms": f"{ms:.3f}" if timing else "", "queries_per_s": qps,
                })
    order = {name: k for k, name in enumerate(STRUCTURES)}
    rows.sort(key=lambda r: (r["family"], r["n"], r["sigma"], order[r["structure"]]))
    return rows


def format_csv(rows: List[Dict[str, object]]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_bench(args) -> int:
    families = [f.strip() for f in args.family.split(",") if f.strip()]
    rows = bench_rows(families, _parse_int_list(args.sizes), args.sigma, _parse_int_list(args.ell),
                      args.period, args.seed, args.queries, args.timing)
    text = json.dumps(rows, indent=1) + "\n" if args.json else format_csv(rows)
    _write(text, args.output)
    return EXIT_OK


def cmd_gen_lower(args) -> int:
    p = FamilyParams(args.sigma if args.sigma is not None else 10, args.ell)
    seq = gen_family(p)
    _write(format_sequence(seq), args.output)
    if args.slp_output:
        Path(args.slp_output).write_text(format_slp(family_slp(p)))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crmq", description="RMQ on compressed strings (1-based indices).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="output file (default stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--sigma", type=int, default=None, help="alphabet bound (raise only)")
    common.add_argument("--max-exhaustive-n", type=int, default=512)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-slp", parents=[common], help="sequence file -> pairing SLP")
    p.add_argument("input")
    p.set_defaults(func=cmd_build_slp)

    p = sub.add_parser("build-toptree", parents=[common], help="sequence file -> greedy top-DAG")
    p.add_argument("input")
    p.set_defaults(func=cmd_build_toptree)

    p = sub.add_parser("slp-to-toptree", parents=[common], help="SLP file -> top-DAG")
    p.add_argument("input")
    p.set_defaults(func=cmd_slp_to_toptree)

    p = sub.add_parser("query", parents=[common], help="answer 'i j' lines on an SLP or top-DAG file")
    p.add_argument("structure")
    p.add_argument("queries", nargs="?", default="-", help="query file (default stdin)")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", parents=[common], help="check all structures against the oracle")
    p.add_argument("input")
    p.add_argument("--slp", help="use this SLP file instead of building one")
    p.add_argument("--topdag", help="use this top-DAG file instead of the greedy build")
    p.add_argument("--samples", type=int, default=10000, help="random pairs when n is large")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="size/depth report as CSV")
    p.add_argument("--family", required=True, help="comma list of: " + ", ".join(FAMILIES))
    p.add_argument("--sizes", default="1024,4096")
    p.add_argument("--ell", default="2", help="comma list (lowerbound family)")
    p.add_argument("--period", type=int, default=3, help="period (periodic family)")
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--timing", action="store_true", help="fill build_ms and queries_per_s")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen-lower", parents=[common], help="emit the lower-bound family string")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--slp-output", help="also write its grammar here")
    p.set_defaults(func=cmd_gen_lower)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SlpError, InvalidTopTree, FamilyError, ValueError, OSError) as exc:
        print(f"crmq: error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
