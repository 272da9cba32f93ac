"""Command line: classify, profile, simulate, ultrametric.

Exit codes: 0 success, 2 parse error, 3 invariant violation or size cap,
4 simulator memory budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import random
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .catalog import is_builtin_name, resolve_builtin
from .classify import classify_faithful, classify_ubiquitous
from .errors import ParseError, UsfLabError
from .formats import load_hypergraph, to_json_dict
from .hypergraph import HypergraphWithBoundary
from .ultrametric import (
    ObjectiveSpec,
    evaluate,
    maximize_over_polytope,
    random_ultrametric,
)

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_MEMORY = 0, 2, 3, 4
DIM_MIN, DIM_MAX = 5, 64
DEFAULT_BUDGET_MB = 2048.0


class CliParseError(ParseError):
    pass


def build_id() -> str:
    """sha1 over the package sources, stable across runs of the same code."""
    h = hashlib.sha1()
    root = Path(__file__).parent
    for p in sorted(root.rglob("*.py")):
        h.update(p.relative_to(root).as_posix().encode())
        h.update(p.read_bytes())
    return h.hexdigest()[:12]


# -- input helpers -----------------------------------------------------------


def load_input(spec: str) -> HypergraphWithBoundary:
    path = Path(spec)
    if path.exists():
        return load_hypergraph(path)
    if is_builtin_name(spec):
        return resolve_builtin(spec)
    raise CliParseError(f"{spec!r} is neither a readable file nor a builtin name")


def parse_dims(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError("expected A..B, e.g. 5..20")
    lo, hi = int(m.group(1)), int(m.group(2))
    if not DIM_MIN <= lo <= hi <= DIM_MAX:
        raise argparse.ArgumentTypeError(f"dimension range must lie within [{DIM_MIN}, {DIM_MAX}]")
    return lo, hi


def parse_dim(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("dimension must be an integer") from None
    if not DIM_MIN <= d <= DIM_MAX:
        raise argparse.ArgumentTypeError(f"dimension must lie within [{DIM_MIN}, {DIM_MAX}]")
    return d


def positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def parse_objective(text: str, source: str | None = None) -> tuple[list[str], ObjectiveSpec]:
    """Objective files::

        points: a b c d
        term 2: a,b b,c
        term -3/2: a,c
    """
    points: list[str] | None = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        words = head.split()
        if not sep:
            raise ParseError("expected '<keyword>: ...'", lineno, source)
        if words == ["points"]:
            points = rest.split()
        elif len(words) == 2 and words[0] == "term":
            try:
                c = Fraction(words[1])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad coefficient {words[1]!r}", lineno, source) from None
            pairs = []
            for tok in rest.split():
                parts = tok.split(",")
                if len(parts) != 2 or not all(parts):
                    raise ParseError(f"bad pair {tok!r}; write a,b", lineno, source)
                pairs.append((parts[0], parts[1]))
            if not pairs:
                raise ParseError("term has an empty support", lineno, source)
            terms.append((c, frozenset(pairs)))
        else:
            raise ParseError(f"unknown line kind {head.strip()!r}", lineno, source)
    if points is None:
        raise ParseError("missing 'points:' line", None, source)
    f = ObjectiveSpec(tuple(terms))
    stray = f.elements() - set(points)
    if stray:
        raise ParseError(f"terms mention unknown points {sorted(stray)}", None, source)
    return points, f


# -- output helpers ----------------------------------------------------------


def emit(args, header: list[str], rows: list[list], meta: dict, text: str) -> None:
    if args.format == "json":
        out = json.dumps({"meta": meta, "columns": header, "rows": rows}, indent=2, default=str) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        for k, v in meta.items():
            buf.write(f"# {k}={json.dumps(v, default=str, sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([[str(c) for c in r] for r in rows])
        out = buf.getvalue()
    else:
        out = text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)


VERDICT_COLUMNS = [
    "dimension", "faithful", "ubiquitous", "minmax", "witness_coarsening", "witness_quotient", "r_requirement",
]


def _verdict_row(v) -> list:
    return [
        v.dimension,
        v.faithfully_ubiquitous,
        v.ubiquitous,
        str(v.minmax_value),
        str(v.witness_coarsening) if v.witness_coarsening is not None else None,
        str(v.witness_quotient) if v.witness_quotient is not None else None,
        v.r_requirement,
    ]


# -- commands ----------------------------------------------------------------


def cmd_classify(args) -> int:
    h = load_input(args.input)
    v = classify_ubiquitous(h, args.dim, args.mode, args.edge_degree_cap)
    row = _verdict_row(v)
    text = "".join(f"{k:<20}{_fmt(x)}\n" for k, x in zip(VERDICT_COLUMNS, row))
    meta = {"command": "classify", "input": args.input, "mode": args.mode, "hypergraph": to_json_dict(h)}
    emit(args, VERDICT_COLUMNS, [row], meta, text)
    return EXIT_OK


def cmd_profile(args) -> int:
    h = load_input(args.input)
    lo, hi = args.dims
    rows = []
    for d in range(lo, hi + 1):
        if args.faithful_only:
            v = classify_faithful(h, d, args.mode)
            v = type(v)(**{**v.__dict__, "ubiquitous": None})
        else:
            v = classify_ubiquitous(h, d, args.mode, args.edge_degree_cap)
        rows.append(_verdict_row(v))
    faithful_at = [r[0] for r in rows if r[1]]
    ubiq_at = [r[0] for r in rows if r[2]]
    crit_f = max(faithful_at) if faithful_at else None
    crit_u = max(ubiq_at) if ubiq_at else None
    lines = [f"{'d':>3}  {'faithful':<9}{'ubiquitous':<11}{'minmax':<8}", "-" * 32]
    for r in rows:
        mark = ""
        if r[0] == crit_f:
            mark += "  <- last faithful"
        if r[0] == crit_u:
            mark += "  <- last ubiquitous"
        lines.append(f"{r[0]:>3}  {_fmt(r[1]):<9}{_fmt(r[2]):<11}{r[3]:<8}{mark}")
    lines.append(f"critical dimensions: faithful {_fmt(crit_f)}, ubiquitous {_fmt(crit_u)}")
    meta = {
        "command": "profile",
        "input": args.input,
        "mode": args.mode,
        "dims": [lo, hi],
        "critical_faithful": crit_f,
        "critical_ubiquitous": crit_u,
    }
    emit(args, VERDICT_COLUMNS, rows, meta, "\n".join(lines) + "\n")
    return EXIT_OK


SIM_COLUMNS = ["seed", "d", "L", "statistic", "parameter", "value"]


def cmd_simulate(args) -> int:
    from . import simulate as sim

    budget = float(os.environ.get("USF_LAB_MEM_BUDGET_MB", DEFAULT_BUDGET_MB))
    sim.check_memory(args.d, args.side, budget)
    box = sim.LatticeBox(args.d, args.side)
    rows: list[list] = []
    base = [args.seed, args.d, args.side, args.stat]
    if args.stat == "component-count":
        counts = sim.component_counts(args.d, args.side, args.samples, args.seed, args.threads)
        rows = [base + [f"sample={i}", c] for i, c in enumerate(counts)]
        mean = sum(counts) / len(counts)
        text = f"component count over {len(counts)} samples: mean {mean:.4f}, min {min(counts)}, max {max(counts)}\n"
    elif args.stat == "pair-connect":
        if args.pairs == "auto":
            seps = sim.auto_separations(box)
            pairs = [(s, *sim.centered_pair(box, s)) for s in seps]
        else:
            pairs = []
            for chunk in args.pairs.split(";"):
                a, b = (tuple(int(c) for c in p.split(",")) for p in chunk.split(":"))
                pairs.append((sim.l1(a, b), a, b))
        lines = [f"{'distance':>8}  {'estimate':>9}  {'ci_low':>8}  {'ci_high':>8}  points"]
        for i, (s, a, b) in enumerate(pairs):
            est = sim.estimate_connection(args.d, args.side, [a, b], args.samples, args.seed + i, args.threads)
            rows.append(base + [f"distance={s}", f"{est.p:.6f}"])
            lines.append(f"{s:>8}  {est.p:>9.5f}  {est.ci_low:>8.5f}  {est.ci_high:>8.5f}  {a} {b}")
        text = "\n".join(lines) + "\n"
    elif args.stat == "r-estimate":
        est = sim.estimate_R(args.d, args.side, args.M, args.r_max, args.samples, args.seed, args.threads)
        rows = [base + [f"r={r}", f"{q:.6f}"] for r, q in est.frequencies.items()]
        rows.append(base + [f"threshold(M={args.M})", est.threshold])
        text = "".join(f"r={r}: {q:.4f}\n" for r, q in est.frequencies.items())
        text += f"estimated R_G({args.M}) = {est.threshold} ({est.note})\n"
    else:  # witness-count
        if not args.hypergraph:
            raise CliParseError("--stat witness-count needs --hypergraph")
        h = load_input(args.hypergraph)
        per_sample = []
        sampler = sim.WilsonSampler(box, sim.make_rng(args.seed))
        for i in range(args.samples):
            f = sampler.sample()
            per_sample.append(_present_tuples(sim, f, h, args.r))
            rows.append(base + [f"sample={i}", per_sample[-1]])
        text = (
            f"boundary assignments admitting a witness, r={args.r}: "
            f"mean {sum(per_sample) / len(per_sample):.4f} over {len(per_sample)} samples\n"
        )
    meta = {
        "command": "simulate",
        "seed": args.seed,
        "build": build_id(),
        "version": __version__,
        "params": {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "format")},
    }
    emit(args, SIM_COLUMNS, rows, meta, text)
    return EXIT_OK


def _present_tuples(sim, f, h, r) -> int:
    from itertools import permutations

    count = 0
    for comps in permutations(range(f.n_components), len(h.boundary)):
        x = dict(zip(h.boundary, comps))
        if next(sim.witness_search(f, h, x, r), None) is not None:
            count += 1
    return count


def cmd_ultrametric(args) -> int:
    path = Path(args.input)
    points, f = parse_objective(path.read_text(), str(path))
    value, partition = maximize_over_polytope(f, points)
    rng = random.Random(args.seed)
    best_sample = None
    for _ in range(args.samples):
        v = evaluate(f, random_ultrametric(points, rng))
        if best_sample is None or v > best_sample:
            best_sample = v
    gap = value - best_sample if best_sample is not None else None
    rows = [[str(value), " | ".join(",".join(b) for b in partition), str(best_sample), str(gap), args.samples]]
    header = ["max_value", "partition", "best_sample", "gap", "samples"]
    text = (
        f"maximum        {value}\n"
        f"partition      {' | '.join(' '.join(b) for b in partition)}\n"
        f"best sample    {best_sample} over {args.samples} random ultrametrics\n"
        f"gap            {gap}\n"
    )
    meta = {"command": "ultrametric", "input": args.input, "seed": args.seed}
    emit(args, header, rows, meta, text)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="usf-lab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["text", "json", "csv"], default="text")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--threads", type=positive, default=1)

    def graph_opts(sp):
        sp.add_argument("input", help="hypergraph file or builtin name (edge:k, path:n, star:k, tree-family:d, separating:d, three-pairs)")
        sp.add_argument("--mode", choices=["graph", "hypergraph"], default="hypergraph")
        sp.add_argument("--edge-degree-cap", type=positive, default=None)
        sp.add_argument("--r", type=positive, default=None, help="recorded only; verdicts carry an r-requirement tag")

    c = sub.add_parser("classify", help="faithful and plain ubiquity at one dimension")
    graph_opts(c)
    c.add_argument("--dim", type=parse_dim, required=True)
    common(c)
    c.set_defaults(func=cmd_classify)

    pr = sub.add_parser("profile", help="verdicts over a dimension range")
    graph_opts(pr)
    pr.add_argument("--dims", type=parse_dims, default=(5, 20))
    pr.add_argument("--faithful-only", action="store_true", help="skip the quotient scan")
    common(pr)
    pr.set_defaults(func=cmd_profile)

    s = sub.add_parser("simulate", help="Monte Carlo statistics of wired uniform spanning forests")
    s.add_argument("--d", type=positive, required=True)
    s.add_argument("--side", type=int, required=True)
    s.add_argument("--samples", type=positive, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--stat", choices=["component-count", "pair-connect", "r-estimate", "witness-count"], required=True)
    s.add_argument("--pairs", default="auto", help="'auto' or 'x1,x2:y1,y2;...'")
    s.add_argument("--M", type=positive, default=2, help="components to meet for r-estimate")
    s.add_argument("--r-max", type=positive, default=4)
    s.add_argument("--r", type=positive, default=3, help="radius for witness-count")
    s.add_argument("--hypergraph", help="pattern for witness-count")
    common(s)
    s.set_defaults(func=cmd_simulate)

    u = sub.add_parser("ultrametric", help="maximize a sum of minima over the ultrametric polytope")
    u.add_argument("input", help="objective file")
    u.add_argument("--samples", type=int, default=1000, help="random ultrametrics for the gap audit")
    u.add_argument("--seed", type=int, default=0)
    common(u)
    u.set_defaults(func=cmd_ultrametric)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "side", 2) < 2:
        parser.error("--side must be at least 2")
    from .simulate.lattice import MemoryBudgetExceeded

    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"usf-lab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MemoryBudgetExceeded as exc:
        print(f"usf-lab: {exc}", file=sys.stderr)
        return EXIT_MEMORY
    except (UsfLabError, ValueError) as exc:
        hint = ""
        if type(exc).__name__ == "NotAGraph":
            hint = " (hint: rerun with --mode hypergraph)"
        print(f"usf-lab: {type(exc).__name__}: {exc}{hint}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
