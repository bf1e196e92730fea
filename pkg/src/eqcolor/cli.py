"""Command-line front end: solve single DIMACS instances, run seeded
random-instance campaigns to CSV, and cross-check the solver variants
against the brute-force oracle on small inputs."""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

from .graph import Graph, gen_gnp, parse_dimacs
from .oracle import DEFAULT_LIMITS, brute_chi_eq
from .solver import VARIANTS, SolverConfig, solve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TIMEOUT = 2


@dataclass
class BenchSpec:
    n_list: list[int]
    p_list: list[float]
    count: int
    seed: int
    variants: tuple[str, ...] = VARIANTS
    time_limit: float = 3600.0
    cd_stride: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        for v in self.variants:
            if v not in VARIANTS:
                raise ValueError(f"unknown variant {v!r}")


def instance_seed(base: int, n: int, p: float, index: int) -> int:
    """Stable 63-bit mix of the campaign key; deliberately independent of
    Python's salted hash() so campaigns replay bit-identically."""
    h = 0xCBF29CE484222325
    for part in (base, n, round(p * 10_000), index):
        h ^= part & 0xFFFFFFFFFFFFFFFF
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h >> 1


def _solve_row(g: Graph, variant: str, time_limit: float, cd_stride: int):
    cfg = SolverConfig(variant=variant, time_limit=time_limit, cd_stride=cd_stride)
    return solve(g, cfg)


def cmd_solve(args) -> int:
    try:
        with open(args.path, "r", encoding="utf-8") as fh:
            g = parse_dimacs(fh.read())
    except OSError as exc:
        print(f"error: cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sol, stats = _solve_row(g, args.algo, args.time_limit, args.cd_stride)
    name = args.path.rsplit("/", 1)[-1]
    print(f"instance:        {name}")
    print(f"n:               {g.n}")
    print(f"density:         {g.density():.4f}")
    if sol.optimal:
        print(f"chi_eq:          {sol.chi_eq}")
        print("status:          optimal")
    else:
        print(f"best_found:      {sol.chi_eq}")
        print("status:          TIMEOUT")
    print(f"nodes:           {stats.nodes}")
    print(f"prunes_deficit:  {stats.prunes_deficit}")
    print(f"prunes_flow:     {stats.prunes_flow}")
    hall = ",".join(f"{k}={v}" for k, v in sorted(stats.prunes_hall_by_rule.items()))
    print(f"prunes_hall:     {hall or 0}")
    print(f"flow_solves:     {stats.flow_solves}")
    print(f"time_s:          {stats.elapsed:.3f}")
    return EXIT_OK if sol.optimal else EXIT_TIMEOUT


DATA_HEADER = [
    "n",
    "p",
    "index",
    "seed",
    "variant",
    "chi_eq",
    "nodes",
    "time_s",
    "timed_out",
    "prunes_t1",
    "prunes_flow",
    "prunes_hall",
]
AGG_HEADER = ["n", "p", "variant", "avg_time", "timeouts", "avg_nodes"]


def run_bench(spec: BenchSpec, out_path: str) -> tuple[str, str]:
    """Execute the campaign; write the per-run CSV to `out_path` and the
    aggregate CSV next to it (suffix `.agg.csv`). Returns both paths.

    Timeout accounting: a timed-out run contributes the full time limit to
    the average time and is excluded from the node average.
    """
    rows = []
    for n in spec.n_list:
        for p in spec.p_list:
            for index in range(spec.count):
                seed = instance_seed(spec.seed, n, p, index)
                g = gen_gnp(n, p, seed)
                for variant in spec.variants:
                    sol, stats = _solve_row(g, variant, spec.time_limit, spec.cd_stride)
                    rows.append(
                        {
                            "n": n,
                            "p": _fmt_p(p),
                            "index": index,
                            "seed": seed,
                            "variant": variant,
                            "chi_eq": sol.chi_eq,
                            "nodes": stats.nodes,
                            "time_s": f"{stats.elapsed:.6f}",
                            "timed_out": int(stats.timed_out),
                            "prunes_t1": stats.prunes_deficit,
                            "prunes_flow": stats.prunes_flow,
                            "prunes_hall": stats.prunes_hall,
                        }
                    )
    rows.sort(key=lambda r: (r["n"], r["p"], r["index"], r["variant"]))
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=DATA_HEADER, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    agg_path = _agg_path(out_path)
    with open(agg_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(AGG_HEADER)
        writer.writerows(aggregate_rows(rows, spec.time_limit))
    return out_path, agg_path


def _fmt_p(p: float) -> str:
    return f"{p:g}"


def _agg_path(out_path: str) -> str:
    if out_path.endswith(".csv"):
        return out_path[:-4] + ".agg.csv"
    return out_path + ".agg.csv"


def aggregate_rows(rows, time_limit: float):
    """Collapse per-run rows into per-(n, p, variant) cells."""
    cells = {}
    for row in rows:
        key = (int(row["n"]), row["p"], row["variant"])
        cells.setdefault(key, []).append(row)
    out = []
    for (n, p, variant), group in sorted(cells.items()):
        time_total = 0.0
        timeouts = 0
        node_sum = 0
        solved = 0
        for row in group:
            if int(row["timed_out"]):
                timeouts += 1
                time_total += time_limit
            else:
                time_total += float(row["time_s"])
                node_sum += int(row["nodes"])
                solved += 1
        avg_time = time_total / len(group)
        avg_nodes = f"{node_sum / solved:.1f}" if solved else ""
        out.append([n, p, variant, f"{avg_time:.6f}", timeouts, avg_nodes])
    return out


def cmd_bench(args) -> int:
    spec = BenchSpec(
        n_list=args.n,
        p_list=args.p,
        count=args.count,
        seed=args.seed,
        variants=tuple(args.algos),
        time_limit=args.time_limit,
        cd_stride=args.cd_stride,
    )
    try:
        data_path, agg_path = run_bench(spec, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"wrote {data_path} and {agg_path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    instances: list[tuple[str, Graph]] = []
    try:
        for path in args.paths:
            with open(path, "r", encoding="utf-8") as fh:
                instances.append((path.rsplit("/", 1)[-1], parse_dimacs(fh.read())))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.gnp:
        n, p, count = int(args.gnp[0]), float(args.gnp[1]), int(args.gnp[2])
        for index in range(count):
            seed = instance_seed(args.seed, n, p, index)
            instances.append((f"gnp(n={n},p={p:g},#{index})", gen_gnp(n, p, seed)))
    if not instances:
        print("error: nothing to verify (give paths or --gnp)", file=sys.stderr)
        return EXIT_ERROR
    mismatches = 0
    for name, g in instances:
        results = {}
        for variant in VARIANTS:
            sol, _ = _solve_row(g, variant, args.time_limit, 1)
            results[variant] = sol.chi_eq if sol.optimal else None
        if g.n <= DEFAULT_LIMITS.max_n:
            results["oracle"] = brute_chi_eq(g)
        else:
            print(f"note: {name}: n={g.n} beyond oracle cap, comparing variants only")
        values = {v for v in results.values() if v is not None}
        if len(values) == 1:
            print(f"OK       {name}  chi_eq={values.pop()}")
        else:
            mismatches += 1
            detail = " ".join(f"{k}={v}" for k, v in sorted(results.items()))
            print(f"MISMATCH {name}  {detail}")
    if mismatches:
        print(f"{mismatches} mismatching instance(s)", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqcolor",
        description="Exact equitable graph coloring with flow-based pruning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one DIMACS .col instance")
    p_solve.add_argument("path")
    p_solve.add_argument("--algo", choices=VARIANTS, default="comb")
    p_solve.add_argument("--time-limit", type=float, default=3600.0)
    p_solve.add_argument("--cd-stride", type=int, default=1)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.set_defaults(func=cmd_solve)

    p_bench = sub.add_parser("bench", help="run a seeded G(n,p) campaign to CSV")
    p_bench.add_argument("--n", type=int, nargs="+", required=True)
    p_bench.add_argument("--p", type=float, nargs="+", required=True)
    p_bench.add_argument("--count", type=int, default=10)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument(
        "--algos", nargs="+", choices=VARIANTS, default=list(VARIANTS)
    )
    p_bench.add_argument("--time-limit", type=float, default=3600.0)
    p_bench.add_argument("--cd-stride", type=int, default=1)
    p_bench.add_argument("--out", required=True)
    p_bench.set_defaults(func=cmd_bench)

    p_verify = sub.add_parser(
        "verify", help="cross-check all variants (and the oracle when n is small)"
    )
    p_verify.add_argument("paths", nargs="*")
    p_verify.add_argument(
        "--gnp", nargs=3, metavar=("N", "P", "COUNT"), help="add random instances"
    )
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--time-limit", type=float, default=3600.0)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
