"""Command-line front end: ``capacity``, ``reproduce``, ``sweep``, ``distinguish``.

Exit codes: 0 success, 1 runtime or convergence failure, 2 usage error.
"""

import argparse
import csv
import math
import sys
from dataclasses import astuple, dataclass, fields

import numpy as np

from .analytic import (
    crypto_estimate,
    renyi_divergence,
    table1_row,
    table2_row,
)
from .ba import DEFAULT_MAX_ITERATIONS, SolverConfig, ba_capacity
from .channel import make_bsc, make_nonsymmetric_binary, make_wht_sparse_channel
from .distinguisher import estimate_error_rates
from .errors import DomainError

DEFAULT_EPSILON = 1e-4
TABLE_GRID = [round(0.05 * i, 2) for i in range(1, 20)]

TABLE1_HEADER = ["d", "capacity", "renyi_half_over_two", "estimate"]
TABLE2_HEADER = ["d", "capacity", "theory", "renyi_half_over_two", "estimate"]
DISTINGUISH_HEADER = ["samples", "false_accept_biased", "false_accept_uniform", "trials", "seed"]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepRow:
    d: float
    k: int
    capacity_ba: float
    estimate: float
    renyi_half_over_two: float
    iterations: int


SWEEP_HEADER = [f.name for f in fields(SweepRow)]


def write_sweep_csv(rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in astuple(row)])


def read_sweep_csv(stream):
    reader = csv.reader(stream)
    header = next(reader)
    if header != SWEEP_HEADER:
        raise ValueError(f"unexpected sweep header {header}")
    return [
        SweepRow(float(d), int(k), float(c), float(e), float(r), int(it))
        for d, k, c, e, r, it in reader
    ]


def make_channel(kind, d, n=8, k=1):
    if kind == "bsc":
        return make_bsc(d)
    if kind == "nonsym":
        return make_nonsymmetric_binary(d)
    if kind == "wht":
        return make_wht_sparse_channel(n, k, d)
    raise DomainError(f"unknown channel kind {kind!r}")


def reproduce_rows(table, epsilon=DEFAULT_EPSILON):
    """Reference table rows (table1: non-symmetric channel, table2: BSC) as 4-decimal strings."""
    rows = []
    for d in TABLE_GRID:
        if table == "table1":
            r = table1_row(d, epsilon)
            values = [r.ba_capacity, r.renyi_half_over_two, r.crypto_estimate]
        elif table == "table2":
            r = table2_row(d, epsilon)
            values = [r.ba_capacity, r.closed_form_or_estimate, r.renyi_half_over_two, r.crypto_estimate]
        else:
            raise DomainError(f"unknown table {table!r}")
        rows.append([f"{d:.2f}"] + [f"{v:.4f}" for v in values])
    return rows


def default_d_grid(k):
    top = min(0.99, 1.0 / k - 0.01)
    return [round(0.01 * i, 10) for i in range(1, int(round(top / 0.01)) + 1)]


def d_grid(d_min, d_max, d_step):
    count = int(math.floor((d_max - d_min) / d_step + 1e-9))
    return [round(d_min + i * d_step, 12) for i in range(count + 1)]


def sweep_rows(n, k_list, grid_for_k, epsilon=DEFAULT_EPSILON):
    rows = []
    for k in sorted(k_list):
        for d in grid_for_k(k):
            q = make_wht_sparse_channel(n, k, d)
            res = ba_capacity(q, SolverConfig(epsilon=epsilon))
            rows.append(SweepRow(
                d=float(d),
                k=int(k),
                capacity_ba=res.capacity_lower,
                estimate=crypto_estimate(k, d),
                renyi_half_over_two=renyi_divergence(q[0], q[1], 0.5) / 2.0,
                iterations=res.iterations,
            ))
    return rows


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_csv(path, header, rows):
    stream, close = _open_out(path)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            stream.close()


def cmd_capacity(args):
    try:
        q = make_channel(args.channel, args.d, args.n, args.k)
        config = SolverConfig(epsilon=args.epsilon, max_iterations=args.max_iterations)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    res = ba_capacity(q, config)
    print(f"capacity_lower {res.capacity_lower:.6f}")
    print(f"capacity_upper {res.capacity_upper:.6f}")
    print(f"capacity_bits {res.capacity_lower / math.log(2):.6f}")
    print(f"iterations {res.iterations}")
    print(f"converged {str(res.converged).lower()}")
    with np.printoptions(precision=6, threshold=16, edgeitems=4):
        print(f"input_dist {np.array2string(res.input_dist, separator=',')}")
    return 0 if res.converged else 1


def cmd_reproduce(args):
    header = TABLE1_HEADER if args.table == "table1" else TABLE2_HEADER
    _write_csv(args.out, header, reproduce_rows(args.table, args.epsilon))
    return 0


def cmd_sweep(args):
    if args.d_max is None:
        grid_for_k = default_d_grid
    else:
        for k in args.k:
            if k * args.d_max > 1.0 + 1e-12:
                raise UsageError(f"k*d_max > 1 for (k={k}, d_max={args.d_max})")
        d_min = args.d_min if args.d_min is not None else 0.0
        points = d_grid(d_min, args.d_max, args.d_step)
        grid_for_k = lambda k: points  # noqa: E731
    try:
        rows = sweep_rows(args.n, args.k, grid_for_k, args.epsilon)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    stream, close = _open_out(args.out)
    try:
        write_sweep_csv(rows, stream)
    finally:
        if close:
            stream.close()
    return 0


def cmd_distinguish(args):
    try:
        q = make_wht_sparse_channel(args.n, args.k, args.d)
        reports = [estimate_error_rates(q, s, args.trials, args.seed) for s in args.samples]
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    rows = [
        [r.sample_count, repr(r.false_accept_biased), repr(r.false_accept_uniform), r.trials, r.seed]
        for r in reports
    ]
    _write_csv(args.out, DISTINGUISH_HEADER, rows)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="bacap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="BA capacity of one channel")
    p.add_argument("--channel", choices=["bsc", "nonsym", "wht"], required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--n", type=int, default=8, help="bit dimension (wht only)")
    p.add_argument("--k", type=int, default=1, help="sparsity (wht only)")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--max-iterations", type=int, default=DEFAULT_MAX_ITERATIONS)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("reproduce", help="write the non-symmetric (table1) or BSC (table2) reference table as CSV")
    p.add_argument("--table", choices=["table1", "table2"], required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("sweep", help="BA capacity of sparse Walsh channels over a d grid")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, nargs="+", default=[1, 2, 4])
    p.add_argument("--d-min", type=float)
    p.add_argument("--d-max", type=float)
    p.add_argument("--d-step", type=float, default=0.01)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("distinguish", help="Monte-Carlo error rates of the LLR distinguisher")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--samples", type=int, nargs="+", required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_distinguish)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")
    except OSError as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
