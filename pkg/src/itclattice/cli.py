"""Command line front end.

Two subcommands:

``itc cluster``
    Run one clustering job on a file or synthetic shape and write
    ``<prefix>-codebook.csv`` (one row per vector), ``<prefix>-labels.pgm``
    (foreground segmentation, background gray 0), ``<prefix>-trace.csv``
    (per-iteration seconds and objective; for kmeans the objective column
    holds the inertia) and, in lattice mode, ``<prefix>-density.pgm``.

``itc bench``
    Sweep shapes x codebook sizes x methods and write one CSV row per
    repetition.

Exit codes: 1 usage error, 2 file/IO error, 3 numeric failure.

All numeric outputs are deterministic functions of the input bytes, the
flags and the seed; the seconds columns report real wall-clock time and are
the only nondeterministic bytes.  ``ITC_THREADS`` caps the compiled-kernel
worker count; the kernels run sequentially either way, so results do not
depend on it.
"""

import argparse
import os
import sys

import numpy as np

from .bench import BenchSpec, run_bench, write_bench_csv
from .errors import ClusteringError
from .grid import extract_points
from .kmeans import run_kmeans
from .lattice import default_params, run_lattice
from .netpbm import load_binary_image, load_gray_image, save_field
from .params import ItcParams
from .reference import run_reference
from .segmentation import segment
from .shapes import parse_synth
from .weighting import chamfer_transform

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _apply_thread_cap():
    value = os.environ.get("ITC_THREADS")
    if not value:
        return
    try:
        cap = int(value)
    except ValueError:
        return
    if cap >= 1:
        import numba

        numba.set_num_threads(max(1, min(cap, numba.config.NUMBA_NUM_THREADS)))


def _build_parser():
    parser = _Parser(prog="itc", description="Divergence-minimizing clustering "
                                             "of binary images on pixel lattices")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("cluster", help="run one clustering job", add_help=True)
    src = pc.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="PBM/PGM image path")
    src.add_argument("--synth", help="synthetic shape spec, e.g. disk:20@128x128")
    pc.add_argument("--method", required=True,
                    choices=["itc-ref", "itc-lattice", "kmeans"])
    pc.add_argument("--m", type=int, required=True, help="codebook size")
    pc.add_argument("--omega", type=float, help="codebook kernel width "
                                                "(default: sqrt(N/m)/2, min 0.5)")
    pc.add_argument("--xi", type=float, help="data kernel width (default: omega/2)")
    pc.add_argument("--radius-factor", type=float, default=3.0,
                    help="mask radius in sigmas (default 3)")
    pc.add_argument("--weighted", default="none",
                    help="'none', 'chamfer', or a PGM/PBM weight map path "
                         "(itc-lattice only)")
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--max-iter", type=int, default=50)
    pc.add_argument("--out-prefix", required=True)

    pb = sub.add_parser("bench", help="runtime sweep", add_help=True)
    pb.add_argument("--shape", action="append", required=True,
                    help="synth spec; repeat for a sweep")
    pb.add_argument("--m", action="append", type=int, required=True,
                    help="codebook size; repeat for a sweep")
    pb.add_argument("--method", action="append",
                    choices=["itc-ref", "itc-lattice", "kmeans"],
                    help="default: all three")
    pb.add_argument("--reps", type=int, default=10)
    pb.add_argument("--seed-base", type=int, default=0)
    pb.add_argument("--radius-factor", type=float, default=3.0)
    pb.add_argument("--out", required=True, help="output CSV path")
    return parser


def _load_mask(args, parser):
    if args.synth:
        try:
            return parse_synth(args.synth)
        except (ValueError, ClusteringError) as exc:
            parser.error(str(exc))
    try:
        return load_binary_image(args.input)
    except OSError as exc:
        print(f"itc: cannot read {args.input}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)
    except ClusteringError as exc:
        print(f"itc: {args.input}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def _write_csv(path, lines):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"itc: cannot write {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def _write_labels_pgm(labels, m, path):
    """Distinct gray per cluster: round(255 (k+1) / m); background 0."""
    gray = np.zeros(labels.shape, dtype=np.uint8)
    fg = labels >= 0
    gray[fg] = np.round(255.0 * (labels[fg] + 1) / m).astype(np.uint8)
    height, width = labels.shape
    try:
        with open(path, "wb") as fh:
            fh.write(f"P5\n{width} {height}\n255\n".encode())
            fh.write(gray.tobytes())
    except OSError as exc:
        print(f"itc: cannot write {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def _cmd_cluster(args, parser):
    if args.m < 1:
        parser.error("--m must be at least 1")
    if args.weighted != "none" and args.method != "itc-lattice":
        parser.error("--weighted requires --method itc-lattice")

    mask = _load_mask(args, parser)
    try:
        points = extract_points(mask)
    except ClusteringError as exc:
        print(f"itc: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_NUMERIC)
    n = len(points)
    if args.m > n:
        parser.error(f"--m {args.m} exceeds the {n} foreground pixels")

    weights = None
    if args.weighted == "chamfer":
        weights = chamfer_transform(mask).field
    elif args.weighted != "none":
        try:
            weights = load_gray_image(args.weighted)
        except OSError as exc:
            print(f"itc: cannot read {args.weighted}: {exc}", file=sys.stderr)
            raise SystemExit(EXIT_IO)
        except ClusteringError as exc:
            print(f"itc: {args.weighted}: {exc}", file=sys.stderr)
            raise SystemExit(EXIT_IO)

    policy = default_params(n, args.m)
    params = ItcParams(
        xi=args.xi if args.xi is not None else (
            args.omega / 2.0 if args.omega is not None else policy.xi),
        omega=args.omega if args.omega is not None else policy.omega,
        max_iter=args.max_iter,
        seed=args.seed,
    )

    try:
        if args.method == "itc-lattice":
            code, trace = run_lattice(mask, args.m, params, weights=weights,
                                      radius_factor=args.radius_factor)
        elif args.method == "itc-ref":
            code, trace = run_reference(points, args.m, params)
        else:
            result = run_kmeans(points, args.m, seed=args.seed,
                                max_iter=args.max_iter)
            code, trace = result.centers, result.trace
    except ClusteringError as exc:
        print(f"itc: numeric failure: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_NUMERIC)

    prefix = args.out_prefix
    lines = ["k,u,v"]
    for k, (u, v) in enumerate(code):
        lines.append(f"{k},{u:.6f},{v:.6f}")
    _write_csv(f"{prefix}-codebook.csv", lines)

    lines = ["iter,seconds,d_cs"]
    for rec in trace.records:
        lines.append(f"{rec.index},{rec.seconds:.6f},{rec.d_cs!r}")
    _write_csv(f"{prefix}-trace.csv", lines)

    _write_labels_pgm(segment(mask, code), args.m, f"{prefix}-labels.pgm")

    if args.method == "itc-lattice":
        base = weights if weights is not None else mask
        from .lattice import density_from_mask

        density = density_from_mask(base, params.xi, args.radius_factor)
        try:
            save_field(density, f"{prefix}-density.pgm", mode="gray-normalized")
        except OSError as exc:
            print(f"itc: cannot write density: {exc}", file=sys.stderr)
            raise SystemExit(EXIT_IO)
    return 0


def _cmd_bench(args, parser):
    try:
        spec = BenchSpec(
            shapes=tuple(args.shape),
            m_values=tuple(args.m),
            methods=tuple(args.method) if args.method else
            ("itc-ref", "itc-lattice", "kmeans"),
            repetitions=args.reps,
            seed_base=args.seed_base,
            radius_factor=args.radius_factor,
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        rows = run_bench(spec)
    except ClusteringError as exc:
        print(f"itc: numeric failure: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_NUMERIC)
    try:
        write_bench_csv(rows, args.out)
    except OSError as exc:
        print(f"itc: cannot write {args.out}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)
    return 0


def main(argv=None):
    _apply_thread_cap()
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "cluster":
        return _cmd_cluster(args, parser)
    return _cmd_bench(args, parser)


if __name__ == "__main__":
    sys.exit(main())
