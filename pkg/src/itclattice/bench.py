"""Runtime comparison harness: per-iteration timing across shapes and methods.

Each (shape, m, method) cell runs ``repetitions`` times with seeds
``seed_base + rep``.  The per-iteration figure excludes one-time setup (data
density precomputation, data self-potential) so the methods are compared on
their update-loop cost; total time includes setup.
"""

from dataclasses import dataclass, field

from .errors import ClusteringError, StrandedVector
from .grid import extract_points
from .kmeans import run_kmeans
from .lattice import default_params, run_lattice
from .reference import run_reference
from .shapes import parse_synth

__all__ = ["BenchSpec", "BenchRow", "run_bench", "write_bench_csv"]

METHODS = ("itc-ref", "itc-lattice", "kmeans")

CSV_HEADER = "shape,n,m,method,rep,iterations,total_seconds,seconds_per_iter"


@dataclass(frozen=True)
class BenchSpec:
    shapes: tuple        # synth spec strings, e.g. "disk:90@256x256"
    m_values: tuple
    methods: tuple = METHODS
    repetitions: int = 10
    seed_base: int = 0
    radius_factor: float = 3.0

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if not self.shapes or not self.m_values or not self.methods:
            raise ValueError("shape, m and method sweeps must be nonempty")
        if any(m < 1 for m in self.m_values):
            raise ValueError("codebook sizes must be at least 1")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")


@dataclass(frozen=True)
class BenchRow:
    shape: str
    n: int
    m: int
    method: str
    rep: int
    iterations: int
    total_seconds: float
    seconds_per_iter: float


def _run_cell(mask, points, m, method, seed, radius_factor):
    if method == "itc-lattice":
        _, trace = run_lattice(mask, m, default_params(len(points), m, seed=seed),
                               radius_factor=radius_factor)
    elif method == "itc-ref":
        try:
            _, trace = run_reference(points, m,
                                     default_params(len(points), m, seed=seed))
        except StrandedVector as exc:
            # a run that expelled a vector still produced valid per-iteration
            # timings up to that point, which is all the benchmark measures
            if exc.trace is None or exc.trace.iterations < 1:
                raise
            trace = exc.trace
    else:
        result = run_kmeans(points, m, seed=seed)
        trace = result.trace
    return trace


def run_bench(spec, progress=None):
    """Execute the sweep sequentially; returns a list of BenchRow."""
    rows = []
    for shape_spec in spec.shapes:
        mask = parse_synth(shape_spec)
        points = extract_points(mask)
        n = len(points)
        for m in spec.m_values:
            for method in spec.methods:
                for rep in range(spec.repetitions):
                    seed = spec.seed_base + rep
                    trace = _run_cell(mask, points, m, method, seed,
                                      spec.radius_factor)
                    rows.append(BenchRow(
                        shape=shape_spec, n=n, m=m, method=method, rep=rep,
                        iterations=trace.iterations,
                        total_seconds=trace.total_seconds,
                        seconds_per_iter=trace.seconds_per_iter,
                    ))
                    if progress is not None:
                        progress(rows[-1])
    return rows


def write_bench_csv(rows, path):
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(f"{r.shape},{r.n},{r.m},{r.method},{r.rep},{r.iterations},"
                     f"{r.total_seconds:.6f},{r.seconds_per_iter:.9f}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def mean_seconds_per_iter(rows, shape=None, m=None, method=None):
    """Mean per-iteration seconds over the rows matching the given cell."""
    sel = [r.seconds_per_iter for r in rows
           if (shape is None or r.shape == shape)
           and (m is None or r.m == m)
           and (method is None or r.method == method)]
    if not sel:
        raise ClusteringError("no bench rows match the requested cell")
    return sum(sel) / len(sel)
