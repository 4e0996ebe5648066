"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see every line.  The
timing-heavy criteria (2, 3) share one benchmark sweep; expect a few
minutes of wall time.

Three sub-criteria are implemented faithfully but are expected to FAIL on
well-founded grounds (measurements and proofs in the project notes):

* criterion 1: a single accelerated step cannot match a single exact step
  within 0.5 cells on 32x32 grids, because the policy kernel widths (omega
  up to 8) make zero-padding boundary truncation dominate; on padded grids
  the same comparison is exact to ~1e-12.
* criterion 3 (lattice flatness): the kernel-width policy grows the mask
  radius with N (5 -> 24 across the sweep), so per-iteration cost varies
  by more than 2x even though no distances or exponentials are evaluated.
* criterion 6 (k-means off-shape on the bar): centroids of subsets of a
  solid axis-aligned rectangle lie in its convex hull, hence within
  sqrt(2)/2 < 1 of a foreground pixel center; the required violation is
  geometrically impossible on a bar.
"""

import csv
import os
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.signal import convolve2d

import itclattice as itc
from itclattice.bench import BenchSpec, mean_seconds_per_iter, run_bench
from itclattice.errors import ClusteringError
from itclattice.filters import _batched_window_sums  # noqa: F401  (warm import)
from tests.test_lattice import make_state
from tests.test_weighting import dijkstra_chamfer

GRID = 128
SHAPES = {
    "disk": ("disk", (40,)),
    "ring": ("ring", (48, 36)),
    "bar": ("bar", (5, 100)),
    "lshape": ("lshape", (100, 16)),
}
N_SWEEP_SHAPES = ("disk:18@256x256", "disk:40@256x256",
                  "disk:56@256x256", "disk:90@256x256")
BIG_DISK = "disk:90@256x256"


def report(criterion, ok, detail):
    line = f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line, flush=True)
    assert ok, line


def shape_mask(name):
    kind, size = SHAPES[name]
    return itc.synth_shape(kind, size, GRID, GRID)


def min_dist_to_foreground(code, points):
    d2 = ((code[:, None, :] - points[None, :, :]) ** 2).sum(-1)
    return np.sqrt(d2.min(axis=1))


@pytest.fixture(scope="module")
def n_sweep_rows():
    spec = BenchSpec(shapes=N_SWEEP_SHAPES, m_values=(100,),
                     methods=("itc-ref", "itc-lattice"), repetitions=10,
                     seed_base=0)
    t0 = time.perf_counter()
    rows = run_bench(spec)
    return rows, time.perf_counter() - t0


@pytest.fixture(scope="module")
def m_sweep_rows():
    spec = BenchSpec(shapes=("disk:56@256x256",), m_values=(10, 50, 100, 200),
                     methods=("itc-lattice",), repetitions=10, seed_base=0)
    return run_bench(spec)


@pytest.fixture(scope="module")
def shape_runs():
    """10 seeded runs per shape for both engines at M=30 (criteria 4, 5, 6)."""
    out = {}
    for name in SHAPES:
        mask = shape_mask(name)
        points = itc.extract_points(mask)
        n = len(points)
        cells = {"itc-lattice": [], "itc-ref": []}
        for seed in range(10):
            params = itc.default_params(n, 30, seed=seed)
            code, trace = itc.run_lattice(mask, 30, params)
            cells["itc-lattice"].append((code, trace))
            try:
                code, trace = itc.run_reference(points, 30, params)
                cells["itc-ref"].append((code, trace))
            except ClusteringError:
                cells["itc-ref"].append((None, None))
        out[name] = (mask, points, cells)
    return out


def test_criterion_01_single_step_oracle_equivalence():
    """Single accelerated step vs single exact step on random 32x32 masks."""
    t0 = time.perf_counter()
    diffs = []
    for trial in range(20):
        rng = np.random.default_rng(1000 + trial)
        density = rng.uniform(0.1, 0.5)
        mask = (rng.random((32, 32)) < density).astype(float)
        points = itc.extract_points(mask)
        n = len(points)
        for m in (2, 5, 10):
            params = itc.default_params(n, m)
            idx = rng.choice(n, size=m, replace=False)
            code = points[idx].copy()
            ref_step = itc.update_codebook_reference(points, code, params)
            state = make_state(mask, code, params, radius_factor=6.0)
            lat_step = itc.update_codebook_lattice(state)
            diffs.extend(np.abs(ref_step - lat_step).max(axis=1).tolist())
    diffs = np.array(diffs)
    frac_half = float((diffs <= 0.5).mean())
    worst = float(diffs.max())
    elapsed = time.perf_counter() - t0
    ok = frac_half >= 0.95 and worst <= 1.0 and elapsed < 30.0
    report("1 oracle-equivalence", ok,
           f"{frac_half:.1%} of {diffs.size} vectors within 0.5 (need 95%), "
           f"max {worst:.2f} (need <= 1.0), {elapsed:.1f}s")


def test_criterion_02_speedup(n_sweep_rows):
    """Accelerated update loop at least 20x faster at desk scale."""
    rows, elapsed = n_sweep_rows
    ref = mean_seconds_per_iter(rows, shape=BIG_DISK, method="itc-ref")
    lat = mean_seconds_per_iter(rows, shape=BIG_DISK, method="itc-lattice")
    ratio = ref / lat
    ok = ratio >= 20.0 and elapsed < 600.0
    report("2 speedup", ok,
           f"ref {ref * 1e3:.2f} ms/iter vs lattice {lat * 1e3:.3f} ms/iter = "
           f"{ratio:.1f}x (need >= 20x), sweep took {elapsed:.0f}s")


def test_criterion_03_reference_growth(n_sweep_rows):
    """Exact method's per-iteration cost grows at least linearly in N."""
    rows, _ = n_sweep_rows
    spi = [mean_seconds_per_iter(rows, shape=s, method="itc-ref")
           for s in N_SWEEP_SHAPES]
    ns = [next(r.n for r in rows if r.shape == s) for s in N_SWEEP_SHAPES]
    monotone = all(a < b for a, b in zip(spi, spi[1:]))
    growth = spi[-1] / spi[0]
    needed = ns[-1] / ns[0]
    ok = monotone and growth >= needed
    report("3 reference-growth", ok,
           f"spi {[f'{s * 1e3:.2f}' for s in spi]} ms over N={ns}; "
           f"growth {growth:.0f}x vs linear bound {needed:.0f}x")


def test_criterion_03_lattice_flatness(n_sweep_rows):
    """Accelerated per-iteration cost varies by < 2x across the N sweep."""
    rows, _ = n_sweep_rows
    spi = [mean_seconds_per_iter(rows, shape=s, method="itc-lattice")
           for s in N_SWEEP_SHAPES]
    variation = max(spi) / min(spi)
    ok = variation < 2.0
    report("3 lattice-flatness", ok,
           f"spi {[f'{s * 1e3:.3f}' for s in spi]} ms; max/min {variation:.2f} "
           f"(need < 2); mask radius grows 5 -> 24 with the width policy")


def test_criterion_03_lattice_m_sweep(m_sweep_rows):
    """Per-iteration cost non-increasing for M >= 50 at N ~ 10k."""
    spi = {m: mean_seconds_per_iter(m_sweep_rows, m=m) for m in (10, 50, 100, 200)}
    ok = spi[50] >= spi[100] >= spi[200]
    report("3 lattice-m-sweep", ok,
           "spi ms: " + ", ".join(f"M={m}: {spi[m] * 1e3:.3f}" for m in spi))


def test_criterion_04_convergence_speed(shape_runs):
    """Median iterations-to-termination <= 20 (<= 25 for the ring)."""
    medians = {}
    for name, (_, _, cells) in shape_runs.items():
        iters = [trace.iterations for _, trace in cells["itc-lattice"]]
        medians[name] = float(np.median(iters))
    ok = all(medians[n] <= (25 if n == "ring" else 20) for n in medians)
    report("4 convergence-speed", ok,
           ", ".join(f"{n}: median {medians[n]:.1f}" for n in medians))


def test_criterion_05_divergence_decrease(shape_runs):
    """Final divergence below initial in >= 9/10 runs per shape/method cell."""
    details = []
    ok = True
    for name, (_, _, cells) in shape_runs.items():
        for method, runs in cells.items():
            good = sum(1 for _, trace in runs
                       if trace is not None
                       and trace.records[-1].d_cs < trace.records[0].d_cs)
            details.append(f"{name}/{method}: {good}/10")
            ok = ok and good >= 9
    report("5 divergence-decrease", ok, ", ".join(details))


def test_criterion_06_mode_support_and_noncollapse(shape_runs):
    """Accelerated codebooks stay on the shape and never collapse."""
    worst_support = 0.0
    min_pair = np.inf
    for name in ("bar", "lshape"):
        _, points, cells = shape_runs[name]
        for code, _ in cells["itc-lattice"]:
            worst_support = max(worst_support,
                                float(min_dist_to_foreground(code, points).max()))
            d2 = ((code[:, None, :] - code[None, :, :]) ** 2).sum(-1)
            np.fill_diagonal(d2, np.inf)
            min_pair = min(min_pair, float(np.sqrt(d2.min())))
    ok = worst_support <= 1.0 and min_pair > 1e-6
    report("6 mode-support", ok,
           f"worst support distance {worst_support:.3f} (need <= 1.0), "
           f"min pairwise distance {min_pair:.3g} (need > 1e-6)")


def test_criterion_06_kmeans_off_shape_contrast(shape_runs):
    """k-means on the bar must park a center off the shape in >= 5/10 seeds."""
    _, points, _ = shape_runs["bar"]
    off = 0
    for seed in range(10):
        result = itc.run_kmeans(points, 5, seed=seed)
        if min_dist_to_foreground(result.centers, points).max() > 1.0:
            off += 1
    ok = off >= 5
    report("6 kmeans-contrast", ok,
           f"{off}/10 seeds with an off-shape center (need >= 5); centroids of "
           f"subsets of a solid rectangle cannot leave it, so 0/10 is forced")


def test_criterion_07_weighted_interior_pull(shape_runs):
    """Chamfer weighting pulls centers toward the bar's interior axis."""
    mask, points, cells = shape_runs["bar"]
    n = len(points)
    chamfer = itc.chamfer_transform(mask).field

    def mean_chamfer(code):
        u = np.clip(itc.round_half_away(code[:, 0]), 0, GRID - 1).astype(int)
        v = np.clip(itc.round_half_away(code[:, 1]), 0, GRID - 1).astype(int)
        return float(chamfer[v, u].mean())

    plain = [mean_chamfer(code) for code, _ in cells["itc-lattice"]]
    weighted = []
    for seed in range(10):
        params = itc.default_params(n, 30, seed=seed)
        code, _ = itc.run_lattice(mask, 30, params, weights=chamfer)
        weighted.append(mean_chamfer(code))
    ok = np.mean(weighted) >= np.mean(plain)
    report("7 weighted-interior-pull", ok,
           f"mean chamfer weighted {np.mean(weighted):.3f} vs "
           f"unweighted {np.mean(plain):.3f}")


def test_criterion_08_numerical_foundations():
    """Convolution, density, chamfer and divergence ground truths."""
    failures = []

    # separable convolution == dense 2D convolution
    rng = np.random.default_rng(99)
    field = rng.random((16, 16))
    for sigma in (0.5, 1.0, 2.5, 5.0):
        mask = itc.gaussian_mask(sigma)
        dense = convolve2d(field, np.outer(mask.taps, mask.taps),
                           mode="same", boundary="fill")
        err = np.abs(itc.convolve_separable(field, mask) - dense).max()
        if err > 1e-12:
            failures.append(f"conv sigma={sigma}: {err:.2e}")

    # blurred foreground == direct truncated kernel-sum density
    mask_img = np.zeros((32, 32))
    mask_img.flat[rng.choice(1024, size=8, replace=False)] = 1.0
    fm = itc.gaussian_mask(1.5)
    direct = np.zeros_like(mask_img)
    r = fm.radius
    for (u, v) in itc.extract_points(mask_img).astype(int):
        for dv in range(-r, r + 1):
            for du in range(-r, r + 1):
                if 0 <= u + du < 32 and 0 <= v + dv < 32:
                    direct[v + dv, u + du] += fm.taps[r + du] * fm.taps[r + dv] / 8
    err = np.abs(itc.density_from_mask(mask_img, 1.5) - direct).max()
    if err > 1e-12:
        failures.append(f"density vs direct sum: {err:.2e}")

    # chamfer == exact shortest path on grids up to 32x32
    for trial in range(3):
        g = np.random.default_rng(50 + trial)
        size = int(g.integers(8, 33))
        m = (g.random((size, size)) < 0.6).astype(float)
        if m.sum() == 0:
            m[size // 2, size // 2] = 1.0
        if not np.array_equal(itc.chamfer_transform(m).field, dijkstra_chamfer(m)):
            failures.append(f"chamfer mismatch on {size}x{size}")

    # divergence lower bound across both engines
    disk = itc.synth_shape("disk", (10,), 48, 48)
    pts = itc.extract_points(disk)
    params = itc.default_params(len(pts), 6, seed=0)
    _, trace_l = itc.run_lattice(disk, 6, params)
    _, trace_r = itc.run_reference(pts, 6, params)
    min_dcs = min(rec.d_cs for rec in trace_l.records + trace_r.records)
    if min_dcs < -1e-9:
        failures.append(f"d_cs lower bound violated: {min_dcs:.2e}")

    # identical densities give zero divergence
    p = rng.random((12, 12))
    p /= p.sum()
    if abs(itc.lattice_potentials(p, p).d_cs) > 1e-12:
        failures.append("P=Q divergence nonzero")

    report("8 numerical-foundations", not failures, "; ".join(failures) or
           "conv<=1e-12, density<=1e-12, chamfer exact, d_cs bounds hold")


def _run_cli(args, workdir, env_extra=None):
    env = dict(os.environ)
    env.pop("ITC_THREADS", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "itclattice.cli", *args],
                          capture_output=True, text=True, cwd=workdir, env=env)


def test_criterion_09_cli_determinism(tmp_path):
    """Identical invocations give identical numeric outputs, regardless of
    ITC_THREADS.  Wall-clock columns are exempted: criterion 2 requires the
    trace to carry measured seconds, which no two runs can reproduce
    byte-for-byte."""
    flags = ["cluster", "--synth", "ring:14,9@56x56", "--method", "itc-lattice",
             "--m", "6", "--seed", "13"]
    variants = [(None, "a"), (None, "b"), ({"ITC_THREADS": "1"}, "c"),
                ({"ITC_THREADS": "4"}, "d")]
    payloads = []
    for env_extra, tag in variants:
        prefix = tmp_path / tag
        proc = _run_cli(flags + ["--out-prefix", str(prefix)], tmp_path, env_extra)
        assert proc.returncode == 0, proc.stderr
        payload = {}
        for suffix in ("-codebook.csv", "-labels.pgm", "-density.pgm"):
            with open(f"{prefix}{suffix}", "rb") as fh:
                payload[suffix] = fh.read()
        with open(f"{prefix}-trace.csv", newline="") as fh:
            payload["trace"] = [(row[0], row[2]) for row in csv.reader(fh)]
        payloads.append(payload)
    ok = all(p == payloads[0] for p in payloads[1:])
    report("9 cli-determinism", ok,
           "codebook/labels/density byte-identical and trace objective "
           "identical across repeats and ITC_THREADS in {unset,1,4}")
