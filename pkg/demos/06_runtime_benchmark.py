"""Small version of the runtime study: cost per iteration vs problem size.

The exact engine scales with N (pairwise kernel sums); the accelerated one
is set by the grid and the mask width.  Uses 3 repetitions to keep this
demo quick; the acceptance suite runs the full 10-repetition protocol.
"""

import os

from itclattice.bench import BenchSpec, mean_seconds_per_iter, run_bench, write_bench_csv

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

spec = BenchSpec(
    shapes=("disk:18@256x256", "disk:40@256x256", "disk:56@256x256",
            "disk:90@256x256"),
    m_values=(100,),
    methods=("itc-ref", "itc-lattice"),
    repetitions=3,
    seed_base=0,
)
print("running sweep (a couple of minutes, dominated by the exact engine)...")
rows = run_bench(spec)
write_bench_csv(rows, f"{OUT}/runtime_sweep.csv")

print(f"\n{'shape':20s} {'N':>6s} {'exact ms/iter':>14s} {'accel ms/iter':>14s} {'ratio':>7s}")
for shape in spec.shapes:
    n = next(r.n for r in rows if r.shape == shape)
    ref = mean_seconds_per_iter(rows, shape=shape, method="itc-ref")
    lat = mean_seconds_per_iter(rows, shape=shape, method="itc-lattice")
    print(f"{shape:20s} {n:6d} {ref * 1e3:14.2f} {lat * 1e3:14.3f} {ref / lat:6.1f}x")

print(f"\nfull rows in {OUT}/runtime_sweep.csv")
