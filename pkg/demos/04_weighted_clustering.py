"""Interior-weighted clustering with the chamfer distance transform.

The chamfer map grades every foreground pixel by its distance to the
background; using it as the data weight pulls the codebook toward the
shape's central axis.  The weighting only changes the precomputed data
density, so the iteration cost is untouched.
"""

import os

import numpy as np

import itclattice as itc

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

mask = itc.parse_synth("bar:5,100@128x128")
n = int(mask.sum())
m = 30
chamfer = itc.chamfer_transform(mask)
itc.save_field(chamfer.field, f"{OUT}/bar_chamfer.pgm", mode="gray-normalized")
density = itc.weighted_density(chamfer, itc.default_params(n, m).xi)
itc.save_field(density, f"{OUT}/bar_weighted_density.pgm", mode="gray-normalized")


def mean_interior_depth(code):
    u = np.clip(itc.round_half_away(code[:, 0]), 0, 127).astype(int)
    v = np.clip(itc.round_half_away(code[:, 1]), 0, 127).astype(int)
    return chamfer.field[v, u].mean()


plain_depth, weighted_depth = [], []
for seed in range(10):
    params = itc.default_params(n, m, seed=seed)
    code_plain, _ = itc.run_lattice(mask, m, params)
    code_weighted, _ = itc.run_lattice(mask, m, params, weights=chamfer.field)
    plain_depth.append(mean_interior_depth(code_plain))
    weighted_depth.append(mean_interior_depth(code_weighted))

print(f"bar 5x100, M={m}, 10 seeds")
print(f"mean chamfer depth at codebook positions:")
print(f"  unweighted: {np.mean(plain_depth):.3f}")
print(f"  weighted:   {np.mean(weighted_depth):.3f}  "
      f"(deeper = closer to the central axis)")
print(f"chamfer map and weighted density written to {OUT}/")
