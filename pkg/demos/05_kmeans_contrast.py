"""Why not just k-means?  Mode seeking vs variance minimization.

On a thin ring with few clusters, k-means parks centers inside the hole
(the mean of an arc is off the arc), while the divergence-minimizing
codebook stays on the shape because it seeks density modes and its vectors
repel each other.
"""

import numpy as np

import itclattice as itc

mask = itc.parse_synth("ring:48,44@128x128")
points = itc.extract_points(mask)
n = len(points)
m = 5
print(f"thin ring, N={n}, M={m}\n")
print("seed  kmeans max off-shape distance   itc max off-shape distance")
for seed in range(5):
    result = itc.run_kmeans(points, m, seed=seed)
    d_kmeans = np.sqrt(((result.centers[:, None, :] - points[None, :, :]) ** 2)
                       .sum(-1).min(1)).max()
    code, _ = itc.run_lattice(mask, m, itc.default_params(n, m, seed=seed))
    d_itc = np.sqrt(((code[:, None, :] - points[None, :, :]) ** 2)
                    .sum(-1).min(1)).max()
    print(f"  {seed}          {d_kmeans:6.2f} cells              "
          f"{d_itc:6.2f} cells")

print("\nk-means centers leave the shape; the codebook vectors never do.")
