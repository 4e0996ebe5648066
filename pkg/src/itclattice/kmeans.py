"""Plain Lloyd k-means on foreground pixel coordinates (comparison baseline).

Deliberately minimal: seeded initialization on distinct data points, nearest
center assignment with ties to the lowest index, mean updates, and
farthest-point repair for empty clusters.  No k-means++ and no accelerated
assignment, so the baseline stays deterministic and easy to reason about.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidM
from .grid import as_points
from .trace import IterationRecord, RunTrace, field_digest

__all__ = ["KmeansResult", "run_kmeans"]


@dataclass
class KmeansResult:
    centers: np.ndarray
    labels: np.ndarray
    inertia: float
    iterations: int
    inertia_history: list = field(default_factory=list)
    trace: RunTrace | None = None


def _assign(data, centers):
    """Nearest center per point by squared distance; ties to lowest index."""
    d2 = ((data[:, None, :] - centers[None, :, :]) ** 2).sum(axis=-1)
    labels = d2.argmin(axis=1)
    return labels, d2


def run_kmeans(data, m, seed, max_iter=100):
    """Lloyd iteration until assignments stop changing or max_iter."""
    data = as_points(data)
    n = len(data)
    if not 1 <= m <= n:
        raise InvalidM(f"m must be in [1, {n}], got {m}")
    rng = np.random.default_rng(seed)
    centers = data[rng.choice(n, size=m, replace=False)].copy()

    trace = RunTrace(
        method="kmeans",
        config={"m": m, "max_iter": max_iter, "seed": seed,
                "input_digest": field_digest(data)},
    )
    t0 = time.perf_counter()
    labels, d2 = _assign(data, centers)
    inertia = float(d2[np.arange(n), labels].sum())
    history = [inertia]
    trace.records.append(
        IterationRecord(0, time.perf_counter() - t0, inertia, centers.copy())
    )

    iterations = 0
    for it in range(1, max_iter + 1):
        t0 = time.perf_counter()
        taken = set()
        for k in range(m):
            sel = labels == k
            if sel.any():
                centers[k] = data[sel].mean(axis=0)
            else:
                # re-seed an empty cluster on the point farthest from its
                # current center (skipping points already used this round)
                order = np.argsort(-d2[:, k], kind="stable")
                for cand in order:
                    if int(cand) not in taken:
                        centers[k] = data[cand]
                        taken.add(int(cand))
                        break
        new_labels, d2 = _assign(data, centers)
        inertia = float(d2[np.arange(n), new_labels].sum())
        history.append(inertia)
        iterations = it
        trace.records.append(
            IterationRecord(it, time.perf_counter() - t0, inertia, centers.copy())
        )
        stable = bool((new_labels == labels).all())
        labels = new_labels
        if stable:
            break

    return KmeansResult(centers=centers, labels=labels, inertia=inertia,
                        iterations=iterations, inertia_history=history,
                        trace=trace)
