"""Per-run iteration traces used for convergence checks and benchmarking."""

import hashlib
from dataclasses import dataclass, field

import numpy as np

__all__ = ["IterationRecord", "RunTrace", "field_digest"]


def field_digest(values):
    """Stable hex digest of an array's shape and contents."""
    arr = np.ascontiguousarray(values)
    h = hashlib.sha256()
    h.update(str(arr.shape).encode())
    h.update(arr.tobytes())
    return h.hexdigest()


@dataclass(frozen=True)
class IterationRecord:
    """One loop pass: index 0 is the initial state, later entries one update each.

    ``seconds`` for index 0 covers the initial divergence evaluation; for
    index i >= 1 it covers the codebook update plus the density and
    divergence refresh, which is the per-iteration cost the benchmark
    reports.  For k-means the objective slot carries the inertia instead of
    a divergence.
    """

    index: int
    seconds: float
    d_cs: float
    codebook: np.ndarray | None = None


@dataclass
class RunTrace:
    """Timing, objective values and codebook snapshots for one run."""

    method: str
    config: dict
    records: list[IterationRecord] = field(default_factory=list)
    setup_seconds: float = 0.0

    @property
    def iterations(self):
        """Number of update iterations (excludes the initial record)."""
        return max(0, len(self.records) - 1)

    @property
    def loop_seconds(self):
        return sum(r.seconds for r in self.records[1:])

    @property
    def seconds_per_iter(self):
        n = self.iterations
        return self.loop_seconds / n if n else 0.0

    @property
    def total_seconds(self):
        return self.setup_seconds + sum(r.seconds for r in self.records)
