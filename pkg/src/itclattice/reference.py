"""Original continuous clustering: exact pairwise kernel sums, O(M N) per step.

This variant works directly on the point set with normalized 2D Gaussian
kernels.  It is the correctness oracle and the runtime baseline for the
lattice-accelerated variant; every iteration evaluates N x M distances and
exponentials.
"""

import time

import numpy as np

from .errors import DegenerateCodebook, InvalidM, InvalidSigma, StrandedVector
from .grid import as_points
from .params import DENOM_GUARD, DivergenceReport, ItcParams
from .trace import IterationRecord, RunTrace, field_digest

__all__ = ["gaussian_2d", "potentials", "update_codebook_reference", "run_reference"]

# Chunk row count for the N x N data self-potential so temporaries stay small.
_PAIR_CHUNK = 2048


def gaussian_2d(delta, sigma):
    """Normalized isotropic 2D Gaussian evaluated at a displacement."""
    if sigma <= 0:
        raise InvalidSigma(f"sigma must be positive, got {sigma}")
    delta = np.asarray(delta, dtype=np.float64)
    r2 = (delta * delta).sum(axis=-1)
    return np.exp(-r2 / (2.0 * sigma * sigma)) / (2.0 * np.pi * sigma * sigma)


def _kernel_matrix(a, b, sigma):
    """(len(a), len(b)) matrix of normalized Gaussian kernel values."""
    du = a[:, 0][:, None] - b[:, 0][None, :]
    dv = a[:, 1][:, None] - b[:, 1][None, :]
    s2 = 2.0 * sigma * sigma
    return np.exp(-(du * du + dv * dv) / s2) / (np.pi * s2)


def data_self_potential(data, xi):
    """V of the data alone: mean pairwise kernel at width sqrt(2) xi.

    Constant per data set; computed in row chunks because the full pairwise
    matrix does not fit in memory for large N.
    """
    data = as_points(data)
    n = len(data)
    sigma = np.sqrt(2.0) * xi
    total = 0.0
    for start in range(0, n, _PAIR_CHUNK):
        block = _kernel_matrix(data[start:start + _PAIR_CHUNK], data, sigma)
        total += float(block.sum())
    return total / (n * n)


def cross_and_code_potentials(data, code, params):
    """V(data; code) and V(code) from the pairwise overlap sums."""
    g_cross = _kernel_matrix(data, code, params.tau)
    g_code = _kernel_matrix(code, code, params.rho)
    v_cross = float(g_cross.sum()) / (len(data) * len(code))
    v_code = float(g_code.sum()) / (len(code) ** 2)
    return v_cross, v_code


def potentials(data, code, params):
    """Full divergence report for a data set / codebook pair."""
    data = as_points(data)
    code = as_points(code)
    if len(data) < 1 or len(code) < 1:
        raise InvalidM("need at least one data point and one codebook vector")
    v_cross, v_code = cross_and_code_potentials(data, code, params)
    v_data = data_self_potential(data, params.xi)
    return DivergenceReport.assemble(v_cross, v_code, v_data)


def update_codebook_reference(data, code, params):
    """One synchronous fix-point update of every codebook vector.

    Each vector moves to a kernel-weighted data mean, minus a scaled
    codebook-repulsion mean, plus a scaled self-anchoring term.  The balance
    constant is

        c = (N / M) * (tau^2 / rho^2) * V(data; code) / V(code)

    which makes the update's fixed points exactly the stationary points of
    the divergence; dropping the tau^2/rho^2 ratio (i.e. using the same
    derivative constant for both kernel widths) over-weights repulsion by
    rho^2/tau^2 and the iteration expels vectors instead of converging
    whenever omega != tau.  All M updates read the pre-update codebook, so
    the result is independent of vector order.  Raises ``StrandedVector``
    when some vector's data-kernel sum underflows.
    """
    data = as_points(data)
    code = as_points(code)
    n, m = len(data), len(code)
    g_cross = _kernel_matrix(data, code, params.tau)   # (N, M)
    g_code = _kernel_matrix(code, code, params.rho)    # (M, M)
    v_cross = float(g_cross.sum()) / (n * m)
    v_code = float(g_code.sum()) / (m * m)
    if v_code <= 0.0:
        raise DegenerateCodebook("codebook self-potential underflowed to zero")
    c = (n / m) * (params.tau_sq / params.rho_sq) * (v_cross / v_code)

    denom = g_cross.sum(axis=0)                        # (M,)
    dead = np.nonzero(denom <= DENOM_GUARD)[0]
    if dead.size:
        raise StrandedVector(int(dead[0]))
    attract = g_cross.T @ data                         # (M, 2)
    repel = g_code @ code                              # (M, 2)
    anchor = g_code.sum(axis=1)                        # (M,)
    new = attract / denom[:, None]
    new -= c * repel / denom[:, None]
    new += c * (anchor / denom)[:, None] * code
    return new


def _sample_codebook(data, m, rng):
    """Initial codebook: m distinct data points drawn without replacement."""
    idx = rng.choice(len(data), size=m, replace=False)
    return data[idx].copy()


def run_reference(data, m, params):
    """Iterate the reference update until the divergence settles.

    Returns the final codebook and a trace with one record per iteration
    (index 0 is the initial configuration).  Stops when the relative change
    of the divergence falls to ``eps_dcs``, when the largest coordinate
    movement falls to ``theta``, or at ``max_iter``.
    """
    data = as_points(data)
    n = len(data)
    if not 1 <= m <= n:
        raise InvalidM(f"m must be in [1, {n}], got {m}")
    rng = np.random.default_rng(params.seed)

    t0 = time.perf_counter()
    v_data = data_self_potential(data, params.xi)
    setup_seconds = time.perf_counter() - t0

    trace = RunTrace(
        method="itc-ref",
        config={
            "m": m,
            "xi": params.xi,
            "omega": params.omega,
            "max_iter": params.max_iter,
            "eps_dcs": params.eps_dcs,
            "theta": params.theta,
            "seed": params.seed,
            "input_digest": field_digest(data),
        },
        setup_seconds=setup_seconds,
    )

    code = _sample_codebook(data, m, rng)
    t0 = time.perf_counter()
    v_cross, v_code = cross_and_code_potentials(data, code, params)
    report = DivergenceReport.assemble(v_cross, v_code, v_data)
    trace.records.append(
        IterationRecord(0, time.perf_counter() - t0, report.d_cs, code.copy())
    )

    for it in range(1, params.max_iter + 1):
        t0 = time.perf_counter()
        try:
            new_code = update_codebook_reference(data, code, params)
        except StrandedVector as exc:
            exc.trace = trace
            raise
        movement = float(np.abs(new_code - code).max())
        code = new_code
        v_cross, v_code = cross_and_code_potentials(data, code, params)
        prev_dcs = report.d_cs
        report = DivergenceReport.assemble(v_cross, v_code, v_data)
        trace.records.append(
            IterationRecord(it, time.perf_counter() - t0, report.d_cs, code.copy())
        )
        rel_change = abs(report.d_cs - prev_dcs) / max(abs(prev_dcs), 1e-12)
        if rel_change <= params.eps_dcs or movement <= params.theta:
            break
    return code, trace
