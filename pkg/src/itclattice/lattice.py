"""Accelerated clustering on the pixel lattice.

The data density P is the (normalized) foreground image convolved with a
Gaussian mask, computed once.  Each iteration deposits the codebook onto the
grid, convolves it into the codebook density Q, reads the information
potentials off the two fields, and moves every vector using windowed moment
sums around its cell.  No distances and no exponentials are evaluated inside
the loop.
"""

import time
from dataclasses import dataclass

import numpy as np

from .errors import DisjointSupport, EmptyImage, InvalidM, StrandedVector
from .filters import FilterMask, _batched_window_sums, gaussian_mask
from .filters import DEFAULT_RADIUS_FACTOR, convolve_separable
from .grid import as_field, extract_points, rasterize, round_half_away
from .params import DENOM_GUARD, DivergenceReport, ItcParams
from .trace import IterationRecord, RunTrace, field_digest

__all__ = [
    "LatticeItcState",
    "default_params",
    "density_from_mask",
    "lattice_potentials",
    "update_codebook_lattice",
    "run_lattice",
]


@dataclass
class LatticeItcState:
    """Densities, masks and codebook for one lattice iteration."""

    p_field: np.ndarray
    q_field: np.ndarray
    code: np.ndarray
    mask_xi: FilterMask
    mask_omega: FilterMask
    report: DivergenceReport


def default_params(n, m, **overrides):
    """Kernel width policy tied to the expected cluster footprint.

    With n data points split into m clusters, each cluster covers about
    n / m cells, so its radius is about sqrt(n / m); the codebook kernel
    width is set to half of that (floored at 0.5 cells) and the data kernel
    to half the codebook one.  Larger m therefore shrinks the masks, which
    is why runtime can drop as the codebook grows.
    """
    if not 1 <= m <= n:
        raise InvalidM(f"m must be in [1, {n}], got {m}")
    omega = max(0.5, float(np.sqrt(n / m)) / 2.0)
    return ItcParams(xi=omega / 2.0, omega=omega, **overrides)


def density_from_mask(mask_image, sigma, radius_factor=DEFAULT_RADIUS_FACTOR):
    """Unit-mass foreground image blurred into a discrete density."""
    field = as_field(mask_image)
    total = field.sum()
    if total <= 0:
        raise EmptyImage("image carries no mass")
    return convolve_separable(field / total, gaussian_mask(sigma, radius_factor))


def lattice_potentials(p_field, q_field):
    """Divergence report read directly off the two density fields."""
    p_field = as_field(p_field)
    q_field = as_field(q_field)
    if p_field.shape != q_field.shape:
        raise ValueError("density fields must share dimensions")
    v_cross = float(np.dot(p_field.ravel(), q_field.ravel()))
    v_code = float(np.dot(q_field.ravel(), q_field.ravel()))
    v_data = float(np.dot(p_field.ravel(), p_field.ravel()))
    if v_cross <= 0.0:
        raise DisjointSupport("data and codebook densities do not overlap")
    return DivergenceReport.assemble(v_cross, v_code, v_data)


def _clamped_cells(code, shape):
    h, w = shape
    cu = np.clip(round_half_away(code[:, 0]), 0, w - 1).astype(np.intp)
    cv = np.clip(round_half_away(code[:, 1]), 0, h - 1).astype(np.intp)
    return cu, cv


def _update_vectors(state):
    """Batched update; returns (new_code, stranded_index_array)."""
    code = state.code
    cu, cv = _clamped_cells(code, state.p_field.shape)
    sums_p = _batched_window_sums(state.p_field, state.mask_omega, cu, cv)
    sums_q = _batched_window_sums(state.q_field, state.mask_omega, cu, cv)
    s0p = sums_p[:, 0]
    stranded = np.nonzero(s0p <= DENOM_GUARD)[0]
    safe = np.where(s0p > DENOM_GUARD, s0p, 1.0)
    c = state.report.v_cross / state.report.v_code
    new = np.empty_like(code)
    new[:, 0] = sums_p[:, 1] / safe - c * sums_q[:, 1] / safe + c * (sums_q[:, 0] / safe) * code[:, 0]
    new[:, 1] = sums_p[:, 2] / safe - c * sums_q[:, 2] / safe + c * (sums_q[:, 0] / safe) * code[:, 1]
    return new, stranded


def update_codebook_lattice(state):
    """One synchronous update of all vectors from the current state.

    Each vector k combines the windowed moments of P and Q around its cell:

        w_k' = (su_p, sv_p) / s0_p
               - c (su_q, sv_q) / s0_p
               + c (s0_q / s0_p) w_k,      c = v_cross / v_code.

    Q and the potentials are the pre-update ones.  Raises
    ``StrandedVector`` when some vector's P-window mass is numerically zero.
    """
    new, stranded = _update_vectors(state)
    if stranded.size:
        raise StrandedVector(int(stranded[0]))
    return new


def _off_grid(code, shape):
    """Vectors whose rounded position falls outside the grid.

    The windowed-moment approximation is only meaningful for centers inside
    the image; a vector that left the grid is treated as stranded and
    re-seeded rather than being dragged along by clamped windows.
    """
    h, w = shape
    ru = round_half_away(code[:, 0])
    rv = round_half_away(code[:, 1])
    return np.nonzero((ru < 0) | (ru > w - 1) | (rv < 0) | (rv > h - 1))[0]


def run_lattice(mask_image, m, params, weights=None,
                radius_factor=DEFAULT_RADIUS_FACTOR):
    """Full lattice clustering run.

    The codebook is seeded on m distinct foreground pixels.  P is computed
    once, from ``weights`` when given (same dimensions, nonnegative), else
    from the 0/1 mask.  Each iteration rebuilds Q by rasterizing the
    codebook at weight 1/m and convolving with the omega mask, reads the
    potentials, and updates all vectors synchronously.  Stranded vectors
    (zero local data mass, or rounded position off the grid) are re-seeded
    from the foreground pixels with the run's generator and count as a
    movement of +inf for the termination check.
    """
    mask_image = as_field(mask_image)
    points = extract_points(mask_image)
    n = len(points)
    if not 1 <= m <= n:
        raise InvalidM(f"m must be in [1, {n}], got {m}")
    h, w = mask_image.shape
    rng = np.random.default_rng(params.seed)

    t0 = time.perf_counter()
    if weights is not None:
        weights = as_field(weights)
        if weights.shape != mask_image.shape:
            raise ValueError("weight map dimensions must match the mask")
        if (weights < 0).any():
            raise ValueError("weights must be nonnegative")
        if weights.sum() <= 0:
            raise EmptyImage("weight map carries no mass")
        p_base = weights
    else:
        p_base = mask_image
    mask_xi = gaussian_mask(params.xi, radius_factor)
    mask_omega = gaussian_mask(params.omega, radius_factor)
    p_field = convolve_separable(p_base / p_base.sum(), mask_xi)
    setup_seconds = time.perf_counter() - t0

    trace = RunTrace(
        method="itc-lattice",
        config={
            "m": m,
            "xi": params.xi,
            "omega": params.omega,
            "max_iter": params.max_iter,
            "eps_dcs": params.eps_dcs,
            "theta": params.theta,
            "seed": params.seed,
            "radius_factor": radius_factor,
            "weighted": weights is not None,
            "input_digest": field_digest(mask_image),
        },
        setup_seconds=setup_seconds,
    )

    def build_q(code):
        return convolve_separable(rasterize(code, w, h, 1.0 / m), mask_omega)

    idx = rng.choice(n, size=m, replace=False)
    code = points[idx].copy()

    t0 = time.perf_counter()
    q_field = build_q(code)
    report = lattice_potentials(p_field, q_field)
    trace.records.append(
        IterationRecord(0, time.perf_counter() - t0, report.d_cs, code.copy())
    )
    state = LatticeItcState(p_field, q_field, code, mask_xi, mask_omega, report)

    for it in range(1, params.max_iter + 1):
        t0 = time.perf_counter()
        new_code, stranded = _update_vectors(state)
        lost = np.union1d(stranded, _off_grid(new_code, p_field.shape))
        movement = float(np.abs(new_code - state.code).max())
        if lost.size:
            for k in lost:
                new_code[k] = points[rng.integers(n)]
            movement = np.inf
        prev_dcs = state.report.d_cs
        state.code = new_code
        state.q_field = build_q(new_code)
        state.report = lattice_potentials(p_field, state.q_field)
        trace.records.append(
            IterationRecord(it, time.perf_counter() - t0, state.report.d_cs,
                            new_code.copy())
        )
        rel_change = abs(state.report.d_cs - prev_dcs) / max(abs(prev_dcs), 1e-12)
        if rel_change <= params.eps_dcs or movement <= params.theta:
            break
    return state.code, trace
