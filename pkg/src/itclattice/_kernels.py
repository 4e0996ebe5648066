"""Compiled inner loops (numba) for the hot paths.

Everything here is sequential with a fixed accumulation order, so results
are bit-reproducible regardless of thread or environment settings.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def conv_rows(field, taps, out):
    """1D convolution along rows (u axis), zero padding outside the grid."""
    h, w = field.shape
    r = (taps.size - 1) // 2
    for v in range(h):
        for u in range(w):
            lo = u - r
            if lo < 0:
                lo = 0
            hi = u + r
            if hi > w - 1:
                hi = w - 1
            acc = 0.0
            for x in range(lo, hi + 1):
                acc += field[v, x] * taps[r + u - x]
            out[v, u] = acc


@njit(cache=True)
def conv_cols(field, taps, out):
    """1D convolution along columns (v axis), zero padding outside the grid."""
    h, w = field.shape
    r = (taps.size - 1) // 2
    for v in range(h):
        for u in range(w):
            out[v, u] = 0.0
    for v in range(h):
        lo = v - r
        if lo < 0:
            lo = 0
        hi = v + r
        if hi > h - 1:
            hi = h - 1
        for y in range(lo, hi + 1):
            t = taps[r + v - y]
            for u in range(w):
                out[v, u] += field[y, u] * t


@njit(cache=True)
def window_sums(field, taps, cu, cv, out):
    """Mask-weighted zeroth and first moments around each center.

    For center k clamped to cell (cu[k], cv[k]) accumulates, over the
    (2r+1)^2 window intersected with the grid,
    ``s0 = sum f(x) F(x-c)``, ``su = sum f(x) F(x-c) x_u`` and
    ``sv = sum f(x) F(x-c) x_v`` into ``out[k] = (s0, su, sv)``.
    Accumulation runs in row-major order per center.
    """
    h, w = field.shape
    r = (taps.size - 1) // 2
    for k in range(cu.size):
        u0 = cu[k] - r
        if u0 < 0:
            u0 = 0
        u1 = cu[k] + r
        if u1 > w - 1:
            u1 = w - 1
        v0 = cv[k] - r
        if v0 < 0:
            v0 = 0
        v1 = cv[k] + r
        if v1 > h - 1:
            v1 = h - 1
        s0 = 0.0
        su = 0.0
        sv = 0.0
        for v in range(v0, v1 + 1):
            tv = taps[r + v - cv[k]]
            row0 = 0.0
            rowu = 0.0
            for u in range(u0, u1 + 1):
                fw = field[v, u] * taps[r + u - cu[k]]
                row0 += fw
                rowu += fw * u
            s0 += tv * row0
            su += tv * rowu
            sv += tv * row0 * v
        out[k, 0] = s0
        out[k, 1] = su
        out[k, 2] = sv


@njit(cache=True)
def chamfer_passes(dist):
    """In-place two-pass 3-4 chamfer sweep over an integer distance grid.

    ``dist`` must hold 0 on background cells and a large sentinel on
    foreground cells, with a one-cell background frame already added by the
    caller (the border rule).
    """
    h, w = dist.shape
    for v in range(1, h):
        for u in range(w):
            d = dist[v, u]
            if d == 0:
                continue
            e = dist[v, u - 1] + 3 if u > 0 else d
            if e < d:
                d = e
            e = dist[v - 1, u] + 3
            if e < d:
                d = e
            if u > 0:
                e = dist[v - 1, u - 1] + 4
                if e < d:
                    d = e
            if u < w - 1:
                e = dist[v - 1, u + 1] + 4
                if e < d:
                    d = e
            dist[v, u] = d
    for v in range(h - 2, -1, -1):
        for u in range(w - 1, -1, -1):
            d = dist[v, u]
            if d == 0:
                continue
            e = dist[v, u + 1] + 3 if u < w - 1 else d
            if e < d:
                d = e
            e = dist[v + 1, u] + 3
            if e < d:
                d = e
            if u < w - 1:
                e = dist[v + 1, u + 1] + 4
                if e < d:
                    d = e
            if u > 0:
                e = dist[v + 1, u - 1] + 4
                if e < d:
                    d = e
            dist[v, u] = d
