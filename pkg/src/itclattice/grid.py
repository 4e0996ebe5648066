"""Lattice data conventions and the binary-image / point-set isomorphism.

A grid field is a dense ``(height, width)`` float64 array indexed as
``field[v, u]`` where ``u`` is the column and ``v`` the row; the origin sits
at the top-left cell.  A point set (and likewise a codebook) is an ``(n, 2)``
float64 array of ``(u, v)`` positions in lattice units.  Every foreground
pixel of a binary image is one 2D point, so a 0/1 field and a point set are
two views of the same data.

All functions treat their inputs as read-only and return fresh arrays.
"""

import numpy as np

from .errors import EmptyImage

__all__ = ["as_field", "as_points", "extract_points", "rasterize", "round_half_away"]


def as_field(values):
    """Coerce to a 2D float64 field, checking finiteness."""
    field = np.asarray(values, dtype=np.float64)
    if field.ndim != 2 or field.shape[0] < 1 or field.shape[1] < 1:
        raise ValueError(f"grid field must be 2D and non-empty, got shape {field.shape}")
    if not np.isfinite(field).all():
        raise ValueError("grid field contains NaN or Inf")
    return field


def as_points(positions):
    """Coerce to an (n, 2) float64 array of (u, v) positions."""
    pts = np.asarray(positions, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"point array must have shape (n, 2), got {pts.shape}")
    if not np.isfinite(pts).all():
        raise ValueError("point array contains NaN or Inf")
    return pts


def round_half_away(x):
    """Round to nearest integer with .5 ties going away from zero.

    ``np.round`` rounds ties to even, which would make rasterization depend
    on the parity of the target cell; half-away is symmetric about the
    lattice.
    """
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def extract_points(mask):
    """Return the (u, v) coordinates of all foreground cells in row-major order.

    ``mask`` must contain exactly the values 0 and 1.  Raises ``EmptyImage``
    when no cell is set.
    """
    mask = as_field(mask)
    if not np.isin(mask, (0.0, 1.0)).all():
        raise ValueError("mask values must be exactly 0 or 1")
    vs, us = np.nonzero(mask)
    if us.size == 0:
        raise EmptyImage("mask has no foreground pixel")
    return np.column_stack((us, vs)).astype(np.float64)


def rasterize(points, width, height, weight_per_point):
    """Deposit point masses onto their nearest lattice cells.

    Each point adds ``weight_per_point`` at cell ``(round(u), round(v))``;
    coincident points accumulate and points rounding outside the grid are
    clamped to the nearest border cell, so total mass is always
    ``len(points) * weight_per_point``.
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be at least 1x1")
    pts = as_points(points)
    field = np.zeros((height, width), dtype=np.float64)
    u = np.clip(round_half_away(pts[:, 0]), 0, width - 1).astype(np.intp)
    v = np.clip(round_half_away(pts[:, 1]), 0, height - 1).astype(np.intp)
    np.add.at(field, (v, u), weight_per_point)
    return field
