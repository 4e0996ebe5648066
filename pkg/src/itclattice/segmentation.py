"""Hard assignment of foreground pixels to codebook vectors."""

import numpy as np

from .errors import EmptyCodebook
from .grid import as_field, as_points

__all__ = ["segment"]


def segment(mask, code):
    """Label each foreground cell with its nearest codebook vector.

    Returns an int array shaped like the mask holding -1 on background cells
    and the index of the closest vector (squared Euclidean, ties to the
    lowest index) on foreground cells.
    """
    mask = as_field(mask)
    code = as_points(code)
    if len(code) == 0:
        raise EmptyCodebook("segmentation needs at least one codebook vector")
    if not np.isin(mask, (0.0, 1.0)).all():
        raise ValueError("mask values must be exactly 0 or 1")
    labels = np.full(mask.shape, -1, dtype=np.int64)
    vs, us = np.nonzero(mask)
    if us.size == 0:
        return labels
    du = us[:, None] - code[None, :, 0]
    dv = vs[:, None] - code[None, :, 1]
    labels[vs, us] = (du * du + dv * dv).argmin(axis=1)
    return labels
