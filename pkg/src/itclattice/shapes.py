"""Deterministic synthetic binary shapes for tests, demos and benchmarks.

Shape spec strings take the form ``kind:params@WxH``:

    disk:R@WxH          filled disk of radius R centered at (W//2, H//2)
    ring:RO,RI@WxH      annulus, RI < distance <= RO
    bar:BW,BH@WxH       centered axis-aligned rectangle, BW columns x BH rows
    lshape:ARM,T@WxH    L of two T-thick arms spanning an ARM x ARM box
    two-blobs:R,S@WxH   two disks of radius R with centers S cells apart

Every shape is a pure function of its parameters; pixel counts are exact
(a bar of BW x BH has exactly BW*BH foreground cells).
"""

import numpy as np

from .errors import ShapeOverflow

__all__ = ["synth_shape", "parse_synth"]

KINDS = ("disk", "ring", "bar", "lshape", "two-blobs")


def _disk(cu, cv, radius, width, height):
    v, u = np.mgrid[0:height, 0:width]
    return ((u - cu) ** 2 + (v - cv) ** 2 <= radius * radius).astype(np.float64)


def synth_shape(kind, size, width, height):
    """Rasterize one named shape onto a width x height grid.

    ``size`` is the parameter tuple described in the module docstring.
    Raises ``ShapeOverflow`` when the shape does not fit the grid.
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    cu, cv = width // 2, height // 2

    if kind == "disk":
        (radius,) = size
        if radius < 1 or cu - radius < 0 or cu + radius >= width \
                or cv - radius < 0 or cv + radius >= height:
            raise ShapeOverflow(f"disk radius {radius} exceeds {width}x{height}")
        return _disk(cu, cv, radius, width, height)

    if kind == "ring":
        outer, inner = size
        if not 0 < inner < outer:
            raise ValueError("ring needs 0 < inner < outer")
        if cu - outer < 0 or cu + outer >= width or cv - outer < 0 or cv + outer >= height:
            raise ShapeOverflow(f"ring radius {outer} exceeds {width}x{height}")
        v, u = np.mgrid[0:height, 0:width]
        d2 = (u - cu) ** 2 + (v - cv) ** 2
        return ((d2 <= outer * outer) & (d2 > inner * inner)).astype(np.float64)

    if kind == "bar":
        bw, bh = size
        if bw < 1 or bh < 1:
            raise ValueError("bar dimensions must be positive")
        if bw > width or bh > height:
            raise ShapeOverflow(f"bar {bw}x{bh} exceeds {width}x{height}")
        u0 = (width - bw) // 2
        v0 = (height - bh) // 2
        field = np.zeros((height, width), dtype=np.float64)
        field[v0:v0 + bh, u0:u0 + bw] = 1.0
        return field

    if kind == "lshape":
        arm, thick = size
        if not 0 < thick < arm:
            raise ValueError("lshape needs 0 < thickness < arm")
        if arm > width or arm > height:
            raise ShapeOverflow(f"lshape arm {arm} exceeds {width}x{height}")
        u0 = (width - arm) // 2
        v0 = (height - arm) // 2
        field = np.zeros((height, width), dtype=np.float64)
        field[v0:v0 + arm, u0:u0 + thick] = 1.0              # vertical arm
        field[v0 + arm - thick:v0 + arm, u0:u0 + arm] = 1.0  # horizontal arm
        return field

    if kind == "two-blobs":
        radius, sep = size
        if radius < 1:
            raise ValueError("blob radius must be positive")
        if sep < 2 * radius + 2:
            raise ValueError("separation must leave at least one empty column "
                             f"(need >= {2 * radius + 2}, got {sep})")
        c1 = cu - sep // 2
        c2 = c1 + sep
        if c1 - radius < 0 or c2 + radius >= width or cv - radius < 0 \
                or cv + radius >= height:
            raise ShapeOverflow(f"blobs r={radius} sep={sep} exceed {width}x{height}")
        return np.maximum(_disk(c1, cv, radius, width, height),
                          _disk(c2, cv, radius, width, height))

    raise ValueError(f"unknown shape kind {kind!r}, expected one of {KINDS}")


def parse_synth(spec):
    """Parse a ``kind:params@WxH`` string into a shape field."""
    try:
        head, dims = spec.split("@")
        kind, _, params = head.partition(":")
        width, height = (int(t) for t in dims.lower().split("x"))
        size = tuple(int(t) for t in params.split(",")) if params else ()
    except ValueError as exc:
        raise ValueError(f"bad shape spec {spec!r}: {exc}") from exc
    return synth_shape(kind, size, width, height)
