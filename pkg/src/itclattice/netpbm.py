"""Netpbm codecs: PBM (P1/P4) and PGM (P2/P5), maxval up to 255.

These are the only image formats the tool reads or writes.  In PBM a bit of
1 means black and maps to foreground 1.  PGM input is thresholded: a sample
value >= 128 counts as foreground.
"""

import numpy as np

from .errors import MalformedHeader, UnsupportedFormat
from .grid import as_field

__all__ = ["load_binary_image", "load_gray_image", "save_field"]

PGM_THRESHOLD = 128


def _tokens(data):
    """Yield whitespace-separated header/raster tokens, skipping # comments."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i:i + 1]
        if c.isspace():
            i += 1
        elif c == b"#":
            while i < n and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
        else:
            j = i
            while j < n and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
                j += 1
            yield data[i:j]
            i = j


def _read_header_ints(tokens, count):
    vals = []
    for _ in range(count):
        try:
            vals.append(int(next(tokens)))
        except (StopIteration, ValueError) as exc:
            raise MalformedHeader("missing or non-numeric header field") from exc
    if any(v < 1 for v in vals[:2]):
        raise MalformedHeader("image dimensions must be positive")
    return vals


def _binary_payload(data):
    """Raster bytes of a P4/P5 file: everything after the header.

    The header ends at the single whitespace byte following the last header
    token; comments inside the header are honored.
    """
    i = 0
    n = len(data)
    fields = 0
    # magic + width + height (+ maxval for P5)
    needed = 3 if data[:2] == b"P4" else 4
    while i < n and fields < needed:
        c = data[i:i + 1]
        if c == b"#":
            while i < n and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            while i < n and not data[i:i + 1].isspace() and data[i:i + 1] != b"#":
                i += 1
            fields += 1
    if i >= n or not data[i:i + 1].isspace():
        raise MalformedHeader("header not terminated before raster data")
    return data[i + 1:]


def load_binary_image(path):
    """Decode a PBM/PGM file into a 0/1 float field."""
    return _load(path, binary=True)


def load_gray_image(path):
    """Decode a PBM/PGM file keeping raw sample values (used for weight maps)."""
    return _load(path, binary=False)


def _load(path, binary):
    with open(path, "rb") as fh:
        data = fh.read()
    magic = data[:2]
    if magic == b"P1":
        tokens = _tokens(data[2:])
        width, height = _read_header_ints(tokens, 2)
        bits = []
        for tok in tokens:
            # P1 rasters may pack digits without separators
            for ch in tok:
                if ch not in (0x30, 0x31):
                    raise MalformedHeader(f"P1 raster contains {chr(ch)!r}")
                bits.append(ch - 0x30)
        if len(bits) < width * height:
            raise MalformedHeader("P1 raster is truncated")
        return np.array(bits[: width * height], dtype=np.float64).reshape(height, width)
    if magic == b"P4":
        tokens = _tokens(data[2:])
        width, height = _read_header_ints(tokens, 2)
        payload = _binary_payload(data)
        stride = (width + 7) // 8
        if len(payload) < stride * height:
            raise MalformedHeader("P4 raster is truncated")
        rows = np.frombuffer(payload[: stride * height], dtype=np.uint8)
        bits = np.unpackbits(rows.reshape(height, stride), axis=1)[:, :width]
        return bits.astype(np.float64)
    if magic == b"P2":
        tokens = _tokens(data[2:])
        width, height, maxval = _read_header_ints(tokens, 3)
        if maxval > 255:
            raise UnsupportedFormat("16-bit PGM is not supported")
        samples = []
        for tok in tokens:
            try:
                samples.append(int(tok))
            except ValueError as exc:
                raise MalformedHeader("P2 raster contains a non-integer") from exc
            if len(samples) == width * height:
                break
        if len(samples) < width * height:
            raise MalformedHeader("P2 raster is truncated")
        gray = np.array(samples, dtype=np.int64).reshape(height, width)
        if not binary:
            return gray.astype(np.float64)
        return (gray >= PGM_THRESHOLD).astype(np.float64)
    if magic == b"P5":
        tokens = _tokens(data[2:])
        width, height, maxval = _read_header_ints(tokens, 3)
        if maxval > 255:
            raise UnsupportedFormat("16-bit PGM is not supported")
        payload = _binary_payload(data)
        if len(payload) < width * height:
            raise MalformedHeader("P5 raster is truncated")
        gray = np.frombuffer(payload[: width * height], dtype=np.uint8).reshape(height, width)
        if not binary:
            return gray.astype(np.float64)
        return (gray >= PGM_THRESHOLD).astype(np.float64)
    raise UnsupportedFormat(f"unknown netpbm magic {magic!r}")


def save_field(field, path, mode="binary"):
    """Write a field as P4 (binary mode) or P5 (gray-normalized mode).

    Binary mode expects a 0/1 field and round-trips exactly through
    ``load_binary_image``.  Gray mode rescales [min, max] to [0, 255]; a
    constant field maps to all zeros.
    """
    field = as_field(field)
    height, width = field.shape
    if mode == "binary":
        if not np.isin(field, (0.0, 1.0)).all():
            raise ValueError("binary mode expects a 0/1 field")
        bits = field.astype(np.uint8)
        packed = np.packbits(bits, axis=1)
        with open(path, "wb") as fh:
            fh.write(f"P4\n{width} {height}\n".encode())
            fh.write(packed.tobytes())
    elif mode == "gray-normalized":
        lo = field.min()
        hi = field.max()
        if hi > lo:
            gray = np.round((field - lo) * (255.0 / (hi - lo))).astype(np.uint8)
        else:
            gray = np.zeros_like(field, dtype=np.uint8)
        with open(path, "wb") as fh:
            fh.write(f"P5\n{width} {height}\n255\n".encode())
            fh.write(gray.tobytes())
    else:
        raise ValueError(f"unknown save mode {mode!r}")
