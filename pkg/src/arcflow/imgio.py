"""Codecs for flow, curvature, and image files, plus flow visualisation.

Three interchange formats, all bit-exact on round trip:

* Middlebury .flo — 4-byte magic float 202021.25 (bytes "PIEH" little
  endian), int32 width, int32 height, then H*W interleaved (u, v) pairs of
  little-endian float32, row-major top to bottom.
* Grayscale PFM — "Pf" header line, "width height" line, scale line whose
  sign encodes endianness (negative = little endian; the magnitude is
  ignored), then float32 scanlines stored bottom to top.  Curvature maps
  travel as PFM because 8-bit formats would destroy values near the
  arc/line threshold.
* Binary PPM (P6) — 8-bit RGB with maxval 255, mapped linearly to [0, 1]
  samples; writing rounds half away from zero.

Malformed or truncated files raise ValueError naming the file.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .arc_geometry import clamp_sigma

__all__ = [
    "FLO_MAGIC",
    "read_flo", "write_flo",
    "read_pfm", "write_pfm", "read_sigma",
    "read_ppm", "write_ppm",
    "flow_to_color",
]

FLO_MAGIC = 202021.25


# ---------------------------------------------------------------------------
# Middlebury .flo
# ---------------------------------------------------------------------------

def read_flo(path) -> np.ndarray:
    """Read a .flo flow field as a float32 (H, W, 2) array."""
    data = Path(path).read_bytes()
    if len(data) < 12:
        raise ValueError(f"{path}: truncated .flo header ({len(data)} bytes)")
    magic, width, height = struct.unpack("<fii", data[:12])
    if magic != FLO_MAGIC:
        raise ValueError(f"{path}: bad .flo magic {magic!r} (expected {FLO_MAGIC})")
    if width <= 0 or height <= 0:
        raise ValueError(f"{path}: nonpositive .flo dimensions {width}x{height}")
    expected = 12 + width * height * 8
    if len(data) != expected:
        raise ValueError(
            f"{path}: .flo payload is {len(data) - 12} bytes, expected {expected - 12}"
        )
    flat = np.frombuffer(data, dtype="<f4", count=width * height * 2, offset=12)
    return flat.reshape(height, width, 2).astype(np.float32, copy=True)


def write_flo(path, flow) -> None:
    """Write an (H, W, 2) flow field as little-endian float32 .flo."""
    arr = np.asarray(flow)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError(f"flow must have shape (H, W, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("flow contains non-finite values")
    height, width = arr.shape[:2]
    payload = np.ascontiguousarray(arr, dtype="<f4").tobytes()
    with open(path, "wb") as f:
        f.write(struct.pack("<fii", FLO_MAGIC, width, height))
        f.write(payload)


# ---------------------------------------------------------------------------
# Grayscale PFM
# ---------------------------------------------------------------------------

def _read_header_line(data: bytes, pos: int, path) -> tuple[str, int]:
    end = data.find(b"\n", pos)
    if end < 0:
        raise ValueError(f"{path}: truncated PFM header")
    return data[pos:end].decode("ascii", errors="replace").strip(), end + 1


def read_pfm(path) -> np.ndarray:
    """Read a grayscale PFM file as a float32 (H, W) array (top-down rows)."""
    data = Path(path).read_bytes()
    magic, pos = _read_header_line(data, 0, path)
    if magic == "PF":
        raise ValueError(f"{path}: color PFM not supported; expected grayscale 'Pf'")
    if magic != "Pf":
        raise ValueError(f"{path}: bad PFM magic {magic!r}")
    dims, pos = _read_header_line(data, pos, path)
    parts = dims.split()
    if len(parts) != 2:
        raise ValueError(f"{path}: malformed PFM dimensions line {dims!r}")
    try:
        width, height = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"{path}: malformed PFM dimensions line {dims!r}") from None
    if width <= 0 or height <= 0:
        raise ValueError(f"{path}: nonpositive PFM dimensions {width}x{height}")
    scale_line, pos = _read_header_line(data, pos, path)
    try:
        scale = float(scale_line)
    except ValueError:
        raise ValueError(f"{path}: malformed PFM scale line {scale_line!r}") from None
    if scale == 0.0:
        raise ValueError(f"{path}: PFM scale must be nonzero")
    expected = width * height * 4
    if len(data) - pos != expected:
        raise ValueError(
            f"{path}: PFM payload is {len(data) - pos} bytes, expected {expected}"
        )
    dtype = "<f4" if scale < 0 else ">f4"
    flat = np.frombuffer(data, dtype=dtype, count=width * height, offset=pos)
    rows = flat.reshape(height, width)
    # scanlines are stored bottom-to-top
    return rows[::-1].astype(np.float32, copy=True)


def write_pfm(path, values) -> None:
    """Write a (H, W) float map as little-endian grayscale PFM."""
    arr = np.asarray(values)
    if arr.ndim != 2:
        raise ValueError(f"PFM maps must be 2-D, got shape {arr.shape}")
    height, width = arr.shape
    payload = np.ascontiguousarray(arr[::-1], dtype="<f4").tobytes()
    with open(path, "wb") as f:
        f.write(f"Pf\n{width} {height}\n-1.0\n".encode("ascii"))
        f.write(payload)


def read_sigma(path) -> tuple[np.ndarray, int]:
    """Load a curvature map from PFM, clamping to [-1, 1].

    Returns (float64 sigma map, number of clamped samples); estimator output
    may exceed the valid range by floating-point noise.
    """
    raw = read_pfm(path)
    if not np.all(np.isfinite(raw)):
        raise ValueError(f"{path}: sigma map contains non-finite values")
    return clamp_sigma(raw)


# ---------------------------------------------------------------------------
# Binary PPM (P6)
# ---------------------------------------------------------------------------

def _next_token(data: bytes, pos: int, path) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c == b"#":
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise ValueError(f"{path}: truncated PPM header comment")
            pos = nl + 1
        elif c.isspace():
            pos += 1
        else:
            break
    if pos >= n:
        raise ValueError(f"{path}: truncated PPM header")
    start = pos
    while pos < n and not data[pos:pos + 1].isspace():
        pos += 1
    return data[start:pos], pos


def read_ppm(path) -> np.ndarray:
    """Read a binary P6 PPM (maxval 255) as a float64 (H, W, 3) image in [0, 1]."""
    data = Path(path).read_bytes()
    magic, pos = _next_token(data, 0, path)
    if magic != b"P6":
        raise ValueError(f"{path}: bad PPM magic {magic!r} (only binary P6 supported)")
    fields = []
    for _ in range(3):
        tok, pos = _next_token(data, pos, path)
        try:
            fields.append(int(tok))
        except ValueError:
            raise ValueError(f"{path}: malformed PPM header token {tok!r}") from None
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise ValueError(f"{path}: nonpositive PPM dimensions {width}x{height}")
    if maxval != 255:
        raise ValueError(f"{path}: unsupported PPM maxval {maxval} (need 255)")
    pos += 1  # single whitespace byte after maxval
    expected = width * height * 3
    if len(data) - pos != expected:
        raise ValueError(
            f"{path}: PPM payload is {len(data) - pos} bytes, expected {expected}"
        )
    flat = np.frombuffer(data, dtype=np.uint8, count=expected, offset=pos)
    return flat.reshape(height, width, 3).astype(np.float64) / 255.0


def write_ppm(path, image) -> None:
    """Write an (H, W, 3) image with samples in [0, 1] as binary P6 PPM.

    Samples are clipped to [0, 1] and quantised with round-half-away-from-zero.
    """
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"PPM images must have shape (H, W, 3), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("image contains non-finite values")
    height, width = arr.shape[:2]
    quant = np.floor(np.clip(arr, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(f"P6\n{width} {height}\n255\n".encode("ascii"))
        f.write(quant.tobytes())


# ---------------------------------------------------------------------------
# Flow visualisation
# ---------------------------------------------------------------------------

def flow_to_color(flow, max_magnitude: float | None = None) -> np.ndarray:
    """Render a flow field on the colour wheel as an (H, W, 3) image.

    Hue encodes atan2(v, u), saturation |flow| / max_magnitude (clamped to
    1), value is fixed at 1, so zero flow maps to white.  max_magnitude=None
    normalises by the largest magnitude present.
    """
    arr = np.asarray(flow, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError(f"flow must have shape (H, W, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("flow contains non-finite values")
    u = arr[:, :, 0]
    v = arr[:, :, 1]
    mag = np.hypot(u, v)
    if max_magnitude is None:
        max_magnitude = float(mag.max())
    if max_magnitude <= 0.0:
        max_magnitude = 1.0
    sat = np.clip(mag / max_magnitude, 0.0, 1.0)
    hue = np.mod(np.arctan2(v, u), 2.0 * np.pi)

    # HSV -> RGB with value 1
    hp = hue / (np.pi / 3.0)  # sextant coordinate in [0, 6)
    x = sat * (1.0 - np.abs(np.mod(hp, 2.0) - 1.0))
    zero = np.zeros_like(sat)
    sextant = np.minimum(hp.astype(np.int64), 5)
    r = np.choose(sextant, [sat, x, zero, zero, x, sat])
    g = np.choose(sextant, [x, sat, sat, x, zero, zero])
    b = np.choose(sextant, [zero, zero, x, sat, sat, x])
    rgb = np.stack((r, g, b), axis=-1)
    return rgb + (1.0 - sat)[:, :, None]
