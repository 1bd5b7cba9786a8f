"""Forward warping by bilinear splatting with average normalisation.

Each source pixel p is scattered to q = p + flow(p); its value, multiplied
by the bilinear weights of q's four integer neighbours, accumulates into
those cells, and the weights themselves accumulate into a weight plane.
Average splatting divides the value accumulation by the weight accumulation.
Contributions to cells outside the frame are dropped (no clamping or
wraparound), so the total accumulated weight equals the in-frame fraction
of every source stencil.

Accumulation runs in float64 in a fixed sequential order; outputs are cast
back to the source sample dtype.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["EPS_WEIGHT", "SplatResult", "splat_sum", "splat_average", "warp_bundle"]

# Weight below this counts as a hole; below the bilinear-weight noise floor.
EPS_WEIGHT = 1e-7


@dataclass
class SplatResult:
    values: np.ndarray   # (H, W, C) float64 accumulated weighted samples
    weights: np.ndarray  # (H, W) float64 accumulated weights, >= 0
    mask: np.ndarray     # (H, W) bool, True where weights > EPS_WEIGHT


def _as_channels(img):
    """View an (H, W) or (H, W, C) array as (H, W, C); report if it was 2-D."""
    img = np.asarray(img)
    if img.ndim == 2:
        return img[:, :, None], True
    if img.ndim == 3:
        return img, False
    raise ValueError(f"image must be 2-D or 3-D, got shape {img.shape}")


def _check_flow(flow, hw):
    flow = np.asarray(flow, dtype=np.float64)
    if flow.ndim != 3 or flow.shape[2] != 2:
        raise ValueError(f"flow must have shape (H, W, 2), got {flow.shape}")
    if flow.shape[:2] != hw:
        raise ValueError(f"source and flow dimensions differ: {hw} vs {flow.shape[:2]}")
    if not np.all(np.isfinite(flow)):
        raise ValueError("flow contains non-finite values")
    return flow


def splat_sum(source, flow) -> SplatResult:
    """Accumulate bilinear splats of source into target cells (no division)."""
    src, _ = _as_channels(source)
    h, w = src.shape[:2]
    flow = _check_flow(flow, (h, w))

    tx = np.arange(w, dtype=np.float64)[None, :] + flow[:, :, 0]
    ty = np.arange(h, dtype=np.float64)[:, None] + flow[:, :, 1]
    x0 = np.floor(tx).astype(np.int64)
    y0 = np.floor(ty).astype(np.int64)
    fx = tx - x0
    fy = ty - y0

    nchan = src.shape[2]
    vals = src.reshape(-1, nchan).astype(np.float64)
    acc_v = np.zeros((h * w, nchan), dtype=np.float64)
    acc_w = np.zeros(h * w, dtype=np.float64)

    corners = (
        (x0, y0, (1.0 - fx) * (1.0 - fy)),
        (x0 + 1, y0, fx * (1.0 - fy)),
        (x0, y0 + 1, (1.0 - fx) * fy),
        (x0 + 1, y0 + 1, fx * fy),
    )
    for cx, cy, cw in corners:
        inside = (cx >= 0) & (cx < w) & (cy >= 0) & (cy < h)
        if not np.any(inside):
            continue
        idx = cy[inside] * w + cx[inside]
        wgt = cw[inside]
        np.add.at(acc_w, idx, wgt)
        np.add.at(acc_v, idx, vals[inside.ravel()] * wgt[:, None])

    weights = acc_w.reshape(h, w)
    return SplatResult(
        values=acc_v.reshape(h, w, nchan),
        weights=weights,
        mask=weights > EPS_WEIGHT,
    )


def splat_average(source, flow):
    """Forward-warp source by flow; returns (warped, mask).

    Warped samples are the weight-normalised accumulation; pixels whose
    accumulated weight is at or below EPS_WEIGHT are holes and carry 0.
    The warped array matches the source's shape and dtype.
    """
    src, was_2d = _as_channels(source)
    res = splat_sum(src, flow)
    denom = np.where(res.mask, res.weights, 1.0)[:, :, None]
    avg = np.where(res.mask[:, :, None], res.values / denom, 0.0)
    avg = avg.astype(src.dtype, copy=False)
    if was_2d:
        avg = avg[:, :, 0]
    return avg, res.mask


def warp_bundle(maps, flow):
    """Splat several maps with one shared weight plane.

    Channels are concatenated, splatted once, and split again, so every map
    is normalised by identical weights and shares the same hole mask.
    Returns (list of warped maps, mask); each warped map keeps its input
    shape and dtype.
    """
    if not maps:
        raise ValueError("warp_bundle needs at least one map")
    prepared = []
    for m in maps:
        arr, was_2d = _as_channels(m)
        prepared.append((arr, was_2d))
    hw = prepared[0][0].shape[:2]
    for arr, _ in prepared[1:]:
        if arr.shape[:2] != hw:
            raise ValueError(
                f"bundle maps must share dimensions: {hw} vs {arr.shape[:2]}"
            )

    stacked = np.concatenate([arr.astype(np.float64) for arr, _ in prepared], axis=2)
    res = splat_sum(stacked, flow)
    denom = np.where(res.mask, res.weights, 1.0)[:, :, None]
    avg = np.where(res.mask[:, :, None], res.values / denom, 0.0)

    warped = []
    offset = 0
    for arr, was_2d in prepared:
        nchan = arr.shape[2]
        piece = avg[:, :, offset:offset + nchan].astype(arr.dtype, copy=False)
        if was_2d:
            piece = piece[:, :, 0]
        warped.append(piece)
        offset += nchan
    return warped, res.mask
