"""Combine the two warped frames into the output frame.

The synthesis stage is a deterministic, non-learned blend: where both warps
are valid the samples are time-weighted, a single valid warp wins outright,
and double holes fall back to a cross-fade of the unwarped input frames.
All three branches are convex combinations, so samples in [0, 1] stay there.
"""

from __future__ import annotations

import numpy as np

__all__ = ["blend"]


def blend(warped0, mask0, warped1, mask1, t: float, frame0, frame1) -> np.ndarray:
    """Fuse forward-warped frames at temporal position t.

    warped0/warped1 come from splatting frame0/frame1 to time t along with
    their validity masks; frame0/frame1 are the unwarped inputs used as the
    double-hole fallback.  Returns a float64 image.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    w0 = np.asarray(warped0, dtype=np.float64)
    w1 = np.asarray(warped1, dtype=np.float64)
    f0 = np.asarray(frame0, dtype=np.float64)
    f1 = np.asarray(frame1, dtype=np.float64)
    m0 = np.asarray(mask0, dtype=bool)
    m1 = np.asarray(mask1, dtype=bool)
    for name, arr in (("warped1", w1), ("frame0", f0), ("frame1", f1)):
        if arr.shape != w0.shape:
            raise ValueError(f"{name} shape {arr.shape} differs from warped0 {w0.shape}")
    if m0.shape != w0.shape[:2] or m1.shape != w0.shape[:2]:
        raise ValueError("mask dimensions must match the image height and width")

    sel0 = m0[:, :, None] if w0.ndim == 3 else m0
    sel1 = m1[:, :, None] if w0.ndim == 3 else m1
    both = (1.0 - t) * w0 + t * w1
    fallback = (1.0 - t) * f0 + t * f1
    return np.where(
        sel0 & sel1, both,
        np.where(sel0, w0, np.where(sel1, w1, fallback)),
    )
