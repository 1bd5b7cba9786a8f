"""Per-pixel circular-arc motion model.

A pixel that moves by flow (u, v) between two frames is assumed to travel
along a circular arc instead of the straight chord.  The arc is described by
a signed, scale-invariant curvature measure sigma = sin(beta), where 2*beta
is the arc angle subtended at the circle centre; equivalently
sigma = d / (2R) for chord length d and signed radius R.  Traversal speed
along the arc is constant, so the polar angle advances linearly in t.

Coordinate frame: x = column index increasing rightward, y = row index
increasing downward (standard image arrays), with angles from atan2(v, u).
In this frame sigma > 0 bulges the trajectory toward +y for rightward
motion, which renders counter-clockwise on screen.

All math is done in float64 regardless of input dtype; the signed radius
d / (2*sigma) amplifies rounding near the linear-degeneration threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ArcConfig",
    "ArcParams",
    "arc_params",
    "evaluate_arc_flow",
    "intermediate_flow",
    "backward_intermediate_flow",
    "clamp_sigma",
]


@dataclass(frozen=True)
class ArcConfig:
    """Branch-split settings: arcs apply only where |sigma| > sigma_threshold."""

    sigma_threshold: float = 0.01

    def __post_init__(self):
        if not 0.0 < self.sigma_threshold < 1.0:
            raise ValueError(
                f"sigma_threshold must lie in (0, 1), got {self.sigma_threshold}"
            )


@dataclass(frozen=True)
class ArcParams:
    """Geometric description of one (or a batch of) circular-arc trajectories.

    Fields are floats for scalar input and float64 arrays for batched input.
    """

    d: float | np.ndarray       # chord length, pixels
    alpha: float | np.ndarray   # chord dip angle, radians
    beta: float | np.ndarray    # half arc angle, radians, in [-pi/2, pi/2]
    r: float | np.ndarray       # signed radius d / (2 sigma), pixels
    theta0: float | np.ndarray  # polar angle of the start point
    theta1: float | np.ndarray  # polar angle of the end point


def arc_params(u, v, sigma) -> ArcParams:
    """Recover arc parameters from a flow vector and its curvature measure.

    Requires sigma != 0; the caller routes near-zero curvature through the
    linear branch instead (see intermediate_flow).
    """
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0 and np.ndim(sigma) == 0
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    sigma = np.asarray(sigma, dtype=np.float64)
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v)) and np.all(np.isfinite(sigma))):
        raise ValueError("arc inputs must be finite")
    if np.any(np.abs(sigma) > 1.0):
        raise ValueError("|sigma| must be <= 1")
    if np.any(sigma == 0.0):
        raise ValueError("sigma must be nonzero for the arc branch; use the linear path")

    d = np.hypot(u, v)
    alpha = np.arctan2(v, u)
    beta = np.arcsin(sigma)
    r = d / (2.0 * sigma)
    half_pi = 0.5 * np.pi
    theta0 = alpha + half_pi + beta
    theta1 = alpha + half_pi - beta
    if scalar:
        return ArcParams(float(d), float(alpha), float(beta), float(r),
                         float(theta0), float(theta1))
    return ArcParams(d, alpha, beta, r, theta0, theta1)


def evaluate_arc_flow(params: ArcParams, t: float):
    """Displacement (dx, dy) from the start point after a fraction t of the arc.

    The polar angle advances linearly, theta_t = theta0 - 2*beta*t, so t = 0
    yields exactly (0, 0) and t = 1 lands on the chord endpoint.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    theta_t = params.theta0 - 2.0 * params.beta * t
    dx = params.r * (np.cos(theta_t) - np.cos(params.theta0))
    dy = params.r * (np.sin(theta_t) - np.sin(params.theta0))
    if np.ndim(dx) == 0:
        return float(dx), float(dy)
    return dx, dy


def _validate_field_pair(flow, sigma):
    flow = np.asarray(flow, dtype=np.float64)
    sigma = np.asarray(sigma, dtype=np.float64)
    if flow.ndim != 3 or flow.shape[2] != 2:
        raise ValueError(f"flow must have shape (H, W, 2), got {flow.shape}")
    if sigma.shape != flow.shape[:2]:
        raise ValueError(
            f"flow and sigma dimensions differ: {flow.shape[:2]} vs {sigma.shape}"
        )
    if not np.all(np.isfinite(flow)):
        raise ValueError("flow contains non-finite values")
    if not np.all(np.isfinite(sigma)):
        raise ValueError("sigma contains non-finite values")
    if np.any(np.abs(sigma) > 1.0):
        raise ValueError("sigma values must lie in [-1, 1]; clamp on load")
    return flow, sigma


def intermediate_flow(flow, sigma, t: float, cfg: ArcConfig | None = None) -> np.ndarray:
    """Per-pixel displacement field to temporal position t in [0, 1].

    Pixels with |sigma| > cfg.sigma_threshold follow the arc model; the rest
    degenerate to the linear trajectory t * (u, v).  Returns float64 (H, W, 2).
    """
    cfg = cfg or ArcConfig()
    flow, sigma = _validate_field_pair(flow, sigma)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")

    out = t * flow
    arc = np.abs(sigma) > cfg.sigma_threshold
    if np.any(arc):
        params = arc_params(flow[arc, 0], flow[arc, 1], sigma[arc])
        dx, dy = evaluate_arc_flow(params, t)
        out[arc, 0] = dx
        out[arc, 1] = dy
    return out


def backward_intermediate_flow(flow10, sigma10, t: float,
                               cfg: ArcConfig | None = None) -> np.ndarray:
    """Displacement field from frame 1's pixels to temporal position t.

    Frame 1 sits at the start of the reversed trajectory, so this is the
    forward evaluation of (flow10, sigma10) at time 1 - t.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    return intermediate_flow(flow10, sigma10, 1.0 - t, cfg)


def clamp_sigma(sigma):
    """Clamp curvature values to [-1, 1].

    File-borne sigma maps can exceed the valid range by floating-point noise;
    arcsin is undefined beyond +-1, so out-of-range values are clamped and
    counted.  Returns (clamped float64 array, number of clamped samples).
    """
    sigma = np.asarray(sigma, dtype=np.float64)
    if not np.all(np.isfinite(sigma)):
        raise ValueError("sigma contains non-finite values")
    over = np.abs(sigma) > 1.0
    count = int(np.count_nonzero(over))
    if count:
        sigma = np.clip(sigma, -1.0, 1.0)
    return sigma, count
