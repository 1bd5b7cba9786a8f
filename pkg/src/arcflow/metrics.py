"""Image-quality and penalty functions.

All metrics take images with samples in [0, 1] (grayscale (H, W) or
multi-channel (H, W, C)) and are symmetric in their arguments:

* psnr — peak signal-to-noise ratio against peak 1.0, in decibels.
* ssim — mean local structural similarity, 11x11 Gaussian window
  (std 1.5), K1 = 0.01, K2 = 0.03, dynamic range 1.0; windows are
  evaluated only where they fit entirely inside the image.
* interpolation_error — root-mean-square difference in 8-bit units
  (samples scaled by 255), the convention interpolation benchmarks report.
* charbonnier — mean of the robust penalty rho(x) = sqrt(x^2 + eps^2),
  a smooth approximation to the absolute difference.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["psnr", "ssim", "interpolation_error", "charbonnier"]

_SSIM_WINDOW = 11
_SSIM_SIGMA = 1.5
_SSIM_K1 = 0.01
_SSIM_K2 = 0.03


def _check_pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")
    if a.ndim == 2:
        a = a[:, :, None]
        b = b[:, :, None]
    if a.ndim != 3:
        raise ValueError(f"images must be 2-D or 3-D, got shape {a.shape}")
    return a, b


def psnr(a, b) -> float:
    """10*log10(1 / MSE) in dB; +inf for identical images."""
    a, b = _check_pair(a, b)
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)


def interpolation_error(a, b) -> float:
    """Root-mean-square difference on the 0-255 sample scale."""
    a, b = _check_pair(a, b)
    return float(np.sqrt(np.mean((255.0 * (a - b)) ** 2)))


def charbonnier(a, b, epsilon: float = 0.001) -> float:
    """Mean robust penalty sqrt((a-b)^2 + epsilon^2) over all samples."""
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    a, b = _check_pair(a, b)
    # mean taken as an offset from rho(0) so identical images yield exactly
    # epsilon regardless of sample count
    return epsilon + float(np.mean(np.hypot(a - b, epsilon) - epsilon))


def _gaussian_kernel() -> np.ndarray:
    half = (_SSIM_WINDOW - 1) // 2
    x = np.arange(_SSIM_WINDOW, dtype=np.float64) - half
    k = np.exp(-0.5 * (x / _SSIM_SIGMA) ** 2)
    return k / k.sum()


_KERNEL = _gaussian_kernel()


def _filter_valid(img: np.ndarray) -> np.ndarray:
    """Separable Gaussian filter, valid region only (no padding)."""
    h, w = img.shape
    n = _SSIM_WINDOW
    horiz = np.zeros((h, w - n + 1))
    for i, kv in enumerate(_KERNEL):
        horiz += kv * img[:, i:w - n + 1 + i]
    out = np.zeros((h - n + 1, w - n + 1))
    for i, kv in enumerate(_KERNEL):
        out += kv * horiz[i:h - n + 1 + i, :]
    return out


def ssim(a, b) -> float:
    """Mean structural similarity over valid windows and channels, in [-1, 1]."""
    a, b = _check_pair(a, b)
    h, w = a.shape[:2]
    if min(h, w) < _SSIM_WINDOW:
        raise ValueError(
            f"images must be at least {_SSIM_WINDOW}x{_SSIM_WINDOW} for ssim, got {h}x{w}"
        )
    c1 = _SSIM_K1 ** 2
    c2 = _SSIM_K2 ** 2
    per_channel = []
    for c in range(a.shape[2]):
        x = a[:, :, c]
        y = b[:, :, c]
        mu_x = _filter_valid(x)
        mu_y = _filter_valid(y)
        var_x = _filter_valid(x * x) - mu_x * mu_x
        var_y = _filter_valid(y * y) - mu_y * mu_y
        cov = _filter_valid(x * y) - mu_x * mu_y
        num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)
        den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
        per_channel.append(np.mean(num / den))
    return float(np.mean(per_channel))
