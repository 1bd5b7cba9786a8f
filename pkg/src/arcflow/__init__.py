"""Arc-trajectory frame interpolation.

Builds per-pixel circular-arc motion models from optical flow and curvature
maps, evaluates intermediate flows at arbitrary time t, forward-warps frames
by average splatting, fuses the warps, and scores results with standard
image-quality metrics.  Synthetic rigid-motion scenes with analytic ground
truth serve as the built-in oracle.
"""

from .arc_geometry import (
    ArcConfig,
    ArcParams,
    arc_params,
    backward_intermediate_flow,
    clamp_sigma,
    evaluate_arc_flow,
    intermediate_flow,
)
from .fuse import blend
from .imgio import (
    FLO_MAGIC,
    flow_to_color,
    read_flo,
    read_pfm,
    read_ppm,
    read_sigma,
    write_flo,
    write_pfm,
    write_ppm,
)
from .metrics import charbonnier, interpolation_error, psnr, ssim
from .pipeline import InterpolationResult, interpolate_frame
from .scene import (
    Rotation,
    SceneSpec,
    Translation,
    format_scene_config,
    ground_truth_fields,
    ground_truth_frame,
    oracle_intermediate_position,
    parse_scene_config,
)
from .warp import EPS_WEIGHT, SplatResult, splat_average, splat_sum, warp_bundle

__version__ = "0.1.0"

__all__ = [
    "ArcConfig",
    "ArcParams",
    "arc_params",
    "evaluate_arc_flow",
    "intermediate_flow",
    "backward_intermediate_flow",
    "clamp_sigma",
    "EPS_WEIGHT",
    "SplatResult",
    "splat_sum",
    "splat_average",
    "warp_bundle",
    "blend",
    "SceneSpec",
    "Rotation",
    "Translation",
    "ground_truth_fields",
    "ground_truth_frame",
    "oracle_intermediate_position",
    "parse_scene_config",
    "format_scene_config",
    "FLO_MAGIC",
    "read_flo",
    "write_flo",
    "read_pfm",
    "write_pfm",
    "read_sigma",
    "read_ppm",
    "write_ppm",
    "flow_to_color",
    "psnr",
    "ssim",
    "interpolation_error",
    "charbonnier",
    "InterpolationResult",
    "interpolate_frame",
    "__version__",
]
