"""Command-line interface.

Subcommands:
  interpolate  synthesize the frame at time t from two frames plus
               externally estimated flow and curvature files
  gen-scene    write a synthetic rigid-motion scene with ground truth
  eval         print image-quality metrics for a pair of images
  flow-arc     evaluate an intermediate flow field at time t

Exit codes: 0 success, 2 usage/input error, 3 runtime numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import imgio, metrics
from .pipeline import interpolate_frame
from .arc_geometry import ArcConfig, intermediate_flow
from .scene import (
    SceneSpec, format_scene_config, ground_truth_fields, ground_truth_frame,
    parse_scene_config, scene_from_options,
)

__all__ = ["main", "entry", "build_parser"]


def _load(reader, path, what: str):
    try:
        return reader(path)
    except FileNotFoundError:
        raise ValueError(f"cannot read {what}: no such file '{path}'") from None
    except OSError as exc:
        raise ValueError(f"cannot read {what} '{path}': {exc}") from exc


def _load_sigma(path, what: str) -> np.ndarray:
    sigma, clamped = _load(imgio.read_sigma, path, what)
    if clamped:
        print(f"warning: clamped {clamped} out-of-range value(s) in '{path}'",
              file=sys.stderr)
    return sigma


def _check_t(value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {value}")
    return value


# ---------------------------------------------------------------------------
# interpolate
# ---------------------------------------------------------------------------

def cmd_interpolate(args) -> int:
    frame0 = _load(imgio.read_ppm, args.frame0, "frame 0")
    frame1 = _load(imgio.read_ppm, args.frame1, "frame 1")
    flow01 = _load(imgio.read_flo, args.flow01, "forward flow")
    flow10 = _load(imgio.read_flo, args.flow10, "backward flow")
    sigma01 = _load_sigma(args.sigma01, "forward curvature map")
    sigma10 = _load_sigma(args.sigma10, "backward curvature map")

    hw = frame0.shape[:2]
    for name, path, shape in (
        ("frame 1", args.frame1, frame1.shape[:2]),
        ("forward flow", args.flow01, flow01.shape[:2]),
        ("backward flow", args.flow10, flow10.shape[:2]),
        ("forward curvature map", args.sigma01, sigma01.shape),
        ("backward curvature map", args.sigma10, sigma10.shape),
    ):
        if shape != hw:
            raise ValueError(
                f"{name} '{path}' is {shape[1]}x{shape[0]}, "
                f"expected {hw[1]}x{hw[0]} from '{args.frame0}'"
            )
    t = _check_t(args.t)

    result = interpolate_frame(
        frame0, frame1, flow01, flow10, sigma01, sigma10, t,
        sigma_threshold=args.sigma_threshold, force_linear=args.force_linear,
    )
    imgio.write_ppm(args.out, result.image)

    if args.dump_intermediates:
        outdir = Path(args.dump_intermediates)
        outdir.mkdir(parents=True, exist_ok=True)
        imgio.write_flo(outdir / "flow0t.flo", result.flow0t)
        imgio.write_flo(outdir / "flow1t.flo", result.flow1t)
        imgio.write_pfm(outdir / "warped_sigma0.pfm", result.warped_sigma0)
        imgio.write_pfm(outdir / "warped_sigma1.pfm", result.warped_sigma1)
        imgio.write_pfm(outdir / "mask0.pfm", result.mask0.astype(np.float32))
        imgio.write_pfm(outdir / "mask1.pfm", result.mask1.astype(np.float32))
        imgio.write_ppm(outdir / "warped0.ppm", result.warped0)
        imgio.write_ppm(outdir / "warped1.ppm", result.warped1)
        imgio.write_ppm(outdir / "flow0t_vis.ppm", imgio.flow_to_color(result.flow0t))
        imgio.write_ppm(outdir / "flow1t_vis.ppm", imgio.flow_to_color(result.flow1t))
    return 0


# ---------------------------------------------------------------------------
# gen-scene
# ---------------------------------------------------------------------------

def _scene_from_args(args) -> SceneSpec:
    options: dict[str, str] = {}
    if args.spec:
        try:
            text = Path(args.spec).read_text(encoding="utf-8")
        except OSError as exc:
            raise ValueError(f"cannot read scene config '{args.spec}': {exc}") from exc
        spec = parse_scene_config(text)
        options = {}  # inline flags override the file below
        base = _spec_to_options(spec)
    else:
        base = {}
    if args.width is not None:
        options["width"] = str(args.width)
    if args.height is not None:
        options["height"] = str(args.height)
    if args.rotation is not None:
        parts = [p for p in args.rotation.replace(",", " ").split() if p]
        if len(parts) != 3:
            raise ValueError("--rotation expects CX,CY,OMEGA_DEG")
        options["motion"] = "rotation"
        options["center"] = f"{parts[0]}, {parts[1]}"
        options["omega_deg"] = parts[2]
    if args.translation is not None:
        parts = [p for p in args.translation.replace(",", " ").split() if p]
        if len(parts) != 2:
            raise ValueError("--translation expects DX,DY")
        options["motion"] = "translation"
        options["dx"], options["dy"] = parts
    if args.rotation is not None and args.translation is not None:
        raise ValueError("--rotation and --translation are mutually exclusive")
    if args.texture is not None:
        options["texture"] = args.texture
    if args.seed is not None:
        options["seed"] = str(args.seed)
    if args.texture_scale is not None:
        options["texture_scale"] = str(args.texture_scale)
    if args.background is not None:
        options["background"] = str(args.background)
    return scene_from_options({**base, **options})


def _spec_to_options(spec: SceneSpec) -> dict[str, str]:
    opts = {}
    for line in format_scene_config(spec).splitlines():
        key, value = line.split("=", 1)
        opts[key.strip()] = value.strip()
    return opts


def cmd_gen_scene(args) -> int:
    spec = _scene_from_args(args)
    times = []
    for part in args.times.split(","):
        part = part.strip()
        if part:
            times.append(_check_t(float(part)))
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    flow01, sigma01, flow10, sigma10 = ground_truth_fields(spec)
    imgio.write_ppm(outdir / "frame0.ppm", ground_truth_frame(spec, 0.0))
    imgio.write_ppm(outdir / "frame1.ppm", ground_truth_frame(spec, 1.0))
    imgio.write_flo(outdir / "flow01.flo", flow01)
    imgio.write_flo(outdir / "flow10.flo", flow10)
    imgio.write_pfm(outdir / "sigma01.pfm", sigma01)
    imgio.write_pfm(outdir / "sigma10.pfm", sigma10)
    for t in times:
        imgio.write_ppm(outdir / f"gt_t{t:.3f}.ppm", ground_truth_frame(spec, t))
    (outdir / "scene.cfg").write_text(format_scene_config(spec), encoding="utf-8")
    return 0


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    a = _load(imgio.read_ppm, args.a, "image A")
    b = _load(imgio.read_ppm, args.b, "image B")
    if a.shape != b.shape:
        raise ValueError(
            f"image dimensions differ: '{args.a}' is {a.shape[1]}x{a.shape[0]}, "
            f"'{args.b}' is {b.shape[1]}x{b.shape[0]}"
        )
    print(f"psnr={metrics.psnr(a, b):.9g}")
    print(f"ssim={metrics.ssim(a, b):.9g}")
    print(f"ie={metrics.interpolation_error(a, b):.9g}")
    print(f"charbonnier={metrics.charbonnier(a, b):.9g}")
    return 0


# ---------------------------------------------------------------------------
# flow-arc
# ---------------------------------------------------------------------------

def cmd_flow_arc(args) -> int:
    flow = _load(imgio.read_flo, args.flow, "flow")
    sigma = _load_sigma(args.sigma, "curvature map")
    if sigma.shape != flow.shape[:2]:
        raise ValueError(
            f"curvature map '{args.sigma}' is {sigma.shape[1]}x{sigma.shape[0]}, "
            f"flow '{args.flow}' is {flow.shape[1]}x{flow.shape[0]}"
        )
    t = _check_t(args.t)
    out = intermediate_flow(flow, sigma, t, ArcConfig(args.sigma_threshold))
    imgio.write_flo(args.out, out)
    return 0


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcflow",
        description="Arc-trajectory frame interpolation from flow and curvature maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interpolate", help="synthesize the frame at time t")
    p.add_argument("--frame0", required=True, help="first input frame (PPM)")
    p.add_argument("--frame1", required=True, help="second input frame (PPM)")
    p.add_argument("--flow01", required=True, help="forward flow (.flo)")
    p.add_argument("--flow10", required=True, help="backward flow (.flo)")
    p.add_argument("--sigma01", required=True, help="forward curvature map (PFM)")
    p.add_argument("--sigma10", required=True, help="backward curvature map (PFM)")
    p.add_argument("--t", type=float, default=0.5, help="temporal position in [0, 1]")
    p.add_argument("--sigma-threshold", type=float, default=0.01,
                   help="|sigma| at or below this uses the linear trajectory")
    p.add_argument("--force-linear", action="store_true",
                   help="ablation switch: ignore curvature, use straight trajectories")
    p.add_argument("--dump-intermediates", metavar="DIR",
                   help="also write intermediate flows, warps, masks, and visualisations")
    p.add_argument("--out", required=True, help="output frame path (PPM)")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("gen-scene", help="generate a synthetic scene with ground truth")
    p.add_argument("--spec", help="scene config file (key = value lines)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--width", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--rotation", metavar="CX,CY,OMEGA_DEG",
                   help="rotation about (CX, CY) by OMEGA_DEG degrees per unit time")
    p.add_argument("--translation", metavar="DX,DY",
                   help="translation by (DX, DY) pixels per unit time")
    p.add_argument("--texture", choices=["noise", "checker", "constant"])
    p.add_argument("--seed", type=int)
    p.add_argument("--texture-scale", type=float)
    p.add_argument("--background", type=float)
    p.add_argument("--times", default="0.5",
                   help="comma-separated times for ground-truth midframes")
    p.set_defaults(func=cmd_gen_scene)

    p = sub.add_parser("eval", help="print PSNR/SSIM/IE/Charbonnier for two images")
    p.add_argument("a", help="first image (PPM)")
    p.add_argument("b", help="second image (PPM)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("flow-arc", help="write the intermediate flow at time t")
    p.add_argument("--flow", required=True, help="input flow (.flo)")
    p.add_argument("--sigma", required=True, help="curvature map (PFM)")
    p.add_argument("--t", type=float, required=True, help="temporal position in [0, 1]")
    p.add_argument("--sigma-threshold", type=float, default=0.01)
    p.add_argument("--out", required=True, help="output flow path (.flo)")
    p.set_defaults(func=cmd_flow_arc)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())
