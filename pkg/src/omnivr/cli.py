"""Command-line entry points: transform, project, metrics, dataset, serve.

Exit codes: 2 for unusable flags or constraint violations (argparse's own
convention), 1 for I/O failures, 0 on success. Successful commands print a
one-line JSON summary to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import ConfigurationError, DimensionError, InvalidCommandError
from .imgio import load_image, save_image
from .metrics import quality_report
from .mobius import MobiusMatrix, UserCommand, from_command
from .pipeline import SUPPORTED_FACTORS, transform_image
from .projection import PerspectiveCamera, render_view
from .resample import INTERPOLATORS
from . import dataset as dataset_mod

__all__ = ["main"]


def _matrix_json(m: MobiusMatrix) -> dict:
    return {
        "a": [m.a.real, m.a.imag],
        "b": [m.b.real, m.b.imag],
        "c": [m.c.real, m.c.imag],
        "d": [m.d.real, m.d.imag],
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omnivr",
        description="Navigate, zoom, project, and score equirectangular panoramas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tr = sub.add_parser("transform", help="apply a navigation command to an ERP image")
    p_tr.add_argument("--input", required=True, help="input PNG (W = 2H)")
    p_tr.add_argument("--output", required=True, help="output PNG")
    p_tr.add_argument("--beta", type=float, default=0.0, help="horizontal rotation, radians")
    p_tr.add_argument("--gamma", type=float, default=0.0, help="vertical rotation, radians")
    p_tr.add_argument("--zoom", type=float, default=1.0, help="zoom level s > 0")
    p_tr.add_argument("--scale", type=int, default=1, choices=SUPPORTED_FACTORS,
                      help="upsampling factor applied before the transform")
    p_tr.add_argument("--interp", default="slerp", choices=sorted(INTERPOLATORS))

    p_pr = sub.add_parser("project", help="render a perspective view of an ERP image")
    p_pr.add_argument("--input", required=True)
    p_pr.add_argument("--output", required=True)
    p_pr.add_argument("--yaw", type=float, default=0.0, help="view-center longitude, radians")
    p_pr.add_argument("--pitch", type=float, default=0.0, help="view-center latitude, radians")
    p_pr.add_argument("--fov", type=float, default=1.5707963267948966,
                      help="horizontal field of view, radians")
    p_pr.add_argument("--width", type=int, default=512)
    p_pr.add_argument("--height", type=int, default=512)
    p_pr.add_argument("--zoom", type=float, default=1.0,
                      help="conformal zoom about the view center")
    p_pr.add_argument("--interp", default="slerp", choices=sorted(INTERPOLATORS))

    p_me = sub.add_parser("metrics", help="score a test image against a reference")
    p_me.add_argument("--ref", required=True)
    p_me.add_argument("--test", required=True)

    p_da = sub.add_parser("dataset", help="generate LR/transformed-HR pairs")
    p_da.add_argument("--hr-dir", required=True, help="directory of HR PNGs (W = 2H)")
    p_da.add_argument("--out", required=True, help="output directory")
    p_da.add_argument("--scale", type=int, default=8)
    p_da.add_argument("--seed", type=int, default=0)
    p_da.add_argument("--mode", default="train-random", choices=dataset_mod.MODES)

    p_se = sub.add_parser("serve", help="run the HTTP view service")
    p_se.add_argument("--image", required=True, help="panorama PNG to serve (W = 2H)")
    p_se.add_argument("--host", default="127.0.0.1")
    p_se.add_argument("--port", type=int, default=8080)
    p_se.add_argument("--frontend", default=None,
                      help="directory of viewer static files to serve at /")
    return parser


def _cmd_transform(args) -> int:
    cmd = UserCommand(beta=args.beta, gamma=args.gamma, s=args.zoom)
    img = load_image(args.input)
    start = time.perf_counter()
    out = transform_image(img, cmd, up_factor=args.scale, interp=args.interp)
    elapsed_ms = (time.perf_counter() - start) * 1e3
    save_image(out, args.output)
    print(json.dumps({
        "dims": {"width": out.width, "height": out.height},
        "matrix": _matrix_json(from_command(cmd)),
        "elapsed_ms": round(elapsed_ms, 3),
    }))
    return 0


def _cmd_project(args) -> int:
    cam = PerspectiveCamera(
        yaw=args.yaw, pitch=args.pitch, fov_h=args.fov,
        out_w=args.width, out_h=args.height,
    )
    img = load_image(args.input)
    start = time.perf_counter()
    out = render_view(img, cam, zoom=args.zoom, interp=args.interp)
    elapsed_ms = (time.perf_counter() - start) * 1e3
    save_image(out, args.output)
    print(json.dumps({
        "dims": {"width": out.width, "height": out.height},
        "camera": {"yaw": args.yaw, "pitch": args.pitch, "fov": args.fov,
                   "zoom": args.zoom, "interp": args.interp},
        "elapsed_ms": round(elapsed_ms, 3),
    }))
    return 0


def _cmd_metrics(args) -> int:
    ref = load_image(args.ref)
    test = load_image(args.test)
    report = quality_report(ref, test)
    print(json.dumps({
        "ws_psnr": report.ws_psnr,
        "ws_ssim": report.ws_ssim,
        "width": ref.width,
        "height": ref.height,
    }))
    return 0


def _cmd_dataset(args) -> int:
    records = dataset_mod.generate(
        args.hr_dir, args.out, scale=args.scale, seed=args.seed, mode=args.mode
    )
    print(json.dumps({
        "records": len(records),
        "manifest": str(args.out) + "/manifest.json",
    }))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    img = load_image(args.image)
    app = create_app(img, name=args.image, frontend_dir=args.frontend)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


_HANDLERS = {
    "transform": _cmd_transform,
    "project": _cmd_project,
    "metrics": _cmd_metrics,
    "dataset": _cmd_dataset,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (InvalidCommandError, ConfigurationError, DimensionError) as exc:
        print(f"omnivr {args.command}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"omnivr {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
