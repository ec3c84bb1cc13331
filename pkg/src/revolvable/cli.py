"""Command-line front end.

Subcommands::

    revolvable render   --input pano.png --output out.png [--beta B | --auto-beta] ...
    revolvable optimize --input pano.png [--kc 2 --kq 1 ...]
    revolvable metrics  --input pano.png --beta B [--heatmap-ec f.png] [--csv f.csv] ...
    revolvable cyl      --input pano.png --output out.png (--beta B | --mercator) [--phi0 deg]

Exit codes: 0 success, 2 invalid arguments, 3 I/O failure, 4 numeric failure.
Angles are given in degrees.
"""
from __future__ import annotations

import argparse
import math
import sys
import warnings

from . import __version__
from .aspect import AspectSpec
from .cylindrical import project_cylindrical
from .distortion import (OptimizerConfig, distortion_field, optimize_beta, saliency_e1,
                         write_heatmap, write_metrics_csv)
from .exceptions import ConfigError, DomainError, ImageIOError, NumericError
from .rectifiers import RectifierKind
from .render import ProjectionConfig, project, read_image, write_image
from .validation import parse_size

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4


def _projection_flags():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--rectifier", default="squircle", choices=[k.value for k in RectifierKind])
    p.add_argument("--rho", type=float, help="roundness, blended-isosquare only")
    p.add_argument("--ellipse", type=float, default=1.0, metavar="A", help="semi-major axis (semi-minor is 1)")
    p.add_argument("--center-lat", type=float, default=-90.0, metavar="DEG")
    p.add_argument("--center-lon", type=float, default=0.0, metavar="DEG")
    p.add_argument("--roll", type=float, default=0.0, metavar="DEG")
    p.add_argument("--crop-lat", type=float, default=90.0, metavar="DEG", help="latitude on the image rim")
    p.add_argument("--threads", type=int, default=None, metavar="N")
    return p


def _optimizer_flags():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--kc", type=float, default=2.0, help="conformal error weight")
    p.add_argument("--kq", type=float, default=1.0, help="equiareal error weight")
    p.add_argument("--beta-min", type=float, default=1e-3)
    p.add_argument("--beta-max", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=0.005)
    p.add_argument("--grid", type=int, default=16)
    p.add_argument("--resolution", type=int, default=128, help="metric grid size")
    return p


def build_parser():
    parser = argparse.ArgumentParser(prog="revolvable", description="Revolvable overhead-view panoramas.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    proj, optf = _projection_flags(), _optimizer_flags()

    r = sub.add_parser("render", parents=[proj, optf], help="render a square/rectangular overhead view")
    r.add_argument("--input", required=True)
    r.add_argument("--output", required=True)
    g = r.add_mutually_exclusive_group()
    g.add_argument("--beta", type=float, default=None)
    g.add_argument("--auto-beta", action="store_true", help="optimize beta first")
    r.add_argument("--size", default=None, metavar="WxH")
    r.add_argument("--interp", default="bilinear", choices=["nearest", "bilinear"])

    o = sub.add_parser("optimize", parents=[proj, optf], help="find the distortion-minimizing beta")
    o.add_argument("--input", required=True)

    m = sub.add_parser("metrics", parents=[proj, optf], help="export distortion fields")
    m.add_argument("--input", required=True)
    m.add_argument("--beta", type=float, required=True)
    m.add_argument("--heatmap-ec", metavar="PNG")
    m.add_argument("--heatmap-eq", metavar="PNG")
    m.add_argument("--heatmap-e1", metavar="PNG")
    m.add_argument("--csv", metavar="PATH")

    c = sub.add_parser("cyl", help="blended cylindrical re-projection")
    c.add_argument("--input", required=True)
    c.add_argument("--output", required=True)
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--beta", type=float)
    g.add_argument("--mercator", action="store_true", help="render the beta = 0 (Mercator) endpoint")
    c.add_argument("--phi0", type=float, default=0.0, metavar="DEG", help="standard latitude")
    c.add_argument("--size", default=None, metavar="WxH")
    c.add_argument("--interp", default="bilinear", choices=["nearest", "bilinear"])
    c.add_argument("--threads", type=int, default=None, metavar="N")
    return parser


def _projection_config(args, beta, size=None):
    kind = RectifierKind(args.rectifier)
    if args.rho is not None and kind is not RectifierKind.BLENDED_ISOSQUARE:
        raise ConfigError("--rho only applies to --rectifier blended-isosquare")
    if args.threads is not None and args.threads < 1:
        raise ConfigError("--threads must be >= 1")
    if size is None:
        size = (int(round(512 * args.ellipse)), 512)
    try:
        aspect = AspectSpec(math.radians(args.center_lon), math.radians(args.center_lat), math.radians(args.roll))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    return ProjectionConfig(
        beta=beta,
        rectifier=kind,
        rho=1.0 if args.rho is None else args.rho,
        ellipse_a=args.ellipse,
        aspect=aspect,
        ceiling_lat=math.radians(args.crop_lat),
        out_width=size[0],
        out_height=size[1],
        interpolation=getattr(args, "interp", "bilinear"),
    )


def _optimizer_config(args):
    return OptimizerConfig(kc=args.kc, kq=args.kq, beta_min=args.beta_min, beta_max=args.beta_max,
                           tol=args.tol, grid=args.grid, resolution=args.resolution)


def cmd_render(args):
    size = parse_size(args.size) if args.size else None
    beta = 0.5 if args.beta is None else args.beta
    config = _projection_config(args, 1.0 if args.auto_beta else beta, size)
    img = read_image(args.input)
    if args.auto_beta:
        beta, _ = optimize_beta(img, _optimizer_config(args), config)
        config = _projection_config(args, beta, size)
    out = project(img, config, threads=args.threads)
    write_image(args.output, out)
    print(f"rendered {args.output} beta={config.beta:.6f}")
    return EXIT_OK


def cmd_optimize(args):
    opt = _optimizer_config(args)
    config = _projection_config(args, 1.0)
    img = read_image(args.input)
    beta, err = optimize_beta(img, opt, config)
    print(f"beta={beta:.6f} e_total={err:.6f}")
    return EXIT_OK


def cmd_metrics(args):
    targets = [args.heatmap_ec, args.heatmap_eq, args.heatmap_e1, args.csv]
    if not any(targets):
        raise ConfigError("nothing to export: pass --heatmap-ec/--heatmap-eq/--heatmap-e1 or --csv")
    opt = _optimizer_config(args)
    config = _projection_config(args, args.beta)
    img = read_image(args.input)
    fld = distortion_field(config.beta, opt, config, e1_map=saliency_e1(img))
    if args.heatmap_ec:
        write_heatmap(args.heatmap_ec, fld.e_c)
    if args.heatmap_eq:
        write_heatmap(args.heatmap_eq, fld.e_q)
    if args.heatmap_e1:
        write_heatmap(args.heatmap_e1, fld.e1, vmax=None)
    if args.csv:
        try:
            write_metrics_csv(args.csv, fld)
        except OSError as exc:
            raise ImageIOError(f"cannot write {args.csv}: {exc}") from None
    print(f"metrics beta={config.beta:.6f} samples={fld.e_c.size}")
    return EXIT_OK


def cmd_cyl(args):
    if args.threads is not None and args.threads < 1:
        raise ConfigError("--threads must be >= 1")
    if not args.mercator and args.beta <= 0:
        raise ConfigError("--beta must be in (0, 1]; use --mercator for the beta = 0 endpoint")
    size = parse_size(args.size) if args.size else (None, None)
    beta = None if args.mercator else args.beta
    if beta is not None and beta > 1:
        raise ConfigError("--beta must be in (0, 1]")
    img = read_image(args.input)
    out = project_cylindrical(img, beta, math.radians(args.phi0), size[0], size[1], args.interp, args.threads)
    write_image(args.output, out)
    label = "mercator" if beta is None else f"{beta:.6f}"
    print(f"rendered {args.output} beta={label}")
    return EXIT_OK


COMMANDS = {"render": cmd_render, "optimize": cmd_optimize, "metrics": cmd_metrics, "cyl": cmd_cyl}


def _one_line(exc):
    return " ".join(str(exc).split()) or type(exc).__name__


def main(argv=None):
    warnings.formatwarning = lambda msg, *a, **k: f"warning: {msg}\n"
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return EXIT_USAGE
    except (ImageIOError, OSError) as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return EXIT_IO
    except (NumericError, DomainError, ArithmeticError) as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
