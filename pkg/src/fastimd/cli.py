"""Command-line front end.

Subcommands map one-to-one onto the library: decompose, eef, fit,
sample, image. Exit code 0 on success, 1 when reading or processing
fails (the message names the stage that broke), 2 for bad usage.
"""

import argparse
import contextlib
import json
import os
import sys

import numpy as np

from . import __version__
from .decompose import decompose
from .eef import ControlPoints, Series, build_eef
from .exceptions import FastimdError
from .fitting import fit_curve, sample_eef
from .formats import (
    LAYOUTS,
    atomic_write_bytes,
    read_image,
    read_series_csv,
    shift_fluctuation,
    write_image,
    write_modes_csv,
)
from .image import HORIZONTAL, VERTICAL, decompose_image
from .plotting import PlotSpec, write_plot_svg

_SCANS = {"hv": (HORIZONTAL, VERTICAL), "vh": (VERTICAL, HORIZONTAL)}


class _Failure(Exception):
    pass


@contextlib.contextmanager
def _stage(name):
    """Convert library and OS errors into a stage-tagged failure."""
    try:
        yield
    except (FastimdError, OSError, ValueError) as exc:
        raise _Failure(f"{name}: {exc}") from exc


def _indices_list(text):
    try:
        parts = [int(chunk) for chunk in text.split(",") if chunk.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}") from None
    if not parts:
        raise argparse.ArgumentTypeError("empty index list")
    return parts


def _add_series_input(parser):
    parser.add_argument("input", help="input CSV file")
    parser.add_argument("--layout", choices=LAYOUTS, default="generic",
                        help="CSV column layout (default: generic)")
    parser.add_argument("--value-column", default="Close", metavar="NAME",
                        help="column to read under the yahoo layout")
    parser.add_argument("--uniform-index", action="store_true",
                        help="replace times with row numbers 0..n-1")


def _add_common(parser, degrees):
    parser.add_argument("--degree", type=int, choices=degrees, default=5,
                        help="interpolation degree (default: 5)")
    parser.add_argument("--alpha", type=float, default=0.5,
                        help="knot placement fraction for even degrees")
    parser.add_argument("--out", default=".", metavar="DIR",
                        help="output directory (default: current)")


def _load_series(args):
    with _stage("read"):
        series = read_series_csv(args.input, layout=args.layout,
                                 value_column=args.value_column)
    if args.uniform_index:
        series = Series(np.arange(len(series), dtype=float), series.values)
    return series


def _stem(args):
    return os.path.splitext(os.path.basename(args.input))[0]


def _outpath(args, name):
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def _write_table(path, header, columns):
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(repr(float(v)) for v in row))
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))


def _cmd_decompose(args):
    series = _load_series(args)
    with _stage("decompose"):
        stack = decompose(series, degree=args.degree, max_modes=args.max_modes,
                          alpha=args.alpha)
    stem = _stem(args)
    with _stage("write"):
        write_modes_csv(stack, _outpath(args, f"{stem}_modes.csv"))
        if args.plot:
            for mode in stack.modes:
                spec = PlotSpec(
                    title=f"{stem} mode {mode.index}",
                    series=(
                        ("original", stack.original),
                        ("trend", mode.trend),
                        ("fluctuation", mode.fluctuation),
                    ),
                )
                write_plot_svg(spec, _outpath(args, f"{stem}_mode{mode.index:02d}.svg"))
    print(f"{len(stack)} modes ({stack.terminated_reason})")
    return 0


def _cmd_eef(args):
    series = _load_series(args)
    with _stage("eef"):
        if args.indices is not None:
            control = ControlPoints(np.array(sorted(set(args.indices)), dtype=np.intp))
            control.validate_against(series)
            result = build_eef(series, control, degree=args.degree, alpha=args.alpha)
        elif args.stride is not None:
            result = sample_eef(series, stride=args.stride, degree=args.degree)
        else:
            every = ControlPoints(np.arange(len(series), dtype=np.intp))
            result = build_eef(series, every, degree=args.degree, alpha=args.alpha)
    stem = _stem(args)
    with _stage("write"):
        _write_table(
            _outpath(args, f"{stem}_eef.csv"),
            ["Time", "Original", "Eef", "Difference"],
            [series.times, series.values, result.eef_samples, result.difference],
        )
        if args.plot:
            spec = PlotSpec(
                title=f"{stem} equivalent effect",
                series=(
                    ("original", series),
                    ("eef", Series(series.times, result.eef_samples)),
                ),
            )
            write_plot_svg(spec, _outpath(args, f"{stem}_eef.svg"))
    print(f"{len(result.control.indices)} control points")
    return 0


def _cmd_fit(args):
    series = _load_series(args)
    with _stage("fit"):
        fit = fit_curve(series, degree=args.degree)
    stem = _stem(args)
    fitted = fit.fitted(series.times)
    with _stage("write"):
        _write_table(
            _outpath(args, f"{stem}_fit.csv"),
            ["Time", "Original", "Fitted", "Residual"],
            [series.times, series.values, fitted, series.values - fitted],
        )
        report = {
            "compression_ratio": fit.compression_ratio,
            "control_points": int(len(fit.control.indices)),
            "degree": args.degree,
            "rms_error": fit.rms_error,
            "samples": len(series),
        }
        atomic_write_bytes(
            _outpath(args, f"{stem}_fit_report.json"),
            (json.dumps(report, sort_keys=True, indent=2) + "\n").encode("ascii"),
        )
        if args.plot:
            spec = PlotSpec(
                title=f"{stem} fit",
                series=(("original", series), ("fitted", Series(series.times, fitted))),
            )
            write_plot_svg(spec, _outpath(args, f"{stem}_fit.svg"))
    print(f"rms {fit.rms_error:.6g}, compression {fit.compression_ratio:.4f}")
    return 0


def _cmd_sample(args):
    series = _load_series(args)
    with _stage("sample"):
        result = sample_eef(series, stride=args.stride, indices=args.indices,
                            degree=args.degree)
    stem = _stem(args)
    with _stage("write"):
        _write_table(
            _outpath(args, f"{stem}_sampled.csv"),
            ["Time", "Original", "Sampled", "Difference"],
            [series.times, series.values, result.eef_samples, result.difference],
        )
        if args.plot:
            spec = PlotSpec(
                title=f"{stem} equivalent-effect sampling",
                series=(
                    ("original", series),
                    ("sampled", Series(series.times, result.eef_samples)),
                ),
            )
            write_plot_svg(spec, _outpath(args, f"{stem}_sampled.svg"))
    print(f"{len(result.control.indices)} control points")
    return 0


def _cmd_image(args):
    with _stage("read"):
        image = read_image(args.input)
    with _stage("decompose"):
        stack = decompose_image(image, degree=args.degree,
                                max_modes=args.max_modes,
                                scan=_SCANS[args.scan], alpha=args.alpha)
    stem = os.path.splitext(os.path.basename(args.input))[0]
    with _stage("write"):
        for mode in stack:
            write_image(mode.trend,
                        _outpath(args, f"{stem}_mode{mode.index:02d}_trend.pgm"))
            write_image(shift_fluctuation(mode.fluctuation),
                        _outpath(args, f"{stem}_mode{mode.index:02d}_fluctuation.pgm"))
    print(f"{len(stack)} modes")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fastimd",
        description="Trend/fluctuation decomposition via equivalent effect functions.",
    )
    parser.add_argument("--version", action="version", version=f"fastimd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="split a series into modes")
    _add_series_input(p)
    _add_common(p, degrees=(2, 3, 4, 5))
    p.add_argument("--max-modes", type=int, default=16)
    p.add_argument("--plot", action="store_true", help="also write SVG plots")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("eef", help="equivalent effect function over control points")
    _add_series_input(p)
    _add_common(p, degrees=(2, 3, 4, 5))
    group = p.add_mutually_exclusive_group()
    group.add_argument("--stride", type=int, metavar="N",
                       help="keep every N-th sample as a control point")
    group.add_argument("--indices", type=_indices_list, metavar="LIST",
                       help="comma-separated control indices")
    p.add_argument("--plot", action="store_true", help="also write an SVG plot")
    p.set_defaults(func=_cmd_eef)

    p = sub.add_parser("fit", help="compress a series to its turning points")
    _add_series_input(p)
    _add_common(p, degrees=(3, 5))
    p.add_argument("--plot", action="store_true", help="also write an SVG plot")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("sample", help="resample a series through its integral")
    _add_series_input(p)
    _add_common(p, degrees=(3, 5))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--stride", type=int, metavar="N",
                       help="keep every N-th sample as a control point")
    group.add_argument("--indices", type=_indices_list, metavar="LIST",
                       help="comma-separated control indices")
    p.add_argument("--plot", action="store_true", help="also write an SVG plot")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("image", help="decompose a grayscale image")
    p.add_argument("input", help="input PGM/PPM file")
    _add_common(p, degrees=(2, 3, 4, 5))
    p.add_argument("--max-modes", type=int, default=16)
    p.add_argument("--scan", choices=sorted(_SCANS), default="hv",
                   help="slice order: horizontal-then-vertical or the reverse")
    p.set_defaults(func=_cmd_image)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"fastimd: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
