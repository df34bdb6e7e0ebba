"""Command-line interface: ``nlclip <subcommand> ...``.

Exit status is 0 on success, 1 for usage errors and 2 for I/O or parse
errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .bench import (
    METHODS,
    BenchConfig,
    edge_profiles,
    profiles_to_csv,
    records_to_csv,
    render_svg,
    run_sweep,
)
from .filters import Anchor, FilterParams, available_backends, default_h, denoise
from .image import Image
from .noise import NoiseDistribution, NoiseSpec, add_speckle, generate_checker, generate_step_edge
from .pgm import PGMError, load_pgm, write_pgm

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _warn(message: str) -> None:
    prefix = "warning:"
    if sys.stderr.isatty() and "NO_COLOR" not in os.environ:
        prefix = "\x1b[33mwarning:\x1b[0m"
    print(f"{prefix} {message}", file=sys.stderr)


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _method_list(text: str) -> list[str]:
    methods = [t.strip().lower() for t in text.split(",") if t.strip()]
    for m in methods:
        if m not in METHODS:
            raise argparse.ArgumentTypeError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    return methods


def _emit_bytes(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _emit_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _add_filter_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--s", type=int, default=10, help="search window size (half-width s//2)")
    p.add_argument("--r", type=int, default=3, help="odd patch side")
    p.add_argument("--h", type=float, default=None, help="explicit smoothing parameter")
    p.add_argument(
        "--normalize-distance",
        action="store_true",
        help="divide squared patch distances by the patch area",
    )
    p.add_argument("--backend", choices=available_backends(), default=None)


def _size(args, default: int) -> tuple[int, int]:
    n = args.size if args.size is not None else default
    return (args.width or n, args.height or n)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nlclip", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("denoise", help="denoise a PGM image")
    p.add_argument("input")
    p.add_argument("--method", type=str.lower, choices=METHODS, default="nlacm")
    p.add_argument("--auto-h", type=float, default=None, metavar="VAR",
                   help="derive h from this noise variance")
    p.add_argument("--out", default=None)
    _add_filter_args(p)

    p = sub.add_parser("noise", help="add speckle noise to a PGM image")
    p.add_argument("input")
    p.add_argument("--variance", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--distribution", choices=[d.value for d in NoiseDistribution],
                   default=NoiseDistribution.UNIFORM.value)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bench", help="PSNR sweep over noise variances, seeds and methods")
    p.add_argument("--image", default="checker", help="'checker', 'edge' or a PGM path")
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--square", type=int, default=32)
    p.add_argument("--variances", type=_float_list, default=None,
                   help="comma-separated (default 0.01..0.1)")
    p.add_argument("--seeds", type=_int_list, default=[1])
    p.add_argument("--methods", type=_method_list, default=list(METHODS))
    p.add_argument("--out", default=None, help="CSV file (default stdout)")
    p.add_argument("--svg", default=None, help="also write a PSNR-vs-variance plot")
    p.add_argument("--timing", action="store_true", help="fill the wall_ms column")
    _add_filter_args(p)

    for name, default_size, helptext in (
        ("checker", 256, "write a synthetic checkerboard"),
        ("edge", 64, "write a synthetic vertical step edge"),
        ("flat", 64, "write a constant image"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--size", type=int, default=default_size)
        p.add_argument("--width", type=int, default=None)
        p.add_argument("--height", type=int, default=None)
        if name == "checker":
            p.add_argument("--square", type=int, default=32)
        if name == "flat":
            p.add_argument("--value", type=float, default=0.5)
        else:
            p.add_argument("--low", type=float, default=0.0)
            p.add_argument("--high", type=float, default=1.0)
        p.add_argument("--out", default=None)

    p = sub.add_parser("profile", help="scanline CSV through clean, noisy and denoised images")
    p.add_argument("--image", default="edge", help="'edge', 'checker' or a PGM path")
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--square", type=int, default=32)
    p.add_argument("--variance", type=float, default=0.08)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--row", type=int, default=None)
    p.add_argument("--methods", type=_method_list, default=list(METHODS))
    p.add_argument("--out", default=None)
    _add_filter_args(p)
    return parser


def _cmd_denoise(args) -> int:
    if args.h is None and args.auto_h is None:
        raise UsageError("denoise: one of --h or --auto-h is required")
    if args.h is not None and args.auto_h is not None:
        _warn("both --h and --auto-h given; using --h")
    h = args.h if args.h is not None else default_h(args.auto_h)
    params = FilterParams(h=h, s=args.s, r=args.r, anchor=Anchor.from_method(args.method),
                          normalize_distance=args.normalize_distance)
    img = load_pgm(args.input)
    _emit_bytes(write_pgm(denoise(img, params, args.backend)), args.out)
    return EXIT_OK


def _cmd_noise(args) -> int:
    spec = NoiseSpec(args.variance, args.seed, NoiseDistribution(args.distribution))
    img = load_pgm(args.input)
    _emit_bytes(write_pgm(add_speckle(img, spec)), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    cfg_kwargs = dict(
        seeds=args.seeds,
        methods=args.methods,
        image=args.image,
        size=args.size,
        square=args.square,
        s=args.s,
        r=args.r,
        h=args.h,
        normalize_distance=args.normalize_distance,
        backend=args.backend,
    )
    if args.variances is not None:
        cfg_kwargs["variances"] = args.variances
    records = run_sweep(BenchConfig(**cfg_kwargs))
    _emit_text(records_to_csv(records, include_timing=args.timing), args.out)
    if args.svg:
        with open(args.svg, "w", newline="\n") as fh:
            fh.write(render_svg(records))
    return EXIT_OK


def _cmd_synth(args) -> int:
    width, height = _size(args, args.size)
    if args.command == "checker":
        img = generate_checker(width, height, args.square, args.low, args.high)
    elif args.command == "edge":
        img = generate_step_edge(width, height, args.low, args.high)
    else:
        img = Image.constant(width, height, args.value)
    _emit_bytes(write_pgm(img), args.out)
    return EXIT_OK


def _cmd_profile(args) -> int:
    cols = edge_profiles(
        image=args.image,
        variance=args.variance,
        seed=args.seed,
        row=args.row,
        methods=args.methods,
        size=args.size,
        square=args.square,
        s=args.s,
        r=args.r,
        h=args.h,
        normalize_distance=args.normalize_distance,
        backend=args.backend,
    )
    _emit_text(profiles_to_csv(cols), args.out)
    return EXIT_OK


_COMMANDS = {
    "denoise": _cmd_denoise,
    "noise": _cmd_noise,
    "bench": _cmd_bench,
    "checker": _cmd_synth,
    "edge": _cmd_synth,
    "flat": _cmd_synth,
    "profile": _cmd_profile,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (OSError, PGMError) as exc:
        print(f"nlclip: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, IndexError) as exc:
        # invalid parameter values (odd r, h <= 0, row out of range, ...)
        print(f"nlclip: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
