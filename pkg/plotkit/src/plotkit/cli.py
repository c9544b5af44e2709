"""Command line: ``plotkit <violin|timing> --in <csv> --out <png>``."""

import argparse
import sys

from .figures import FigureSpec, SchemaError, render


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Render figures from sdlscert experiment CSVs.",
    )
    parser.add_argument("kind", choices=["violin", "timing"],
                        help="figure kind")
    parser.add_argument("--in", dest="input_csv", required=True,
                        help="input CSV path")
    parser.add_argument("--out", dest="output_path", required=True,
                        help="output image path")
    parser.add_argument("--xlabel", default=None)
    parser.add_argument("--ylabel", default=None)
    parser.add_argument("--log-x", action="store_true")
    parser.add_argument("--log-y", dest="log_y", action="store_true",
                        default=None)
    args = parser.parse_args(argv)
    try:
        spec = FigureSpec(
            input_csv=args.input_csv,
            output_path=args.output_path,
            kind=args.kind,
            xlabel=args.xlabel,
            ylabel=args.ylabel,
            log_x=args.log_x,
            log_y=args.log_y,
        )
        result = render(spec)
    except SchemaError as exc:
        print(f"plotkit: {exc}", file=sys.stderr)
        return 1
    counts = ", ".join(f"{k}={v}" for k, v in result.points_plotted.items())
    print(f"wrote {result.output_path} ({counts})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
