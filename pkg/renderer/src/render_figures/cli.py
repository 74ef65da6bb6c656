"""Command line: render_figures <figure_id> <csv> <out> [--format png|svg]."""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, FigureRequest, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="render_figures",
        description="Render a figure analogue from a cohtrap CSV + manifest pair",
    )
    p.add_argument("figure_id", choices=FIGURE_IDS)
    p.add_argument("csv", help="input CSV (expects <name>.manifest.json alongside)")
    p.add_argument("out", help="output image path (.png or .svg)")
    p.add_argument("--format", default="", help="override the format inferred from the path")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = render(
            FigureRequest(
                figure_id=args.figure_id,
                csv_path=args.csv,
                out_path=args.out,
                image_format=args.format,
            )
        )
    except SchemaError as exc:
        print(f"render_figures: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
