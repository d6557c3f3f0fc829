"""Script entry: render the bound curve figure from a curve CSV."""

from __future__ import annotations

import argparse
import sys

from .csvio import SchemaError
from .figures import render_fig1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True, help="curve CSV (p0,p_bound)")
    parser.add_argument("--output", required=True, help="image path (SVG recommended)")
    args = parser.parse_args(argv)
    try:
        result = render_fig1(args.input, args.output)
    except SchemaError as exc:
        print(f"render-fig1: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.out_path} ({result.points} points)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
