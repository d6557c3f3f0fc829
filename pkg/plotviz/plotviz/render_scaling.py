"""Script entry: render the log-log eigenvector deviation scaling figure."""

from __future__ import annotations

import argparse
import sys

from .csvio import SchemaError
from .figures import render_scaling


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True, help="trials CSV")
    parser.add_argument("--output", required=True, help="image path (SVG recommended)")
    args = parser.parse_args(argv)
    try:
        result = render_scaling(args.input, args.output)
    except SchemaError as exc:
        print(f"render-scaling: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.out_path} (sizes {result.sizes})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
