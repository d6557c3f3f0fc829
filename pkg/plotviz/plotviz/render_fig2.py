"""Script entry: render the bound-vs-success error-bar figure.

Needs the summary CSV plus the campaign manifest, whose ``p_bound_limit``
sidecar value places the dashed limit line.
"""

from __future__ import annotations

import argparse
import sys

from .csvio import SchemaError
from .figures import render_fig2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True, help="summary CSV")
    parser.add_argument("--manifest", required=True, help="campaign manifest JSON")
    parser.add_argument("--output", required=True, help="image path (SVG recommended)")
    args = parser.parse_args(argv)
    try:
        result = render_fig2(args.input, args.manifest, args.output)
    except SchemaError as exc:
        print(f"render-fig2: {exc}", file=sys.stderr)
        return 1
    print(
        f"wrote {result.out_path} ({result.errorbar_count} error bars, "
        f"dashed line at {result.dashed_y})"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
