"""Command line: plots <run-dir> [--kinds=a,b,...] [--out=dir]"""

import argparse
import sys

from .reader import DataError
from .render import KINDS, PlotRequest, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render figures from a solver run directory",
    )
    parser.add_argument("run_dir", help="directory holding summary.csv and snapshots/")
    parser.add_argument("--kinds", default=",".join(KINDS),
                        help=f"comma-separated figure kinds (default: all of {','.join(KINDS)})")
    parser.add_argument("--out", default=None, help="image output directory "
                        "(default: <run-dir>/figures)")
    args = parser.parse_args(argv)

    kinds = tuple(k.strip() for k in args.kinds.split(",") if k.strip())
    try:
        request = PlotRequest(run_dir=args.run_dir, kinds=kinds, out_dir=args.out)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        written = render(request)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
