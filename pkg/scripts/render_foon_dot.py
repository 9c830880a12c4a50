#!/usr/bin/env python3
"""Render a FOON text file as Graphviz DOT on standard output.

    python scripts/render_foon_dot.py recipes.txt > recipes.dot
    dot -Tpng recipes.dot -O
"""

import argparse
import sys
from pathlib import Path

from foon import build_graph, export_dot, parse_foon_text


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("foon_file", help="FOON text file to render")
    args = parser.parse_args(argv)

    units, diagnostics = parse_foon_text(Path(args.foon_file).read_text(encoding="utf-8"))
    for diag in diagnostics:
        print(f"{args.foon_file}: {diag}", file=sys.stderr)
    if any(d.severity == "error" for d in diagnostics):
        return 1
    sys.stdout.write(export_dot(build_graph(units)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
