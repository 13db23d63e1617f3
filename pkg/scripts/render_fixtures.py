#!/usr/bin/env python3
"""Render the bundled example systems to DOT, one file per fixture.

Each graph is written twice: plain, and with a maximum linking from the
full attack set highlighted.  Feed the output to ``dot -Tpng``.

Usage:
    python scripts/render_fixtures.py --out-dir build/dot
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from secindex.io import export_dot, parse_system
from secindex.linking import find_max_linking
from secindex.model import build_attack_graph

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="build/dot")
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for fixture in sorted(FIXTURES.glob("*.json")):
        graph = build_attack_graph(parse_system(fixture.read_text(encoding="utf-8")))
        plain = out_dir / f"{fixture.stem}.dot"
        plain.write_text(export_dot(graph), encoding="utf-8")
        linking = find_max_linking(graph, graph.attack_set, graph.targets)
        marked = out_dir / f"{fixture.stem}_max_linking.dot"
        marked.write_text(export_dot(graph, highlight=linking), encoding="utf-8")
        print(f"{fixture.name}: {plain} and {marked} (linking size {linking.size})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
