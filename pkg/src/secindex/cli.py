"""Command-line surface: parse a system, compute, report.

Subcommands: ``index`` (security indices as a JSON report), ``linking``
(maximum linking size and one witness), ``verify`` (numerical agreement
checks against the graph computations), ``export-dot`` (render the attack
graph).  Exit codes: 0 success, 1 data error, 2 usage error, 3 verification
below threshold.  Identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from secindex import io
from secindex.index import (
    DEFAULT_SUBSET_CAP,
    EnumerationCapError,
    IndexReport,
    all_indices,
    security_index,
    summarize_graph,
)
from secindex.linking import find_max_linking, max_linking_size
from secindex.model import (
    AttackGraph,
    InvalidSystemError,
    StructuredSystem,
    UnknownVertexError,
    build_attack_graph,
    validate_assumptions,
)
from secindex.oracle import (
    DEFAULT_TOLERANCE,
    RankProbe,
    annulus_frequencies,
    generic_normal_rank,
    numeric_index_vector,
    sample_realization,
)

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3

# Subset sampling bound for the rank-agreement check on wide attack sets.
_RANK_CHECK_SUBSET_BUDGET = 256


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return value


def _tolerance(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secindex",
        description="Structural actuator security indices for networked control systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="system document (JSON)")
        p.add_argument("--output", help="write the result here instead of stdout")

    p_index = sub.add_parser("index", help="compute security indices")
    add_common(p_index)
    p_index.add_argument("--component", help="restrict to one attackable component")
    p_index.add_argument(
        "--cap",
        type=_positive_int,
        default=DEFAULT_SUBSET_CAP,
        help="max attack-set size accepted for subset enumeration",
    )

    p_linking = sub.add_parser("linking", help="maximum linking between vertex sets")
    add_common(p_linking)
    p_linking.add_argument(
        "--sources", required=True, help="comma-separated source vertex names"
    )
    p_linking.add_argument(
        "--targets", help="comma-separated target names (default: all sensors)"
    )

    p_verify = sub.add_parser(
        "verify", help="cross-check graph results against numerical rank probes"
    )
    add_common(p_verify)
    p_verify.add_argument(
        "--trials", type=_positive_int, default=50, help="realizations per component"
    )
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tol", type=_tolerance, default=DEFAULT_TOLERANCE)
    p_verify.add_argument(
        "--freqs", type=_positive_int, default=3, help="probe frequencies per rank test"
    )
    p_verify.add_argument("--cap", type=_positive_int, default=DEFAULT_SUBSET_CAP)
    p_verify.add_argument(
        "--rank-threshold",
        type=_fraction,
        default=1.0,
        help="required rank/linking agreement rate (exact mathematics: 1.0)",
    )
    p_verify.add_argument(
        "--index-threshold",
        type=_fraction,
        default=0.98,
        help="required structural/numerical index agreement rate",
    )

    p_export = sub.add_parser("export-dot", help="render the attack graph as DOT")
    add_common(p_export)
    p_export.add_argument(
        "--highlight-sources",
        help="highlight one maximum linking from these comma-separated sources",
    )
    return parser


def _load(path: str) -> tuple[StructuredSystem, AttackGraph]:
    text = Path(path).read_text(encoding="utf-8")
    system = io.parse_system(text)
    return system, build_attack_graph(system)


def _names_to_vertices(graph: AttackGraph, raw: str) -> list:
    names = [name for name in raw.split(",") if name]
    return [graph.vertex_named(name) for name in names]


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_index(args: argparse.Namespace) -> int:
    _, graph = _load(args.input)
    if args.component is not None:
        component = graph.vertex_named(args.component)
        report = IndexReport(
            graph=graph,
            results=(security_index(graph, component, cap=args.cap),),
            errors=(),
            summary=summarize_graph(graph),
            assumption_violations=tuple(validate_assumptions(graph)),
        )
    else:
        report = all_indices(graph, cap=args.cap)
    _write(io.emit_report(report), args.output)
    return EXIT_OK


def _cmd_linking(args: argparse.Namespace) -> int:
    _, graph = _load(args.input)
    sources = _names_to_vertices(graph, args.sources)
    targets = (
        _names_to_vertices(graph, args.targets)
        if args.targets is not None
        else list(graph.targets)
    )
    size = max_linking_size(graph, sources, targets)
    linking = find_max_linking(graph, sources, targets)
    lines = [f"maximum linking size: {size}"]
    for path in linking.paths:
        lines.append("path: " + " -> ".join(graph.name_of(v) for v in path))
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _rank_check_subsets(width: int, seed: int) -> list[tuple[int, ...]]:
    if 2**width <= _RANK_CHECK_SUBSET_BUDGET:
        out: list[tuple[int, ...]] = []
        for size in range(width + 1):
            out.extend(itertools.combinations(range(width), size))
        return out
    rng = np.random.default_rng((seed, 0x5EB5))
    out = []
    for _ in range(_RANK_CHECK_SUBSET_BUDGET):
        mask = rng.integers(0, 2, size=width)
        out.append(tuple(int(k) for k in np.flatnonzero(mask)))
    return out


def _cmd_verify(args: argparse.Namespace) -> int:
    system, graph = _load(args.input)
    width = len(graph.attack_set)
    component_names = [graph.name_of(v) for v in graph.attack_set]
    lines = [
        f"input: {args.input}",
        f"components: {' '.join(component_names) if component_names else '(none)'}",
    ]
    if width == 0:
        lines += ["nothing to verify", "verdict: PASS"]
        _write("\n".join(lines) + "\n", args.output)
        return EXIT_OK

    probe = RankProbe(
        frequencies=annulus_frequencies(args.freqs, args.seed),
        tolerance=args.tol,
        trials=3,
        seed=args.seed,
    )

    # Rank/linking agreement, per attack subset.
    subsets = _rank_check_subsets(width, args.seed)
    rank_hits = 0
    for positions in subsets:
        expected = max_linking_size(
            graph, [graph.attack_set[k] for k in positions], graph.targets
        )
        if generic_normal_rank(system, positions, probe) == expected:
            rank_hits += 1
    rank_rate = rank_hits / len(subsets)
    lines.append(f"rank/linking agreement: {rank_hits}/{len(subsets)} subsets ({rank_rate:.2%})")

    # Structural/numerical index agreement, per component and realization.
    report = all_indices(graph, cap=args.cap)
    if report.errors:
        raise EnumerationCapError(width, args.cap)
    structural = tuple(r.index for r in report.results)
    pair_hits = 0
    vector_hits = 0
    total_pairs = width * args.trials
    for trial in range(args.trials):
        realization = sample_realization(system, seed=args.seed + 1000 + trial)
        numeric = numeric_index_vector(realization, probe, cap=args.cap)
        hits = sum(1 for a, b in zip(numeric, structural) if a == b)
        pair_hits += hits
        vector_hits += hits == width
    pair_rate = pair_hits / total_pairs
    lines.append(
        f"index agreement: {pair_hits}/{total_pairs} component-realization pairs ({pair_rate:.2%})"
    )
    lines.append(f"identical index vectors: {vector_hits}/{args.trials} realizations")

    ok = rank_rate >= args.rank_threshold and pair_rate >= args.index_threshold
    lines.append(f"verdict: {'PASS' if ok else 'FAIL'}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _cmd_export(args: argparse.Namespace) -> int:
    _, graph = _load(args.input)
    highlight = None
    if args.highlight_sources is not None:
        sources = _names_to_vertices(graph, args.highlight_sources)
        highlight = find_max_linking(graph, sources, graph.targets)
    _write(io.export_dot(graph, highlight), args.output)
    return EXIT_OK


_COMMANDS = {
    "index": _cmd_index,
    "linking": _cmd_linking,
    "verify": _cmd_verify,
    "export-dot": _cmd_export,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (
        io.DocumentError,
        InvalidSystemError,
        UnknownVertexError,
        EnumerationCapError,
        FileNotFoundError,
        IsADirectoryError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
