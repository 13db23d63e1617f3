"""Security indices of attackable components, by subset enumeration.

The index of a component i is the smallest number of components an
attacker must control so that, for almost every realization of the free
parameters, an attack through i leaves no trace at the sensors.  It
equals the size of the smallest attack subset containing i for which some
maximum linking to the sensor set misses i; if i is essential to every
subset it belongs to, the index is infinite.

The search enumerates subsets by cardinality, lexicographically over
attack-set positions, so the reported witness is the lexicographically
smallest qualifying subset of minimal size.  The cost is combinatorial,
which is why the attack-set size is capped.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from secindex.linking import max_linking_size, saturated_by_all_max_linkings
from secindex.model import (
    AssumptionViolation,
    AttackGraph,
    UnknownVertexError,
    VertexId,
    validate_assumptions,
)

DEFAULT_SUBSET_CAP = 20

INFINITE = math.inf


class EnumerationCapError(RuntimeError):
    """The attack set is too large for exhaustive subset enumeration."""

    def __init__(self, width: int, cap: int):
        super().__init__(
            f"attack set has {width} components, above the enumeration cap of {cap}; "
            f"raise the cap explicitly to accept the exponential cost"
        )
        self.width = width
        self.cap = cap


def subsets_containing(universe: int, member: int, size: int) -> Iterator[tuple[int, ...]]:
    """Size-``size`` subsets of range(universe) containing ``member``.

    Yielded as sorted position tuples, in lexicographic order of the full
    tuple (inserting a fixed element preserves the order of combinations
    of the remaining ones).
    """
    rest = [k for k in range(universe) if k != member]
    for combo in itertools.combinations(rest, size - 1):
        yield tuple(sorted((member, *combo)))


@dataclass(frozen=True)
class SecurityIndexResult:
    """Index of one attackable component, with a witness when finite."""

    component: VertexId
    index: int | float
    witness: tuple[VertexId, ...] | None
    subsets_examined: int

    @property
    def is_finite(self) -> bool:
        return self.index != INFINITE


@dataclass(frozen=True)
class GraphSummary:
    states: int
    actuators: int
    sensors: int
    attack_vertices: int
    edges: int


@dataclass(frozen=True)
class IndexReport:
    """Per-component indices for a whole attack graph."""

    graph: AttackGraph
    results: tuple[SecurityIndexResult, ...]
    errors: tuple[tuple[VertexId, str], ...]
    summary: GraphSummary
    assumption_violations: tuple[AssumptionViolation, ...]


def security_index(
    graph: AttackGraph, component: VertexId, cap: int = DEFAULT_SUBSET_CAP
) -> SecurityIndexResult:
    """Index of one component, enumerating attack subsets of growing size.

    A subset qualifies when the component is not saturated by all of its
    maximum linkings to the sensors.  Enumeration starts at size 1 so that
    graphs violating the non-degeneracy assumptions still get meaningful
    answers (a dangling actuator has index 1).
    """
    attack_set = graph.attack_set
    if component not in attack_set:
        raise UnknownVertexError(f"not an attackable component: {component}")
    width = len(attack_set)
    if width > cap:
        raise EnumerationCapError(width, cap)
    position = attack_set.index(component)

    examined = 0
    for size in range(1, width + 1):
        for positions in subsets_containing(width, position, size):
            subset = tuple(attack_set[k] for k in positions)
            examined += 1
            if not saturated_by_all_max_linkings(graph, subset, component):
                return SecurityIndexResult(
                    component=component,
                    index=size,
                    witness=subset,
                    subsets_examined=examined,
                )
    return SecurityIndexResult(
        component=component, index=INFINITE, witness=None, subsets_examined=examined
    )


def summarize_graph(graph: AttackGraph) -> GraphSummary:
    return GraphSummary(
        states=len(graph.state_names),
        actuators=len(graph.actuator_names),
        sensors=len(graph.sensor_names),
        attack_vertices=sum(1 for f in graph.protected if not f),
        edges=len(graph.edges),
    )


def all_indices(graph: AttackGraph, cap: int = DEFAULT_SUBSET_CAP) -> IndexReport:
    """Indices for every attackable component, in attack-set order.

    Per-component failures land in the report's ``errors`` instead of
    aborting the remaining components.
    """
    results: list[SecurityIndexResult] = []
    errors: list[tuple[VertexId, str]] = []
    for component in graph.attack_set:
        try:
            results.append(security_index(graph, component, cap))
        except EnumerationCapError as exc:
            errors.append((component, str(exc)))
    return IndexReport(
        graph=graph,
        results=tuple(results),
        errors=tuple(errors),
        summary=summarize_graph(graph),
        assumption_violations=tuple(validate_assumptions(graph)),
    )


def is_generically_left_invertible(graph: AttackGraph) -> bool:
    """Whether the attack-to-sensor map generically loses no information.

    Holds exactly when the full attack set admits a linking to the sensors
    with one disjoint path per component.  Implies every index is infinite;
    the converse fails (two actuators driving the same measured state both
    get finite indices while the overall map stays rank-deficient).
    """
    return max_linking_size(graph, graph.attack_set, graph.targets) == len(graph.attack_set)
