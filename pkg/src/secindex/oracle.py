"""Numerical ground truth for the structural computations.

Samples concrete parameter values for a sparsity pattern, evaluates the
attack-to-sensor transfer matrix at complex frequencies, and reads ranks
off the singular values.  The maximum rank over several realizations and
frequencies estimates the generic normal rank, and a column-redundancy
rank test yields a realization-level security index.  Both are used to
cross-validate the graph-theoretic path: linking sizes must match generic
normal ranks, and structural indices must match realization indices for
almost every draw.

Attack columns are ordered like the graph's attack set: actuators in
declaration order, then unprotected sensors in declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from secindex.index import DEFAULT_SUBSET_CAP, INFINITE, EnumerationCapError, subsets_containing
from secindex.model import StructuredSystem

# Frequencies closer than this to an eigenvalue of W are treated as
# collisions and resampled.
EIGENVALUE_MARGIN = 1e-6

DEFAULT_TOLERANCE = 1e-9

# Sampling annulus for probe frequencies, away from typical spectra of the
# sampled dynamics.
ANNULUS = (1.5, 2.5)


class SingularFrequencyError(ArithmeticError):
    """The probe frequency coincides with an eigenvalue of the dynamics."""


@dataclass(frozen=True, eq=False)
class Realization:
    """One numerical instance of a structured system under attack.

    Entries are nonzero exactly on the free-parameter pattern; dedicated
    sensor-attack entries are pinned to 1.  Arrays are read-only.
    """

    W: np.ndarray
    B_a: np.ndarray
    C: np.ndarray
    D_a: np.ndarray
    seed: int

    def __post_init__(self):
        for arr in (self.W, self.B_a, self.C, self.D_a):
            arr.flags.writeable = False

    @property
    def attack_width(self) -> int:
        return self.B_a.shape[1]


@dataclass(frozen=True)
class RankProbe:
    """Evaluation protocol for rank estimates.

    ``trials`` realizations are drawn from ``seed``, and every rank is
    taken as the count of singular values above ``tolerance`` times the
    largest one, maximized over ``frequencies``.
    """

    frequencies: tuple[complex, ...]
    tolerance: float = DEFAULT_TOLERANCE
    trials: int = 3
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "frequencies", tuple(complex(z) for z in self.frequencies))
        if not self.frequencies:
            raise ValueError("a probe needs at least one frequency")
        if not 0.0 < self.tolerance < 1.0:
            raise ValueError(f"tolerance must lie in (0, 1), got {self.tolerance}")
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")


def annulus_frequencies(count: int, seed: int = 0) -> tuple[complex, ...]:
    """Area-uniform complex samples from the standard probing annulus."""
    rng = np.random.default_rng((seed, 0x5EED))
    low, high = ANNULUS
    radii = np.sqrt(rng.uniform(low**2, high**2, size=count))
    angles = rng.uniform(0.0, 2.0 * np.pi, size=count)
    return tuple(radii * np.exp(1j * angles))


def default_probe(
    freqs: int = 3, trials: int = 3, tolerance: float = DEFAULT_TOLERANCE, seed: int = 0
) -> RankProbe:
    return RankProbe(
        frequencies=annulus_frequencies(freqs, seed),
        tolerance=tolerance,
        trials=trials,
        seed=seed,
    )


def sample_realization(
    system: StructuredSystem, seed: int, low: float = 0.5, high: float = 1.5
) -> Realization:
    """Assign random values to every free parameter of the pattern.

    Magnitudes are uniform on [low, high] with random sign: bounded away
    from zero so the draw stays on the pattern, and from large values so
    the rank computations stay well conditioned.  Fixed zeros remain
    exactly zero; dedicated attack entries are exactly 1.  Deterministic
    in ``seed``.
    """
    if not 0.0 < low < high:
        raise ValueError(f"need 0 < low < high, got low={low}, high={high}")
    rng = np.random.default_rng(seed)

    def draw() -> float:
        magnitude = rng.uniform(low, high)
        return magnitude if rng.random() < 0.5 else -magnitude

    n, q, m = system.n_states, system.n_actuators, system.n_sensors
    unprotected = system.unprotected_sensors
    p = q + len(unprotected)
    si, ai, yi = system.state_index, system.actuator_index, system.sensor_index

    W = np.zeros((n, n))
    for src, dst in sorted(system.w_edges):
        W[si[dst], si[src]] = draw()
    B_a = np.zeros((n, p))
    for src, dst in sorted(system.b_edges):
        B_a[si[dst], ai[src]] = draw()
    C = np.zeros((m, n))
    for src, dst in sorted(system.c_edges):
        C[yi[dst], si[src]] = draw()
    D_a = np.zeros((m, p))
    for col, sensor_ordinal in enumerate(unprotected):
        D_a[sensor_ordinal, q + col] = 1.0
    return Realization(W=W, B_a=B_a, C=C, D_a=D_a, seed=seed)


def _structural_support(realization: Realization) -> np.ndarray:
    """Boolean mask of transfer entries that can be nonzero at all.

    Entry (sensor, column) is structurally nonzero iff the component has a
    directed propagation path to the sensor (or a dedicated feedthrough).
    Everything else is an exact zero of every realization.
    """
    arrives = (realization.W != 0.0).astype(np.int64)  # arrives[j, i]: state i to j
    n = arrives.shape[0]
    closure = np.eye(n, dtype=bool)
    for _ in range(n):
        extended = closure | (arrives @ closure.astype(np.int64) > 0)
        if (extended == closure).all():
            break
        closure = extended
    reads = (realization.C != 0.0).astype(np.int64)
    drives = (realization.B_a != 0.0).astype(np.int64)
    through_states = (reads @ closure.astype(np.int64) @ drives) > 0
    return through_states | (realization.D_a != 0.0)


def transfer_matrix(realization: Realization, z: complex) -> np.ndarray:
    """The attack-to-sensor transfer matrix C (zI - W)^-1 B_a + D_a.

    Entries without a propagation path are pinned to exact zero: they
    vanish identically for every parameter value, and leaving the linear
    solver's rounding noise in them would fake rank.
    """
    n = realization.W.shape[0]
    shifted = z * np.eye(n) - realization.W
    try:
        x = np.linalg.solve(shifted, realization.B_a)
    except np.linalg.LinAlgError as exc:
        raise SingularFrequencyError(f"frequency {z} is an eigenvalue") from exc
    g = realization.C @ x + realization.D_a
    g[~_structural_support(realization)] = 0.0
    return g


def _rank(matrix: np.ndarray, tolerance: float) -> int:
    if matrix.size == 0:
        return 0
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    largest = singular_values[0]
    if largest == 0.0:
        return 0
    return int(np.count_nonzero(singular_values > tolerance * largest))


def transfer_rank(
    realization: Realization,
    columns: Iterable[int],
    z: complex,
    tolerance: float = DEFAULT_TOLERANCE,
    check_pencil: bool = False,
) -> int:
    """Numerical rank of the transfer matrix restricted to attack columns.

    With ``check_pencil`` the result is verified against the system pencil
    via rank [W - zI, B; C, D] = n + rank G(z), which holds whenever z is
    not an eigenvalue of W.
    """
    cols = _column_tuple(realization, columns)
    if not cols:
        return 0
    g = transfer_matrix(realization, z)[:, cols]
    rank = _rank(g, tolerance)
    if check_pencil:
        n = realization.W.shape[0]
        via_pencil = pencil_rank(realization, cols, z, tolerance) - n
        if via_pencil != rank:
            raise ArithmeticError(
                f"pencil cross-check failed at z={z}: {via_pencil} != {rank}"
            )
    return rank


def pencil_rank(
    realization: Realization,
    columns: Iterable[int],
    z: complex,
    tolerance: float = DEFAULT_TOLERANCE,
) -> int:
    """Numerical rank of the system pencil restricted to attack columns."""
    cols = _column_tuple(realization, columns)
    top = np.hstack([realization.W - z * np.eye(realization.W.shape[0]), realization.B_a[:, cols]])
    bottom = np.hstack([realization.C.astype(complex), realization.D_a[:, cols]])
    return _rank(np.vstack([top, bottom]), tolerance)


def _column_tuple(realization: Realization, columns: Iterable[int]) -> tuple[int, ...]:
    cols = tuple(sorted(set(int(c) for c in columns)))
    width = realization.attack_width
    for c in cols:
        if not 0 <= c < width:
            raise IndexError(f"attack column {c} out of range 0..{width - 1}")
    return cols


def _usable_frequencies(probe: RankProbe, W: np.ndarray, stream: int) -> tuple[complex, ...]:
    """Probe frequencies with eigenvalue collisions resampled deterministically."""
    eigenvalues = np.linalg.eigvals(W)
    rng = None
    out = []
    for z in probe.frequencies:
        while np.min(np.abs(eigenvalues - z)) < EIGENVALUE_MARGIN:
            if rng is None:
                rng = np.random.default_rng((probe.seed, stream, 0xA17))
            low, high = ANNULUS
            radius = np.sqrt(rng.uniform(low**2, high**2))
            z = radius * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        out.append(z)
    return tuple(out)


def generic_normal_rank(
    system: StructuredSystem, columns: Iterable[int], probe: RankProbe
) -> int:
    """Empirical generic normal rank of the chosen attack columns.

    Maximum of ``transfer_rank`` over the probe's realizations and
    frequencies.  Matches the maximum linking size from those components
    to the sensor set for almost every draw.
    """
    cols = tuple(sorted(set(int(c) for c in columns)))
    if not cols:
        return 0
    best = 0
    for trial in range(probe.trials):
        realization = sample_realization(system, seed=probe.seed + trial)
        for z in _usable_frequencies(probe, realization.W, stream=trial):
            best = max(best, transfer_rank(realization, cols, z, probe.tolerance))
    return best


def numeric_security_index(
    realization: Realization,
    column: int,
    probe: RankProbe,
    cap: int = DEFAULT_SUBSET_CAP,
) -> int | float:
    """Realization-level security index of one attack column.

    Smallest subset size for which the column is rationally redundant:
    dropping it leaves the transfer-matrix rank unchanged at every probe
    frequency, so a perfectly undetectable attack using it exists for this
    exact parameter draw.  Infinite when no subset qualifies.
    """
    return numeric_index_vector(realization, probe, cap, columns=(column,))[0]


def numeric_index_vector(
    realization: Realization,
    probe: RankProbe,
    cap: int = DEFAULT_SUBSET_CAP,
    columns: Sequence[int] | None = None,
) -> tuple[int | float, ...]:
    """Realization-level indices for several columns, sharing rank work."""
    width = realization.attack_width
    if width > cap:
        raise EnumerationCapError(width, cap)
    wanted = tuple(range(width)) if columns is None else tuple(int(c) for c in columns)
    for c in wanted:
        if not 0 <= c < width:
            raise IndexError(f"attack column {c} out of range 0..{width - 1}")
    if not wanted:
        return ()

    frequencies = _usable_frequencies(probe, realization.W, stream=realization.seed)
    transfer = [transfer_matrix(realization, z) for z in frequencies]
    cache: dict[tuple[int, ...], tuple[int, ...]] = {(): (0,) * len(frequencies)}

    def ranks(cols: tuple[int, ...]) -> tuple[int, ...]:
        if cols not in cache:
            cache[cols] = tuple(
                _rank(g[:, cols], probe.tolerance) for g in transfer
            )
        return cache[cols]

    out: list[int | float] = []
    for column in wanted:
        found: int | float = INFINITE
        for size in range(1, width + 1):
            for positions in subsets_containing(width, column, size):
                rest = tuple(k for k in positions if k != column)
                if ranks(positions) == ranks(rest):
                    found = size
                    break
            if found != INFINITE:
                break
        out.append(found)
    return tuple(out)
