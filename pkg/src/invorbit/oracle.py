"""Exhaustive brute-force verification on small finite spaces.

On a finite carrier the onto self-maps are exactly the bijections, so the
full hypothesis-to-fixed-point claim can be checked by enumeration: for
every ordered bijection pair (T, S) that passes the exhaustive expansion
audit, the set {x : Tx = Sx = x} must contain exactly one point, up to the
identification of distinct labels at distance zero (which axiom checking
rejects anyway; the guard documents the boundary).

The falsification sweep extends this over a grid of symmetric distance
matrices, keeping only those that pass the axioms, and reports any
counterexample it finds.  The solver is cross-validated against the same
enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import permutations, product
from typing import Iterable, Sequence

from .errors import CarrierTooLarge
from .solver import (
    Hypothesis,
    MapPair,
    RLHypothesis,
    audit,
    permutation_map,
    solve,
)
from .spaces import (
    Exhaustive,
    Point,
    Space,
    SpaceKind,
    check_axioms,
    table_space,
)

DEFAULT_N_MAX = 4


def bijection_tables(points: Sequence[Point]) -> list[dict]:
    """All bijections of a finite point set, as mapping tables."""
    return [dict(zip(points, image)) for image in permutations(points)]


def pair_from_tables(t_table: dict, s_table: dict) -> MapPair:
    t_fwd, t_pre = permutation_map(t_table)
    s_fwd, s_pre = permutation_map(s_table)
    return MapPair(t_fwd, s_fwd, t_pre, s_pre, "permutation", "permutation")


def common_fixed_points(space: Space, maps: MapPair) -> set:
    """The exact set {x : T(x) = x and S(x) = x}, by enumeration."""
    if not space.is_finite:
        raise CarrierTooLarge("common fixed point enumeration needs a finite carrier")
    return {
        p
        for p in space.carrier.points
        if maps.t_forward(p) == p and maps.s_forward(p) == p
    }


def has_zero_distance_pair(space: Space) -> bool:
    """True when two distinct labels sit at distance exactly zero."""
    pts = space.carrier.points
    return any(
        space.dist(x, y) == 0.0 for x in pts for y in pts if x != y
    )


@dataclass(frozen=True)
class Counterexample:
    t_table: tuple[tuple[Point, Point], ...]
    s_table: tuple[tuple[Point, Point], ...]
    fixed_points: tuple[Point, ...]


@dataclass(frozen=True)
class TheoremAudit:
    instances_checked: int
    hypothesis_holders: int
    counterexamples: tuple[Counterexample, ...]


def _freeze(table: dict) -> tuple:
    return tuple(sorted(table.items(), key=lambda kv: repr(kv[0])))


def audit_theorem_finite(
    space: Space, hyp: Hypothesis, n_max: int = DEFAULT_N_MAX
) -> TheoremAudit:
    """Audit every ordered bijection pair and count hypothesis holders.

    For each pair passing the full exhaustive audit, the common fixed
    point set must be a singleton unless distinct zero-distance labels
    blur uniqueness; anything else is recorded as a counterexample.
    """
    if not space.is_finite:
        raise CarrierTooLarge("theorem auditing needs a finite carrier")
    pts = space.carrier.points
    if len(pts) > n_max:
        raise CarrierTooLarge(f"carrier size {len(pts)} exceeds n_max={n_max}")
    tables = bijection_tables(pts)
    zero_pair = has_zero_distance_pair(space)
    checked = 0
    holders = 0
    counterexamples: list[Counterexample] = []
    for t_table in tables:
        for s_table in tables:
            checked += 1
            maps = pair_from_tables(t_table, s_table)
            report = audit(space, maps, hyp, Exhaustive(), limit=1)
            if not report.passed:
                continue
            holders += 1
            fps = common_fixed_points(space, maps)
            if len(fps) != 1 and not zero_pair:
                counterexamples.append(
                    Counterexample(
                        _freeze(t_table),
                        _freeze(s_table),
                        tuple(sorted(fps, key=repr)),
                    )
                )
    return TheoremAudit(checked, holders, tuple(counterexamples))


def cross_validate(
    space: Space,
    hyp: Hypothesis,
    x0: Point | None = None,
    n_max: int = DEFAULT_N_MAX,
    max_steps: int = 10_000,
) -> bool:
    """Solve from every start on every hypothesis-holding pair and compare.

    The solver's candidate must lie in the enumerated common fixed point
    set each time; the conjunction over all runs is returned.  Vacuously
    true when no bijection pair holds the hypothesis.
    """
    if not space.is_finite:
        raise CarrierTooLarge("cross validation needs a finite carrier")
    pts = space.carrier.points
    if len(pts) > n_max:
        raise CarrierTooLarge(f"carrier size {len(pts)} exceeds n_max={n_max}")
    starts = list(pts) if x0 is None else [x0]
    tables = bijection_tables(pts)
    for t_table in tables:
        for s_table in tables:
            maps = pair_from_tables(t_table, s_table)
            if not audit(space, maps, hyp, Exhaustive(), limit=1).passed:
                continue
            expected = common_fixed_points(space, maps)
            for start in starts:
                report = solve(space, maps, hyp, start, max_steps=max_steps)
                if report.candidate not in expected:
                    return False
    return True


# ---------------------------------------------------------------------------
# Falsification sweep over distance-matrix grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepReport:
    matrices_checked: int
    spaces_admitted: int
    instances_checked: int
    hypothesis_holders: int
    counterexamples: tuple[Counterexample, ...]


def _symmetric_matrices(n: int, entries: Sequence[float]) -> Iterable[list[list[float]]]:
    upper = [(i, j) for i in range(n) for j in range(i, n)]
    for values in product(entries, repeat=len(upper)):
        matrix = [[0.0] * n for _ in range(n)]
        for (i, j), v in zip(upper, values):
            matrix[i][j] = v
            matrix[j][i] = v
        yield matrix


def falsification_sweep(
    sizes: Sequence[int] = (1, 2, 3),
    entries: Sequence[float] = (0.0, 1.0, 2.0, 3.0),
    k_values: Sequence[float] = (1.0, 2.0),
    r_offsets: Sequence[float] = (0.5,),
    r_factors: Sequence[float] = (2.0,),
    l_values: Sequence[float] = (0.0, 1.0),
    n_max: int = DEFAULT_N_MAX,
) -> SweepReport:
    """Grid-search distance matrices for counterexamples to uniqueness.

    Every symmetric matrix over `entries` is tried as a b-metric-like
    space for each K in `k_values`; matrices failing the axioms are
    dropped.  Admitted spaces are audited across all ordered bijection
    pairs with constants R drawn from {K + offset} and {K * factor} and L
    from `l_values`.  A report with no counterexamples means every
    hypothesis holder had exactly one common fixed point.
    """
    matrices_checked = 0
    spaces_admitted = 0
    instances_checked = 0
    holders = 0
    counterexamples: list[Counterexample] = []
    for n in sizes:
        if n > n_max:
            raise CarrierTooLarge(f"sweep size {n} exceeds n_max={n_max}")
        labels = tuple(range(n))
        tables = bijection_tables(labels)
        for matrix in _symmetric_matrices(n, entries):
            matrices_checked += 1
            base = table_space(labels, matrix, k_const=1.0, kind=SpaceKind.B_METRIC_LIKE)
            for k in k_values:
                space = replace(base, k_const=float(k))
                if not check_axioms(space, Exhaustive()).passed:
                    continue
                spaces_admitted += 1
                zero_pair = has_zero_distance_pair(space)
                r_values = sorted(
                    {k + o for o in r_offsets} | {k * f for f in r_factors}
                )
                for t_table in tables:
                    for s_table in tables:
                        maps = pair_from_tables(t_table, s_table)
                        for r in r_values:
                            for l in l_values:
                                instances_checked += 1
                                hyp = RLHypothesis(float(r), float(l))
                                if not audit(space, maps, hyp, Exhaustive(), limit=1).passed:
                                    continue
                                holders += 1
                                fps = common_fixed_points(space, maps)
                                if len(fps) != 1 and not zero_pair:
                                    counterexamples.append(
                                        Counterexample(
                                            _freeze(t_table),
                                            _freeze(s_table),
                                            tuple(sorted(fps, key=repr)),
                                        )
                                    )
    return SweepReport(
        matrices_checked,
        spaces_admitted,
        instances_checked,
        holders,
        tuple(counterexamples),
    )
