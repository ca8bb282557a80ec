"""Generalized metric structures: carriers, axiom checking, convergence.

Four families of distance structure are supported, from most to least
restrictive: partial metrics, metric-like distances, b-metrics, and
b-metric-like distances.  The weakest family requires only

    D1  D(x, y) = 0  implies  x = y
    D2  D(x, y) = D(y, x)
    D3  D(x, y) <= K * (D(x, z) + D(z, y))    for a fixed K >= 1

so self-distances D(x, x) may be positive, and a sequence converges to x
when D(x, x_n) tends to D(x, x), not necessarily to zero.  A space carries
a declarative `kind` tag; conformance is never assumed from the tag, it is
established by `check_axioms`.

Point equality is ambient, not metric: on an interval carrier two floats
are the same point when they agree within TOL_POINT, on a finite carrier
identifiers are compared directly.  This matters because D1 is only an
implication; distinct points may sit at distance zero in unvetted tables.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from itertools import islice, product
from typing import Any, Callable, Sequence, Union

from .errors import ExhaustiveOnInfiniteCarrier, NoFiniteK
from .numerics import TOL_POINT, differs, exceeds, tail_window

Point = Any
DistanceFn = Callable[[Point, Point], float]

GRID_POINTS = 33
POOL_SIZE = 1024


class SpaceKind(Enum):
    PARTIAL_METRIC = "partial_metric"
    METRIC_LIKE = "metric_like"
    B_METRIC = "b_metric"
    B_METRIC_LIKE = "b_metric_like"


# ---------------------------------------------------------------------------
# Carriers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteCarrier:
    """An ordered tuple of pairwise distinct point identifiers."""

    points: tuple[Point, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("finite carrier points must be pairwise distinct")
        if not self.points:
            raise ValueError("finite carrier must be nonempty")

    def equal(self, x: Point, y: Point) -> bool:
        return x == y

    def contains(self, x: Point) -> bool:
        return x in self.points


@dataclass(frozen=True)
class IntervalCarrier:
    """A real interval [lower, upper], upper possibly infinite.

    `sample_bound` caps the sampled range when `upper` is infinite; it has
    no effect on membership.
    """

    lower: float
    upper: float = math.inf
    sample_bound: float = 10.0

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("interval carrier requires lower < upper")
        hi = self.sampling_upper
        if not (math.isfinite(hi) and self.lower < hi):
            raise ValueError("sampling range must be finite and nonempty")

    @property
    def sampling_upper(self) -> float:
        return self.upper if math.isfinite(self.upper) else self.sample_bound

    def equal(self, x: float, y: float) -> bool:
        return abs(x - y) <= TOL_POINT

    def contains(self, x: float) -> bool:
        return self.lower - TOL_POINT <= x <= self.upper + TOL_POINT

    def anchors(self) -> list[float]:
        """Boundary and unit points every sample pool must contain.

        Zero and one are included whenever they lie in range: they anchor
        the degenerate and unit-scale cases where violations of the
        relaxed triangle inequality typically surface.
        """
        out = [self.lower, self.sampling_upper]
        for special in (0.0, 1.0):
            if self.contains(special) and special <= self.sampling_upper:
                out.append(special)
        return sorted(set(out))


Carrier = Union[FiniteCarrier, IntervalCarrier]


# ---------------------------------------------------------------------------
# Space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Space:
    """A carrier, a distance function, a relaxation constant, and a kind tag.

    `complete` is a recorded assumption; completeness is not decidable
    numerically and is never verified.
    """

    carrier: Carrier
    dist: DistanceFn
    k_const: float = 1.0
    kind: SpaceKind = SpaceKind.B_METRIC_LIKE
    name: str = "custom"
    complete: bool = False

    def __post_init__(self):
        if self.k_const < 1.0:
            raise ValueError("k_const must be >= 1")

    def d(self, x: Point, y: Point) -> float:
        return self.dist(x, y)

    def points_equal(self, x: Point, y: Point) -> bool:
        return self.carrier.equal(x, y)

    @property
    def is_finite(self) -> bool:
        return isinstance(self.carrier, FiniteCarrier)


def d_sharp(space: Space, x: Point, y: Point) -> float:
    """|2 D(x,y) - D(x,x) - D(y,y)|: vanishes on the diagonal exactly.

    This is the residual used for fixed-point certification, since a fixed
    point z may legitimately have D(z, Tz) = D(z, z) > 0.  The self-distance
    terms are summed before subtracting so the result is exactly symmetric
    whenever the distance function is.
    """
    return abs(2.0 * space.dist(x, y) - (space.dist(x, x) + space.dist(y, y)))


# ---------------------------------------------------------------------------
# Checking strategies and sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Exhaustive:
    """Enumerate every point combination; finite carriers only."""


@dataclass(frozen=True)
class Sampled:
    """Draw `n` combinations from a seeded deterministic pool."""

    n: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("sample size must be positive")


Strategy = Union[Exhaustive, Sampled]


def _pool_and_anchors(space: Space, rng: random.Random) -> tuple[list, list]:
    carrier = space.carrier
    if isinstance(carrier, FiniteCarrier):
        pts = list(carrier.points)
        return pts, pts
    anchors = carrier.anchors()
    lo, hi = carrier.lower, carrier.sampling_upper
    grid = [lo + (hi - lo) * i / (GRID_POINTS - 1) for i in range(GRID_POINTS)]
    pool = list(dict.fromkeys(anchors + grid))
    while len(pool) < POOL_SIZE:
        pool.append(rng.uniform(lo, hi))
    return pool, anchors


def sample_points(space: Space, n: int, seed: int) -> list[Point]:
    rng = random.Random(seed)
    pool, anchors = _pool_and_anchors(space, rng)
    out = list(anchors[:n])
    while len(out) < n:
        out.append(pool[rng.randrange(len(pool))])
    return out


def sample_pairs(space: Space, n: int, seed: int) -> list[tuple[Point, Point]]:
    """`n` ordered pairs: every anchor pair first, then seeded random draws."""
    rng = random.Random(seed)
    pool, anchors = _pool_and_anchors(space, rng)
    pairs = list(islice(product(anchors, repeat=2), n))
    while len(pairs) < n:
        pairs.append((pool[rng.randrange(len(pool))], pool[rng.randrange(len(pool))]))
    return pairs


def sample_triples(space: Space, n: int, seed: int) -> list[tuple[Point, Point, Point]]:
    """`n` ordered triples: every anchor triple first, then seeded draws."""
    rng = random.Random(seed)
    pool, anchors = _pool_and_anchors(space, rng)
    triples = list(islice(product(anchors, repeat=3), n))
    while len(triples) < n:
        triples.append(
            (
                pool[rng.randrange(len(pool))],
                pool[rng.randrange(len(pool))],
                pool[rng.randrange(len(pool))],
            )
        )
    return triples


# ---------------------------------------------------------------------------
# Axiom checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomViolation:
    axiom_id: str
    witness: tuple
    lhs: float
    rhs: float


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    violations: tuple[AxiomViolation, ...]
    checked_pairs: int
    checked_triples: int


_SYMMETRY_ID = {
    SpaceKind.PARTIAL_METRIC: "P3",
    SpaceKind.METRIC_LIKE: "sigma2",
    SpaceKind.B_METRIC: "D2",
    SpaceKind.B_METRIC_LIKE: "D2",
}
_ZERO_ID = {
    SpaceKind.METRIC_LIKE: "sigma1",
    SpaceKind.B_METRIC: "D1",
    SpaceKind.B_METRIC_LIKE: "D1",
}
_TRIANGLE_ID = {
    SpaceKind.PARTIAL_METRIC: "P4",
    SpaceKind.METRIC_LIKE: "sigma3",
    SpaceKind.B_METRIC: "D3",
    SpaceKind.B_METRIC_LIKE: "D3",
}


def check_axioms(space: Space, strategy: Strategy) -> AxiomReport:
    """Audit the kind-specific distance axioms and collect every violation.

    For the triangle-type violations the witness is stored as (x, y, z)
    with z the midpoint of the detour.  When sampling, pair axioms are
    checked on the leading pair of each triple, so the anchor pairs are
    always covered.  Deterministic for a fixed seed.
    """
    d = space.dist
    kind = space.kind

    if isinstance(strategy, Exhaustive):
        if not space.is_finite:
            raise ExhaustiveOnInfiniteCarrier(
                "exhaustive axiom checking needs a finite carrier"
            )
        pts = space.carrier.points
        singles = list(pts)
        pairs = list(product(pts, repeat=2))
        triples = list(product(pts, repeat=3))
    elif isinstance(strategy, Sampled):
        triples = sample_triples(space, strategy.n, strategy.seed)
        pairs = [(x, y) for x, y, _ in triples]
        singles = list(dict.fromkeys(p for t in triples for p in t))
    else:
        raise TypeError(f"unknown strategy: {strategy!r}")

    violations: list[AxiomViolation] = []
    sym_id = _SYMMETRY_ID[kind]

    for x, y in pairs:
        dxy = d(x, y)
        if exceeds(0.0, dxy):
            violations.append(AxiomViolation("nonneg", (x, y), dxy, 0.0))
        dyx = d(y, x)
        if differs(dxy, dyx):
            violations.append(AxiomViolation(sym_id, (x, y), dxy, dyx))
        if kind is SpaceKind.PARTIAL_METRIC:
            dxx = d(x, x)
            dyy = d(y, y)
            if (
                not space.points_equal(x, y)
                and not differs(dxx, dxy)
                and not differs(dyy, dxy)
            ):
                violations.append(AxiomViolation("P1", (x, y), dxy, dxx))
            if exceeds(dxx, dxy):
                violations.append(AxiomViolation("P2", (x, y), dxx, dxy))
        else:
            if dxy == 0.0 and not space.points_equal(x, y):
                violations.append(AxiomViolation(_ZERO_ID[kind], (x, y), dxy, 0.0))

    if kind is SpaceKind.B_METRIC:
        for x in singles:
            dxx = d(x, x)
            if exceeds(dxx, 0.0):
                violations.append(AxiomViolation("D1", (x, x), dxx, 0.0))

    tri_id = _TRIANGLE_ID[kind]
    factor = space.k_const if kind in (SpaceKind.B_METRIC, SpaceKind.B_METRIC_LIKE) else 1.0
    subtract_mid = kind is SpaceKind.PARTIAL_METRIC
    for x, y, z in triples:
        lhs = d(x, y)
        rhs = factor * (d(x, z) + d(z, y))
        if subtract_mid:
            rhs -= d(z, z)
        if exceeds(lhs, rhs):
            violations.append(AxiomViolation(tri_id, (x, y, z), lhs, rhs))

    return AxiomReport(
        passed=not violations,
        violations=tuple(violations),
        checked_pairs=len(pairs),
        checked_triples=len(triples),
    )


def min_valid_k(space: Space) -> float:
    """Smallest relaxation constant making the triangle axiom hold.

    Returns max(1, sup over triples of D(x,y) / (D(x,z) + D(z,y))) by
    exhaustive maximization; requires a finite carrier.
    """
    if not space.is_finite:
        raise ExhaustiveOnInfiniteCarrier("min_valid_k needs a finite carrier")
    d = space.dist
    best = 1.0
    for x, y, z in product(space.carrier.points, repeat=3):
        num = d(x, y)
        den = d(x, z) + d(z, y)
        if den == 0.0:
            if num > 0.0:
                raise NoFiniteK(
                    f"positive distance {num} with zero-length detour at "
                    f"({x!r}, {y!r}, {z!r})"
                )
            continue
        ratio = num / den
        if ratio > best:
            best = ratio
    return best


# ---------------------------------------------------------------------------
# Convergence
# ---------------------------------------------------------------------------


class Convergence(Enum):
    CONVERGED = "converged"
    NOT_CONVERGED = "not_converged"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ConvergenceReport:
    verdict: Convergence
    gap: float  # max |D(x, x_n) - D(x, x)| over the decision window
    self_distance: float
    window: int


def converges_to(
    space: Space, seq: Sequence[Point], x: Point, tol: float
) -> ConvergenceReport:
    """Decide whether a finite prefix converges to x.

    The criterion is D(x, x_n) -> D(x, x), not -> 0.  Converged means the
    gap stays below `tol` across the whole decision window; NotConverged
    means the window sits entirely at or above `tol` with no downward
    trend; anything else is Inconclusive.
    """
    if not seq:
        raise ValueError("sequence prefix must be nonempty")
    if tol <= 0:
        raise ValueError("tol must be positive")
    dxx = space.dist(x, x)
    w = tail_window(len(seq))
    gaps = [abs(space.dist(x, p) - dxx) for p in seq[len(seq) - w :]]
    worst = max(gaps)
    if worst < tol:
        verdict = Convergence.CONVERGED
    elif min(gaps) >= tol and gaps[-1] >= gaps[0]:
        verdict = Convergence.NOT_CONVERGED
    else:
        verdict = Convergence.INCONCLUSIVE
    return ConvergenceReport(verdict, worst, dxx, w)


# ---------------------------------------------------------------------------
# Built-in space families
# ---------------------------------------------------------------------------


def sqrt_square_space(k_const: float = 2.0, sample_bound: float = 10.0) -> Space:
    """(sqrt(x) + sqrt(y))**2 on [0, inf): self-distance 4x, valid with K = 2."""

    def dist(x, y):
        return (math.sqrt(x) + math.sqrt(y)) ** 2

    return Space(
        IntervalCarrier(0.0, math.inf, sample_bound),
        dist,
        k_const,
        SpaceKind.B_METRIC_LIKE,
        "sqrt_square",
        complete=True,
    )


def two_point_sigma_space() -> Space:
    """{0, 1} with sigma(0,0) = 2 and 1 elsewhere: metric-like, not partial."""

    def dist(x, y):
        return 2.0 if x == 0 and y == 0 else 1.0

    return Space(
        FiniteCarrier((0, 1)),
        dist,
        1.0,
        SpaceKind.METRIC_LIKE,
        "two_point_sigma",
        complete=True,
    )


def abs_metric_space(
    lower: float = 0.0, upper: float = math.inf, sample_bound: float = 10.0
) -> Space:
    """|x - y|: a genuine metric, tagged as a b-metric with K = 1."""
    return Space(
        IntervalCarrier(lower, upper, sample_bound),
        lambda x, y: abs(x - y),
        1.0,
        SpaceKind.B_METRIC,
        "abs_metric",
        complete=True,
    )


def max_partial_space(sample_bound: float = 10.0) -> Space:
    """max(x, y) on [0, inf): the standard partial metric with P(x,x) = x."""
    return Space(
        IntervalCarrier(0.0, math.inf, sample_bound),
        lambda x, y: float(max(x, y)),
        1.0,
        SpaceKind.PARTIAL_METRIC,
        "max_partial",
        complete=True,
    )


def sum_metric_like_space(sample_bound: float = 10.0) -> Space:
    """x + y on [0, inf): metric-like with positive self-distances."""
    return Space(
        IntervalCarrier(0.0, math.inf, sample_bound),
        lambda x, y: float(x + y),
        1.0,
        SpaceKind.METRIC_LIKE,
        "sum_metric_like",
        complete=True,
    )


def square_diff_space(k_const: float = 2.0, sample_bound: float = 10.0) -> Space:
    """(x - y)**2 on [0, inf): a b-metric needing K = 2."""
    return Space(
        IntervalCarrier(0.0, math.inf, sample_bound),
        lambda x, y: (x - y) ** 2,
        k_const,
        SpaceKind.B_METRIC,
        "square_diff",
        complete=True,
    )


def table_space(
    labels: Sequence[Point],
    matrix: Sequence[Sequence[float]],
    k_const: float = 1.0,
    kind: SpaceKind = SpaceKind.B_METRIC_LIKE,
    complete: bool = True,
    name: str = "table",
) -> Space:
    """A finite space from an n x n symmetric nonnegative matrix."""
    n = len(labels)
    rows = [tuple(float(v) for v in row) for row in matrix]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and match the label count")
    for i in range(n):
        for j in range(n):
            if rows[i][j] < 0:
                raise ValueError("matrix entries must be nonnegative")
            if rows[i][j] != rows[j][i]:
                raise ValueError("matrix must be symmetric")
    index = {label: i for i, label in enumerate(labels)}

    def dist(x, y):
        return rows[index[x]][index[y]]

    return Space(FiniteCarrier(tuple(labels)), dist, k_const, kind, name, complete)


def restrict_to_points(space: Space, points: Sequence[Point]) -> Space:
    """The same distance function on a finite subset of the carrier."""
    return Space(
        FiniteCarrier(tuple(points)),
        space.dist,
        space.k_const,
        space.kind,
        f"{space.name}_restricted",
        complete=True,
    )
