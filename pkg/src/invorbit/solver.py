"""Inverse-orbit construction and hypothesis auditing for onto map pairs.

Given two onto self-maps T and S with deterministic preimage selectors,
the orbit runs backwards through preimages:

    x_1 = T_pre(x_0), x_2 = S_pre(x_1), x_3 = T_pre(x_2), ...

so that T(x_1) = x_0, S(x_2) = x_1, and so on.  When the pair expands
distances (dist(Tx, Sy) >= coeff * dist(x, y) with coeff above K), the
orbit contracts and its limit is the unique common fixed point of T and S.

Two hypothesis forms are audited: a constant-coefficient form with
constants (R, L) where the coefficient is R + L * min of four diagonal
residuals, and a rate-function form where the coefficient is phi(dist(x,y))
for a user function phi with values above K**2.

The orbit stops only when a point is exactly fixed by both maps (exact
identity, not ambient tolerance: residuals certify at zero only if the
orbit genuinely lands on the fixed point, which linear preimages reach by
underflow) or when the step budget runs out; in the latter case the trace
is labelled by whether its tail had already collapsed below tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Callable, Iterable, Sequence, Union

from .analysis import CauchyOutcome, CauchyVerdict, geometric_cauchy_check
from .errors import (
    ExhaustiveOnInfiniteCarrier,
    NotAFixedPoint,
    PhiBelowKSquared,
    PreimageBroken,
)
from .numerics import TOL_FIX, exceeds, tail_window
from .spaces import (
    Exhaustive,
    Point,
    Sampled,
    Space,
    d_sharp,
    sample_pairs,
)

DEFAULT_MAX_STEPS = 10_000


# ---------------------------------------------------------------------------
# Map pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MapPair:
    """Forward evaluators plus preimage selectors witnessing surjectivity.

    The selectors must satisfy t_forward(t_preimage(y)) == y and likewise
    for s; round trips are checked at orbit time and by `check_roundtrip`.
    """

    t_forward: Callable[[Point], Point]
    s_forward: Callable[[Point], Point]
    t_preimage: Callable[[Point], Point]
    s_preimage: Callable[[Point], Point]
    t_label: str = "custom"
    s_label: str = "custom"


def linear_map(a: float) -> tuple[Callable, Callable]:
    """x -> a*x with preimage y -> y/a; requires a > 0."""
    if not a > 0:
        raise ValueError("linear map coefficient must be positive")
    return (lambda x: a * x), (lambda y: y / a)


def identity_map() -> tuple[Callable, Callable]:
    return (lambda x: x), (lambda y: y)


def permutation_map(table: dict) -> tuple[Callable, Callable]:
    """A bijection given as a mapping; preimage is the inverted table."""
    inverse = {v: k for k, v in table.items()}
    if len(inverse) != len(table):
        raise ValueError("permutation table must be a bijection")
    return table.__getitem__, inverse.__getitem__


def check_roundtrip(space: Space, maps: MapPair, points: Iterable[Point]) -> None:
    """Raise PreimageBroken unless both selectors round-trip on `points`."""
    for p in points:
        for fwd, pre, label in (
            (maps.t_forward, maps.t_preimage, maps.t_label),
            (maps.s_forward, maps.s_preimage, maps.s_label),
        ):
            back = fwd(pre(p))
            if not space.points_equal(back, p):
                raise PreimageBroken(
                    f"map {label}: forward(preimage({p!r})) = {back!r} != {p!r}"
                )


# ---------------------------------------------------------------------------
# Expansion hypotheses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RLHypothesis:
    """dist(Tx, Sy) >= [r_const + l_const * min of diagonal residuals] * dist(x, y)."""

    r_const: float
    l_const: float = 0.0

    def __post_init__(self):
        if self.l_const < 0:
            raise ValueError("l_const must be nonnegative")


@dataclass(frozen=True)
class PhiHypothesis:
    """dist(Tx, Sy) >= phi(dist(x, y)) * dist(x, y) for positive distances.

    `k_squared` is the codomain floor phi must stay strictly above; the
    limit condition (phi(t_n) approaching the floor forces t_n -> 0) is a
    property over all sequences, not machine-checkable for a black-box
    phi, so it is carried as the attested assumption flag.
    """

    phi: Callable[[float], float]
    k_squared: float
    limit_condition_attested: bool = False
    label: str = "custom"


Hypothesis = Union[RLHypothesis, PhiHypothesis]


def affine_phi(a: float, b: float) -> Callable[[float], float]:
    """The built-in rate family t -> a + b*t."""
    return lambda t: a + b * t


# ---------------------------------------------------------------------------
# Orbit construction
# ---------------------------------------------------------------------------


class Termination(Enum):
    FIXED_POINT_HIT = "fixed_point_hit"
    TOLERANCE_MET = "tolerance_met"
    MAX_ITERATIONS = "max_iterations"


@dataclass(frozen=True)
class OrbitTrace:
    points: tuple[Point, ...]
    successive_distances: tuple[float, ...]
    cauchy: CauchyVerdict
    terminated_by: Termination


def _trivial_verdict(k_const: float) -> CauchyVerdict:
    # One distance yields no ratios: nothing to certify.
    return CauchyVerdict(0.0, 1.0 / k_const, CauchyOutcome.INCONCLUSIVE, (), ())


def inverse_orbit(
    space: Space,
    maps: MapPair,
    x0: Point,
    max_steps: int = DEFAULT_MAX_STEPS,
    tol_fix: float = TOL_FIX,
) -> OrbitTrace:
    """Run the backward orbit from x0, alternating T- and S-preimages.

    Every step re-checks the selector round trip (ambient equality) and
    records dist(x_n, x_{n+1}).  Stops early only at a point exactly fixed
    by both maps; a stalled-but-unfixed point (an identity-like map on one
    side) keeps iterating, since only a common fixed point ends the
    construction.
    """
    if max_steps < 2:
        raise ValueError("max_steps must be at least 2")
    if not space.carrier.contains(x0):
        raise ValueError(f"start point {x0!r} is outside the carrier")
    pts: list[Point] = [x0]
    dists: list[float] = []
    terminated = Termination.MAX_ITERATIONS
    for step in range(max_steps):
        cur = pts[-1]
        if step % 2 == 0:
            nxt = maps.t_preimage(cur)
            back = maps.t_forward(nxt)
        else:
            nxt = maps.s_preimage(cur)
            back = maps.s_forward(nxt)
        if not space.points_equal(back, cur):
            raise PreimageBroken(
                f"step {step}: forward(preimage({cur!r})) = {back!r} != {cur!r}"
            )
        if not space.carrier.contains(nxt):
            raise PreimageBroken(
                f"step {step}: preimage {nxt!r} left the carrier"
            )
        pts.append(nxt)
        dists.append(space.dist(cur, nxt))
        if nxt == cur and maps.t_forward(nxt) == nxt and maps.s_forward(nxt) == nxt:
            terminated = Termination.FIXED_POINT_HIT
            break
    else:
        w = tail_window(len(dists))
        if dists and max(dists[len(dists) - w :]) <= tol_fix:
            terminated = Termination.TOLERANCE_MET
    cauchy = (
        geometric_cauchy_check(dists, space.k_const, noise_floor=tol_fix)
        if len(dists) >= 2
        else _trivial_verdict(space.k_const)
    )
    return OrbitTrace(tuple(pts), tuple(dists), cauchy, terminated)


def orbit_adjacent_pairs(points: Sequence[Point]) -> list[tuple[Point, Point]]:
    """The ordered (T-argument, S-argument) pairs an orbit run consumes.

    Odd-indexed points feed T and even-indexed points feed S, so each
    adjacent index pair contributes one ordered pair with the odd point
    first.
    """
    out = []
    for i in range(1, len(points) - 1):
        a, b = points[i], points[i + 1]
        out.append((a, b) if i % 2 == 1 else (b, a))
    return out


# ---------------------------------------------------------------------------
# Hypothesis audits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditViolation:
    x: Point
    y: Point
    lhs: float
    rhs: float


@dataclass(frozen=True)
class AuditReport:
    checked_pairs: int
    violations: tuple[AuditViolation, ...]
    passed: bool


PairSource = Union[Exhaustive, Sampled, Iterable[tuple[Point, Point]]]


def _resolve_pairs(space: Space, pairs: PairSource) -> list[tuple[Point, Point]]:
    if isinstance(pairs, Exhaustive):
        if not space.is_finite:
            raise ExhaustiveOnInfiniteCarrier(
                "exhaustive pair auditing needs a finite carrier"
            )
        return list(product(space.carrier.points, repeat=2))
    if isinstance(pairs, Sampled):
        return sample_pairs(space, pairs.n, pairs.seed)
    return list(pairs)


def audit_rl(
    space: Space,
    maps: MapPair,
    hyp: RLHypothesis,
    pairs: PairSource,
    limit: int | None = None,
) -> AuditReport:
    """Check the constant-coefficient expansion inequality on ordered pairs.

    Pairs are ordered: x always goes through T and y through S, with no
    symmetrization.  `limit` stops collecting after that many violations
    (the pass flag is already decided), which keeps large sweeps cheap.
    """
    if not hyp.r_const > space.k_const:
        raise ValueError("r_const must exceed the space's k_const")
    d = space.dist
    violations: list[AuditViolation] = []
    checked = 0
    for x, y in _resolve_pairs(space, pairs):
        checked += 1
        tx = maps.t_forward(x)
        sy = maps.s_forward(y)
        lhs = d(tx, sy)
        coeff = hyp.r_const
        if hyp.l_const > 0:
            coeff += hyp.l_const * min(
                d_sharp(space, x, tx),
                d_sharp(space, y, sy),
                d_sharp(space, x, sy),
                d_sharp(space, y, tx),
            )
        rhs = coeff * d(x, y)
        if exceeds(rhs, lhs):
            violations.append(AuditViolation(x, y, lhs, rhs))
            if limit is not None and len(violations) >= limit:
                break
    return AuditReport(checked, tuple(violations), not violations)


def audit_phi(
    space: Space,
    maps: MapPair,
    hyp: PhiHypothesis,
    pairs: PairSource,
    limit: int | None = None,
) -> AuditReport:
    """Check the rate-function expansion inequality on ordered pairs.

    Pairs at distance zero are vacuously compliant (the rate function is
    only defined for positive arguments).  Any probed value at or below
    the codomain floor aborts with PhiBelowKSquared.
    """
    d = space.dist
    violations: list[AuditViolation] = []
    checked = 0
    for x, y in _resolve_pairs(space, pairs):
        checked += 1
        t = d(x, y)
        if t <= 0.0:
            continue
        rate = hyp.phi(t)
        if rate <= hyp.k_squared:
            raise PhiBelowKSquared(
                f"phi({t}) = {rate} is not above the floor {hyp.k_squared}"
            )
        lhs = d(maps.t_forward(x), maps.s_forward(y))
        rhs = rate * t
        if exceeds(rhs, lhs):
            violations.append(AuditViolation(x, y, lhs, rhs))
            if limit is not None and len(violations) >= limit:
                break
    return AuditReport(checked, tuple(violations), not violations)


def audit(
    space: Space,
    maps: MapPair,
    hyp: Hypothesis,
    pairs: PairSource,
    limit: int | None = None,
) -> AuditReport:
    if isinstance(hyp, RLHypothesis):
        return audit_rl(space, maps, hyp, pairs, limit)
    return audit_phi(space, maps, hyp, pairs, limit)


# ---------------------------------------------------------------------------
# Solve
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolveReport:
    candidate: Point
    t_residual: float
    s_residual: float
    trace: OrbitTrace
    certified: bool
    hypothesis_audit: AuditReport


def _probe_points(space: Space) -> list[Point]:
    if space.is_finite:
        return list(space.carrier.points)
    return space.carrier.anchors()


def solve(
    space: Space,
    maps: MapPair,
    hyp: Hypothesis,
    x0: Point,
    max_steps: int = DEFAULT_MAX_STEPS,
    tol_fix: float = TOL_FIX,
) -> SolveReport:
    """Run the inverse orbit and certify its endpoint as a common fixed point.

    The candidate is the final orbit point; residuals are the diagonal
    residuals d_sharp(z, Tz) and d_sharp(z, Sz), which vanish on genuine
    fixed points even when self-distances do not.  The hypothesis is
    audited along the orbit-adjacent pairs the construction actually
    consumed; failures there are reported but do not block certification,
    which requires only residuals within tol_fix and a certified
    geometric-decay verdict.
    """
    if not space.complete:
        raise ValueError(
            "space must be declared complete (set complete=True) before solving"
        )
    check_roundtrip(space, maps, _probe_points(space))
    trace = inverse_orbit(space, maps, x0, max_steps=max_steps, tol_fix=tol_fix)
    z = trace.points[-1]
    t_res = d_sharp(space, z, maps.t_forward(z))
    s_res = d_sharp(space, z, maps.s_forward(z))
    pairs = orbit_adjacent_pairs(trace.points)
    hyp_audit = (
        audit(space, maps, hyp, pairs)
        if pairs
        else AuditReport(0, (), True)
    )
    certified = (
        t_res <= tol_fix
        and s_res <= tol_fix
        and trace.cauchy.verdict is CauchyOutcome.CAUCHY_CERTIFIED
    )
    return SolveReport(z, t_res, s_res, trace, certified, hyp_audit)


def verify_uniqueness_argument(
    space: Space,
    maps: MapPair,
    hyp: Hypothesis,
    z1: Point,
    z2: Point,
    tol_fix: float = TOL_FIX,
) -> bool:
    """Check that two certified fixed points are the same point.

    Both inputs must pass the residual gate (else NotAFixedPoint).  Returns
    True when the points coincide ambiently or sit at distance zero (the
    zero-implies-equal axiom is one-directional, so distinct labels at
    distance zero are identified).  Returning False means the uniqueness
    chain is numerically contradicted, in which case the expansion
    hypothesis must itself fail on the witness pair; that cross-check is
    enforced here.
    """
    for z in (z1, z2):
        rt = d_sharp(space, z, maps.t_forward(z))
        rs = d_sharp(space, z, maps.s_forward(z))
        if rt > tol_fix or rs > tol_fix:
            raise NotAFixedPoint(
                f"{z!r} has residuals ({rt}, {rs}) above {tol_fix}"
            )
    if space.points_equal(z1, z2) or space.dist(z1, z2) == 0.0:
        return True
    witness = audit(space, maps, hyp, [(z1, z2), (z2, z1)])
    if witness.passed:
        raise RuntimeError(
            "distinct fixed points but the expansion hypothesis holds on "
            "their pair; the audit and the residual gate disagree"
        )
    return False
