"""Shared tolerances and floating-point comparison helpers.

TOL_AXIOM is the published relative slack on axiom and hypothesis
inequalities.  The comparison helpers scale purely with the magnitudes of
the compared values and flag only beyond half the published slack: the
flagging threshold must sit strictly below the slack itself, otherwise
shrinking a relaxation constant by exactly one part in 1e9 lands on the
comparison boundary and detection becomes a coin flip of rounding.
Floating-point noise on genuine structures sits many orders of magnitude
below either threshold at every scale.
"""

TOL_AXIOM = 1e-9  # relative slack on axiom / hypothesis inequalities
TOL_POINT = 1e-12  # ambient point equality on interval carriers
TOL_FIX = 1e-10  # residual bound certifying a fixed point
MIN_TAIL = 8


def tail_window(n: int) -> int:
    """Length of the decision window: the last quarter, at least MIN_TAIL."""
    return min(n, max(MIN_TAIL, -(-n // 4)))


def exceeds(value: float, bound: float, tol: float = TOL_AXIOM) -> bool:
    """True when `value` is above `bound` beyond relative slack."""
    return value - bound > 0.5 * tol * max(abs(value), abs(bound))


def differs(a: float, b: float, tol: float = TOL_AXIOM) -> bool:
    """True when two values disagree beyond relative slack."""
    return abs(a - b) > tol * max(abs(a), abs(b))
