import math
from itertools import permutations, product

import pytest

import invorbit as iv
from invorbit.oracle import bijection_tables, pair_from_tables


def _abs_table(points):
    matrix = [[abs(a - b) for b in points] for a in points]
    return iv.table_space(points, matrix, k_const=1.0, kind=iv.SpaceKind.B_METRIC)


# ---------------------------------------------------------------------------
# common_fixed_points
# ---------------------------------------------------------------------------


def test_identity_pair_fixes_everything():
    s = _abs_table((0.0, 1.0, 2.0))
    maps = pair_from_tables({p: p for p in s.carrier.points}, {p: p for p in s.carrier.points})
    assert iv.common_fixed_points(s, maps) == {0.0, 1.0, 2.0}


def test_swap_against_identity():
    s = _abs_table((0.0, 1.0, 2.0))
    swap = {0.0: 1.0, 1.0: 0.0, 2.0: 2.0}
    ident = {p: p for p in s.carrier.points}
    maps = pair_from_tables(swap, ident)
    assert iv.common_fixed_points(s, maps) == {2.0}


def test_three_cycle_has_no_fixed_point():
    s = _abs_table((0.0, 1.0, 2.0))
    cycle = {0.0: 1.0, 1.0: 2.0, 2.0: 0.0}
    ident = {p: p for p in s.carrier.points}
    maps = pair_from_tables(cycle, ident)
    assert iv.common_fixed_points(s, maps) == set()


# ---------------------------------------------------------------------------
# audit_theorem_finite
# ---------------------------------------------------------------------------


def test_no_bijection_pair_doubles_a_finite_metric():
    pts = (0.0, 1.0, 2.0)
    s = _abs_table(pts)
    # Independent oracle: brute-force the audit over all 36 ordered pairs.
    holders = 0
    for t_img in permutations(pts):
        t = dict(zip(pts, t_img))
        for s_img in permutations(pts):
            sm = dict(zip(pts, s_img))
            if all(
                abs(t[x] - sm[y]) >= 2.0 * abs(x - y) - 1e-12
                for x, y in product(pts, repeat=2)
            ):
                holders += 1
    assert holders == 0
    audit = iv.audit_theorem_finite(s, iv.RLHypothesis(2.0, 0.0))
    assert audit.instances_checked == 36
    assert audit.hypothesis_holders == 0
    assert audit.counterexamples == ()


def test_two_point_space_audits_all_pairs(two_point):
    audit = iv.audit_theorem_finite(two_point, iv.RLHypothesis(1.5, 0.0))
    assert audit.instances_checked == 4
    assert audit.counterexamples == ()


def test_singleton_with_zero_self_distance_holds_vacuously():
    s = iv.table_space((0,), [[0.0]])
    audit = iv.audit_theorem_finite(s, iv.RLHypothesis(1.5, 0.0))
    assert audit.instances_checked == 1
    assert audit.hypothesis_holders == 1
    assert audit.counterexamples == ()


def test_singleton_with_positive_self_distance_fails_the_hypothesis():
    s = iv.table_space((0,), [[2.0]])
    audit = iv.audit_theorem_finite(s, iv.RLHypothesis(1.5, 0.0))
    assert audit.hypothesis_holders == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_covers_all_ordered_bijection_pairs(n):
    pts = tuple(range(n))
    s = _abs_table(tuple(float(p) for p in pts))
    audit = iv.audit_theorem_finite(s, iv.RLHypothesis(2.0, 0.0))
    assert audit.instances_checked == math.factorial(n) ** 2
    assert len(bijection_tables(pts)) == math.factorial(n)


def test_carrier_size_cap_is_enforced():
    s = _abs_table((0.0, 1.0, 2.0, 3.0, 4.0))
    with pytest.raises(iv.CarrierTooLarge):
        iv.audit_theorem_finite(s, iv.RLHypothesis(2.0, 0.0))


# ---------------------------------------------------------------------------
# cross_validate
# ---------------------------------------------------------------------------


def test_cross_validate_vacuous_on_two_point_space(two_point):
    # No bijection pair expands the positive distances, so the conjunction
    # over passing pairs is empty.
    assert iv.cross_validate(two_point, iv.RLHypothesis(1.5, 0.0))


def test_cross_validate_singleton():
    s = iv.table_space((0,), [[0.0]])
    assert iv.cross_validate(s, iv.RLHypothesis(1.5, 0.0))


def test_cross_validate_agrees_with_enumeration_on_sweep_instances():
    # Every hypothesis holder in a small sweep grid must send the solver to
    # an enumerated common fixed point, from every start.
    for entries in ([[0.0]], [[0.0, 1.0], [1.0, 0.0]], [[0.0, 3.0], [3.0, 1.0]]):
        labels = tuple(range(len(entries)))
        space = iv.table_space(labels, entries)
        if not iv.check_axioms(space, iv.Exhaustive()).passed:
            continue
        assert iv.cross_validate(space, iv.RLHypothesis(1.5, 0.0))


# ---------------------------------------------------------------------------
# falsification_sweep
# ---------------------------------------------------------------------------


def test_small_sweep_finds_no_counterexamples():
    sweep = iv.falsification_sweep(sizes=(1, 2), entries=(0.0, 1.0, 2.0))
    assert sweep.counterexamples == ()
    assert sweep.matrices_checked == 3 + 3 ** 3
    assert sweep.spaces_admitted > 0


def test_sweep_counts_every_instance():
    sweep = iv.falsification_sweep(
        sizes=(2,), entries=(0.0, 1.0), k_values=(1.0,), l_values=(0.0,)
    )
    # Admitted spaces each audit (2!)**2 = 4 bijection pairs for R in
    # {1.5, 2.0}, so 8 instances per space.
    assert sweep.instances_checked == sweep.spaces_admitted * 8
