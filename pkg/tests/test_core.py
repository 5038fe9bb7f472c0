from __future__ import annotations

import dataclasses

import pytest

from reslat import (
    StructureError,
    ValidationFailed,
    bits,
    boolean_center,
    derive_residuum,
    from_order,
    from_tables,
    negation,
    validate_axioms,
)
from reslat.spectra import hull_kernel_topology, hull

from lattices import (
    build_a6,
    build_a8,
    build_boolean4,
    build_chain,
    build_two_chain,
    mask,
)


def test_a6_tables_are_valid(a6):
    assert validate_axioms(a6).valid


def test_a8_tables_are_valid(a8):
    assert validate_axioms(a8).valid


def test_two_chain_with_meet_product_is_valid():
    assert validate_axioms(build_two_chain()).valid


def test_hand_built_matches_bundled(a6, a8):
    assert build_a6() == a6
    assert build_a8() == a8


def _corrupt(lat, x, y, v):
    odot = [list(row) for row in lat.odot]
    odot[x][y] = v
    odot[y][x] = v
    return dataclasses.replace(lat, odot=tuple(map(tuple, odot)))


def test_corrupted_product_reports_adjointness_with_minimal_witness(a6):
    # change the a.c cell from 0 to a; the first adjunction failure is at
    # x=a, argument c, bound 0
    bad = _corrupt(a6, 1, 3, 1)
    report = validate_axioms(bad)
    assert not report.valid
    found = {v.axiom: v.witness for v in report.violations}
    assert found["adjointness"] == (1, 3, 0)


def test_all_violated_axioms_are_listed(a6):
    odot = [list(row) for row in a6.odot]
    odot[1][3] = 1  # one-sided change also breaks commutativity
    bad = dataclasses.replace(a6, odot=tuple(map(tuple, odot)))
    report = validate_axioms(bad)
    found = {v.axiom: v.witness for v in report.violations}
    assert found["odot-commutative"] == (1, 3)
    assert "adjointness" in found


def test_identity_violation_reported(a6):
    bad = _corrupt(a6, 5, 2, 1)  # 1.b = a
    found = {v.axiom for v in validate_axioms(bad).violations}
    assert "odot-identity" in found


def test_dimension_mismatch_is_structural(a6):
    rows = [list(r) for r in a6.odot]
    rows[0] = rows[0][:-1]
    with pytest.raises(StructureError):
        from_tables(
            a6.labels,
            [[a6.leq(i, j) for j in range(6)] for i in range(6)],
            a6.join, a6.meet, rows, a6.imp, a6.bottom, a6.top,
        )


def test_out_of_range_entry_is_structural(a6):
    rows = [list(r) for r in a6.odot]
    rows[2][2] = 17
    with pytest.raises(StructureError):
        from_tables(
            a6.labels,
            [[a6.leq(i, j) for j in range(6)] for i in range(6)],
            a6.join, a6.meet, rows, a6.imp, a6.bottom, a6.top,
        )


def test_non_lattice_order_is_reported():
    # two incomparable tops
    leq = [
        [True, True, True],
        [False, True, False],
        [False, False, True],
    ]
    with pytest.raises(ValidationFailed) as exc:
        from_order(("0", "x", "y"), leq, [[0] * 3] * 3)
    axioms = {v.axiom for v in exc.value.report.violations}
    assert "no-top" in axioms


def test_residuum_golden_entry(a6):
    # b -> c collects candidates {0, c}
    assert a6.imp[2][3] == 3


def test_residuum_rows_forced_by_unit_and_zero(a6, a8, corpus4):
    for lat in (a6, a8, *corpus4):
        for x in range(lat.size):
            assert lat.imp[lat.top][x] == x
            assert lat.imp[lat.bottom][x] == lat.top


def test_residuum_round_trip(a6, a8):
    for lat in (a6, a8):
        derived = derive_residuum(lat.up, lat.join, lat.odot)
        assert derived == lat.imp


def test_negation_golden(a6):
    assert negation(a6, 1) == 3  # ~a = c
    assert negation(a6, a6.top) == a6.bottom
    assert negation(a6, a6.bottom) == a6.top


def test_boolean_center_golden(a6):
    assert boolean_center(a6) == mask(a6, "0 1")


def test_boolean_center_of_boolean_algebra_is_everything():
    b4 = build_boolean4()
    assert boolean_center(b4) == b4.full_mask


def test_boolean_center_of_chains_is_bounds():
    for n in (3, 4, 5):
        chain = build_chain(n)
        assert boolean_center(chain) == 1 | 1 << chain.top


def test_derived_laws_hold_everywhere(a6, a8, corpus4):
    for lat in (a6, a8, *corpus4):
        n = lat.size
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    j = lat.join[y][z]
                    assert lat.odot[x][j] == lat.join[lat.odot[x][y]][lat.odot[x][z]]
                    lhs = lat.odot[lat.join[x][y]][lat.join[x][z]]
                    assert lat.leq(lhs, lat.join[x][lat.odot[y][z]])


def test_central_elements_have_clopen_hulls(a6, a8, corpus4):
    for lat in (a6, a8, *corpus4):
        dual = hull_kernel_topology(lat, "spec", "dual")
        for e in bits(boolean_center(lat)):
            h = hull(lat, 1 << e)
            assert dual.is_open(h) and dual.is_closed(h)
