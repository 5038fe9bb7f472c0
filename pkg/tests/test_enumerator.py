from __future__ import annotations

import itertools

import pytest

from reslat import ContractError, validate_axioms
from reslat.core import bounded_lattice_ops
from reslat.enumerator import (
    bounded_lattices,
    census,
    enumerate_residuated,
    full_canonical_key,
    lattice_automorphisms,
    lattice_canonical,
    naive_bounded_orders,
    naive_residuated,
    residuated_products,
    worker_count,
)

# unlabeled bounded lattice counts for orders 1..6; the order-5 value also
# follows by hand: the chain, both kites, the diamond and the pentagon
LATTICE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15}


def test_lattice_counts():
    for n, expected in LATTICE_COUNTS.items():
        assert len(bounded_lattices(n)) == expected


def test_generated_orders_are_lattices():
    for n in range(1, 7):
        for up in bounded_lattices(n):
            bottom, top, _, _ = bounded_lattice_ops(up)
            assert bottom == 0 and top == n - 1


def test_lattice_canonical_is_idempotent_and_invariant():
    for up in bounded_lattices(5):
        assert lattice_canonical(up) == up
        n = len(up)
        for perm in itertools.permutations(range(1, n - 1)):
            full = (0,) + perm + (n - 1,)
            relabeled = tuple(
                sum(1 << full[j] for j in range(n) if up[i] >> j & 1)
                for i in [full.index(k) for k in range(n)]
            )
            assert lattice_canonical(relabeled) == up


def test_naive_order_scan_agrees():
    for n in range(1, 5):
        seen = {lattice_canonical_from_any(up) for up in naive_bounded_orders(n)}
        assert len(seen) == len(bounded_lattices(n))


def lattice_canonical_from_any(up):
    # bring an arbitrary labeled order to bottom-first form, then canonicalize
    n = len(up)
    bottom, top, _, _ = bounded_lattice_ops(up)
    rest = [i for i in range(n) if i not in (bottom, top)]
    order = [bottom] + rest + ([top] if n > 1 else [])
    new_of = {old: new for new, old in enumerate(order)}
    rows = tuple(
        sum(1 << new_of[j] for j in range(n) if up[order[i]] >> j & 1)
        for i in range(n)
    )
    return lattice_canonical(rows)


def test_three_chain_has_two_products():
    assert len(naive_residuated(3)) == 2
    assert len(enumerate_residuated(3, workers=1)) == 2


def test_two_chain_product_is_forced():
    assert len(enumerate_residuated(2, workers=1)) == 1
    assert len(naive_residuated(1)) == 1


def test_oracle_equivalence_up_to_four():
    for n in range(1, 5):
        fast = {full_canonical_key(lat) for lat in enumerate_residuated(n, workers=1)}
        naive = {full_canonical_key(lat) for lat in naive_residuated(n)}
        assert fast == naive


def test_everything_emitted_is_valid(corpus5):
    for lat in corpus5:
        assert validate_axioms(lat).valid
        assert lat.bottom == 0 and lat.top == lat.size - 1


def test_isomorph_freeness(corpus5):
    keys = [full_canonical_key(lat) for lat in corpus5]
    assert len(keys) == len(set(keys))


def test_worked_example_appears_at_order_six(a6):
    target = full_canonical_key(a6)
    assert any(
        full_canonical_key(lat) == target
        for lat in enumerate_residuated(6, workers=1)
    )


def test_enumeration_is_deterministic():
    first = [lat.odot for lat in enumerate_residuated(5, workers=1)]
    second = [lat.odot for lat in enumerate_residuated(5, workers=1)]
    parallel = [lat.odot for lat in enumerate_residuated(5, workers=2)]
    assert first == second == parallel


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("RESLAT_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.delenv("RESLAT_THREADS")
    assert worker_count(2) == 2
    assert worker_count() >= 1


def test_order_cap():
    with pytest.raises(ContractError):
        bounded_lattices(9)
    with pytest.raises(ContractError):
        naive_residuated(5)


def test_census_golden_rows():
    rows = census(4, workers=1)
    by_order = {r.order: r for r in rows}
    assert by_order[2].residuated == 1
    assert by_order[2].mp == 1
    assert by_order[2].domains == 1
    assert by_order[3].residuated == 2
    assert by_order[3].mp == 2
    assert by_order[4].residuated == len(naive_residuated(4))
    assert by_order[1].lattices == 1


def test_automorphism_groups():
    for up in bounded_lattices(5):
        auts = lattice_automorphisms(up)
        assert tuple(range(len(up))) in auts
        # products per lattice are canonical under exactly these symmetries
        for tab in residuated_products(up):
            flats = set()
            n = len(up)
            for perm in auts:
                inv = [0] * n
                for a, p in enumerate(perm):
                    inv[p] = a
                flats.add(
                    tuple(perm[tab[inv[x]][inv[y]]] for x in range(n) for y in range(n))
                )
            assert min(flats) == tuple(v for row in tab for v in row)
