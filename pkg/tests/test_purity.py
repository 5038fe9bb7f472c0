from __future__ import annotations

import pytest

from reslat import ContractError
from reslat.coann import coannulet
from reslat.filters import all_filters, filter_join, is_filter
from reslat.purity import (
    divisor_filter,
    ideal_join,
    is_lattice_ideal,
    lattice_ideals,
    omega_filter,
    omega_lattice,
    pure_core,
    pure_envelope,
    pure_min_identity,
    pure_part,
    pure_spectrum,
)
from reslat.spectra import prime_spectrum

from lattices import build_boolean4, build_two_chain, mask


def test_lattice_ideals_golden(a6):
    ideals = lattice_ideals(a6)
    assert mask(a6, "0") in ideals
    assert mask(a6, "0 a b c d") in ideals  # the down-set of d
    assert a6.full_mask in ideals
    assert len(ideals) == 6


def test_two_chain_ideals():
    lat = build_two_chain()
    assert set(lattice_ideals(lat)) == {1, 3}


def test_ideals_match_brute_force(a6, a8, corpus4):
    # independent enumeration over every subset of the carrier
    for lat in (a6, a8, *corpus4):
        brute = {
            s for s in range(1, lat.full_mask + 1) if is_lattice_ideal(lat, s)
        }
        assert set(lattice_ideals(lat)) == brute


def test_principal_downsets_are_ideals(a6):
    for x in range(a6.size):
        assert is_lattice_ideal(a6, a6.down(x))


def test_omega_golden(a6):
    assert omega_filter(a6, mask(a6, "0")) == mask(a6, "1")
    assert omega_filter(a6, a6.full_mask) == a6.full_mask
    assert omega_filter(a6, mask(a6, "0 c")) == mask(a6, "1")


def test_omega_results_are_filters(a6, a8, corpus4):
    for lat in (a6, a8, *corpus4):
        for ideal in lattice_ideals(lat):
            assert is_filter(lat, omega_filter(lat, ideal))


def test_divisor_filter_golden(a6, a8):
    assert divisor_filter(a6, mask(a6, "a b d 1")) == mask(a6, "1")
    spec8 = prime_spectrum(a8)
    top_prime = spec8.primes[spec8.maximal[0]]
    d = divisor_filter(a8, top_prime)
    assert d == mask(a8, "1")
    assert d not in spec8.index  # not prime: the failure that marks non-mp


def test_divisor_filter_fixes_minimal_primes(corpus5):
    for lat in corpus5:
        spec = prime_spectrum(lat)
        for i, p in enumerate(spec.primes):
            fixed = divisor_filter(lat, p) == p
            assert fixed == spec.is_minimal[i]


def test_divisor_filter_rejects_non_prime(a8):
    with pytest.raises(ContractError):
        divisor_filter(a8, mask(a8, "1"))  # not prime in this lattice


def test_omega_lattice_golden(a6, a8):
    assert set(omega_lattice(a6).members) == {mask(a6, "1"), a6.full_mask}
    assert set(omega_lattice(a8).members) == {
        mask(a8, "1"), mask(a8, "c e 1"), mask(a8, "f 1"), a8.full_mask,
    }


def test_coannulets_are_omega_filters(a6, a8, corpus4):
    for lat in (a6, a8, *corpus4):
        members = set(omega_lattice(lat).members)
        for x in range(lat.size):
            assert coannulet(lat, x) in members


def test_omega_vee_is_representative_independent(a6, a8, corpus4):
    for lat in (a6, a8, *corpus4):
        om = omega_lattice(lat)
        for f in om.members:
            for g in om.members:
                results = {
                    omega_filter(lat, ideal_join(lat, i, j))
                    for i in om.representatives[f]
                    for j in om.representatives[g]
                }
                assert len(results) == 1
                assert om.vee(f, g) == results.pop()


def test_pure_core_golden(a6, a8):
    assert pure_core(a6, a6.full_mask) == a6.full_mask
    assert pure_core(a6, mask(a6, "d 1")) == mask(a6, "1")
    assert pure_core(a6, mask(a6, "a b d 1")) == mask(a6, "1")
    assert pure_core(a8, mask(a8, "f 1")) == mask(a8, "1")


def test_pure_core_of_maximal_is_divisor_filter(a6, a8, corpus4):
    for lat in (a6, a8, *corpus4):
        spec = prime_spectrum(lat)
        for i in spec.maximal:
            m = spec.primes[i]
            assert pure_core(lat, m) == divisor_filter(lat, m)


def test_pure_core_is_monotone_and_deflationary(a6, a8, corpus4):
    for lat in (a6, a8, *corpus4):
        for f in all_filters(lat):
            sf = pure_core(lat, f)
            assert sf & ~f == 0
            for g in all_filters(lat):
                if f & ~g == 0:
                    assert sf & ~pure_core(lat, g) == 0


def test_pure_core_is_idempotent_on_mp_lattices(corpus5):
    from reslat.mp import mp_check

    for lat in corpus5:
        if mp_check(lat).final:
            for f in all_filters(lat):
                s = pure_core(lat, f)
                assert pure_core(lat, s) == s


def test_pure_spectrum_golden(a6, a8):
    ps6 = pure_spectrum(a6)
    assert set(ps6.pure) == {mask(a6, "1"), a6.full_mask}
    assert ps6.purely_maximal == (mask(a6, "1"),)
    spec6 = prime_spectrum(a6)
    assert set(ps6.purely_maximal) == {spec6.primes[i] for i in spec6.minimal}

    ps8 = pure_spectrum(a8)
    assert set(ps8.pure) == {mask(a8, "1"), a8.full_mask}
    assert ps8.purely_prime == (mask(a8, "1"),)
    spec8 = prime_spectrum(a8)
    assert set(ps8.purely_prime) != {spec8.primes[i] for i in spec8.minimal}


def test_two_chain_everything_pure():
    lat = build_two_chain()
    ps = pure_spectrum(lat)
    assert set(ps.pure) == set(all_filters(lat))
    assert ps.purely_prime == (1 << lat.top,)


def test_pure_filters_closed_under_meet_and_join(corpus5):
    for lat in corpus5:
        pure = set(pure_spectrum(lat).pure)
        for f in pure:
            for g in pure:
                assert f & g in pure
                assert filter_join(lat, f, g) in pure


def test_purely_prime_pairs_comaximal(corpus5):
    # distinct pure prime filters can only join to the whole carrier
    for lat in corpus5:
        spec = prime_spectrum(lat)
        pure = set(pure_spectrum(lat).pure)
        pp = [p for p in spec.primes if p in pure]
        for i, p in enumerate(pp):
            for q in pp[i + 1:]:
                assert filter_join(lat, p, q) == lat.full_mask


def test_pure_part_golden(a6):
    assert pure_part(a6, a6.full_mask) == a6.full_mask
    assert pure_part(a6, mask(a6, "1")) == mask(a6, "1")
    assert pure_part(a6, mask(a6, "a b d 1")) == mask(a6, "1")
    b4 = build_boolean4()
    assert pure_part(b4, mask(b4, "a 1")) == mask(b4, "a 1")


def test_pure_envelope_golden(a6):
    assert pure_envelope(a6, 4) == mask(a6, "1")  # element d
    b4 = build_boolean4()
    assert pure_envelope(b4, 1) == mask(b4, "a 1")


def test_pure_envelope_of_top_is_one(a6, a8, corpus4):
    # the pure parts of all maximal filters intersect to the one filter
    for lat in (a6, a8, *corpus4):
        if lat.size == 1:
            continue
        assert pure_envelope(lat, lat.top) == 1 << lat.top


def test_identity_comparison_golden(a6, a8):
    assert pure_min_identity(a6) == pure_min_identity(build_two_chain())
    c6 = pure_min_identity(a6)
    assert c6.bijective and c6.homeomorphism
    c8 = pure_min_identity(a8)
    assert not c8.bijective and not c8.homeomorphism
