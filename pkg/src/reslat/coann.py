"""Coannihilators, coannulets, the skeleton, Baer/Rickart classification.

The coannihilator of a subset X is the intersection of the primes not
containing X.  Coannihilators form a Boolean lattice (the skeleton of the
filter lattice) under intersection and the skeleton join; the coannulets
are the single-element case.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .core import InternalCheckError, ResiduatedLattice, is_subset
from .filters import all_filters, canonical_sort, filter_join
from .spectra import prime_spectrum


def coannihilator(lat: ResiduatedLattice, subset: int) -> int:
    """Intersection of the primes that do not contain the subset."""
    spec = prime_spectrum(lat)
    out = lat.full_mask
    for p in spec.primes:
        if not is_subset(subset, p):
            out &= p
    return out


def coannulet(lat: ResiduatedLattice, x: int) -> int:
    return coannihilator(lat, 1 << x)


class SkeletonLattice:
    """Coannihilators with the skeleton join, plus the coannulet sublattice."""

    def __init__(
        self,
        lat: ResiduatedLattice,
        members: tuple[int, ...],
        coannulets: tuple[int, ...],
        dual_coannulets: tuple[int, ...],
    ):
        self.lattice = lat
        self.members = members
        self.coannulets = coannulets
        self.dual_coannulets = dual_coannulets
        self.index = {f: i for i, f in enumerate(members)}
        m = len(members)
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                v = self._skel_join(members[i], members[j])
                if v not in self.index:
                    raise InternalCheckError("skeleton not closed under its join")
                row.append(self.index[v])
            rows.append(tuple(row))
        self.join_table = tuple(rows)

    def _skel_join(self, f: int, g: int) -> int:
        lat = self.lattice
        return coannihilator(lat, coannihilator(lat, f) & coannihilator(lat, g))

    def skeleton_join(self, f: int, g: int) -> int:
        return self.members[self.join_table[self.index[f]][self.index[g]]]

    def complement(self, f: int) -> int:
        return coannihilator(self.lattice, f)


@cache
def skeleton(lat: ResiduatedLattice) -> SkeletonLattice:
    """The skeleton, verified to be a Boolean lattice.

    Membership ranges over filters only: the coannihilator of any subset
    equals that of the filter it generates, so nothing is missed.
    """
    members = canonical_sort({coannihilator(lat, f) for f in all_filters(lat)})
    gamma = canonical_sort({coannulet(lat, x) for x in range(lat.size)})
    lam = canonical_sort(
        {coannihilator(lat, coannulet(lat, x)) for x in range(lat.size)}
    )
    skel = SkeletonLattice(lat, members, gamma, lam)
    member_set = set(members)
    one = 1 << lat.top
    if one not in member_set or lat.full_mask not in member_set:
        raise InternalCheckError("skeleton lacks its bounds")
    for f in members:
        if f & coannihilator(lat, f) != one:
            raise InternalCheckError("skeleton complement fails the meet law")
        if skel._skel_join(f, coannihilator(lat, f)) != lat.full_mask:
            raise InternalCheckError("skeleton complement fails the join law")
        for g in members:
            if f & g not in member_set:
                raise InternalCheckError("skeleton not closed under intersection")
            if skel._skel_join(f, g) not in member_set:
                raise InternalCheckError("skeleton not closed under its join")
            if coannihilator(lat, skel._skel_join(f, g)) != coannihilator(
                lat, f
            ) & coannihilator(lat, g):
                raise InternalCheckError("skeleton De Morgan law fails")
            for h in members:
                if skel._skel_join(f, g & h) != skel._skel_join(f, g) & skel._skel_join(f, h):
                    raise InternalCheckError("skeleton is not distributive")
    for g in gamma:
        if g not in member_set:
            raise InternalCheckError("coannulets must be coannihilators")
    for x in gamma:
        for y in gamma:
            if x & y not in set(gamma) or skel._skel_join(x, y) not in set(gamma):
                raise InternalCheckError("coannulets not a sublattice of the skeleton")
    return skel


@dataclass(frozen=True)
class BaerRickart:
    baer: bool
    rickart: bool


def classify_baer_rickart(lat: ResiduatedLattice) -> BaerRickart:
    """Baer: the skeleton join agrees with the filter join on coannihilators.
    Rickart: the coannulets are closed under the filter join and each has a
    complement among the coannulets."""
    skel = skeleton(lat)
    baer = all(
        skel._skel_join(f, g) == filter_join(lat, f, g)
        for f in skel.members
        for g in skel.members
    )
    gamma = set(skel.coannulets)
    one = 1 << lat.top
    rickart = all(
        filter_join(lat, f, g) in gamma for f in gamma for g in gamma
    ) and all(
        any(
            f & g == one and filter_join(lat, f, g) == lat.full_mask
            for g in gamma
        )
        for f in gamma
    )
    return BaerRickart(baer=baer, rickart=rickart)
