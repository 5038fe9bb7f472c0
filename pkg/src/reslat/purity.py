"""Lattice ideals, omega-filters, pure filters and the pure spectrum.

A filter F is pure when it equals its pure core, the set of elements
whose coannulet is comaximal with F; equivalently the kernel of the
generalization of the hull of F.  Both routes are always computed and
compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .core import (
    ContractError,
    InternalCheckError,
    ResiduatedLattice,
    bits,
    is_subset,
)
from .filters import all_filters, canonical_sort, filter_join, is_filter
from .spectra import (
    FiniteTopology,
    generalization,
    hull,
    hull_kernel_topology,
    kernel,
    prime_spectrum,
)
from .coann import coannulet


# ---------------------------------------------------------------------------
# ideals of the lattice reduct


def is_lattice_ideal(lat: ResiduatedLattice, subset: int) -> bool:
    if subset == 0:
        return False
    down = 0
    for x in bits(subset):
        down |= lat.down(x)
    if down != subset:
        return False
    els = list(bits(subset))
    return all(subset >> lat.join[x][y] & 1 for x in els for y in els)


@cache
def lattice_ideals(lat: ResiduatedLattice) -> tuple[int, ...]:
    """All non-empty down-closed join-closed subsets of the lattice reduct.

    In a finite lattice every ideal is the down-set of its largest
    element, so the principal down-sets exhaust them.
    """
    return canonical_sort({lat.down(x) for x in range(lat.size)})


def ideal_join(lat: ResiduatedLattice, i: int, j: int) -> int:
    """Join in the ideal lattice: down-closure of the pairwise joins."""
    out = 0
    for x in bits(i):
        row = lat.join[x]
        for y in bits(j):
            out |= lat.down(row[y])
    return out


# ---------------------------------------------------------------------------
# omega-filters


def omega_filter(lat: ResiduatedLattice, ideal: int) -> int:
    """{a | a v x = top for some x in the ideal}; join-closedness suffices."""
    if ideal == 0:
        raise ContractError("omega_filter: ideal must be non-empty")
    out = 0
    for a in range(lat.size):
        row = lat.join[a]
        if any(row[x] == lat.top for x in bits(ideal)):
            out |= 1 << a
    if not is_filter(lat, out):
        raise InternalCheckError("omega of an ideal must be a filter")
    return out


def divisor_filter(lat: ResiduatedLattice, prime: int) -> int:
    """Elements joining to top with something outside the prime.

    Defined only for primes, whose complement is join closed.  The result
    is cross-checked against the kernel of the generalization of the
    prime, both over all primes and over the minimal ones.
    """
    spec = prime_spectrum(lat)
    if prime not in spec.index:
        raise ContractError("divisor_filter: input must be a prime filter")
    complement = lat.full_mask & ~prime
    d = omega_filter(lat, complement)
    i = spec.index[prime]
    via_all = kernel(lat, spec.below[i])
    via_min = kernel(lat, spec.below[i] & spec.minimal_mask)
    if d != via_all or d != via_min:
        raise InternalCheckError(
            "divisor filter disagrees with the kernel of the generalization"
        )
    return d


class OmegaLattice:
    """The omega-filters with their representative-independent join."""

    def __init__(self, lat: ResiduatedLattice):
        self.lattice = lat
        ideals = lattice_ideals(lat)
        reps: dict[int, list[int]] = {}
        for i in ideals:
            reps.setdefault(omega_filter(lat, i), []).append(i)
        self.members = canonical_sort(reps)
        self.representatives = {f: tuple(rs) for f, rs in reps.items()}
        self.index = {f: i for i, f in enumerate(self.members)}
        m = len(self.members)
        table = []
        for a in range(m):
            row = []
            for b in range(m):
                row.append(self.index[self.vee(self.members[a], self.members[b])])
            table.append(tuple(row))
        self.vee_table = tuple(table)
        for f in self.members:
            for g in self.members:
                if f & g not in self.index:
                    raise InternalCheckError("omega-filters not closed under meet")

    def vee(self, f: int, g: int) -> int:
        """omega of the ideal join of representatives, checked across all."""
        lat = self.lattice
        results = {
            omega_filter(lat, ideal_join(lat, i, j))
            for i in self.representatives[f]
            for j in self.representatives[g]
        }
        if len(results) != 1:
            raise InternalCheckError(
                f"omega join depends on representatives for {lat.label_set(f)}"
                f" and {lat.label_set(g)}"
            )
        out = results.pop()
        if out not in self.index and out not in self.representatives:
            raise InternalCheckError("omega join left the omega-filters")
        return out


@cache
def omega_lattice(lat: ResiduatedLattice) -> OmegaLattice:
    return OmegaLattice(lat)


# ---------------------------------------------------------------------------
# the pure core and pure filters


def pure_core(lat: ResiduatedLattice, f: int) -> int:
    """Elements whose coannulet is comaximal with f.

    Computed both as {a | f join coannulet(a) = A} and as the kernel of
    the generalization of the hull of f; a mismatch is an internal error.
    """
    if not is_filter(lat, f):
        raise ContractError("pure_core: input must be a filter")
    elementwise = 0
    for a in range(lat.size):
        if filter_join(lat, f, coannulet(lat, a)) == lat.full_mask:
            elementwise |= 1 << a
    via_primes = kernel(lat, generalization(lat, hull(lat, f)))
    if elementwise != via_primes:
        raise InternalCheckError(
            f"pure core mismatch on {lat.label_set(f)}: "
            f"{lat.label_set(elementwise)} vs {lat.label_set(via_primes)}"
        )
    return elementwise


class PureSpectrum:
    """Pure filters, the purely-maximal and purely-prime ones, and the
    topology on the purely-prime filters with opens {P | F not <= P}."""

    def __init__(self, lat: ResiduatedLattice):
        self.lattice = lat
        self.pure = tuple(f for f in all_filters(lat) if pure_core(lat, f) == f)
        one = 1 << lat.top
        if one not in self.pure or lat.full_mask not in self.pure:
            raise InternalCheckError("the one filter and the carrier must be pure")
        proper = [f for f in self.pure if f != lat.full_mask]
        self.purely_maximal = tuple(
            f for f in proper
            if not any(g != f and is_subset(f, g) for g in proper)
        )
        self.purely_prime = tuple(
            p for p in proper
            if all(
                not is_subset(f1 & f2, p) or is_subset(f1, p) or is_subset(f2, p)
                for f1 in self.pure
                for f2 in self.pure
            )
        )
        for f in self.purely_maximal:
            if f not in self.purely_prime:
                raise InternalCheckError("purely-maximal must be purely-prime")
        self.topology = self._build_topology()

    def _build_topology(self) -> FiniteTopology:
        lat = self.lattice
        points = self.purely_prime
        k = len(points)
        full = (1 << k) - 1
        subbasic = [
            sum(1 << i for i in range(k) if not is_subset(f, points[i]))
            for f in self.pure
        ]
        min_nbhd = []
        for i in range(k):
            nb = full
            for u in subbasic:
                if u >> i & 1:
                    nb &= u
            min_nbhd.append(nb)
        top = FiniteTopology(
            space="spp", variant="pure", point_filters=points, min_nbhd=tuple(min_nbhd)
        )
        closed = set(top.closed_sets())
        hulls = {
            sum(1 << i for i in range(k) if is_subset(f, points[i]))
            for f in self.pure
        }
        if closed != hulls:
            raise InternalCheckError(
                "closed sets of the pure spectrum are not the pure hulls"
            )
        return top


@cache
def pure_spectrum(lat: ResiduatedLattice) -> PureSpectrum:
    return PureSpectrum(lat)


def pure_part(lat: ResiduatedLattice, f: int) -> int:
    """Join of all pure filters inside f; the largest pure filter in it."""
    if not is_filter(lat, f):
        raise ContractError("pure_part: input must be a filter")
    ps = pure_spectrum(lat)
    out = 1 << lat.top
    for g in ps.pure:
        if is_subset(g, f):
            out = filter_join(lat, out, g)
    if pure_core(lat, out) != out:
        raise InternalCheckError(
            "join of pure filters failed to be pure "
            f"(witness {lat.label_set(out)} inside {lat.label_set(f)})"
        )
    return out


def pure_envelope(lat: ResiduatedLattice, a: int) -> int:
    """Intersection of the pure parts of the maximal filters containing a.

    The empty intersection is the whole carrier.
    """
    spec = prime_spectrum(lat)
    out = lat.full_mask
    for i in spec.maximal:
        if spec.primes[i] >> a & 1:
            out &= pure_part(lat, spec.primes[i])
    return out


@dataclass(frozen=True)
class IdentityCheck:
    bijective: bool
    homeomorphism: bool


def pure_min_identity(lat: ResiduatedLattice) -> IdentityCheck:
    """Compare the pure spectrum with the minimal primes in the dual topology.

    The identity map is a homeomorphism exactly when the two point sets
    coincide and carry identical minimal neighbourhoods.
    """
    ps = pure_spectrum(lat)
    spec = prime_spectrum(lat)
    mins = tuple(spec.primes[i] for i in spec.minimal)
    if set(ps.purely_prime) != set(mins):
        return IdentityCheck(bijective=False, homeomorphism=False)
    min_top = hull_kernel_topology(lat, "min", "dual")
    spp_top = ps.topology
    pos_min = {f: i for i, f in enumerate(min_top.point_filters)}
    for i, f in enumerate(spp_top.point_filters):
        image = sum(
            1 << pos_min[spp_top.point_filters[j]] for j in bits(spp_top.min_nbhd[i])
        )
        if image != min_top.min_nbhd[pos_min[f]]:
            return IdentityCheck(bijective=True, homeomorphism=False)
    return IdentityCheck(bijective=True, homeomorphism=True)
