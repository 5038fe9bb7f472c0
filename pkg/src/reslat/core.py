"""Finite residuated lattices as validated operation tables.

A residuated lattice is a bounded lattice carrying a commutative monoid
whose unit is the top element, such that the monoid operation ``odot``
and the residuum ``imp`` form an adjoint pair:

    odot(x, a) <= y   iff   a <= imp(x, y)

Everything is table driven: elements are the indices 0..n-1 and subsets
of the carrier are bitmasks (bit i set = element i belongs to the set).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


# ---------------------------------------------------------------------------
# bitmask helpers


def bits(mask: int) -> Iterator[int]:
    """Yield the element indices of a bitmask in increasing order."""
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


# ---------------------------------------------------------------------------
# errors


class StructureError(ValueError):
    """Raw tables are malformed: wrong dimensions or out-of-range entries."""


class ContractError(ValueError):
    """A documented precondition was violated by the caller."""


class InternalCheckError(AssertionError):
    """Two redundant computations of the same quantity disagreed."""


class ResiduumError(ValueError):
    """imp(x, y) cannot be realised as the greatest a with odot(x, a) <= y."""

    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"residuum not realised at ({x}, {y})")


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]

    def render(self, labels: Sequence[str]) -> str:
        if self.valid:
            return "valid"
        lines = []
        for v in self.violations:
            names = ", ".join(labels[i] for i in v.witness)
            lines.append(f"{v.axiom}: ({names})")
        return "\n".join(lines)


def _report(violations: list[Violation]) -> ValidationReport:
    return ValidationReport(valid=not violations, violations=tuple(violations))


class ValidationFailed(ValueError):
    """An operation required a valid residuated lattice but the axioms fail."""

    def __init__(self, report: ValidationReport, message: str = "axioms violated"):
        self.report = report
        super().__init__(f"{message}: {[v.axiom for v in report.violations]}")


# ---------------------------------------------------------------------------
# the main data type


@dataclass(frozen=True)
class ResiduatedLattice:
    """Operation tables of a finite residuated lattice.

    ``up[x]`` is the bitmask of elements above x (including x itself); it
    encodes the order relation.  ``join``, ``meet``, ``odot`` and ``imp``
    are full n x n tables.  The structure is not necessarily valid:
    ``validate_axioms`` reports which axioms hold.
    """

    labels: tuple[str, ...]
    up: tuple[int, ...]
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    odot: tuple[tuple[int, ...], ...]
    imp: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def down(self, x: int) -> int:
        """Bitmask of elements below x (including x)."""
        m = 0
        for y in range(len(self.labels)):
            if self.up[y] >> x & 1:
                m |= 1 << y
        return m

    def label_set(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def __repr__(self) -> str:
        return f"ResiduatedLattice({','.join(self.labels)})"


def _check_table(name: str, table: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    if len(table) != n:
        raise StructureError(f"{name}: expected {n} rows, got {len(table)}")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise StructureError(f"{name}[{i}]: expected {n} entries, got {len(row)}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise StructureError(f"{name}[{i}][{j}]: entry {v!r} out of range 0..{n - 1}")
        rows.append(tuple(row))
    return tuple(rows)


def from_tables(
    labels: Sequence[str],
    leq: Sequence[Sequence[object]],
    join: Sequence[Sequence[int]],
    meet: Sequence[Sequence[int]],
    odot: Sequence[Sequence[int]],
    imp: Sequence[Sequence[int]],
    bottom: int,
    top: int,
) -> ResiduatedLattice:
    """Assemble a lattice from raw tables, checking structure only.

    Axioms are deliberately not checked here so that ``validate_axioms``
    can report on arbitrary candidate tables.
    """
    n = len(labels)
    if n == 0:
        raise StructureError("empty carrier")
    if len(set(labels)) != n:
        raise StructureError("labels are not unique")
    if len(leq) != n:
        raise StructureError(f"leq: expected {n} rows, got {len(leq)}")
    up = []
    for i, row in enumerate(leq):
        if len(row) != n:
            raise StructureError(f"leq[{i}]: expected {n} entries, got {len(row)}")
        up.append(mask_of(j for j, v in enumerate(row) if v))
    if not 0 <= bottom < n or not 0 <= top < n:
        raise StructureError("bottom/top index out of range")
    return ResiduatedLattice(
        labels=tuple(labels),
        up=tuple(up),
        join=_check_table("join", join, n),
        meet=_check_table("meet", meet, n),
        odot=_check_table("odot", odot, n),
        imp=_check_table("imp", imp, n),
        bottom=bottom,
        top=top,
    )


# ---------------------------------------------------------------------------
# deriving tables from an order


def bounded_lattice_ops(up: Sequence[int]) -> tuple[int, int, tuple, tuple]:
    """Derive (bottom, top, join, meet) from an order given as up-masks.

    Raises ValidationFailed listing every pair without a least upper or
    greatest lower bound, and every missing bound of the order itself.
    """
    n = len(up)
    violations: list[Violation] = []
    full = (1 << n) - 1
    bottoms = [x for x in range(n) if up[x] == full]
    down = [mask_of(y for y in range(n) if up[y] >> x & 1) for x in range(n)]
    tops = [x for x in range(n) if down[x] == full]
    if len(bottoms) != 1:
        violations.append(Violation("no-bottom", tuple(bottoms[:2])))
    if len(tops) != 1:
        violations.append(Violation("no-top", tuple(tops[:2])))
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            ubs = up[x] & up[y]
            least = [u for u in bits(ubs) if is_subset(ubs, up[u])]
            if len(least) != 1:
                if x <= y:
                    violations.append(Violation("lub-missing", (x, y)))
                continue
            join[x][y] = least[0]
    for x in range(n):
        for y in range(n):
            lbs = down[x] & down[y]
            greatest = [u for u in bits(lbs) if is_subset(lbs, down[u])]
            if len(greatest) != 1:
                if x <= y:
                    violations.append(Violation("glb-missing", (x, y)))
                continue
            meet[x][y] = greatest[0]
    if violations:
        raise ValidationFailed(_report(violations), "order is not a bounded lattice")
    return bottoms[0], tops[0], tuple(map(tuple, join)), tuple(map(tuple, meet))


def derive_residuum(
    up: Sequence[int], join: Sequence[Sequence[int]], odot: Sequence[Sequence[int]]
) -> tuple[tuple[int, ...], ...]:
    """Compute imp(x, y) as the join of {a | odot(x, a) <= y}.

    Raises ResiduumError naming (x, y) when that join falls outside the
    candidate set, i.e. adjointness cannot hold for any imp table.
    """
    n = len(up)
    imp = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            cand = [a for a in range(n) if up[odot[x][a]] >> y & 1]
            j = cand[0] if cand else None
            if j is None:
                raise ResiduumError(x, y)
            for a in cand[1:]:
                j = join[j][a]
            if not up[odot[x][j]] >> y & 1:
                raise ResiduumError(x, y)
            imp[x][y] = j
    return tuple(map(tuple, imp))


def from_order(
    labels: Sequence[str],
    leq: Sequence[Sequence[object]],
    odot: Sequence[Sequence[int]],
    imp: Sequence[Sequence[int]] | None = None,
) -> ResiduatedLattice:
    """Build a lattice from an order relation and a product table.

    join/meet are derived from the order and imp from the product when it
    is not supplied.  Structural problems raise StructureError; a
    non-lattice order or unrealisable residuum raises ValidationFailed.
    """
    n = len(labels)
    up = []
    if len(leq) != n:
        raise StructureError(f"leq: expected {n} rows, got {len(leq)}")
    for i, row in enumerate(leq):
        if len(row) != n:
            raise StructureError(f"leq[{i}]: expected {n} entries, got {len(row)}")
        up.append(mask_of(j for j, v in enumerate(row) if v))
    bottom, top, join, meet = bounded_lattice_ops(up)
    odot_t = _check_table("odot", odot, n)
    if imp is None:
        try:
            imp_t = derive_residuum(up, join, odot_t)
        except ResiduumError as exc:
            raise ValidationFailed(
                _report([Violation("residuum-not-realised", exc.pair)]),
                "no residuum exists for this product",
            ) from exc
    else:
        imp_t = _check_table("imp", imp, n)
    leq_rows = [[bool(up[i] >> j & 1) for j in range(n)] for i in range(n)]
    return from_tables(labels, leq_rows, join, meet, odot_t, imp_t, bottom, top)


# ---------------------------------------------------------------------------
# axiom checking


def validate_axioms(lat: ResiduatedLattice) -> ValidationReport:
    """Exhaustively check every axiom, recording one minimal witness each.

    The scan has no early exit: every violated axiom appears in the
    report with its lexicographically first witness tuple.  Two derivable
    laws are cross-checked as sanity conditions: the product distributes
    over joins, and join(x, odot(y, z)) >= odot(join(x, y), join(x, z)).
    """
    n = lat.size
    found: dict[str, tuple[int, ...]] = {}

    def hit(axiom: str, *witness: int) -> None:
        if axiom not in found:
            found[axiom] = witness

    leq = lat.leq
    join, meet, odot, imp = lat.join, lat.meet, lat.odot, lat.imp

    for x in range(n):
        if not leq(x, x):
            hit("leq-reflexive", x)
    for x in range(n):
        for y in range(n):
            if x != y and leq(x, y) and leq(y, x):
                hit("leq-antisymmetric", x, y)
    for x in range(n):
        for y in range(n):
            if not leq(x, y):
                continue
            for z in range(n):
                if leq(y, z) and not leq(x, z):
                    hit("leq-transitive", x, y, z)
    for x in range(n):
        if not leq(lat.bottom, x):
            hit("bottom-least", x)
        if not leq(x, lat.top):
            hit("top-greatest", x)
    for x in range(n):
        for y in range(n):
            j = join[x][y]
            if not (leq(x, j) and leq(y, j)):
                hit("join-lub", x, y)
            else:
                for z in range(n):
                    if leq(x, z) and leq(y, z) and not leq(j, z):
                        hit("join-lub", x, y)
                        break
            m = meet[x][y]
            if not (leq(m, x) and leq(m, y)):
                hit("meet-glb", x, y)
            else:
                for z in range(n):
                    if leq(z, x) and leq(z, y) and not leq(z, m):
                        hit("meet-glb", x, y)
                        break
    for x in range(n):
        for y in range(n):
            if odot[x][y] != odot[y][x]:
                hit("odot-commutative", x, y)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if odot[odot[x][y]][z] != odot[x][odot[y][z]]:
                    hit("odot-associative", x, y, z)
    for x in range(n):
        if odot[lat.top][x] != x:
            hit("odot-identity", x)
        if odot[x][lat.bottom] != lat.bottom:
            hit("odot-bottom", x)
    for x in range(n):
        for a in range(n):
            for y in range(n):
                if leq(odot[x][a], y) != leq(a, imp[x][y]):
                    hit("adjointness", x, a, y)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if odot[x][join[y][z]] != join[odot[x][y]][odot[x][z]]:
                    hit("odot-join-distributive", x, y, z)
                if not leq(odot[join[x][y]][join[x][z]], join[x][odot[y][z]]):
                    hit("join-odot-inequality", x, y, z)

    order = [
        "leq-reflexive", "leq-antisymmetric", "leq-transitive",
        "bottom-least", "top-greatest", "join-lub", "meet-glb",
        "odot-commutative", "odot-associative", "odot-identity", "odot-bottom",
        "adjointness", "odot-join-distributive", "join-odot-inequality",
    ]
    violations = [Violation(a, found[a]) for a in order if a in found]
    return _report(violations)


def require_valid(lat: ResiduatedLattice) -> ResiduatedLattice:
    report = validate_axioms(lat)
    if not report.valid:
        raise ValidationFailed(report)
    return lat


# ---------------------------------------------------------------------------
# element-level derived operations


def negation(lat: ResiduatedLattice, x: int) -> int:
    """imp(x, bottom)."""
    return lat.imp[x][lat.bottom]


def boolean_center(lat: ResiduatedLattice) -> int:
    """Bitmask of the complemented idempotents: e with e v ~e = 1 and e.e = e."""
    out = 0
    for e in range(lat.size):
        if lat.join[e][negation(lat, e)] == lat.top and lat.odot[e][e] == e:
            out |= 1 << e
    return out
