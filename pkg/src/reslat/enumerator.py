"""Exhaustive isomorph-free enumeration of finite residuated lattices.

Bounded lattices are generated by backtracking over strict down-sets in
linear-extension order, pruning any prefix in which some pair acquires
two incomparable minimal common upper bounds (or maximal common lower
bounds); such a defect can never be repaired later.  Products are filled
cell by cell with monotonicity, associativity and join-distributivity
propagated over the filled prefix.  Isomorph rejection uses the
lexicographically minimal table under relabelings fixing bottom and top.

A brute-force oracle (naive_residuated) covers orders up to four for
cross-validation and is kept free of the fast path's pruning logic.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations

from .core import (
    ContractError,
    InternalCheckError,
    ResiduatedLattice,
    bits,
    bounded_lattice_ops,
    derive_residuum,
    from_order,
    is_subset,
    validate_axioms,
)

DEFAULT_CAP = 8
WORKERS_ENV = "RESLAT_THREADS"


def _labels(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("1",)
    middle = tuple(chr(ord("a") + i) for i in range(n - 2))
    return ("0",) + middle + ("1",)


# ---------------------------------------------------------------------------
# bounded lattices


def _middle_perms(n: int):
    """Permutations of 0..n-1 fixing bottom 0 and top n-1."""
    if n <= 2:
        yield tuple(range(n))
        return
    for mid in permutations(range(1, n - 1)):
        yield (0,) + mid + (n - 1,)


def _relabeled_rows(up: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    n = len(up)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    rows = []
    for i in range(n):
        row = 0
        old_row = up[inv[i]]
        for j in range(n):
            if old_row >> inv[j] & 1:
                row |= 1 << j
        rows.append(row)
    return tuple(rows)


def lattice_canonical(up: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least up-mask rows over relabelings fixing 0, n-1."""
    best = None
    for perm in _middle_perms(len(up)):
        cand = _relabeled_rows(up, perm)
        if best is None or cand < best:
            best = cand
    return best


def lattice_automorphisms(up: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(
        perm for perm in _middle_perms(len(up)) if _relabeled_rows(up, perm) == up
    )


def bounded_lattices(n: int, cap: int = DEFAULT_CAP) -> tuple[tuple[int, ...], ...]:
    """All bounded lattices on n elements up to isomorphism, as up-mask rows.

    Element 0 is the bottom and n-1 the top; output rows are canonical
    representatives in a deterministic order.
    """
    if not 1 <= n <= cap:
        raise ContractError(f"order must be between 1 and {cap}")
    if n == 1:
        return ((1,),)
    found: set[tuple[int, ...]] = set()
    below = [1]  # below[i] = mask of elements <= i, including i

    def pairs_ok(k: int) -> bool:
        # incomparable minimal common upper bounds, or maximal common lower
        # bounds, can never be merged by later elements
        above = [0] * (k + 1)
        for j in range(k + 1):
            for i in range(k + 1):
                if below[j] >> i & 1:
                    above[i] |= 1 << j
        for x in range(k + 1):
            for y in range(x + 1, k + 1):
                ubs = above[x] & above[y]
                minimal = 0
                for u in bits(ubs):
                    if not ubs & (below[u] ^ (1 << u)):
                        minimal += 1
                        if minimal > 1:
                            return False
                lbs = below[x] & below[y]
                maximal = 0
                for v in bits(lbs):
                    if not lbs & (above[v] ^ (1 << v)):
                        maximal += 1
                        if maximal > 1:
                            return False
        return True

    def extend(i: int) -> None:
        if i == n:
            up = tuple(
                sum(1 << j for j in range(n) if below[j] >> x & 1) for x in range(n)
            )
            found.add(lattice_canonical(up))
            return
        if i == n - 1:
            candidates = [(1 << i) - 1]
        else:
            candidates = []
            prefix_full = (1 << i) - 1
            for d in range(1, prefix_full + 1):
                if not d & 1:
                    continue
                if all(is_subset(below[j], d) for j in bits(d)):
                    candidates.append(d)
        for d in candidates:
            below.append(d | 1 << i)
            if pairs_ok(i):
                extend(i + 1)
            below.pop()

    extend(1)
    return tuple(sorted(found))


# ---------------------------------------------------------------------------
# product tables on a fixed lattice


def residuated_products(up: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All products making the lattice residuated, up to lattice automorphism.

    Emitted as full n x n tables in a deterministic order, one canonical
    representative per automorphism orbit.
    """
    n = len(up)
    bottom, top, join, meet = bounded_lattice_ops(up)
    down = [sum(1 << j for j in range(n) if up[j] >> i & 1) for i in range(n)]
    auts = lattice_automorphisms(up)
    cells = [(i, j) for i in range(1, n - 1) for j in range(i, n - 1)]
    row_end = {i: max(j for k, j in cells if k == i) for i, _ in cells} if cells else {}
    table: dict[tuple[int, int], int] = {}

    def get(x: int, y: int) -> int | None:
        if x == bottom or y == bottom:
            return bottom
        if x == top:
            return y
        if y == top:
            return x
        return table.get((x, y) if x <= y else (y, x))

    def leq(x: int, y: int) -> bool:
        return bool(up[x] >> y & 1)

    def consistent(i: int, j: int, v: int) -> bool:
        for a in range(n):
            for b in range(n):
                w = get(a, b)
                if w is None:
                    continue
                if leq(a, i) and leq(b, j) and not leq(w, v):
                    return False
                if leq(i, a) and leq(j, b) and not leq(v, w):
                    return False
        for x in range(n):
            for y in range(n):
                txy = get(x, y)
                for z in range(n):
                    tyz = get(y, z)
                    l = get(txy, z) if txy is not None else None
                    r = get(x, tyz) if tyz is not None else None
                    if l is not None and r is not None and l != r:
                        return False
                    txz = get(x, z)
                    if txy is not None and txz is not None:
                        t = get(x, join[y][z])
                        if t is not None and t != join[txy][txz]:
                            return False
        return True

    def prefix_key(upto: int) -> tuple[int, ...]:
        return tuple(table[c] for c in cells[: upto + 1])

    def relabeled_prefix(perm: tuple[int, ...], upto: int) -> tuple[int, ...] | None:
        inv = [0] * n
        for a, p in enumerate(perm):
            inv[p] = a
        out = []
        for x, y in cells[: upto + 1]:
            w = get(inv[x], inv[y])
            if w is None:
                return None
            out.append(perm[w])
        return tuple(out)

    def dominated(ci: int, i: int) -> bool:
        filled = set(range(1, i + 1))
        cur = prefix_key(ci)
        for perm in auts:
            if perm == tuple(range(n)):
                continue
            if {perm[x] for x in filled} != filled:
                continue
            rel = relabeled_prefix(perm, ci)
            if rel is not None and rel < cur:
                return True
        return False

    results: list[tuple[tuple[int, ...], ...]] = []

    def full_table() -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(get(x, y) for y in range(n)) for x in range(n))

    def canonical_product(tab) -> tuple[int, ...]:
        best = None
        for perm in auts:
            inv = [0] * n
            for a, p in enumerate(perm):
                inv[p] = a
            cand = tuple(perm[tab[inv[x]][inv[y]]] for x in range(n) for y in range(n))
            if best is None or cand < best:
                best = cand
        return best

    def fill(ci: int) -> None:
        if ci == len(cells):
            tab = full_table()
            flat = tuple(tab[x][y] for x in range(n) for y in range(n))
            if canonical_product(tab) == flat:
                results.append(tab)
            return
        i, j = cells[ci]
        for v in bits(down[meet[i][j]]):
            table[(i, j)] = v
            if consistent(i, j, v):
                if j != row_end.get(i) or not dominated(ci, i):
                    fill(ci + 1)
            del table[(i, j)]

    fill(0)
    results.sort(key=lambda tab: tuple(v for row in tab for v in row))
    return tuple(results)


def _build(up: tuple[int, ...], odot) -> ResiduatedLattice:
    n = len(up)
    leq = [[bool(up[i] >> j & 1) for j in range(n)] for i in range(n)]
    lat = from_order(_labels(n), leq, odot)
    report = validate_axioms(lat)
    if not report.valid:
        raise InternalCheckError(f"enumerated lattice fails validation: {report}")
    return lat


def _extension_worker(up: tuple[int, ...]) -> tuple:
    return residuated_products(up)


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def enumerate_residuated(
    n: int, workers: int | None = None, cap: int = DEFAULT_CAP
) -> tuple[ResiduatedLattice, ...]:
    """All residuated lattices of order n up to isomorphism.

    Work is split across processes by underlying lattice; results are
    gathered and emitted in a canonical order that does not depend on the
    worker count.
    """
    lattices = bounded_lattices(n, cap)
    w = min(worker_count(workers), len(lattices))
    if w <= 1:
        products = [residuated_products(up) for up in lattices]
    else:
        with ProcessPoolExecutor(max_workers=w) as pool:
            products = list(pool.map(_extension_worker, lattices))
    out = []
    for up, tabs in zip(lattices, products):
        for tab in tabs:
            out.append(_build(up, tab))
    return tuple(out)


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class CensusRow:
    order: int
    lattices: int
    residuated: int
    mp: int
    rickart: int
    baer: int
    domains: int


def census(n_max: int, workers: int | None = None, cap: int = DEFAULT_CAP) -> tuple[CensusRow, ...]:
    from .coann import classify_baer_rickart
    from .filters import is_domain
    from .mp import mp_check

    rows = []
    for n in range(1, n_max + 1):
        lattice_count = len(bounded_lattices(n, cap))
        mp_count = rickart = baer = domains = residuated = 0
        for lat in enumerate_residuated(n, workers, cap):
            residuated += 1
            if mp_check(lat).final:
                mp_count += 1
            cls = classify_baer_rickart(lat)
            rickart += cls.rickart
            baer += cls.baer
            domains += is_domain(lat)[0]
        rows.append(
            CensusRow(n, lattice_count, residuated, mp_count, rickart, baer, domains)
        )
    return tuple(rows)


# ---------------------------------------------------------------------------
# the brute-force oracle


def full_canonical_key(lat: ResiduatedLattice) -> tuple:
    """Isomorphism key over all permutations: least (order bits, product bits)."""
    n = lat.size
    best = None
    for perm in permutations(range(n)):
        leq_bits = tuple(
            1 if lat.leq(perm.index(x), perm.index(y)) else 0
            for x in range(n)
            for y in range(n)
        )
        odot_bits = tuple(
            perm[lat.odot[perm.index(x)][perm.index(y)]]
            for x in range(n)
            for y in range(n)
        )
        cand = (leq_bits, odot_bits)
        if best is None or cand < best:
            best = cand
    return best


def naive_bounded_orders(n: int) -> list[tuple[int, ...]]:
    """Every labeled bounded-lattice order on n elements, by brute force."""
    if n > 4:
        raise ContractError("naive order scan capped at 4 elements")
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    orders = []
    for choice in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        ok = True
        for k, (i, j) in enumerate(pairs):
            if choice >> k & 1:
                up[i] |= 1 << j
        for i, j in pairs:
            if up[i] >> j & 1 and up[j] >> i & 1:
                ok = False
                break
        if not ok:
            continue
        for i in range(n):
            for j in range(n):
                if up[i] >> j & 1 and up[j] & ~up[i]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        try:
            bounded_lattice_ops(tuple(up))
        except Exception:
            continue
        orders.append(tuple(up))
    return orders


def naive_residuated(n: int) -> list[ResiduatedLattice]:
    """Brute-force all products over all bounded orders, filtered by the
    axiom checker and deduplicated by a full permutation scan.

    Deliberately shares none of the fast path's propagation or canonical
    pruning; cost is roughly n to the n squared, so the order is capped.
    """
    if n > 4:
        raise ContractError("naive oracle capped at 4 elements")
    out: dict[tuple, ResiduatedLattice] = {}
    for up in naive_bounded_orders(n):
        bottom, top, join, meet = bounded_lattice_ops(up)
        cells = [(i, j) for i in range(n) for j in range(n)]
        odot = [[None] * n for _ in range(n)]

        def leaf() -> None:
            try:
                imp = derive_residuum(up, join, odot)
            except Exception:
                return
            leq = [[bool(up[i] >> j & 1) for j in range(n)] for i in range(n)]
            lat = from_order(_labels(n), leq, [list(r) for r in odot], imp)
            if not validate_axioms(lat).valid:
                return
            key = full_canonical_key(lat)
            if key not in out:
                out[key] = lat

        def fill(ci: int) -> None:
            if ci == len(cells):
                leaf()
                return
            i, j = cells[ci]
            for v in range(n):
                if i > j and odot[j][i] != v:
                    continue
                if (i == bottom or j == bottom) and v != bottom:
                    continue
                if i == top and v != j:
                    continue
                if j == top and v != i:
                    continue
                odot[i][j] = v
                fill(ci + 1)
                odot[i][j] = None

        fill(0)
    return [out[k] for k in sorted(out)]
