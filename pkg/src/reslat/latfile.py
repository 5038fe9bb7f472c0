"""The lattice file format, canonical serialization and DOT export.

A document is a JSON object with keys name, size, labels, order (cover
pairs by label, lower element first), odot (full table of labels, row =
left operand) and optionally imp.  Canonical form: sorted keys, two-space
indent, LF line endings, labels in index order with the bottom first and
the top last.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .core import (
    ResiduatedLattice,
    ValidationFailed,
    ValidationReport,
    Violation,
    bits,
    from_order,
    validate_axioms,
)

DOCUMENT_KEYS = {"name", "size", "labels", "order", "odot", "imp"}
REQUIRED_KEYS = {"name", "size", "labels", "order", "odot"}


class LatticeFormatError(ValueError):
    """The document does not follow the schema; the message names the spot."""


@dataclass(frozen=True)
class LatticeDocument:
    name: str
    lattice: ResiduatedLattice


def _expect(condition: bool, where: str, problem: str) -> None:
    if not condition:
        raise LatticeFormatError(f"{where}: {problem}")


def parse_document(text: str) -> LatticeDocument:
    """Parse and validate a lattice document.

    Schema problems raise LatticeFormatError naming the offending cell;
    axiom failures raise ValidationFailed embedding the validation report.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LatticeFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    _expect(isinstance(doc, dict), "document", "must be a JSON object")
    unknown = set(doc) - DOCUMENT_KEYS
    _expect(not unknown, "document", f"unknown keys {sorted(unknown)}")
    missing = REQUIRED_KEYS - set(doc)
    _expect(not missing, "document", f"missing keys {sorted(missing)}")

    name = doc["name"]
    _expect(isinstance(name, str) and name != "", "name", "must be a non-empty string")
    labels = doc["labels"]
    _expect(
        isinstance(labels, list) and all(isinstance(s, str) and s for s in labels),
        "labels", "must be a list of non-empty strings",
    )
    n = len(labels)
    _expect(doc["size"] == n, "size", f"must equal the number of labels ({n})")
    _expect(len(set(labels)) == n, "labels", "must be unique")
    pos = {s: i for i, s in enumerate(labels)}

    _expect(isinstance(doc["order"], list), "order", "must be a list of cover pairs")
    covers = []
    for k, pair in enumerate(doc["order"]):
        _expect(
            isinstance(pair, list) and len(pair) == 2,
            f"order[{k}]", "must be a [lower, upper] pair",
        )
        for s in pair:
            _expect(s in pos, f"order[{k}]", f"unknown label {s!r}")
        lo, hi = pos[pair[0]], pos[pair[1]]
        _expect(lo != hi, f"order[{k}]", "a cover pair cannot be reflexive")
        covers.append((lo, hi))

    reach = [1 << i for i in range(n)]
    for lo, hi in covers:
        reach[lo] |= 1 << hi
    for _ in range(n):
        for i in range(n):
            acc = reach[i]
            for j in bits(reach[i]):
                acc |= reach[j]
            reach[i] = acc
    for i in range(n):
        for j in bits(reach[i]):
            if i != j and reach[j] >> i & 1:
                raise LatticeFormatError(
                    f"order: cover pairs form a cycle through {labels[i]!r}"
                )
    leq = [[bool(reach[i] >> j & 1) for j in range(n)] for i in range(n)]

    def table(key: str) -> list[list[int]]:
        raw = doc[key]
        _expect(isinstance(raw, list) and len(raw) == n, key, f"must have {n} rows")
        rows = []
        for i, row in enumerate(raw):
            _expect(
                isinstance(row, list) and len(row) == n,
                f"{key}[{i}]", f"must have {n} entries",
            )
            out = []
            for j, s in enumerate(row):
                _expect(s in pos, f"{key}[{i}][{j}]", f"unknown label {s!r}")
                out.append(pos[s])
            rows.append(out)
        return rows

    odot = table("odot")
    lat = from_order(labels, leq, odot)
    report = validate_axioms(lat)
    if not report.valid:
        raise ValidationFailed(report)
    if "imp" in doc:
        given = table("imp")
        for x in range(n):
            for y in range(n):
                if given[x][y] != lat.imp[x][y]:
                    raise ValidationFailed(
                        ValidationReport(False, (Violation("imp-mismatch", (x, y)),)),
                        "imp table does not match the derived residuum",
                    )
    return LatticeDocument(name=name, lattice=lat)


def parse_lattice(text: str) -> ResiduatedLattice:
    return parse_document(text).lattice


# ---------------------------------------------------------------------------
# serialization


def _canonical_permutation(lat: ResiduatedLattice) -> list[int]:
    """Old index per new position: bottom first, top last, rest in order."""
    middle = [i for i in range(lat.size) if i not in (lat.bottom, lat.top)]
    if lat.size == 1:
        return [lat.bottom]
    return [lat.bottom] + middle + [lat.top]


def cover_pairs(lat: ResiduatedLattice) -> list[tuple[int, int]]:
    n = lat.size
    out = []
    for i in range(n):
        for j in bits(lat.up[i] & ~(1 << i)):
            between = any(
                k != i and k != j and lat.leq(i, k) and lat.leq(k, j)
                for k in range(n)
            )
            if not between:
                out.append((i, j))
    return out


def to_document_dict(lat: ResiduatedLattice, name: str) -> dict:
    order = _canonical_permutation(lat)
    new_of = {old: new for new, old in enumerate(order)}
    n = lat.size
    labels = [lat.labels[old] for old in order]

    def relabel(table):
        return [
            [labels[new_of[table[order[x]][order[y]]]] for y in range(n)]
            for x in range(n)
        ]

    pairs = sorted(
        (new_of[lo], new_of[hi]) for lo, hi in cover_pairs(lat)
    )
    return {
        "name": name,
        "size": n,
        "labels": labels,
        "order": [[labels[lo], labels[hi]] for lo, hi in pairs],
        "odot": relabel(lat.odot),
        "imp": relabel(lat.imp),
    }


def serialize_document(doc: LatticeDocument) -> str:
    return json.dumps(to_document_dict(doc.lattice, doc.name), sort_keys=True, indent=2) + "\n"


def serialize_lattice(lat: ResiduatedLattice, name: str | None = None) -> str:
    return serialize_document(LatticeDocument(name or f"L{lat.size}", lat))


def bundled_text(name: str) -> str:
    """Text of a bundled lattice document, e.g. bundled_text('a6')."""
    return resources.files("reslat.data").joinpath(f"{name}.json").read_text("utf-8")


def load_bundled(name: str) -> LatticeDocument:
    return parse_document(bundled_text(name))


# ---------------------------------------------------------------------------
# DOT export


def dot_hasse(lat: ResiduatedLattice, name: str = "lattice") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    for s in lat.labels:
        lines.append(f'  "{s}";')
    for lo, hi in sorted(cover_pairs(lat)):
        lines.append(f'  "{lat.labels[lo]}" -> "{lat.labels[hi]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_spectrum(lat: ResiduatedLattice, name: str = "spectrum") -> str:
    from .spectra import prime_spectrum

    spec = prime_spectrum(lat)
    node = ["{" + ",".join(lat.label_set(p)) + "}" for p in spec.primes]
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for s in node:
        lines.append(f'  "{s}";')
    k = len(spec)
    for i in range(k):
        for j in bits(spec.above[i] & ~(1 << i)):
            between = any(
                m != i and m != j
                and spec.above[i] >> m & 1 and spec.above[m] >> j & 1
                for m in range(k)
            )
            if not between:
                lines.append(f'  "{node[i]}" -> "{node[j]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
