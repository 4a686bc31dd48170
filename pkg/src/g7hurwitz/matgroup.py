"""2x2 matrices over Q(zeta_12), the group G7 and its reflection subgroups.

Every group here is enumerated completely: elements get integer ids, and all
later work (products, conjugation, Hurwitz moves) runs on the multiplication
table rather than on matrices.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .cyclo import HALF, I, ONE, SQRT3, ZERO, CycNum

__all__ = [
    "Mat2",
    "GroupTable",
    "SubgroupRecord",
    "Lattice",
    "ConsistencyError",
    "UnknownSubgroupError",
    "WordParseError",
    "generator_matrices",
    "build_g7",
    "closure",
    "is_reflection",
    "identify_subgroup",
    "subgroup_census",
    "census_names",
    "lattice",
    "z3_pairing",
    "parse_word",
    "parse_factorization",
    "table_to_json",
    "table_from_json",
    "G7_ORDER",
    "class_labels",
    "check_lattice_shape",
    "EXPECTED_LATTICE_COUNTS",
]

G7_ORDER = 144


class ConsistencyError(RuntimeError):
    """Raised when an enumeration does not close up the way it must."""


class UnknownSubgroupError(ValueError):
    pass


class WordParseError(ValueError):
    pass


class Mat2:
    __slots__ = ("a", "b", "c", "d", "_key")

    def __init__(self, a: CycNum, b: CycNum, c: CycNum, d: CycNum):
        self.a, self.b, self.c, self.d = a, b, c, d
        self._key = (a, b, c, d)

    @classmethod
    def identity(cls) -> Mat2:
        return cls(ONE, ZERO, ZERO, ONE)

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def det(self) -> CycNum:
        return self.a * self.d - self.b * self.c

    def trace(self) -> CycNum:
        return self.a + self.d

    def inverse(self) -> Mat2:
        dinv = self.det().inverse()
        return Mat2(self.d * dinv, -self.b * dinv, -self.c * dinv, self.a * dinv)

    def transpose(self) -> Mat2:
        return Mat2(self.a, self.c, self.b, self.d)

    def __sub__(self, o: Mat2) -> Mat2:
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def is_identity(self) -> bool:
        return self._key == (ONE, ZERO, ZERO, ONE)

    def entries(self) -> tuple[CycNum, CycNum, CycNum, CycNum]:
        return self._key

    def serialize(self) -> list[str]:
        return [e.serialize() for e in self._key]

    def sort_key(self) -> str:
        return " | ".join(self.serialize())

    @classmethod
    def parse(cls, entries: Sequence[str]) -> Mat2:
        return cls(*(CycNum.parse(e) for e in entries))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mat2) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Mat2({self.serialize()})"

    def to_complex(self) -> np.ndarray:
        return np.array([[self.a.to_complex(), self.b.to_complex()], [self.c.to_complex(), self.d.to_complex()]])


def generator_matrices() -> dict[str, Mat2]:
    """The matrices s, t, u generating G7 (u is the transpose of t)."""
    quarter = HALF * HALF
    p = (ONE + SQRT3) * quarter  # (1 + sqrt3)/4
    q = (SQRT3 - ONE) * quarter  # (-1 + sqrt3)/4
    s = Mat2(ONE, ZERO, ZERO, -ONE)
    t = Mat2(p + q * I, p + q * I, q - p * I, -q + p * I)
    return {"s": s, "t": t, "u": t.transpose()}


@dataclass(eq=False)
class GroupTable:
    """A finite matrix group enumerated into an id-indexed multiplication table.

    Id 0 is the identity, and ids follow the sort order of the canonical
    entry strings, so they do not depend on how the group was generated.
    ``classes`` is the partition of the reflections into conjugacy classes of
    this group, each class sorted, the list ordered by least id.
    """

    elements: list[Mat2]
    mult: list[list[int]]
    inv: list[int]
    reflections: list[int]
    classes: list[tuple[int, ...]]
    labels: dict[int, str]
    generators: dict[str, int]
    _closure_cache: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def mult_np(self) -> np.ndarray:
        return np.asarray(self.mult, dtype=np.int64)

    @cached_property
    def inv_np(self) -> np.ndarray:
        return np.asarray(self.inv, dtype=np.int64)

    @cached_property
    def index(self) -> dict[Mat2, int]:
        return {m: i for i, m in enumerate(self.elements)}

    @cached_property
    def reflection_set(self) -> frozenset[int]:
        return frozenset(self.reflections)

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {r: k for k, cls in enumerate(self.classes) for r in cls}

    @cached_property
    def element_orders(self) -> list[int]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.mult[x][g]
                k += 1
            out.append(k)
        return out

    @cached_property
    def dets(self) -> list[CycNum]:
        return [m.det() for m in self.elements]

    def conj(self, x: int, g: int) -> int:
        """g^-1 x g."""
        return self.mult[self.mult[self.inv[g]][x]][g]

    def product(self, ids: Iterable[int]) -> int:
        acc = 0
        for i in ids:
            acc = self.mult[acc][i]
        return acc

    def label_of(self, r: int) -> str:
        return self.labels[self.class_of[r]]

    def class_by_label(self, label: str) -> tuple[int, ...]:
        for k, name in self.labels.items():
            if name == label:
                return self.classes[k]
        raise KeyError(label)

    @cached_property
    def words(self) -> dict[int, str]:
        """Shortest words in s, t, u, t^-1, u^-1 for every element."""
        letters = []
        for name in sorted(self.generators):
            g = self.generators[name]
            letters.append((name, g))
            if self.inv[g] != g:
                letters.append((name + "^-1", self.inv[g]))
        words = {0: ""}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for name, g in letters:
                y = self.mult[x][g]
                if y not in words:
                    words[y] = (words[x] + "*" + name) if words[x] else name
                    queue.append(y)
        words[0] = "1"
        return words

    def word(self, g: int) -> str:
        return self.words[g]


def _classes_within(mult: Sequence[Sequence[int]], inv: Sequence[int], elements: Sequence[int], refl: Iterable[int]) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for r in sorted(refl):
        if r in seen:
            continue
        cls = sorted({mult[mult[inv[h]][r]][h] for h in elements})
        seen.update(cls)
        out.append(tuple(cls))
    return out


def _enumerate(gens: Sequence[Mat2], limit: int) -> list[Mat2]:
    ident = Mat2.identity()
    letters = list(gens) + [g.inverse() for g in gens]
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in letters:
            y = x @ g
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
                if len(order) > limit:
                    raise ConsistencyError(f"enumeration exceeded {limit} elements")
    return order


def is_reflection_matrix(m: Mat2) -> bool:
    """M != I and the fixed space of M is a line (det(M - I) = 0)."""
    return not m.is_identity() and (m - Mat2.identity()).det().is_zero()


def table_from_generators(gens: dict[str, Mat2], expected_order: int | None = None, limit: int = 10_000) -> GroupTable:
    names = sorted(gens)
    mats = _enumerate([gens[n] for n in names], limit)
    if expected_order is not None and len(mats) != expected_order:
        raise ConsistencyError(f"enumeration closed at {len(mats)} elements, expected {expected_order}")
    ident = Mat2.identity()
    rest = sorted((m for m in mats if m != ident), key=Mat2.sort_key)
    elements = [ident] + rest
    index = {m: i for i, m in enumerate(elements)}
    n = len(elements)

    # right multiplication by generators, then extend along a spanning tree
    letters = [index[gens[nm]] for nm in names]
    right = [[index[elements[x] @ elements[g]] for g in letters] for x in range(n)]
    parent: dict[int, tuple[int, int]] = {}
    tree_order = [0]
    queue = deque([0])
    seen = {0}
    while queue:
        x = queue.popleft()
        for j in range(len(letters)):
            y = right[x][j]
            if y not in seen:
                seen.add(y)
                parent[y] = (x, j)
                tree_order.append(y)
                queue.append(y)
    if len(seen) != n:
        raise ConsistencyError("generators do not reach every element by right multiplication")
    mult = [[0] * n for _ in range(n)]
    for a in range(n):
        row = mult[a]
        row[0] = a
        for b in tree_order[1:]:
            pb, j = parent[b]
            row[b] = right[row[pb]][j]
    inv = [0] * n
    for a in range(n):
        inv[a] = mult[a].index(0)

    reflections = [i for i, m in enumerate(elements) if is_reflection_matrix(m)]
    classes = _classes_within(mult, inv, range(n), reflections)
    table = GroupTable(
        elements=elements,
        mult=mult,
        inv=inv,
        reflections=reflections,
        classes=classes,
        labels={},
        generators={nm: index[gens[nm]] for nm in names},
    )
    table.labels = _default_labels(table)
    return table


def _default_labels(table: GroupTable) -> dict[int, str]:
    gens = table.generators
    wanted = []
    if "s" in gens:
        wanted.append(("S", gens["s"]))
    if "t" in gens:
        wanted += [("R1", gens["t"]), ("R1^-1", table.inv[gens["t"]])]
    if "u" in gens:
        wanted += [("R2", gens["u"]), ("R2^-1", table.inv[gens["u"]])]
    labels = {}
    cls_of = {r: k for k, cls in enumerate(table.classes) for r in cls}
    for name, g in wanted:
        if g in cls_of and cls_of[g] not in labels:
            labels[cls_of[g]] = name
    for k in range(len(table.classes)):
        labels.setdefault(k, f"K{k}")
    return labels


def build_g7() -> GroupTable:
    """Enumerate G7 from s, t, u. Raises ConsistencyError unless it closes at 144."""
    return table_from_generators(generator_matrices(), expected_order=G7_ORDER)


def is_reflection(host: GroupTable, g: int) -> bool:
    return is_reflection_matrix(host.elements[g])


# -- subgroups -------------------------------------------------------------

# (order, reflection count, class sizes, element-order multiset as (order, count) pairs)
FINGERPRINTS: dict[str, tuple] = {
    "Z2": (2, 1, (1,), ((1, 1), (2, 1))),
    "Z3": (3, 2, (1, 1), ((1, 1), (3, 2))),
    "Z2xZ2": (4, 2, (1, 1), ((1, 1), (2, 3))),
    "D2x4": (8, 4, (2, 2), ((1, 1), (2, 5), (4, 2))),
    "Z3xZ3": (9, 4, (1, 1, 1, 1), ((1, 1), (3, 8))),
    "G(4,2,2)": (16, 6, (2, 2, 2), ((1, 1), (2, 7), (4, 8))),
    "G4": (24, 8, (4, 4), ((1, 1), (2, 1), (3, 8), (4, 6), (6, 8))),
    "G6": (48, 14, (4, 4, 6), ((1, 1), (2, 7), (3, 8), (4, 8), (6, 8), (12, 16))),
    "G5": (72, 16, (4, 4, 4, 4), ((1, 1), (2, 1), (3, 26), (4, 6), (6, 26), (12, 12))),
    "G7": (144, 22, (4, 4, 4, 4, 6), ((1, 1), (2, 7), (3, 26), (4, 8), (6, 38), (12, 64))),
}

SHORT_NAMES = {
    "Z2": "Z2",
    "Z3": "Z3",
    "Z2xZ2": "Z2xZ2",
    "Z3xZ3": "Z3xZ3",
    "D2x4": "D2x4",
    "G(4,2,2)": "G422",
    "G4": "G4",
    "G5": "G5",
    "G6": "G6",
    "G7": "G7",
}


@dataclass(frozen=True)
class SubgroupRecord:
    """A subgroup of ``host``, with reflection classes computed inside it."""

    host: GroupTable = field(repr=False, compare=False, hash=False)
    element_ids: tuple[int, ...]
    reflections: tuple[int, ...]
    own_classes: tuple[tuple[int, ...], ...]
    iso_class: str | None = None

    @property
    def order(self) -> int:
        return len(self.element_ids)

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.element_ids)

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {r: k for k, cls in enumerate(self.own_classes) for r in cls}

    def fingerprint(self) -> tuple:
        orders = Counter(self.host.element_orders[g] for g in self.element_ids)
        return (
            self.order,
            len(self.reflections),
            tuple(sorted(len(c) for c in self.own_classes)),
            tuple(sorted(orders.items())),
        )

    def contains(self, other: SubgroupRecord) -> bool:
        return other.element_set <= self.element_set


def identify_subgroup(rec: SubgroupRecord) -> str:
    fp = rec.fingerprint()
    for label, want in FINGERPRINTS.items():
        if want == fp:
            return label
    raise UnknownSubgroupError(f"unknown subgroup with fingerprint {fp}")


def _close_ids(host: GroupTable, gens: Iterable[int]) -> tuple[int, ...]:
    gens = sorted(set(gens))
    mult = host.mult
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = mult[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def closure(host: GroupTable, generator_ids: Iterable[int]) -> SubgroupRecord:
    """Subgroup generated by ``generator_ids``; memoised on the host."""
    key = frozenset(generator_ids)
    cache = host._closure_cache
    rec = cache.get(key)
    if rec is not None:
        return rec
    elems = _close_ids(host, key)
    rec = cache.get(("elements", elems))
    if rec is None:
        refl = tuple(g for g in elems if g in host.reflection_set)
        own = tuple(_classes_within(host.mult, host.inv, elems, refl))
        rec = SubgroupRecord(host, elems, refl, own)
        try:
            label = identify_subgroup(rec)
        except UnknownSubgroupError:
            label = None
        rec = SubgroupRecord(host, elems, refl, own, label)
        cache[("elements", elems)] = rec
    cache[key] = rec
    return rec


def subgroup_census(host: GroupTable) -> list[SubgroupRecord]:
    """All distinct reflection-generated subgroups, ordered by (order, least reflection).

    Singletons are closed first; then every known subgroup is extended by
    one reflection at a time until nothing new appears.
    """
    found: dict[tuple[int, ...], SubgroupRecord] = {}
    frontier = []
    for r in host.reflections:
        rec = closure(host, [r])
        if rec.element_ids not in found:
            found[rec.element_ids] = rec
            frontier.append(rec)
    while frontier:
        nxt = []
        for rec in frontier:
            for r in host.reflections:
                if r in rec.element_set:
                    continue
                big = closure(host, rec.reflections + (r,))
                if big.element_ids not in found:
                    found[big.element_ids] = big
                    nxt.append(big)
        frontier = nxt
    return sorted(found.values(), key=lambda rec: (rec.order, rec.reflections))


def census_names(records: Sequence[SubgroupRecord]) -> list[str]:
    """Names like ``G4a``/``G4b``: iso label plus a letter when copies repeat, by least reflection id."""
    by_label: dict[str, list[int]] = {}
    for k, rec in enumerate(records):
        if rec.iso_class is None:
            raise UnknownSubgroupError(f"census member of order {rec.order} has no label")
        by_label.setdefault(rec.iso_class, []).append(k)
    names = [""] * len(records)
    for label, idxs in by_label.items():
        idxs.sort(key=lambda k: records[k].reflections)
        short = SHORT_NAMES[label]
        for j, k in enumerate(idxs):
            names[k] = short if len(idxs) == 1 else short + "abcdefgh"[j]
    return names


@dataclass
class Lattice:
    """Reflection-subgroup lattice: nodes, covering edges (parent, child) by index."""

    records: list[SubgroupRecord]
    names: list[str]
    covers: list[tuple[int, int]]

    def counts(self) -> dict[str, int]:
        return dict(Counter(rec.iso_class for rec in self.records))

    def children(self, k: int) -> list[int]:
        return [c for p, c in self.covers if p == k]

    def parents(self, k: int) -> list[int]:
        return [p for p, c in self.covers if c == k]

    def host_class_labels(self, k: int) -> list[str]:
        host = self.records[k].host
        return sorted({host.label_of(r) for r in self.records[k].reflections})

    def to_json(self) -> dict:
        return {
            "nodes": [
                {
                    "name": self.names[k],
                    "iso_class": rec.iso_class,
                    "order": rec.order,
                    "reflections": list(rec.reflections),
                    "host_classes": self.host_class_labels(k),
                    "class_sizes": sorted(len(c) for c in rec.own_classes),
                }
                for k, rec in enumerate(self.records)
            ],
            "edges": [{"parent": self.names[p], "child": self.names[c]} for p, c in self.covers],
        }

    def to_dot(self) -> str:
        lines = ["graph reflection_subgroups {", "  node [shape=box];"]
        for k, rec in enumerate(self.records):
            classes = ", ".join(self.host_class_labels(k))
            lines.append(f'  "{self.names[k]}" [label="{rec.iso_class}\\n({classes})"];')
        for p, c in self.covers:
            lines.append(f'  "{self.names[p]}" -- "{self.names[c]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def lattice(host: GroupTable) -> Lattice:
    records = subgroup_census(host)
    names = census_names(records)
    n = len(records)
    below = [[records[j].element_set < records[i].element_set for j in range(n)] for i in range(n)]
    covers = []
    for i in range(n):
        for j in range(n):
            if below[i][j] and not any(below[i][k] and below[k][j] for k in range(n)):
                covers.append((i, j))
    return Lattice(records, names, covers)


def z3_pairing(host: GroupTable) -> dict[frozenset[int], list[frozenset[int]]]:
    """For each inverse pair {r, r^-1} in R1 u R1^-1, the inverse pairs of R2 u R2^-1 it commutes with."""
    def pairs(*labels: str) -> list[frozenset[int]]:
        ids = sorted(set().union(*(host.class_by_label(lb) for lb in labels)))
        return sorted({frozenset((r, host.inv[r])) for r in ids}, key=sorted)

    out = {}
    for p in pairs("R1", "R1^-1"):
        a = min(p)
        out[p] = [q for q in pairs("R2", "R2^-1") if host.mult[a][min(q)] == host.mult[min(q)][a]]
    return out


# -- words and text formats --------------------------------------------------

_TOKEN_RE = re.compile(r"\s*([stu])(\^-1)?\s*")


def parse_word(host: GroupTable, text: str) -> int:
    """Parse ``t*s*t^-1`` (letters s, t, u, optional ^-1) as a left-to-right product."""
    if not text or not text.strip():
        raise WordParseError("empty word")
    acc = 0
    for part in text.split("*"):
        m = _TOKEN_RE.fullmatch(part)
        if m is None:
            raise WordParseError(f"bad token {part!r} in word {text!r}")
        g = host.generators.get(m.group(1))
        if g is None:
            raise WordParseError(f"group has no generator {m.group(1)!r}")
        if m.group(2):
            g = host.inv[g]
        acc = host.mult[acc][g]
    return acc


def parse_factorization(host: GroupTable, text: str) -> tuple[int, ...]:
    """Comma-separated words, e.g. ``t, u, s, t^-1``."""
    parts = [p for p in text.split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise WordParseError(f"empty entry in factorization {text!r}")
    return tuple(parse_word(host, p) for p in parts)


TABLE_FORMAT = "g7hurwitz.grouptable"
TABLE_VERSION = 1


def table_to_json(host: GroupTable) -> dict:
    return {
        "format": TABLE_FORMAT,
        "version": TABLE_VERSION,
        "order": host.order,
        "elements": [m.serialize() for m in host.elements],
        "mult": host.mult,
        "inv": host.inv,
        "reflections": host.reflections,
        "classes": [{"label": host.labels[k], "ids": list(c)} for k, c in enumerate(host.classes)],
        "generators": dict(sorted(host.generators.items())),
    }


def table_from_json(data: dict) -> GroupTable:
    if data.get("format") != TABLE_FORMAT or data.get("version") != TABLE_VERSION:
        raise ValueError("unsupported group table format/version")
    classes = [tuple(c["ids"]) for c in data["classes"]]
    return GroupTable(
        elements=[Mat2.parse(e) for e in data["elements"]],
        mult=[list(row) for row in data["mult"]],
        inv=list(data["inv"]),
        reflections=list(data["reflections"]),
        classes=classes,
        labels={k: c["label"] for k, c in enumerate(data["classes"])},
        generators=dict(data["generators"]),
    )


def class_labels(host: GroupTable, rec: SubgroupRecord) -> list[str]:
    """Names for ``rec.own_classes``.

    A class equal to a host class takes the host label.  The host class S
    splits into three classes S1, S2, S3 inside G(4,2,2) (ordered by least
    id).  Anything smaller is named after the class containing it, with a
    ``.k`` suffix.
    """
    host_sets = {frozenset(c): host.labels[k] for k, c in enumerate(host.classes)}
    g422 = [r for r in subgroup_census(host) if r.iso_class == "G(4,2,2)"]
    named = dict(host_sets)
    for k, c in enumerate(g422[0].own_classes if g422 else ()):
        named.setdefault(frozenset(c), f"S{k + 1}")
    out = []
    seen: Counter = Counter()
    for cls in rec.own_classes:
        key = frozenset(cls)
        if key in named:
            out.append(named[key])
            continue
        # smallest named class containing this one
        base = min((len(c), nm) for c, nm in named.items() if key <= c)[1]
        seen[base] += 1
        out.append(f"{base}.{seen[base]}")
    return out


EXPECTED_LATTICE_COUNTS = {
    "Z2": 6,
    "Z3": 8,
    "Z2xZ2": 3,
    "Z3xZ3": 4,
    "D2x4": 3,
    "G(4,2,2)": 1,
    "G4": 2,
    "G5": 1,
    "G6": 2,
    "G7": 1,
}

# iso label -> maximal reflection subgroups (by iso label, with multiplicity)
EXPECTED_LATTICE_CHILDREN = {
    "G7": {"G5": 1, "G6": 2},
    "G5": {"G4": 2, "Z3xZ3": 4},
    "G6": {"G4": 1, "G(4,2,2)": 1},
    "G4": {"Z3": 4},
    "G(4,2,2)": {"D2x4": 3},
    "D2x4": {"Z2xZ2": 2},
    "Z3xZ3": {"Z3": 2},
    "Z2xZ2": {"Z2": 2},
    "Z3": {},
    "Z2": {},
}

# iso label -> the host-class signatures its copies carry
EXPECTED_LATTICE_SIGNATURES = {
    "G7": [("R1", "R1^-1", "R2", "R2^-1", "S")],
    "G5": [("R1", "R1^-1", "R2", "R2^-1")],
    "G6": [("R1", "R1^-1", "S"), ("R2", "R2^-1", "S")],
    "G4": [("R1", "R1^-1"), ("R2", "R2^-1")],
    "G(4,2,2)": [("S",)],
}


def check_lattice_shape(lat: Lattice) -> list[str]:
    """Differences between the computed lattice and the expected shape (empty when they agree)."""
    problems = []
    counts = lat.counts()
    if counts != EXPECTED_LATTICE_COUNTS:
        problems.append(f"counts {counts} != {EXPECTED_LATTICE_COUNTS}")
    for k, rec in enumerate(lat.records):
        kids = Counter(lat.records[c].iso_class for c in lat.children(k))
        if dict(kids) != EXPECTED_LATTICE_CHILDREN.get(rec.iso_class):
            problems.append(f"{lat.names[k]} covers {dict(kids)}")
    for label, sigs in EXPECTED_LATTICE_SIGNATURES.items():
        got = sorted(tuple(lat.host_class_labels(k)) for k, r in enumerate(lat.records) if r.iso_class == label)
        if got != sorted(sigs):
            problems.append(f"{label} class signatures {got} != {sorted(sigs)}")
    # each G6 copy contains the G4 copy with the same order-3 classes, and the one G(4,2,2)
    for k, rec in enumerate(lat.records):
        if rec.iso_class != "G6":
            continue
        for c in lat.children(k):
            child = lat.records[c]
            if child.iso_class == "G4" and not set(lat.host_class_labels(c)) <= set(lat.host_class_labels(k)):
                problems.append(f"{lat.names[k]} contains {lat.names[c]} with foreign classes")
    # Z3 x Z3: each inverse pair of R' commutes with exactly one inverse pair of R''
    pairing = z3_pairing(lat.records[0].host)
    if any(len(v) != 1 for v in pairing.values()) or len({next(iter(v)) for v in pairing.values()}) != len(pairing):
        problems.append("R'/R'' commuting pairs are not a bijection")
    return problems
