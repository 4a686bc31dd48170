"""Standard forms for reflection factorizations generating a copy of G4.

Inside a G4 copy the reflections split into two classes.  The *first* class
is the one holding the G7 generator of that copy (t or u), the *second* is
its inverse class; ``n`` and ``m`` count entries from each.  Two
factorizations of the same element with the same ``(n, m)`` that both
generate the copy lie in one Hurwitz orbit, so the catalog below gives one
explicit tuple per ``(target, n, m)``.

Every built tuple is checked (product, generated subgroup, class counts)
before it is returned.  A catalog pattern that fails the check is reported as
an erratum and replaced by the lexicographically least tuple with the same
invariants; lengths under a category's bound go to the orbit minimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .hurwitz import Factorization, orbit_members
from .matgroup import GroupTable, SubgroupRecord, closure, lattice

__all__ = [
    "CATEGORIES",
    "G4Frame",
    "StandardFormKey",
    "CatalogEntry",
    "NormalForm",
    "NotG4Error",
    "ConstraintViolation",
    "CatalogErratum",
    "g4_frames",
    "frame_of",
    "standard_key",
    "build_standard_form",
    "normalize",
    "validate_catalog",
    "explain_erratum",
    "realizable",
    "coverage",
    "fiber_min",
    "LENGTH_BOUNDS",
]

CATEGORIES = ("identity", "negative-identity", "reflection", "coxeter-C1", "coxeter-C2", "other-det1")

# shortest length each category's catalog is stated for
LENGTH_BOUNDS = {
    "reflection": 8,
    "negative-identity": 4,
    "other-det1": 3,
    "identity": 1,
    "coxeter-C1": 1,
    "coxeter-C2": 1,
}

BFS_FALLBACK_CAP = 1_000_000


class NotG4Error(ValueError):
    pass


class ConstraintViolation(ValueError):
    pass


class CatalogErratum(RuntimeError):
    def __init__(self, clause: str, note: str):
        super().__init__(f"{clause}: {note}")
        self.clause = clause
        self.note = note


@dataclass(eq=False)
class G4Frame:
    host: GroupTable
    name: str
    sub: SubgroupRecord
    first: tuple[int, ...]
    second: tuple[int, ...]
    category: dict[int, str]
    neg_identity: int

    def count(self, entries) -> tuple[int, int]:
        n = sum(1 for g in entries if g in self.first)
        return n, len(entries) - n

    def targets(self, cat: str) -> list[int]:
        return sorted(g for g, c in self.category.items() if c == cat)


def _make_frame(host: GroupTable, name: str, sub: SubgroupRecord) -> G4Frame:
    gens = {host.generators.get("t"), host.generators.get("u")}
    first = next(c for c in sub.own_classes if gens & set(c))
    second = next(c for c in sub.own_classes if c != first)
    mult = host.mult
    c2 = {mult[a][b] for a in first for b in first if a != b}
    c1 = {mult[a][b] for a in second for b in second if a != b}
    neg = next(g for g in sub.element_ids if host.element_orders[g] == 2)
    cat = {}
    for g in sub.element_ids:
        if g == 0:
            cat[g] = "identity"
        elif g == neg:
            cat[g] = "negative-identity"
        elif g in sub.class_of:
            cat[g] = "reflection"
        elif g in c1:
            cat[g] = "coxeter-C1"
        elif g in c2:
            cat[g] = "coxeter-C2"
        else:
            cat[g] = "other-det1"
    return G4Frame(host, name, sub, tuple(first), tuple(second), cat, neg)


_FRAMES: dict[int, list[G4Frame]] = {}


def g4_frames(host: GroupTable) -> list[G4Frame]:
    frames = _FRAMES.get(id(host))
    if frames is None or frames[0].host is not host:
        lat = lattice(host)
        frames = [_make_frame(host, nm, rec) for nm, rec in zip(lat.names, lat.records) if rec.iso_class == "G4"]
        _FRAMES[id(host)] = frames
    return frames


def frame_of(host: GroupTable, entries) -> G4Frame:
    sub = closure(host, entries)
    for fr in g4_frames(host):
        if fr.sub.element_ids == sub.element_ids:
            return fr
    raise NotG4Error(f"entries generate {sub.iso_class or 'order ' + str(sub.order)}, not a copy of G4")


@dataclass(frozen=True)
class StandardFormKey:
    group: str
    category: str
    target: int
    n: int
    m: int
    clause: str | None
    base_choices: tuple[tuple[str, int], ...] = ()

    def to_json(self, host: GroupTable | None = None) -> dict:
        out = {
            "group": self.group,
            "category": self.category,
            "target": self.target,
            "n": self.n,
            "m": self.m,
            "clause": self.clause,
            "base_choices": dict(self.base_choices),
        }
        if host is not None:
            out["target_word"] = host.word(self.target)
            out["base_choice_words"] = {k: host.word(v) for k, v in self.base_choices}
        return out


# -- catalog -----------------------------------------------------------------


@dataclass(frozen=True)
class Clause:
    id: str
    category: str
    applies: Callable[[int, int], bool]
    # blocks(bases, n, m) -> list of (base name, inverted?, count)
    blocks: Callable[[int, int], list[tuple[str, bool, int]]]
    bases: str  # which base-choice rule to use


def _b(name: str, count: int, inv: bool = False) -> tuple[str, bool, int]:
    return (name, inv, count)


CLAUSES: list[Clause] = [
    # reflections x in the first class, n + 2m = 1 mod 3
    Clause("reflection-1", "reflection", lambda n, m: n % 3 == 2,
           lambda n, m: [_b("x", n - 2), _b("x", 1), _b("y", 1, True), _b("y", 1), _b("y", m - 1)], "refl"),
    Clause("reflection-2", "reflection", lambda n, m: n % 3 == 1 and m >= 3,
           lambda n, m: [_b("x", n), _b("y", m)], "refl"),
    Clause("reflection-3", "reflection", lambda n, m: n % 3 == 1 and m == 0,
           lambda n, m: [_b("x", n - 4), _b("x", 1), _b("y", 3, True)], "refl"),
    Clause("reflection-4", "reflection", lambda n, m: n % 3 == 0 and m >= 5,
           lambda n, m: [_b("x", n), _b("x", 2, True), _b("y", m - 2)], "refl"),
    Clause("reflection-5", "reflection", lambda n, m: n % 3 == 0 and m == 2,
           lambda n, m: [_b("x", n - 3), _b("x", 2, True), _b("y", 3, True)], "refl"),
    # Coxeter elements from two second-class reflections, n + 2m = 1 mod 3
    Clause("coxeter-C1-a", "coxeter-C1", lambda n, m: n % 3 == 0,
           lambda n, m: [_b("y1", n, True), _b("y1", 1), _b("y2", 1), _b("y2", m - 2)], "cox1"),
    Clause("coxeter-C1-b", "coxeter-C1", lambda n, m: n % 3 == 1 and m >= 3,
           lambda n, m: [_b("y1", n - 1, True), _b("y1", 1, True), _b("y1", 2), _b("y2", 1), _b("y2", m - 3)], "cox1"),
    Clause("coxeter-C1-c", "coxeter-C1", lambda n, m: n % 3 == 1 and m == 0,
           lambda n, m: [_b("y1", n - 4, True), _b("y1", 2, True), _b("y2", 2, True)], "cox1"),
    Clause("coxeter-C1-d", "coxeter-C1", lambda n, m: n % 3 == 2,
           lambda n, m: [_b("y1", n - 2, True), _b("y1", 2, True), _b("y2", 1), _b("y2", m - 1)], "cox1"),
    # Coxeter elements from two first-class reflections, n + 2m = 2 mod 3
    Clause("coxeter-C2-a", "coxeter-C2", lambda n, m: n % 3 == 0 and m >= 4,
           lambda n, m: [_b("x1", n), _b("x1", 2, True), _b("x2", 2, True), _b("x2", m - 4, True)], "cox2"),
    Clause("coxeter-C2-b", "coxeter-C2", lambda n, m: n % 3 == 0 and m == 1,
           lambda n, m: [_b("x1", n - 3), _b("x1", 1), _b("x2", 2), _b("x2", 1, True)], "cox2"),
    Clause("coxeter-C2-c", "coxeter-C2", lambda n, m: n % 3 == 1,
           lambda n, m: [_b("x1", n - 1), _b("x1", 1), _b("x2", 2, True), _b("x2", m - 2, True)], "cox2"),
    Clause("coxeter-C2-d", "coxeter-C2", lambda n, m: n % 3 == 2,
           lambda n, m: [_b("x1", n - 2), _b("x1", 1), _b("x2", 1), _b("x2", m, True)], "cox2"),
    # identity, n + 2m = 0 mod 3
    Clause("identity-a", "identity", lambda n, m: n % 3 == 0,
           lambda n, m: [_b("x", n), _b("y", m)], "ident"),
    Clause("identity-b", "identity", lambda n, m: n % 3 == 1,
           lambda n, m: [_b("x", n - 1), _b("x", 1), _b("x", 1, True), _b("y", m - 1)], "ident"),
    Clause("identity-c", "identity", lambda n, m: n % 3 == 2,
           lambda n, m: [_b("x", n - 2), _b("x2", 1), _b("x1", 1), _b("x1", 1, True), _b("x2", 1, True), _b("y", m - 2)], "ident"),
    # negative identity, n + 2m = 0 mod 3
    Clause("negative-identity-a", "negative-identity", lambda n, m: n % 3 == 0 and n >= 3,
           lambda n, m: [_b("x1", n - 3), _b("x1", 1), _b("x2", 1), _b("x3", 1), _b("x3", m, True)], "negid"),
    Clause("negative-identity-b", "negative-identity", lambda n, m: n == 0,
           lambda n, m: [_b("x3", 1, True), _b("x2", 1, True), _b("x1", 1, True), _b("x1", m - 3, True)], "negid"),
    Clause("negative-identity-c", "negative-identity", lambda n, m: n == 1,
           lambda n, m: [_b("x1", 1), _b("x2", 2, True), _b("x3", 2, True), _b("x3", m - 4, True)], "negid"),
    Clause("negative-identity-d", "negative-identity", lambda n, m: n % 3 == 1 and n >= 4,
           lambda n, m: [_b("x1", n - 4), _b("x1", 1), _b("x2", 1), _b("x3", 2), _b("x3", 1, True), _b("x3", m - 1, True)], "negid"),
    Clause("negative-identity-e", "negative-identity", lambda n, m: n % 3 == 2,
           lambda n, m: [_b("x1", n - 2), _b("x1", 1), _b("x2", 1), _b("x3", 2, True), _b("x3", m - 2, True)], "negid"),
    # the six other determinant-1 elements, n + 2m = 0 mod 3
    Clause("other-det1-a", "other-det1", lambda n, m: n % 3 == 0 and m >= 3,
           lambda n, m: [_b("x1", n), _b("x1", 2, True), _b("y1", 1), _b("y1", m - 3)], "other"),
    Clause("other-det1-b", "other-det1", lambda n, m: n % 3 == 0 and m == 0,
           lambda n, m: [_b("x1", n - 3), _b("x1", 1), _b("y1", 2, True)], "other"),
    Clause("other-det1-c", "other-det1", lambda n, m: n % 3 == 1,
           lambda n, m: [_b("x1", n - 1), _b("x1", 1), _b("y1", 1), _b("y1", m - 1)], "other"),
    Clause("other-det1-d", "other-det1", lambda n, m: n % 3 == 2,
           lambda n, m: [_b("x1", n - 2), _b("x1", 2, True), _b("y1", 2, True), _b("y1", m - 2)], "other"),
]

CLAUSE_BY_ID = {c.id: c for c in CLAUSES}

# (n + 2m) mod 3 forced by the determinant of each category's elements
RESIDUE = {
    "reflection": 1,
    "coxeter-C1": 1,
    "coxeter-C2": 2,
    "identity": 0,
    "negative-identity": 0,
    "other-det1": 0,
}


def _base_choices(fr: G4Frame, rule: str, target: int) -> tuple[tuple[str, int], ...]:
    """Free reflections of a clause; always the least ids meeting the clause's constraints."""
    host = fr.host
    mult, inv = host.mult, host.inv
    first, second = fr.first, fr.second
    if rule == "refl":
        y = min(r for r in second if r != inv[target])
        return (("x", target), ("y", y))
    if rule == "cox1":
        y1 = min(a for a in second if mult[inv[a]][target] in second and mult[inv[a]][target] != a)
        return (("y1", y1), ("y2", mult[inv[y1]][target]))
    if rule == "cox2":
        x1 = min(a for a in first if mult[inv[a]][target] in first and mult[inv[a]][target] != a)
        return (("x1", x1), ("x2", mult[inv[x1]][target]))
    if rule == "ident":
        x = min(first)
        y = min(r for r in second if r != inv[x])
        x1 = min(first)
        x2 = min(r for r in first if r != x1)
        return (("x", x), ("y", y), ("x1", x1), ("x2", x2))
    if rule == "negid":
        x1, x2, x3 = min(t for t in itertools.product(first, repeat=3) if host.product(t) == target)
        return (("x1", x1), ("x2", x2), ("x3", x3))
    if rule == "other":
        x1 = min(a for a in first if mult[inv[a]][target] in second)
        return (("x1", x1), ("y1", mult[inv[x1]][target]))
    raise ValueError(rule)


def _matching_clause(category: str, n: int, m: int) -> Clause | None:
    hits = [c for c in CLAUSES if c.category == category and c.applies(n, m)]
    hits = [c for c in hits if all(k >= 0 for _, _, k in c.blocks(n, m))]
    if len(hits) > 1:
        raise AssertionError(f"clauses overlap at {category} {(n, m)}: {[c.id for c in hits]}")
    return hits[0] if hits else None


def _inverse_reverse(host: GroupTable, entries) -> tuple[int, ...]:
    return tuple(host.inv[g] for g in reversed(entries))


def _in_first_class_form(fr: G4Frame, category: str, target: int) -> bool:
    # the reflection catalog is written for targets in the first class
    return not (category == "reflection" and target in fr.second)


def _check_key_constraints(fr: G4Frame, category: str, target: int, n: int, m: int) -> None:
    if fr.category.get(target) != category:
        raise ConstraintViolation(f"element {target} is not in category {category} of {fr.name}")
    if n < 0 or m < 0 or n + m < 1:
        raise ConstraintViolation("class counts must be non-negative with positive length")
    if category == "reflection" and target in fr.second:
        n, m = m, n
    if (n + 2 * m) % 3 != RESIDUE[category]:
        raise ConstraintViolation(f"n + 2m = {(n + 2 * m) % 3} mod 3, {category} needs {RESIDUE[category]}")
    if n + m < LENGTH_BOUNDS[category]:
        raise ConstraintViolation(f"length {n + m} below the catalog bound {LENGTH_BOUNDS[category]} for {category}")


def standard_key(fr: G4Frame, target: int, n: int, m: int) -> StandardFormKey:
    """Catalog key for (target, n, m); raises ConstraintViolation if no clause covers it."""
    category = fr.category.get(target)
    if category is None:
        raise ConstraintViolation(f"element {target} is not in {fr.name}")
    _check_key_constraints(fr, category, target, n, m)
    if _in_first_class_form(fr, category, target):
        clause = _matching_clause(category, n, m)
        if clause is None:
            raise ConstraintViolation(f"no catalog clause for {category} with (n, m) = {(n, m)}")
        return StandardFormKey(fr.name, category, target, n, m, clause.id, _base_choices(fr, clause.bases, target))
    inner = standard_key(fr, fr.host.inv[target], m, n)
    return StandardFormKey(fr.name, category, target, n, m, "inverse-reverse:" + inner.clause, inner.base_choices)


def _frame_by_name(host: GroupTable, name: str) -> G4Frame:
    for fr in g4_frames(host):
        if fr.name == name:
            return fr
    raise KeyError(name)


def _validate(fr: G4Frame, entries: tuple[int, ...], target: int, n: int, m: int) -> str | None:
    host = fr.host
    problems = []
    prod = host.product(entries)
    if prod != target:
        problems.append(f"product is {host.word(prod)}, expected {host.word(target)}")
    sub = closure(host, entries)
    if sub.element_ids != fr.sub.element_ids:
        problems.append(f"entries generate {sub.iso_class or 'order ' + str(sub.order)} instead of G4")
    if fr.count(entries) != (n, m):
        problems.append(f"class counts are {fr.count(entries)}, expected {(n, m)}")
    return "; ".join(problems) or None


def _build_raw(fr: G4Frame, key: StandardFormKey) -> tuple[int, ...]:
    host = fr.host
    if key.clause.startswith("inverse-reverse:"):
        inner = StandardFormKey(key.group, key.category, host.inv[key.target], key.m, key.n, key.clause.split(":", 1)[1], key.base_choices)
        return _inverse_reverse(host, _build_raw(fr, inner))
    clause = CLAUSE_BY_ID[key.clause]
    bases = dict(key.base_choices)
    out: list[int] = []
    for name, inverted, count in clause.blocks(key.n, key.m):
        g = host.inv[bases[name]] if inverted else bases[name]
        out.extend([g] * count)
    return tuple(out)


def build_standard_form(host: GroupTable, key: StandardFormKey) -> Factorization:
    """Instantiate a catalog clause; raises CatalogErratum if the result fails validation."""
    fr = _frame_by_name(host, key.group)
    _check_key_constraints(fr, key.category, key.target, key.n, key.m)
    entries = _build_raw(fr, key)
    if not entries:
        raise ConstraintViolation("empty factorization")
    note = _validate(fr, entries, key.target, key.n, key.m)
    if note:
        raise CatalogErratum(key.clause, note)
    return Factorization(host, entries)


# -- invariant-driven search -------------------------------------------------


def _searcher(fr: G4Frame):
    host = fr.host
    mult, inv = host.mult, host.inv
    refl = sorted(fr.sub.reflections)
    first = set(fr.first)
    full = fr.sub.element_ids

    @lru_cache(maxsize=None)
    def join(h: frozenset, r: int) -> frozenset:
        return frozenset(closure(host, tuple(h) + (r,)).reflections)

    @lru_cache(maxsize=None)
    def feasible(p: int, a: int, b: int, h: frozenset) -> bool:
        if a == 0 and b == 0:
            return p == 0 and closure(host, h).element_ids == full
        for r in refl:
            if r in first:
                if a and feasible(mult[inv[r]][p], a - 1, b, join(h, r)):
                    return True
            elif b and feasible(mult[inv[r]][p], a, b - 1, join(h, r)):
                return True
        return False

    def least(target: int, n: int, m: int) -> tuple[int, ...] | None:
        h: frozenset = frozenset()
        if not feasible(target, n, m, h):
            return None
        out = []
        p, a, b = target, n, m
        while a or b:
            for r in refl:
                na, nb = (a - 1, b) if r in first else (a, b - 1)
                if na < 0 or nb < 0:
                    continue
                h2 = join(h, r)
                if feasible(mult[inv[r]][p], na, nb, h2):
                    out.append(r)
                    p, a, b, h = mult[inv[r]][p], na, nb, h2
                    break
        return tuple(out)

    return feasible, least


_SEARCHERS: dict[tuple[int, str], tuple] = {}


def _search(fr: G4Frame):
    key = (id(fr.host), fr.name)
    s = _SEARCHERS.get(key)
    if s is None or s[0] is not fr.host:
        s = (fr.host, *_searcher(fr))
        _SEARCHERS[key] = s
    return s[1], s[2]


def fiber_min(fr: G4Frame, target: int, n: int, m: int) -> tuple[int, ...] | None:
    """Least id tuple that factors ``target``, generates the copy and has counts (n, m)."""
    return _search(fr)[1](target, n, m)


def realizable(fr: G4Frame, target: int, n: int, m: int) -> bool:
    return _search(fr)[0](target, n, m, frozenset())


# -- normalization -------------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    factorization: Factorization
    key: StandardFormKey
    source: str  # catalog | repaired | orbit-bfs | fiber-min
    validated: bool
    erratum_note: str | None = None

    def to_json(self) -> dict:
        host = self.factorization.host
        out = {
            "key": self.key.to_json(host),
            "tuple": self.factorization.words(),
            "ids": list(self.factorization.entries),
            "source": self.source,
            "validated": self.validated,
        }
        if self.erratum_note:
            out["erratum_note"] = self.erratum_note
        return out


def normalize(T: Factorization, bfs_cap: int = BFS_FALLBACK_CAP) -> NormalForm:
    host = T.host
    fr = frame_of(host, T.entries)
    target = T.product()
    category = fr.category[target]
    n, m = fr.count(T.entries)
    if n + m < LENGTH_BOUNDS[category]:
        members, truncated = orbit_members(host, T.entries, bfs_cap)
        key = StandardFormKey(fr.name, category, target, n, m, None)
        if not truncated:
            return NormalForm(Factorization(host, min(members)), key, "orbit-bfs", True)
        return NormalForm(Factorization(host, fiber_min(fr, target, n, m)), key, "fiber-min", True)
    try:
        key = standard_key(fr, target, n, m)
    except ConstraintViolation as exc:
        # realizable invariants with no clause: a catalog gap, reported in the output
        key = StandardFormKey(fr.name, category, target, n, m, None)
        return NormalForm(Factorization(host, fiber_min(fr, target, n, m)), key, "fiber-min", True, f"catalog gap: {exc}")
    try:
        return NormalForm(build_standard_form(host, key), key, "catalog", True)
    except CatalogErratum as err:
        repaired = fiber_min(fr, target, n, m)
        note = f"{err.clause}: {err.note}; replaced by least tuple with the same invariants"
        return NormalForm(Factorization(host, repaired), key, "repaired", _validate(fr, repaired, target, n, m) is None, note)


# -- catalog validation --------------------------------------------------------


@dataclass
class CatalogEntry:
    key: StandardFormKey
    entries: tuple[int, ...] | None
    validated: bool
    erratum_note: str | None = None
    explained: bool = True

    def to_json(self, host: GroupTable) -> dict:
        out = {"key": self.key.to_json(), "validated": self.validated, "explained": self.explained}
        if self.entries is not None:
            out["tuple"] = [host.word(g) for g in self.entries]
        if self.erratum_note:
            out["erratum_note"] = self.erratum_note
        return out


def explain_erratum(fr: G4Frame, key: StandardFormKey) -> str | None:
    """Why a clause instance fails, when the failure is structural; None otherwise.

    Two causes are recognised: no G4-generating factorization has the key's
    invariants at all, or (n, m) sits on the edge of the clause's range so a
    block of the pattern has length zero and the remaining letters only
    generate a proper subgroup.
    """
    if not realizable(fr, key.target, key.n, key.m):
        return "no factorization generating G4 has these invariants"
    clause_id = key.clause.split(":", 1)[-1]
    clause = CLAUSE_BY_ID[clause_id]
    n, m = (key.m, key.n) if key.clause.startswith("inverse-reverse:") else (key.n, key.m)
    blocks = clause.blocks(n, m)
    used = {name for name, _, k in blocks if k > 0}
    empty = sorted({name for name, _, k in blocks} - used)
    if empty:
        entries = _build_raw(fr, key)
        sub = closure(fr.host, entries)
        if sub.element_ids != fr.sub.element_ids:
            return f"boundary instance: block {', '.join(empty)} is empty at (n, m) = ({key.n}, {key.m}), so the rest generates only {sub.iso_class}"
    return None


def validate_catalog(host: GroupTable, max_len: int = 12, frames: list[G4Frame] | None = None) -> list[CatalogEntry]:
    """Instantiate every clause for every target and admissible (n, m) up to ``max_len``."""
    out = []
    for fr in frames or g4_frames(host):
        for category in CATEGORIES:
            for target in fr.targets(category):
                for length in range(LENGTH_BOUNDS[category], max_len + 1):
                    for n in range(length + 1):
                        m = length - n
                        try:
                            key = standard_key(fr, target, n, m)
                        except ConstraintViolation:
                            continue
                        try:
                            T = build_standard_form(host, key)
                            out.append(CatalogEntry(key, T.entries, True))
                        except CatalogErratum as err:
                            why = explain_erratum(fr, key)
                            note = f"{err.note}; {why}" if why else err.note
                            out.append(CatalogEntry(key, _build_raw(fr, key), False, note, why is not None))
    return out


@dataclass
class CoverageReport:
    length: int
    realizable: int
    covered: int
    uncovered: list = field(default_factory=list)
    errata: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "realizable_keys": self.realizable,
            "covered": self.covered,
            "uncovered": self.uncovered,
            "errata": self.errata,
        }


def coverage(host: GroupTable, length: int, frames: list[G4Frame] | None = None) -> CoverageReport:
    """Match every realizable (target, n, m) at ``length`` against the catalog.

    Realizability comes from a search over (remaining product, remaining
    counts, subgroup generated so far), not from enumerating tuples.
    """
    rep = CoverageReport(length, 0, 0)
    for fr in frames or g4_frames(host):
        for target in sorted(fr.category):
            category = fr.category[target]
            for n in range(length + 1):
                m = length - n
                if not realizable(fr, target, n, m):
                    continue
                rep.realizable += 1
                item = {"group": fr.name, "category": category, "target": target, "n": n, "m": m}
                try:
                    key = standard_key(fr, target, n, m)
                except ConstraintViolation as exc:
                    rep.uncovered.append({**item, "reason": str(exc)})
                    continue
                try:
                    build_standard_form(host, key)
                    rep.covered += 1
                except CatalogErratum as err:
                    rep.errata.append({**item, "clause": key.clause, "note": err.note})
    return rep
