"""Hurwitz equivalence: the invariant criterion, a BFS oracle, and exhaustive checks.

``decide`` compares (length, product, generated subgroup, class multiset).
``decide_by_bfs`` searches the orbit directly.  The ``verify_*`` functions
enumerate every reflection tuple of a given length in a group and confirm
that the two notions agree, along with the finite facts the proofs lean on.

Exhaustive runs encode a tuple over ``k`` reflections as an integer in base
``k`` (lexicographic in reflection id), apply every move as array arithmetic,
and take weakly connected components of the resulting move graph; since each
move is a bijection those components are exactly the Hurwitz orbits.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .hurwitz import (
    DEFAULT_NODE_CAP,
    Factorization,
    invariants_of,
    orbit,
    orbit_members,
)
from .matgroup import GroupTable, SubgroupRecord, closure, lattice

log = logging.getLogger(__name__)

__all__ = [
    "EquivalenceVerdict",
    "VerificationReport",
    "BudgetExceeded",
    "TruncatedSearch",
    "HostMismatch",
    "decide",
    "decide_by_bfs",
    "orbit_labels",
    "verify_theorem",
    "verify_class_searchable",
    "verify_generation_claims",
    "verify_pair_orbits",
    "DEFAULT_TUPLE_BUDGET",
]

DEFAULT_TUPLE_BUDGET = 5_000_000
MAX_LISTED = 20


class BudgetExceeded(RuntimeError):
    pass


class TruncatedSearch(RuntimeError):
    pass


class HostMismatch(ValueError):
    pass


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    reason: str  # different-product | different-subgroup | different-class-multiset | criterion-met | ...
    certified_by: str  # criterion | orbit-bfs

    def to_json(self) -> dict:
        return {"equivalent": self.equivalent, "reason": self.reason, "certified_by": self.certified_by}


def decide(T: Factorization, V: Factorization) -> EquivalenceVerdict:
    if T.host is not V.host:
        raise HostMismatch("factorizations live in different group tables")
    it, iv = invariants_of(T), invariants_of(V)
    if it.product != iv.product:
        return EquivalenceVerdict(False, "different-product", "criterion")
    if it.subgroup.element_ids != iv.subgroup.element_ids:
        return EquivalenceVerdict(False, "different-subgroup", "criterion")
    # class multiplicities sum to the length, so this also separates lengths
    if it.classes != iv.classes:
        return EquivalenceVerdict(False, "different-class-multiset", "criterion")
    return EquivalenceVerdict(True, "criterion-met", "criterion")


def decide_by_bfs(T: Factorization, V: Factorization, node_cap: int = DEFAULT_NODE_CAP) -> EquivalenceVerdict:
    if T.host is not V.host:
        raise HostMismatch("factorizations live in different group tables")
    if len(T) != len(V):
        return EquivalenceVerdict(False, "different-length", "orbit-bfs")
    members, truncated = orbit_members(T.host, T.entries, node_cap)
    if V.entries in members:
        return EquivalenceVerdict(True, "found-in-orbit", "orbit-bfs")
    if truncated:
        raise TruncatedSearch(f"orbit search stopped at {node_cap} nodes without reaching the target")
    return EquivalenceVerdict(False, "not-in-orbit", "orbit-bfs")


@dataclass
class VerificationReport:
    group: str
    length: int
    tuples_examined: int
    orbits_found: int
    partitions_agree: bool
    counterexamples: list = field(default_factory=list)
    suite: str = "theorem"
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.partitions_agree and not self.counterexamples

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "group": self.group,
            "length": self.length,
            "tuples_examined": self.tuples_examined,
            "orbits_found": self.orbits_found,
            "partitions_agree": self.partitions_agree,
            "counterexamples": self.counterexamples,
            "details": self.details,
        }


# -- tuple space ---------------------------------------------------------------


class _TupleSpace:
    """All length-``n`` tuples over the reflections of ``group``, as base-k codes."""

    def __init__(self, group: SubgroupRecord, n: int, budget: int):
        host = group.host
        self.host = host
        self.group = group
        self.refl = np.asarray(group.reflections, dtype=np.int64)
        self.k = k = len(self.refl)
        self.n = n
        if n < 1:
            raise ValueError("length must be at least 1")
        self.size = k**n
        if self.size > budget:
            raise BudgetExceeded(f"{k}^{n} = {self.size} tuples exceeds budget {budget}")
        local = {g: j for j, g in enumerate(group.reflections)}
        mult, inv = host.mult, host.inv
        # conj[a, b] = b^-1 a b, on local indices
        self.conj = np.array(
            [[local[mult[mult[inv[b]][a]][b]] for b in group.reflections] for a in group.reflections],
            dtype=np.int64,
        )
        self.weights = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.codes = np.arange(self.size, dtype=np.int64)
        self.digits = (self.codes[:, None] // self.weights[None, :]) % k

    def ids(self) -> np.ndarray:
        return self.refl[self.digits]

    def decode(self, code: int) -> tuple[int, ...]:
        return tuple(int(self.refl[(code // int(w)) % self.k]) for w in self.weights)

    def move_image(self, i: int) -> np.ndarray:
        """Codes of sigma_i applied to every tuple (1-based i)."""
        a = self.digits[:, i - 1]
        b = self.digits[:, i]
        wa, wb = self.weights[i - 1], self.weights[i]
        return self.codes + (b - a) * wa + (self.conj[a, b] - b) * wb

    def components(self) -> tuple[int, np.ndarray]:
        """Orbit label per code; labels are renumbered by least member code."""
        if self.n == 1:
            return self.size, self.codes.copy()
        src = np.concatenate([self.codes] * (self.n - 1))
        dst = np.concatenate([self.move_image(i) for i in range(1, self.n)])
        graph = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(self.size, self.size))
        count, labels = connected_components(graph, directed=True, connection="weak")
        first = np.full(count, self.size, dtype=np.int64)
        np.minimum.at(first, labels, self.codes)
        rank = np.empty(count, dtype=np.int64)
        rank[np.argsort(first)] = np.arange(count)
        return count, rank[labels]

    def components_bfs(self) -> tuple[int, np.ndarray]:
        """Reference route: scan codes in order, BFS each unvisited tuple with python moves."""
        labels = np.full(self.size, -1, dtype=np.int64)
        count = 0
        host = self.host
        index = {int(g): j for j, g in enumerate(self.refl)}
        for code in range(self.size):
            if labels[code] >= 0:
                continue
            members, _ = orbit_members(host, self.decode(code))
            for T in members:
                labels[sum(index[g] * int(w) for g, w in zip(T, self.weights))] = count
            count += 1
        return count, labels

    def prefix_masks(self, upto: int) -> np.ndarray:
        bits = np.zeros(self.size, dtype=np.int64)
        for j in range(upto):
            bits |= np.left_shift(1, self.digits[:, j])
        return bits

    def subgroups(self, masks: np.ndarray) -> tuple[list[SubgroupRecord], np.ndarray]:
        """Generated subgroup per tuple, given reflection bitmasks."""
        uniq, inverse = np.unique(masks, return_inverse=True)
        recs = []
        for m in uniq.tolist():
            gens = [int(self.refl[j]) for j in range(self.k) if m >> j & 1]
            recs.append(closure(self.host, gens))
        return recs, inverse.reshape(-1)


def _invariant_labels(space: _TupleSpace) -> tuple[np.ndarray, list[SubgroupRecord], np.ndarray]:
    ids = space.ids()
    mult = space.host.mult_np
    prod = np.zeros(space.size, dtype=np.int64)
    for j in range(space.n):
        prod = mult[prod, ids[:, j]]
    recs, sub_idx = space.subgroups(space.prefix_masks(space.n))
    distinct: dict[tuple[int, ...], int] = {}
    sub_id = np.array([distinct.setdefault(r.element_ids, len(distinct)) for r in recs], dtype=np.int64)[sub_idx]
    # class representative (least id of the class inside the generated subgroup)
    reps_table = np.full((len(recs), space.k), -1, dtype=np.int64)
    for u, rec in enumerate(recs):
        for j, g in enumerate(space.group.reflections):
            if g in rec.class_of:
                reps_table[u, j] = rec.own_classes[rec.class_of[g]][0]
    reps = np.sort(reps_table[sub_idx[:, None], space.digits], axis=1)
    cols = np.column_stack([prod, sub_id, reps])
    if space.n <= 5:
        key = np.zeros(space.size, dtype=np.int64)
        for c in range(cols.shape[1]):
            key = (key << 8) | cols[:, c]
        _, labels = np.unique(key, return_inverse=True)
    else:
        _, labels = np.unique(cols, axis=0, return_inverse=True)
    return labels.reshape(-1), recs, sub_idx


def orbit_labels(group: SubgroupRecord, n: int, method: str = "components", budget: int = DEFAULT_TUPLE_BUDGET) -> tuple[int, np.ndarray]:
    """Orbit labels of all length-n tuples over ``group``'s reflections, in code order."""
    space = _TupleSpace(group, n, budget)
    return space.components() if method == "components" else space.components_bfs()


def _group_name(group: SubgroupRecord) -> str:
    return group.iso_class or f"order-{group.order}"


def verify_theorem(group: SubgroupRecord, n: int, method: str = "components", budget: int = DEFAULT_TUPLE_BUDGET) -> VerificationReport:
    """Orbit partition vs invariant partition over every length-n reflection tuple of ``group``."""
    t0 = time.perf_counter()
    space = _TupleSpace(group, n, budget)
    n_orb, orb = space.components() if method == "components" else space.components_bfs()
    inv_labels, recs, sub_idx = _invariant_labels(space)
    n_inv = int(inv_labels.max()) + 1
    pairs = np.unique(orb * n_inv + inv_labels)
    agree = len(pairs) == n_orb == n_inv

    counterexamples = []
    if not agree:
        pair_orb = pairs // n_inv
        pair_inv = pairs % n_inv
        # invariant class split across orbits: sufficiency fails
        split = np.flatnonzero(np.bincount(pair_inv, minlength=n_inv) > 1)
        for key in split[:MAX_LISTED].tolist():
            orbs = pair_orb[pair_inv == key][:2]
            reps = [space.decode(int(np.flatnonzero(orb == o)[0])) for o in orbs.tolist()]
            counterexamples.append({"kind": "same-invariants-different-orbits", "tuples": [list(r) for r in reps]})
        # orbit carrying two invariant keys: necessity fails (should be impossible)
        mixed = np.flatnonzero(np.bincount(pair_orb, minlength=n_orb) > 1)
        for o in mixed[:MAX_LISTED].tolist():
            counterexamples.append({"kind": "orbit-with-different-invariants", "tuple": list(space.decode(int(np.flatnonzero(orb == o)[0])))})

    seen = Counter()
    counts = np.bincount(sub_idx, minlength=len(recs))
    for rec, c in zip(recs, counts.tolist()):
        seen[rec.iso_class or f"order-{rec.order}"] += c
    report = VerificationReport(
        group=_group_name(group),
        length=n,
        tuples_examined=space.size,
        orbits_found=n_orb,
        partitions_agree=agree,
        counterexamples=counterexamples,
        suite="theorem",
        details={
            "method": method,
            "invariant_classes": n_inv,
            "subgroups_generated": dict(sorted(seen.items())),
        },
    )
    log.info("theorem %s len %d: %d tuples, %d orbits, agree=%s (%.2fs)", report.group, n, space.size, n_orb, agree, time.perf_counter() - t0)
    return report


def verify_class_searchable(
    group: SubgroupRecord,
    n: int,
    classes: Sequence[Sequence[int]] | None = None,
    budget: int = DEFAULT_TUPLE_BUDGET,
) -> VerificationReport:
    """Check class-searchability of ``group`` at length n.

    For every length-n tuple generating the group and every class K of the
    group occurring at least twice in it, every x in K must end some orbit
    member whose first n-1 entries still generate the group.
    """
    t0 = time.perf_counter()
    if n < 2:
        raise ValueError("class-searchability needs length >= 2")
    space = _TupleSpace(group, n, budget)
    if space.k > 62:
        raise ValueError("too many reflections for bitmask bookkeeping")
    n_orb, orb = space.components()
    full = group.element_ids

    def generates(masks: np.ndarray) -> np.ndarray:
        recs, idx = space.subgroups(masks)
        hit = np.array([r.element_ids == full for r in recs], dtype=bool)
        return hit[idx]

    gen_all = generates(space.prefix_masks(n))
    gen_prefix = generates(space.prefix_masks(n - 1))
    last = space.digits[:, n - 1]
    good = gen_all & gen_prefix
    reachable = np.zeros(n_orb, dtype=np.int64)
    np.bitwise_or.at(reachable, orb[good], np.left_shift(1, last[good]))

    local = {g: j for j, g in enumerate(group.reflections)}
    targets = [tuple(c) for c in (classes if classes is not None else group.own_classes)]
    counterexamples = []
    checked = 0
    failures = 0
    per_class = {}
    for cls in targets:
        kbits = 0
        for g in cls:
            kbits |= 1 << local[g]
        occ = np.zeros(space.size, dtype=np.int64)
        for j in range(n):
            occ += (np.left_shift(1, space.digits[:, j]) & kbits) != 0
        rows = np.flatnonzero(gen_all & (occ >= 2))
        checked += len(rows)
        have = reachable[orb[rows]] & kbits
        bad = rows[have != kbits]
        failures += len(bad)
        per_class[",".join(map(str, cls))] = {"tuples": int(len(rows)), "failures": int(len(bad))}
        for code in bad[:MAX_LISTED].tolist():
            got = int(reachable[orb[code]])
            missing = [g for g in cls if not got >> local[g] & 1]
            counterexamples.append({"tuple": list(space.decode(code)), "class": list(cls), "missing": missing})
    log.info("class-search %s len %d: %d generating tuples, %d failures (%.2fs)", _group_name(group), n, checked, failures, time.perf_counter() - t0)
    return VerificationReport(
        group=_group_name(group),
        length=n,
        tuples_examined=space.size,
        orbits_found=n_orb,
        partitions_agree=failures == 0,
        counterexamples=counterexamples,
        suite="class-search",
        details={
            "generating_tuples_checked": int(checked),
            "failures": int(failures),
            "per_class": per_class,
        },
    )


def _census_by_name(host: GroupTable) -> dict[str, SubgroupRecord]:
    lat = lattice(host)
    return dict(zip(lat.names, lat.records))


def verify_generation_claims(host: GroupTable) -> VerificationReport:
    """Finite generation and conjugation facts used in the G(4,2,2), G6 and G7 arguments."""
    named = _census_by_name(host)
    g422 = named["G422"]
    s_classes = g422.own_classes
    details: dict = {}
    counterexamples = []
    examined = 0

    # (a) every choice of a nonempty subset from each of S1, S2, S3
    nonempty = [[c for k in range(1, len(cls) + 1) for c in itertools.combinations(cls, k)] for cls in s_classes]
    ok = total = 0
    for parts in itertools.product(*nonempty):
        gens = [g for p in parts for g in p]
        total += 1
        if closure(host, gens).element_ids == g422.element_ids:
            ok += 1
        else:
            counterexamples.append({"claim": "G422-generation", "generators": gens})
    details["g422_generation"] = {"generate": ok, "total": total}
    examined += total

    # (b) one reflection of R' and one of S generate the G6 copy
    for name in ("G6a", "G6b"):
        g6 = named[name]
        order3 = [r for r in g6.reflections if host.element_orders[r] == 3]
        order2 = [r for r in g6.reflections if host.element_orders[r] == 2]
        ok = total = 0
        for a, b in itertools.product(order3, order2):
            total += 1
            if closure(host, (a, b)).element_ids == g6.element_ids:
                ok += 1
            else:
                counterexamples.append({"claim": f"{name}-generation", "generators": [a, b]})
        details[f"{name.lower()}_generation"] = {"generate": ok, "total": total}
        examined += total

    # (c) one reflection each from R', R'', S generates G7
    r1 = host.class_by_label("R1") + host.class_by_label("R1^-1")
    r2 = host.class_by_label("R2") + host.class_by_label("R2^-1")
    ss = host.class_by_label("S")
    full = tuple(range(host.order))
    ok = total = 0
    for gens in itertools.product(r1, r2, ss):
        total += 1
        if closure(host, gens).element_ids == full:
            ok += 1
        else:
            counterexamples.append({"claim": "G7-generation", "generators": list(gens)})
    details["g7_generation"] = {"generate": ok, "total": total}
    examined += total

    # (d) conjugating s by r inside G(4,2,2)
    ok = total = 0
    for s, r in itertools.product(g422.reflections, repeat=2):
        total += 1
        cls = g422.own_classes[g422.class_of[s]]
        other = [x for x in cls if x != s]
        want = s if g422.class_of[s] == g422.class_of[r] else other[0]
        if len(other) == 1 and host.conj(s, r) == want:
            ok += 1
        else:
            counterexamples.append({"claim": "G422-conjugation", "s": s, "r": r})
    details["g422_conjugation"] = {"hold": ok, "total": total}
    examined += total

    return VerificationReport(
        group="G7",
        length=0,
        tuples_examined=examined,
        orbits_found=0,
        partitions_agree=not counterexamples,
        counterexamples=counterexamples,
        suite="generation",
        details=details,
    )


def verify_pair_orbits(host: GroupTable) -> VerificationReport:
    """Length-2 orbits in each G4 copy: one new reflection (same class) or two (different classes)."""
    named = _census_by_name(host)
    counterexamples = []
    details = {}
    examined = 0
    for name in ("G4a", "G4b"):
        g4 = named[name]
        same = cross = 0
        for x, y in itertools.product(g4.reflections, repeat=2):
            if closure(host, (x, y)).element_ids != g4.element_ids:
                continue
            examined += 1
            rep = orbit((x, y), host=host)
            per_class = Counter(g4.class_of[r] for r in rep.support)
            if g4.class_of[x] == g4.class_of[y]:
                same += 1
                good = len(rep.support) == 3 and list(per_class) == [g4.class_of[x]]
            else:
                cross += 1
                good = len(rep.support) == 4 and sorted(per_class.values()) == [2, 2]
            if not good:
                counterexamples.append({"group": name, "pair": [x, y], "support": sorted(rep.support)})
        details[name] = {"same_class_pairs": same, "cross_class_pairs": cross}
    return VerificationReport(
        group="G4",
        length=2,
        tuples_examined=examined,
        orbits_found=0,
        partitions_agree=not counterexamples,
        counterexamples=counterexamples,
        suite="pair-orbits",
        details=details,
    )
