"""Reflection factorizations and the Hurwitz action on them.

Factorizations are tuples of element ids of a host :class:`GroupTable`.  The
product is taken left to right, so ``sigma_i`` sends the adjacent pair
``(a, b)`` to ``(b, b^-1 a b)`` and leaves the product alone.  Positions are
1-based, as in the usual notation.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .matgroup import GroupTable, SubgroupRecord, closure

__all__ = [
    "Factorization",
    "ClassMultiset",
    "OrbitReport",
    "Invariants",
    "NotAReflectionError",
    "move",
    "move_inverse",
    "hurwitz_move",
    "hurwitz_move_inverse",
    "orbit",
    "orbit_members",
    "invariants_of",
    "class_multiset",
    "DEFAULT_NODE_CAP",
]

DEFAULT_NODE_CAP = 10_000_000


class NotAReflectionError(ValueError):
    pass


@dataclass(frozen=True)
class Factorization:
    host: GroupTable = field(repr=False, compare=False, hash=False)
    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a factorization needs at least one entry")
        bad = [g for g in self.entries if g not in self.host.reflection_set]
        if bad:
            raise NotAReflectionError(f"entries {bad} are not reflections")

    def __len__(self) -> int:
        return len(self.entries)

    def product(self) -> int:
        return self.host.product(self.entries)

    def words(self) -> list[str]:
        return [self.host.word(g) for g in self.entries]

    def __str__(self) -> str:
        return ", ".join(self.words())


def move(host: GroupTable, entries: Sequence[int], i: int) -> tuple[int, ...]:
    """sigma_i on a raw id tuple."""
    if not 1 <= i < len(entries):
        raise IndexError(f"move position {i} out of range 1..{len(entries) - 1}")
    a, b = entries[i - 1], entries[i]
    mult = host.mult
    return (*entries[: i - 1], b, mult[mult[host.inv[b]][a]][b], *entries[i + 1 :])


def move_inverse(host: GroupTable, entries: Sequence[int], i: int) -> tuple[int, ...]:
    """sigma_i^-1: ``(a, b) -> (a b a^-1, a)``."""
    if not 1 <= i < len(entries):
        raise IndexError(f"move position {i} out of range 1..{len(entries) - 1}")
    a, b = entries[i - 1], entries[i]
    mult = host.mult
    return (*entries[: i - 1], mult[mult[a][b]][host.inv[a]], a, *entries[i + 1 :])


def hurwitz_move(T: Factorization, i: int) -> Factorization:
    return Factorization(T.host, move(T.host, T.entries, i))


def hurwitz_move_inverse(T: Factorization, i: int) -> Factorization:
    return Factorization(T.host, move_inverse(T.host, T.entries, i))


@dataclass(frozen=True)
class OrbitReport:
    representative: tuple[int, ...]
    size: int
    support: frozenset[int]
    truncated: bool = False

    def to_json(self, host: GroupTable) -> dict:
        return {
            "representative": {"ids": list(self.representative), "words": [host.word(g) for g in self.representative]},
            "size": self.size,
            "support": sorted(self.support),
            "support_words": [host.word(g) for g in sorted(self.support)],
            "truncated": self.truncated,
        }


def _neighbours(host: GroupTable, T: tuple[int, ...]):
    mult, inv = host.mult, host.inv
    n = len(T)
    for i in range(n - 1):
        a, b = T[i], T[i + 1]
        yield (*T[:i], b, mult[mult[inv[b]][a]][b], *T[i + 2 :])
        yield (*T[:i], mult[mult[a][b]][inv[a]], a, *T[i + 2 :])


def orbit_members(host: GroupTable, entries: Sequence[int], node_cap: int = DEFAULT_NODE_CAP) -> tuple[set[tuple[int, ...]], bool]:
    """Breadth-first search over sigma_i and sigma_i^-1. Returns (members, truncated)."""
    start = tuple(entries)
    seen = {start}
    queue = deque([start])
    while queue:
        T = queue.popleft()
        for V in _neighbours(host, T):
            if V not in seen:
                if len(seen) >= node_cap:
                    return seen, True
                seen.add(V)
                queue.append(V)
    return seen, False


def orbit(T: Factorization | tuple[int, ...], node_cap: int = DEFAULT_NODE_CAP, host: GroupTable | None = None) -> OrbitReport:
    if isinstance(T, Factorization):
        host, entries = T.host, T.entries
    else:
        entries = tuple(T)
        if host is None:
            raise TypeError("a raw tuple needs host=")
    members, truncated = orbit_members(host, entries, node_cap)
    support = frozenset(g for V in members for g in V)
    return OrbitReport(min(members), len(members), support, truncated)


@dataclass(frozen=True)
class ClassMultiset:
    """Multiset of conjugacy classes of the generated subgroup.

    Each class is identified by its sorted element ids, so no labels are
    involved and equality is exact.
    """

    counts: tuple[tuple[tuple[int, ...], int], ...]

    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.counts)


def class_multiset(sub: SubgroupRecord, entries: Iterable[int]) -> ClassMultiset:
    tally = Counter(sub.own_classes[sub.class_of[g]] for g in entries)
    return ClassMultiset(tuple(sorted(tally.items())))


@dataclass(frozen=True)
class Invariants:
    product: int
    subgroup: SubgroupRecord
    classes: ClassMultiset

    def key(self) -> tuple:
        return (self.product, self.subgroup.element_ids, self.classes.counts)


def invariants_of(T: Factorization) -> Invariants:
    """Product, generated subgroup and class multiset: constant on Hurwitz orbits."""
    sub = closure(T.host, T.entries)
    return Invariants(T.product(), sub, class_multiset(sub, T.entries))
