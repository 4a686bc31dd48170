import itertools
import random
from collections import defaultdict

import numpy as np
import pytest

from g7hurwitz import decider
from g7hurwitz.decider import (
    BudgetExceeded,
    HostMismatch,
    decide,
    decide_by_bfs,
    orbit_labels,
    verify_class_searchable,
    verify_generation_claims,
    verify_pair_orbits,
    verify_theorem,
)
from g7hurwitz.hurwitz import Factorization, hurwitz_move, orbit_members
from g7hurwitz.matgroup import build_g7, closure, parse_factorization

# orbit counts over all reflection tuples, cross-checked between the sparse
# component route and per-tuple python BFS before being frozen here
ORBIT_COUNTS = {
    ("G4a", 2): 26,
    ("G4a", 3): 46,
    ("G4a", 4): 60,
    ("G4a", 5): 72,
    ("G422", 2): 15,
    ("G422", 3): 26,
    ("G422", 4): 39,
    ("G422", 5): 54,
    ("G6a", 3): 112,
    ("G6a", 4): 171,
    ("G5", 4): 420,
    ("G7", 3): 370,
    ("G7", 4): 731,
}


def fact(host, text):
    return Factorization(host, parse_factorization(host, text))


def test_distinct_z3_copies(host):
    v = decide(fact(host, "t, t^-1"), fact(host, "u, u^-1"))
    assert not v.equivalent and v.reason == "different-subgroup"


def test_reflexive_and_move_invariant(host):
    T = fact(host, "t, u, s, t^-1")
    assert decide(T, T).equivalent
    assert decide(T, hurwitz_move(hurwitz_move(T, 1), 2)).equivalent


def test_different_products(host):
    v = decide(fact(host, "t, u"), fact(host, "u, t"))
    assert not v.equivalent and v.reason == "different-product"
    assert not decide_by_bfs(fact(host, "t, u"), fact(host, "u, t")).equivalent


def test_different_lengths(host):
    T, V = fact(host, "t, t^-1"), fact(host, "t, t^-1, t, t^-1")
    assert not decide(T, V).equivalent
    assert decide_by_bfs(T, V).reason == "different-length"


def test_host_mismatch(host):
    other = build_g7()
    with pytest.raises(HostMismatch):
        decide(fact(host, "s"), fact(other, "s"))


def test_random_g4_length3_criterion_implies_reachable(named):
    g4 = named["G4a"]
    host = g4.host
    rng = random.Random(7)
    hits = 0
    for _ in range(300):
        T = Factorization(host, tuple(rng.choice(g4.reflections) for _ in range(3)))
        V = Factorization(host, tuple(rng.choice(g4.reflections) for _ in range(3)))
        if decide(T, V).equivalent:
            hits += 1
            assert V.entries in orbit_members(host, T.entries)[0]
    assert hits > 0


def test_g422_pairwise_agreement_up_to_length4(named):
    """Criterion verdict equals the BFS verdict on every pair of generating tuples."""
    g = named["G422"]
    host = g.host
    for n in range(1, 5):
        tuples = [T for T in itertools.product(g.reflections, repeat=n) if closure(host, T).element_ids == g.element_ids]
        fibres = defaultdict(list)
        for T in tuples:
            fibres[host.product(T)].append(T)
        for group in fibres.values():
            orbit_of = {}
            for T in group:
                if T not in orbit_of:
                    members = orbit_members(host, T)[0]
                    for V in members:
                        orbit_of[V] = T
            for T, V in itertools.product(group, repeat=2):
                assert decide(Factorization(host, T), Factorization(host, V)).equivalent == (orbit_of[T] == orbit_of[V])


@pytest.mark.parametrize("name, n", [("G4a", 2), ("G4a", 3), ("G422", 3), ("G422", 4), ("G7", 2)])
def test_component_route_matches_python_bfs(named, name, n):
    c1, l1 = orbit_labels(named[name], n, "components")
    c2, l2 = orbit_labels(named[name], n, "bfs")
    assert c1 == c2
    # same partition: labels biject
    assert len(set(zip(l1.tolist(), l2.tolist()))) == c1


@pytest.mark.parametrize("key", sorted(ORBIT_COUNTS), ids=lambda k: f"{k[0]}-len{k[1]}")
def test_theorem_partitions_agree(named, key):
    name, n = key
    rep = verify_theorem(named[name], n)
    assert rep.ok
    assert rep.orbits_found == ORBIT_COUNTS[key]
    assert rep.tuples_examined == len(named[name].reflections) ** n


def test_theorem_bfs_method(named):
    rep = verify_theorem(named["G422"], 3, method="bfs")
    assert rep.ok and rep.orbits_found == ORBIT_COUNTS[("G422", 3)]


def test_theorem_check_detects_a_coarse_invariant(named, monkeypatch):
    real = decider._invariant_labels

    def product_only(space):
        labels, recs, sub_idx = real(space)
        ids = space.ids()
        prod = np.zeros(space.size, dtype=np.int64)
        for j in range(space.n):
            prod = space.host.mult_np[prod, ids[:, j]]
        _, coarse = np.unique(prod, return_inverse=True)
        return coarse.reshape(-1), recs, sub_idx

    monkeypatch.setattr(decider, "_invariant_labels", product_only)
    rep = verify_theorem(named["G4a"], 3)
    assert not rep.ok
    assert rep.counterexamples[0]["kind"] == "same-invariants-different-orbits"


def test_budget(named):
    with pytest.raises(BudgetExceeded):
        verify_theorem(named["G7"], 5, budget=1_000_000)


@pytest.mark.parametrize("name, n", [("G4a", 5), ("G4b", 5), ("G422", 4), ("G6a", 4), ("G6b", 4)])
def test_class_searchable(named, name, n):
    rep = verify_class_searchable(named[name], n)
    assert rep.ok and rep.details["failures"] == 0
    assert rep.details["generating_tuples_checked"] > 0


def test_class_search_fails_below_base_length(named):
    # at length 4 G4 is not yet class-searchable, so the checker must say so
    rep = verify_class_searchable(named["G4a"], 4)
    assert not rep.ok
    assert rep.details["failures"] == 216


def test_generation_claims(host):
    rep = verify_generation_claims(host)
    assert rep.ok
    d = rep.details
    assert d["g422_generation"] == {"generate": 27, "total": 27}
    assert d["g6a_generation"] == d["g6b_generation"] == {"generate": 48, "total": 48}
    assert d["g7_generation"] == {"generate": 384, "total": 384}
    assert d["g422_conjugation"] == {"hold": 36, "total": 36}


def test_pair_orbits(host):
    rep = verify_pair_orbits(host)
    assert rep.ok
    assert rep.details["G4a"] == {"same_class_pairs": 24, "cross_class_pairs": 24}


def test_report_json(named):
    data = verify_theorem(named["G4a"], 2).to_json()
    assert data["suite"] == "theorem" and data["partitions_agree"] and data["counterexamples"] == []
