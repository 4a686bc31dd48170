import json
from collections import Counter
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g7hurwitz.cache import canonical_json
from g7hurwitz.cyclo import I, ONE, ZERO
from g7hurwitz.matgroup import (
    EXPECTED_LATTICE_COUNTS,
    Mat2,
    UnknownSubgroupError,
    WordParseError,
    check_lattice_shape,
    class_labels,
    closure,
    identify_subgroup,
    is_reflection,
    is_reflection_matrix,
    parse_factorization,
    parse_word,
    table_from_json,
    table_to_json,
    z3_pairing,
)

FIXTURE = Path(__file__).parent / "fixtures" / "g7_table.json"


# -- floating-point oracle, independent of the exact layer ---------------------


def _float_generators():
    r3 = np.sqrt(3.0)
    p, q = (1 + r3) / 4, (r3 - 1) / 4
    t = np.array([[p + q * 1j, p + q * 1j], [q - p * 1j, -q + p * 1j]])
    return {"s": np.diag([1.0 + 0j, -1.0]), "t": t, "u": t.T.copy()}


def _key(m):
    return tuple(np.round(m, 8).ravel().tolist())


def _float_closure(gens):
    start = np.eye(2, dtype=complex)
    seen = {_key(start): start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = m @ g
                k = _key(p)
                if k not in seen:
                    seen[k] = p
                    nxt.append(p)
        frontier = nxt
    return list(seen.values())


@pytest.fixture(scope="module")
def float_g7():
    return _float_closure(list(_float_generators().values()))


def _is_float_reflection(m):
    return not np.allclose(m, np.eye(2)) and abs(np.linalg.det(m - np.eye(2))) < 1e-9


def test_float_oracle_agrees_on_order_and_reflections(host, float_g7):
    assert len(float_g7) == 144 == host.order
    refl = [m for m in float_g7 if _is_float_reflection(m)]
    assert len(refl) == 22 == len(host.reflections)
    # conjugacy classes of reflections in the float oracle
    keys = {_key(r) for r in refl}
    classes = []
    left = set(keys)
    lookup = {_key(r): r for r in refl}
    while left:
        k = left.pop()
        r = lookup[k]
        cls = {_key(np.linalg.inv(g) @ r @ g) for g in float_g7}
        left -= cls
        classes.append(len(cls))
    assert sorted(classes) == sorted(len(c) for c in host.classes) == [4, 4, 4, 4, 6]


def test_exact_elements_match_float_oracle(host, float_g7):
    exact = {_key(np.array(m.to_complex())) for m in host.elements}
    assert exact == {_key(m) for m in float_g7}


def test_mult_table_matches_float_products(host):
    mats = np.array([m.to_complex() for m in host.elements])
    prods = np.einsum("aij,bjk->abik", mats, mats)
    mult = np.asarray(host.mult)
    assert np.allclose(prods, mats[mult], atol=1e-9)
    assert np.allclose(np.einsum("aij,ajk->aik", mats, mats[np.asarray(host.inv)]), np.eye(2), atol=1e-9)


# -- golden fixture ----------------------------------------------------------


def test_golden_table_is_bit_exact(host):
    assert canonical_json(table_to_json(host)) + "\n" == FIXTURE.read_text()


def test_golden_table_roundtrip(host):
    back = table_from_json(json.loads(FIXTURE.read_text()))
    assert back.mult == host.mult
    assert back.labels == host.labels
    assert [m.serialize() for m in back.elements] == [m.serialize() for m in host.elements]


def test_table_json_rejects_other_versions(host):
    data = table_to_json(host) | {"version": 99}
    with pytest.raises(ValueError):
        table_from_json(data)


# -- construction facts ------------------------------------------------------


def test_identity_is_id_zero(host):
    assert host.elements[0].is_identity()


def test_g7_class_structure(host):
    sizes = {host.labels[k]: len(c) for k, c in enumerate(host.classes)}
    assert sizes == {"S": 6, "R1": 4, "R1^-1": 4, "R2": 4, "R2^-1": 4}
    for k, cls in enumerate(host.classes):
        want = 2 if host.labels[k] == "S" else 3
        assert all(host.element_orders[g] == want for g in cls)


def test_stu_relation(host):
    s, t, u = (host.generators[x] for x in "stu")
    assert host.product([s, t, u]) == host.product([u, s, t]) == host.product([t, u, s])


def test_is_reflection_examples(host):
    assert not is_reflection_matrix(Mat2.identity())
    assert is_reflection_matrix(Mat2(ONE, ZERO, ZERO, -ONE))
    assert not is_reflection_matrix(-Mat2.identity())
    assert is_reflection(host, host.generators["s"])
    assert not is_reflection(host, 0)


@pytest.mark.parametrize(
    "word_gens, order, n_refl, label",
    [
        (["t", "s*t*s"], 24, 8, "G4"),
        (["t", "u"], 72, 16, "G5"),
        (["s", "t"], 48, 14, "G6"),
        (["s", "t*s*t^-1", "t^-1*s*t"], 16, 6, "G(4,2,2)"),
        (["t"], 3, 2, "Z3"),
    ],
)
def test_closure_examples(host, word_gens, order, n_refl, label):
    rec = closure(host, [parse_word(host, w) for w in word_gens])
    assert (rec.order, len(rec.reflections), rec.iso_class) == (order, n_refl, label)


def test_g6_order2_reflections_form_one_class(host):
    rec = closure(host, [parse_word(host, w) for w in ("s", "t")])
    two = [c for c in rec.own_classes if host.element_orders[c[0]] == 2]
    assert [len(c) for c in two] == [6]


def test_g422_three_classes_and_monomial_entries(named):
    rec = named["G422"]
    assert sorted(len(c) for c in rec.own_classes) == [2, 2, 2]
    host = rec.host
    units = {ONE, -ONE, I, -I}
    for g in rec.element_ids:
        m = host.elements[g]
        diag = m.b.is_zero() and m.c.is_zero()
        anti = m.a.is_zero() and m.d.is_zero()
        assert diag != anti
        pair = (m.a, m.d) if diag else (m.b, m.c)
        assert set(pair) <= units
        assert pair[0] * pair[1] in {ONE, -ONE}


def test_d2x4_uses_two_of_three_s_classes(host, lat):
    for k, rec in enumerate(lat.records):
        if rec.iso_class == "D2x4":
            labels = class_labels(host, rec)
            assert len(labels) == 2 and all(lb in ("S1", "S2", "S3") for lb in labels)


def test_identify_rejects_unknown_shape(host):
    rec = closure(host, [host.generators["s"]])
    fake = type(rec)(host, rec.element_ids + (0,), rec.reflections, rec.own_classes, None)
    with pytest.raises(UnknownSubgroupError):
        identify_subgroup(fake)


# -- census and lattice --------------------------------------------------------


def test_census_counts(lat):
    assert lat.counts() == EXPECTED_LATTICE_COUNTS


def test_z2_count_equals_order_two_reflections(host, lat):
    assert lat.counts()["Z2"] == sum(host.element_orders[g] == 2 for g in host.reflections)


def test_lattice_matches_expected_shape(lat):
    assert check_lattice_shape(lat) == []


def test_lattice_covers(lat):
    name = dict(enumerate(lat.names))
    kids = {lat.names[k]: sorted(name[c] for c in lat.children(k)) for k in range(len(lat.records))}
    assert kids["G7"] == ["G5", "G6a", "G6b"]
    assert kids["G6a"] == ["G422", "G4a"] and kids["G6b"] == ["G422", "G4b"]
    assert Counter(lat.records[c].iso_class for c in lat.children(lat.names.index("G5"))) == {"G4": 2, "Z3xZ3": 4}


def test_lattice_json_and_dot(lat):
    data = lat.to_json()
    assert len(data["nodes"]) == 31 and len(data["edges"]) == len(lat.covers)
    assert json.loads(json.dumps(data)) == data
    dot = lat.to_dot()
    assert dot.startswith("graph") and dot.count(" -- ") == len(lat.covers)


def test_z3_pairing_is_a_bijection(host):
    pairing = z3_pairing(host)
    assert len(pairing) == 4
    assert all(len(v) == 1 for v in pairing.values())
    assert len({v[0] for v in pairing.values()}) == 4


def test_host_class_labels_in_subgroups(host, named):
    assert class_labels(host, named["G7"]) == [host.labels[k] for k in range(5)]
    assert sorted(class_labels(host, named["G4a"])) == ["R2", "R2^-1"]
    assert sorted(class_labels(host, named["G6b"])) == ["R1", "R1^-1", "S"]


# -- words ---------------------------------------------------------------------


def test_parse_word_is_left_to_right(host):
    s, t = host.generators["s"], host.generators["t"]
    assert parse_word(host, "t*s*t^-1") == host.product([t, s, host.inv[t]])
    assert parse_factorization(host, "t, u, s, t^-1") == tuple(parse_word(host, w) for w in ("t", "u", "s", "t^-1"))


@pytest.mark.parametrize("bad", ["", "x", "t**s", "t^2", "t,"])
def test_parse_errors(host, bad):
    with pytest.raises(WordParseError):
        parse_factorization(host, bad)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_shortest_words_parse_back(host, data):
    g = data.draw(st.integers(0, host.order - 1))
    word = host.word(g)
    assert word == "1" or parse_word(host, word) == g


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_group_axioms(host, data):
    a, b, c = (data.draw(st.integers(0, 143)) for _ in range(3))
    m = host.mult
    assert m[m[a][b]][c] == m[a][m[b][c]]
    assert m[a][host.inv[a]] == 0
    assert m[0][a] == a == m[a][0]


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_closure_is_a_subgroup(host, data):
    gens = data.draw(st.lists(st.sampled_from(host.reflections), min_size=1, max_size=3))
    rec = closure(host, gens)
    ids = rec.element_set
    assert all(host.mult[a][b] in ids for a in ids for b in gens)
    assert 144 % rec.order == 0
