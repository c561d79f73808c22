import json
import random

import pytest

from conftest import fixture_lines, park_word
from oracles import brute_family
from whirling.errors import BadProduct, Crossing, LabelOrder, NotMember, NotTree, ParseError
from whirling.orbits import orbit_of, orbit_partition
from whirling.parking import (
    LabeledTree,
    TranspositionFactorization,
    check_tree,
    chords_cross,
    conjugate_all,
    conjugate_factorization,
    factorization_to_park,
    factorization_to_tree,
    park_orbit_rows,
    park_to_factorization,
    parse_factorization,
    wbar,
)
from whirling.whirl import WhirlOrder, apply_order, sweep_orders
from whirling.words import FamilySpec, enumerate_family, make_word


def fac(text, n=None):
    return parse_factorization(text, n)


def test_wbar_examples():
    assert str(wbar(park_word("1332"))) == "3321"
    assert str(wbar(park_word("2141"))) == "1413"
    for n in range(2, 7):
        assert wbar(park_word("1" * n)).values == (1,) * (n - 1) + (2,)
    with pytest.raises(NotMember):
        wbar(park_word("2222"))


def test_wbar_power_is_whirl():
    for n in range(1, 7):
        fam = FamilySpec.park(n)
        for f in enumerate_family(fam).words:
            g = f
            for _ in range(n):
                g = wbar(g)
            assert g == apply_order(fam, f, WhirlOrder.identity(n))


def test_factorization_examples():
    assert park_to_factorization(park_word("1332")) == fac("(15)(34)(35)(23)")
    assert str(park_to_factorization(park_word("1332"))) == "(15)(34)(35)(23)"
    assert park_to_factorization(park_word("111")) == fac("(12)(13)(14)")
    assert factorization_to_park(fac("(23)(24)(12)")) == park_word("221")
    assert factorization_to_park(fac("(12)(13)(14)")) == park_word("111")
    assert factorization_to_park(fac("(15)(34)(35)(23)")) == park_word("1332")


@pytest.mark.parametrize("name", ["fig06_park3_factorizations.txt", "fig07_park6_factorizations.txt"])
def test_factorization_tables(name):
    for line in fixture_lines(name):
        w, f = line.split("\t")
        assert str(park_to_factorization(park_word(w))) == f
        assert str(factorization_to_park(fac(f))) == w


def test_factorization_rows_follow_orbit():
    rows = [line.split("\t") for line in fixture_lines("fig07_park6_factorizations.txt")]
    assert [str(w) for w in park_orbit_rows(park_word(rows[0][0]))] == [w for w, _ in rows]
    for (_, a), (_, b) in zip(rows, rows[1:]):
        assert conjugate_all(fac(a)) == fac(b)


def test_round_trip_and_products():
    for n in range(1, 7):
        for f in enumerate_family(FamilySpec.park(n)).words:
            t = park_to_factorization(f)
            assert t.is_long_cycle()
            assert factorization_to_park(t) == f


def test_long_cycle_convention():
    t = fac("(15)(34)(35)(23)")
    perm = t.product()
    assert perm[1:] == [5, 1, 2, 3, 4]
    assert not fac("(23)(15)(34)(35)").is_long_cycle()
    with pytest.raises(BadProduct):
        factorization_to_park(fac("(12)(12)(13)"))


def test_factorization_parsing():
    assert fac("(1 5)(3 4)(3 5)(2 3)") == fac("(15)(34)(35)(23)")
    assert fac("(5 1)(4 3)(3 5)(2 3)") == fac("(15)(34)(35)(23)")
    assert str(fac("(1 10)" + "(2 3)" * 8 + "(1 2)")).startswith("(1 10)(2 3)")
    for bad in ("", "(1 2", "(12)x", "(1 2 3)", "(a b)"):
        with pytest.raises(ParseError):
            fac(bad)
    with pytest.raises(BadProduct):
        fac("(1 6)(2 3)(3 4)(4 5)")
    with pytest.raises(BadProduct):
        TranspositionFactorization(3, ((1, 2), (2, 3)))


def test_conjugation():
    t = fac("(15)(34)(35)(23)")
    c = conjugate_factorization(t)
    assert c == fac("(34)(35)(23)(12)")
    assert factorization_to_park(c) == wbar(park_word("1332"))
    with pytest.raises(BadProduct):
        conjugate_factorization(fac("(12)(12)(13)"))


def test_conjugation_orders():
    for n in range(2, 6):
        for f in enumerate_family(FamilySpec.park(n)).words:
            t = park_to_factorization(f)
            g = t
            for step in range(1, n * (n + 1) + 1):
                g = conjugate_factorization(g)
                assert g.is_long_cycle()
                if step == n:
                    assert g == conjugate_all(t)
                    assert factorization_to_park(g) == apply_order(FamilySpec.park(n), f, WhirlOrder.identity(n))
            assert g == t


def test_orbit_structure_under_orders():
    rng = random.Random(3)
    for n in range(2, 6):
        fam = FamilySpec.park(n)
        orders = [WhirlOrder.identity(n), WhirlOrder.reversal(n)] + [WhirlOrder.random(n, rng) for _ in range(3)]
        for order in orders:
            parts = orbit_partition(fam, order)
            assert len(parts) * (n + 1) ** 2 == (n + 1) ** n
            for orbit in parts:
                assert orbit.length == n + 1
                for i in range(1, n + 1):
                    assert sum(w[i] == 1 for w in orbit.words) == 2


def test_park_census_size():
    for n in range(1, 6):
        assert enumerate_family(FamilySpec.park(n)).cardinality == (n + 1) ** (n - 1)
        assert len(brute_family("park", n, n, None)) == (n + 1) ** (n - 1)


# -- trees --------------------------------------------------------------------------------

def test_tree_of_1332():
    tree = factorization_to_tree(fac("(15)(34)(35)(23)"))
    assert tree.edges == ((1, 1, 5), (2, 3, 4), (3, 3, 5), (4, 2, 3))
    assert tree.to_text().splitlines() == ["1: 1", "2: 4", "3: 2 3 4", "4: 2", "5: 1 3"]
    doc = json.loads(tree.to_json())
    assert doc["edges"][0] == {"label": 1, "a": 1, "b": 5}


def test_star_tree():
    tree = factorization_to_tree(fac("(12)(13)(14)"))
    assert {a for _, a, _ in tree.edges} == {1}


def test_tree_rotation_along_orbit():
    rows = park_orbit_rows(park_word("1332"))
    assert [str(w) for w in rows] == ["1332", "1413", "2124", "3111", "4221"]
    trees = [factorization_to_tree(park_to_factorization(w)) for w in rows]
    for a, b in zip(trees, trees[1:] + trees[:1]):
        assert a.rotated(1).edge_set() == b.edge_set()


def test_all_trees_valid():
    for n in range(1, 6):
        for f in enumerate_family(FamilySpec.park(n)).words:
            check_tree(factorization_to_tree(park_to_factorization(f)))


def test_chords_cross():
    assert chords_cross((1, 3), (2, 4))
    assert not chords_cross((1, 3), (3, 5))
    assert not chords_cross((1, 4), (2, 3))
    assert chords_cross((4, 2), (1, 3))


def test_tree_errors():
    with pytest.raises(NotTree):
        check_tree(LabeledTree(3, ((1, 1, 2), (2, 2, 3), (3, 1, 3))))
    with pytest.raises(NotTree):
        check_tree(LabeledTree(3, ((1, 1, 2), (2, 2, 3))))
    with pytest.raises(Crossing):
        check_tree(LabeledTree(3, ((1, 1, 3), (2, 2, 4), (3, 1, 2))))
    with pytest.raises(LabelOrder):
        check_tree(LabeledTree(3, ((3, 1, 2), (2, 1, 3), (1, 1, 4))))
    with pytest.raises(BadProduct):
        factorization_to_tree(fac("(12)(12)(13)"))
