import pytest

from chainalg.bridge import (
    PartialCompositionStructure,
    adjoin_local_unit,
    build_and_verify_R,
    check_unit_coverage,
    local_units,
    monoid_to_partial,
    partial_structure,
    partial_to_category,
    roundtrip_category,
    roundtrip_line,
    roundtrip_monoid,
)
from chainalg.category import category_to_monoid, find_category_isomorphism
from chainalg.checks import StructureError
from chainalg.corpus import K2, M3, M4, NILPOTENT4, TRIVIAL, categories, category, k2_monoid
from chainalg.ideals import DegenerateIdealError, all_ideals, is_associative_ideal, is_local_unit
from chainalg.monoid import MonoidHom, check_hom, small_monoids, verify_monoid

CORPUS = categories()


def names(m, idx):
    return set(m.names(idx))


def test_local_units_of_k2_monoid():
    m, q = k2_monoid()
    assert names(m, local_units(m, q)) == {"E^", "idA", "idB"}


def test_local_units_of_m3():
    assert names(M3, local_units(M3, ["0"])) == {"E"}


@pytest.mark.parametrize("m", small_monoids(3) + [M4], ids=lambda m: m.name)
def test_unit_is_always_local(m):
    for q in all_ideals(m):
        if is_associative_ideal(m, q):
            assert m.unit in local_units(m, q)


def test_unit_coverage():
    m, q = k2_monoid()
    assert check_unit_coverage(m, q)
    v = check_unit_coverage(M3, ["0"])
    assert not v and v.witness == ("a",)
    assert check_unit_coverage(M3, ["0"], include_unit=True)


def test_adjoin_local_unit_to_m3():
    ext, u = adjoin_local_unit(M3, ["0"])
    assert len(ext) == 4 and ext.elements[u] == "u"
    assert verify_monoid(ext).ok
    q = ext.indices(["0"])
    assert is_local_unit(ext, q, u)
    for x in range(len(ext)):
        if x != ext.unit:
            assert ext.table[u][x] == x and ext.table[x][u] == x
    # the inclusion M -> M1 is an injective homomorphism
    assert check_hom(MonoidHom(M3, ext, tuple(range(len(M3))))).ok


def test_adjoining_twice_keeps_only_the_newest_unit_local():
    ext, u = adjoin_local_unit(M3, ["0"])
    ext2, v = adjoin_local_unit(ext, ext.indices(["0"]))
    q = ext2.indices(["0"])
    assert ext2.elements[v] == "u'"
    assert is_local_unit(ext2, q, v)
    # u*v = u, so u no longer acts as identity on the second fresh element
    assert not is_local_unit(ext2, q, u)


def test_adjoin_refuses_trivial_monoid():
    with pytest.raises(DegenerateIdealError):
        adjoin_local_unit(TRIVIAL, [])


def test_extension_breaks_associativity_of_the_ideal():
    ext, u = adjoin_local_unit(M3, ["0"])
    v = is_associative_ideal(ext, ext.indices(["0"]))
    assert not v and v.witness == ("a", "u", "a")


def test_k2_partial_structure():
    m, q = k2_monoid()
    p = monoid_to_partial(m, q)
    assert set(p.carrier) == {"idA", "idB", "f"}
    assert set(p.product) == {("idA", "idA"), ("idB", "idB"), ("idA", "f"), ("f", "idB")}


@pytest.mark.parametrize("m,q", [(M3, ["0"]), (M4, ["q1", "q2"])])
def test_single_element_carriers_have_no_products(m, q):
    p = monoid_to_partial(m, q)
    assert p.carrier == ("a",) and not p.product


def test_monoid_to_partial_refuses_non_associative_ideal():
    with pytest.raises(ValueError, match="a a a"):
        monoid_to_partial(NILPOTENT4, ["0"])


def test_m3_diagnosis_and_its_change_after_adjoining_a_unit():
    before = partial_to_category(monoid_to_partial(M3, ["0"]))
    assert not before.ok
    assert before.diagnosis == "no left local unit for a"
    ext, _ = adjoin_local_unit(M3, ["0"])
    after = partial_to_category(partial_structure(ext, ext.indices(["0"])))
    assert not after.ok
    assert after.diagnosis.startswith("weak category: missing composite a a")


def test_weakly_associative_structure_need_not_give_a_category():
    p = monoid_to_partial(M3, ["0"])
    assert p.weak_associativity()
    assert not partial_to_category(p).ok


def test_two_candidate_units_are_diagnosed():
    # not reachable from a monoid: e1 x = e2 x = x forces e1 e2 outside Q, hence e1 = e2
    p = PartialCompositionStructure(
        ("e1", "e2", "x"),
        {("e1", "e1"): "e1", ("e2", "e2"): "e2", ("e1", "x"): "x", ("e2", "x"): "x", ("x", "e1"): "x"},
        frozenset({"e1", "e2"}),
        "hand",
    )
    out = partial_to_category(p)
    assert out.diagnosis == "multiple left local units for x: e1,e2"


@pytest.mark.parametrize("k", CORPUS, ids=lambda k: k.name)
def test_category_roundtrip(k):
    assert roundtrip_category(k) == ("OK", "")
    mz, _ = category_to_monoid(k)
    out = partial_to_category(monoid_to_partial(mz.monoid, [mz.zero]))
    assert out.ok and out.forced
    assert find_category_isomorphism(out.category, k) is not None


def test_monoid_side_roundtrips():
    m, q = k2_monoid()
    assert roundtrip_monoid(m, q) == ("OK", "")
    assert roundtrip_monoid(M3, ["0"]) == ("WEAK", "no left local unit for a")
    status, detail = roundtrip_monoid(NILPOTENT4, ["0"])
    assert status == "FAIL" and "a a a" in detail
    assert roundtrip_line("K2", "OK", "") == "ROUNDTRIP K2 OK"


def test_ideal_associativity_matches_weak_associativity():
    pool = small_monoids(3) + [M4, NILPOTENT4]
    checked = 0
    for m in pool:
        for q in all_ideals(m):
            try:
                p = partial_structure(m, q)
            except StructureError:
                continue
            assert bool(is_associative_ideal(m, q)) == bool(p.weak_associativity()), (m.name, q)
            checked += 1
    assert checked > 5


@pytest.mark.parametrize("k", CORPUS, ids=lambda k: k.name)
def test_relation_r_on_corpus(k):
    mz, _ = category_to_monoid(k)
    r = build_and_verify_R(mz.monoid, [mz.zero], k)
    assert r.ok, r.lines(k.name)
    assert r.unit_image == "E^" and r.zero_image == "0^"


def test_relation_r_mismatch_is_reported():
    r = build_and_verify_R(M3, ["0"], category("empty"))
    failed = {c.name: c.detail for c in r.clauses if not c.ok}
    assert failed["carrier-to-arrows"] == "1 vs 0"
    assert "CHECK M3:R:carrier-to-arrows FAIL 1 vs 0" in r.lines("M3")


def test_relation_r_on_empty_category_is_vacuous():
    k = category("empty")
    mz, _ = category_to_monoid(k)
    assert build_and_verify_R(mz.monoid, [mz.zero], k).ok


def test_relation_r_pairs_k2_arrows_with_themselves():
    m, q = k2_monoid()
    r = build_and_verify_R(m, q, K2)
    assert {("f", "f"), ("idA", "idA"), ("idB", "idB"), ("E^", "E^"), ("0^", "0^")} == set(r.pairs)
