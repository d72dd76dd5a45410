import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainalg.corpus import M3, M4, NILPOTENT4, TWO, ideal_corpus, k2_monoid
from chainalg.ideals import (
    BoundedFreeMonoid,
    DegenerateIdealError,
    NotAssociativeIdealError,
    NotIdealError,
    all_ideals,
    congruence_classes,
    contains_factor,
    contains_letter,
    enumerate_associative_ideals,
    generated_ideal,
    is_associative_ideal,
    is_ideal,
    is_local_unit,
    is_prime_ideal,
    quotient_to_unit,
    quotient_to_zero,
    verify_pushout,
    weak_simplicity_check,
)
from chainalg.monoid import check_hom, small_monoids, verify_monoid


def naive_associative(m, q):
    others = [x for x in range(len(m)) if x != m.unit]
    t = m.table
    return all(
        not (t[t[a][b]][c] in q) or t[a][b] in q or t[b][c] in q
        for a, b, c in itertools.product(others, repeat=3)
    )


def naive_prime(m, q):
    t = m.table
    return all((t[x][y] in q) == (x in q or y in q) for x in range(len(m)) for y in range(len(m)))


CORPUS_IDEALS = [(m, q) for m in small_monoids(3) + [M4, NILPOTENT4] for q in all_ideals(m)]


def test_m3_zero_is_associative_not_prime():
    q = M3.indices(["0"])
    assert is_associative_ideal(M3, q)
    v = is_prime_ideal(M3, q)
    assert not v and v.witness == ("a", "a")


def test_nilpotent_zero_fails_associativity_with_triple():
    v = is_associative_ideal(NILPOTENT4, ["0"])
    assert not v and v.witness == ("a", "a", "a")


def test_m4_ideal_is_associative():
    assert is_associative_ideal(M4, ["q1", "q2"])
    assert not is_associative_ideal(M4, ["q2"])


def test_predicates_agree_with_naive_oracles():
    for m, q in CORPUS_IDEALS:
        assert bool(is_associative_ideal(m, q)) == naive_associative(m, q)
        assert bool(is_prime_ideal(m, q)) == naive_prime(m, q)


def test_prime_implies_associative_on_small_corpus():
    for m, q in CORPUS_IDEALS:
        if is_prime_ideal(m, q):
            assert is_associative_ideal(m, q), (m.name, q)


def test_degenerate_subsets_are_rejected():
    with pytest.raises(DegenerateIdealError):
        is_associative_ideal(M3, [])
    with pytest.raises(DegenerateIdealError):
        is_prime_ideal(M3, ["E", "0"])


def test_non_ideal_is_rejected_with_witness():
    assert not is_ideal(M3, ["a"])
    with pytest.raises(NotIdealError) as info:
        is_associative_ideal(M3, ["a"])
    assert info.value.witness


def test_generated_ideal():
    assert generated_ideal(M3, ["a"]).names() == ("a", "0")
    assert generated_ideal(M4, ["q1"]).names() == ("q1", "q2")
    with pytest.raises(DegenerateIdealError, match="whole monoid"):
        generated_ideal(M3, ["E"])


def test_generated_ideal_is_least():
    for m in small_monoids(3):
        for x in range(len(m)):
            if x == m.unit:
                continue
            try:
                g = generated_ideal(m, [x]).members
            except DegenerateIdealError:
                continue
            assert is_ideal(m, g)
            assert all(g <= q for q in all_ideals(m) if x in q)


def test_enumerate_associative_ideals_flags_primes():
    found = {q.names(): q.prime for q in enumerate_associative_ideals(M3)}
    assert found == {("0",): False, ("a", "0"): True}


def test_local_units():
    q = M3.indices(["0"])
    assert [e for e in range(len(M3)) if is_local_unit(M3, q, e)] == [M3.unit]
    k, zero = k2_monoid()
    assert {k.elements[e] for e in range(len(k)) if is_local_unit(k, zero, e)} == {"E^", "idA", "idB"}


@pytest.mark.parametrize("label,m,q", ideal_corpus())
def test_quotient_to_zero_is_injective_off_q(label, m, q):
    res = quotient_to_zero(m, q)
    assert verify_monoid(res.quotient).ok
    assert check_hom(res.projection).ok
    proj = res.projection.map
    assert {proj[x] for x in q} == {res.zero}
    outside = [proj[x] for x in range(len(m)) if x not in q]
    assert len(set(outside)) == len(outside) and res.zero not in outside
    assert set(proj) == set(range(len(res.quotient)))
    assert is_associative_ideal(res.quotient, [res.zero])


@pytest.mark.parametrize("label,m,q", ideal_corpus())
def test_quotient_to_unit_is_trivial(label, m, q):
    assert len(quotient_to_unit(m, q)) == 1


def test_quotient_refuses_non_associative_ideal():
    with pytest.raises(NotAssociativeIdealError):
        quotient_to_zero(NILPOTENT4, ["0"])


def test_congruence_closure_is_a_congruence():
    classes = congruence_classes(M4, [(1, 2)])
    for x, y in itertools.product(range(len(M4)), repeat=2):
        if classes[x] == classes[y]:
            for z in range(len(M4)):
                assert classes[M4.table[x][z]] == classes[M4.table[y][z]]
                assert classes[M4.table[z][x]] == classes[M4.table[z][y]]


@pytest.mark.parametrize("m,q", [(M3, ["0"]), (M4, ["q1", "q2"]), (M3, ["a", "0"])])
def test_pushout_over_small_corpus(m, q):
    w = verify_pushout(m, q)
    assert w.commutes
    assert w.ok, w.counterexample()
    assert sum(r.pairs for r in w.records) > 0


def test_pushout_against_two_element_target_counts_mediators():
    w = verify_pushout(M3, ["0"], [TWO])
    assert w.records[0].mediator_counts and w.records[0].unique


def test_weak_simplicity():
    assert weak_simplicity_check(M3, ["0"])
    assert weak_simplicity_check(M3, ["0"], allow_unit_witness=True)
    v = weak_simplicity_check(M3, ["0"], allow_unit_witness=False)
    assert not v and v.witness == ("a",)


# free monoids, bounded


@pytest.mark.parametrize("bound", range(2, 9))
def test_factor_ab_is_associative_not_prime(bound):
    f = BoundedFreeMonoid(("a", "b"), bound)
    q = contains_factor(("a", "b"))
    assert is_ideal(f, q)
    assert is_associative_ideal(f, q)
    v = is_prime_ideal(f, q)
    assert not v and v.witness == ("a", "b")


def test_letter_ideal_is_prime():
    f = BoundedFreeMonoid(("a", "b"), 6)
    assert is_prime_ideal(f, contains_letter("a"))
    assert is_associative_ideal(f, contains_letter("a"))


def test_long_factor_is_not_associative():
    f = BoundedFreeMonoid(("a", "b"), 4)
    v = is_associative_ideal(f, contains_factor(("a", "b", "a")))
    assert not v


def test_bounded_free_word_counts():
    f = BoundedFreeMonoid(("a", "b"), 3)
    assert len(list(f.words())) == 1 + 2 + 4 + 8


@settings(max_examples=25, deadline=None)
@given(st.text(alphabet="ab", min_size=1, max_size=3))
def test_factor_ideals_are_ideals(factor):
    f = BoundedFreeMonoid(("a", "b"), 5)
    assert is_ideal(f, contains_factor(tuple(factor)))
