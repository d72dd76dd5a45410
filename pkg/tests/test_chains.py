import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainalg.checks import ParseError, StructureError
from chainalg.chains import (
    CHAIN_LENGTH_CAP,
    BinaryExistence,
    alternating,
    enumerate_chains,
    ex_by_splitting,
    ex_word,
    format_rel,
    ideal_from_rel,
    parse_rel,
    validate_rel,
    verify_four_properties,
)

AB = ("a", "b")
ALL_PAIRS = list(itertools.product(AB, repeat=2))

RELS = {
    "alternating": alternating(),
    "free": BinaryExistence.from_pairs(AB, ALL_PAIRS, name="free"),
    "no-ab": BinaryExistence.from_pairs(AB, [("a", "a"), ("b", "a"), ("b", "b")], name="no-ab"),
    "dead-b": BinaryExistence.from_pairs(AB, [("a", "b"), ("a", "a")], name="dead-b"),
    "only-b": BinaryExistence.from_pairs(AB, [("b", "b")], exists=["b"], name="only-b"),
    "three": BinaryExistence.from_pairs("abc", [("a", "b"), ("b", "c"), ("c", "a"), ("c", "c")], name="three"),
}

# subsequence-closure, extension, empty-neutral, unit-length
EXPECTED_PROPERTIES = {
    "alternating": (True, True, True, True),
    "free": (True, True, True, True),
    "no-ab": (True, True, True, True),
    "dead-b": (True, False, True, True),
    "only-b": (True, True, True, True),
    "three": (True, True, True, True),
}


def words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def test_alternating_validates():
    assert validate_rel(alternating()).ok


def test_dead_letter_fails_extension_axioms():
    rel = BinaryExistence.from_pairs(AB, [("a", "a")], name="deadb")
    kinds = {(v.kind, v.witness) for v in validate_rel(rel).violations}
    assert ("right-extension", ("b",)) in kinds and ("left-extension", ("b",)) in kinds


def test_empty_alphabet_fails_existence_axioms():
    kinds = {v.kind for v in validate_rel(BinaryExistence((), frozenset(), frozenset(), "empty")).violations}
    assert {"exists-letter", "exists-pair"} <= kinds


def test_pair_with_missing_letter_is_flagged():
    rel = BinaryExistence.from_pairs(AB, [("a", "b"), ("b", "a")], exists=["a"])
    assert "ternary" in {v.kind for v in validate_rel(rel).violations}


def test_ex_word_examples():
    rel = alternating()
    assert ex_word(rel, "aba")
    assert not ex_word(rel, "aab")
    assert ex_word(rel, "")
    with pytest.raises(StructureError):
        ex_word(rel, "abz")


@pytest.mark.parametrize("name", sorted(RELS))
def test_binary_determination_up_to_length_8(name):
    rel = RELS[name]
    for w in words(rel.alphabet, 8 if len(rel.alphabet) == 2 else 6):
        assert ex_word(rel, w) == ex_by_splitting(rel, w), w


def test_alternating_chains_to_length_3():
    chains = enumerate_chains(alternating(), 3)
    assert ["".join(w) for w in chains] == ["a", "b", "ab", "ba", "aba", "bab"]


def test_chain_enumeration_small_cases():
    lonely = BinaryExistence.from_pairs(AB, [])
    assert ["".join(w) for w in enumerate_chains(lonely, 4)] == ["a", "b"]
    one = BinaryExistence.from_pairs("a", [("a", "a")])
    assert ["".join(w) for w in enumerate_chains(one, 3)] == ["a", "aa", "aaa"]
    with pytest.raises(ValueError):
        enumerate_chains(one, CHAIN_LENGTH_CAP + 1)


@pytest.mark.parametrize("name", sorted(RELS))
def test_chains_match_exhaustive_filter(name):
    rel = RELS[name]
    expected = sorted(
        (w for w in words(rel.alphabet, 5) if w and ex_word(rel, w)),
        key=lambda w: (len(w), [rel.alphabet.index(s) for s in w]),
    )
    assert enumerate_chains(rel, 5) == expected


@pytest.mark.parametrize("name", sorted(RELS))
def test_four_properties_match_expectations(name):
    props = verify_four_properties(RELS[name], 6)
    assert tuple(bool(v) for v in props.as_dict().values()) == EXPECTED_PROPERTIES[name]


def test_extension_failure_is_located_at_b():
    v = verify_four_properties(RELS["dead-b"], 5).extension
    assert v.witness == ("b",)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(ALL_PAIRS)), st.sampled_from(ALL_PAIRS))
def test_adding_a_pair_never_loses_chains(pairs, extra):
    small = BinaryExistence.from_pairs(AB, pairs)
    big = BinaryExistence.from_pairs(AB, set(pairs) | {extra})
    for n in range(1, 6):
        assert set(enumerate_chains(small, n)) <= set(enumerate_chains(big, n))


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(ALL_PAIRS)))
def test_chains_are_the_complement_of_the_ideal(pairs):
    rel = BinaryExistence.from_pairs(AB, pairs)
    res = ideal_from_rel(rel, 5)
    assert res.matches_ex
    chains = set(enumerate_chains(rel, 5))
    assert chains == {w for w in words(AB, 5) if w and w not in res.ideal}


def test_forbidden_ab_is_associative_not_prime():
    rel = BinaryExistence.from_pairs(AB, [("a", "a"), ("b", "a"), ("b", "b")])
    res = ideal_from_rel(rel, 8)
    assert res.two_sided and res.associative and res.matches_ex
    assert not res.prime and res.prime.witness == ("a", "b")


def test_words_containing_a_form_a_prime_ideal():
    rel = BinaryExistence.from_pairs(AB, [("b", "b")], exists=["b"])
    res = ideal_from_rel(rel, 6)
    assert res.two_sided and res.associative and res.prime


def test_free_rel_gives_empty_ideal():
    res = ideal_from_rel(RELS["free"], 5)
    assert res.ok and not res.ideal.forbidden_pairs


def test_rel_file_roundtrip(data):
    rel = parse_rel((data / "alternating.rel").read_text())
    assert rel == alternating()
    assert parse_rel(format_rel(rel)) == rel


@pytest.mark.parametrize(
    "text,needle",
    [
        ("alphabet a b\n", "rel <name>"),
        ("rel x\n", "alphabet"),
        ("rel x\nalphabet a\npair a z\n", "unknown symbol"),
        ("rel x\nalphabet a\nbogus\n", "unrecognized"),
    ],
)
def test_rel_parse_errors(text, needle):
    with pytest.raises(ParseError, match=needle):
        parse_rel(text)
