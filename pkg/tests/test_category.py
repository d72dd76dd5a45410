import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainalg.category import (
    BIG_UNIT,
    ERASER,
    Arrow,
    FiniteCategory,
    build_category,
    category_to_monoid,
    completion_report,
    find_category_isomorphism,
    format_category,
    parse_category,
    verify_associative_zero,
    verify_category,
)
from chainalg.checks import ParseError, StructureError
from chainalg.corpus import K2, categories, category
from chainalg.ideals import is_associative_ideal
from chainalg.monoid import verify_monoid

CORPUS = categories()


def test_corpus_has_the_required_shapes():
    names = {k.name for k in CORPUS}
    assert len(CORPUS) >= 10
    assert {"K2", "empty", "Z2", "chain3"} <= names
    assert any(len(k.objects) == 1 and len(k.arrows) > 1 for k in CORPUS)


@pytest.mark.parametrize("k", CORPUS, ids=lambda k: k.name)
def test_corpus_categories_validate(k):
    assert verify_category(k).ok


def test_k2_completion_table():
    mz, embed = category_to_monoid(K2)
    m = mz.monoid
    assert m.elements == (BIG_UNIT, "idA", "idB", "f", ERASER)
    f, ida, idb, z = embed["f"], embed["idA"], embed["idB"], mz.zero
    assert m.table[ida][f] == f and m.table[f][idb] == f
    assert m.table[f][ida] == z and m.table[idb][f] == z
    assert m.table[ida][idb] == z


@pytest.mark.parametrize("k", CORPUS, ids=lambda k: k.name)
def test_completion_is_sound(k):
    mz, embed = category_to_monoid(k)
    assert verify_monoid(mz.monoid).ok
    assert verify_associative_zero(mz)
    assert is_associative_ideal(mz.monoid, [mz.zero])
    assert len(set(embed.values())) == len(embed)
    t = mz.monoid.table
    for f, g in itertools.product(k.arrows, repeat=2):
        prod = t[embed[f.name]][embed[g.name]]
        if f.cod == g.dom:
            assert prod == embed[k.compose(f.name, g.name)]
        else:
            assert prod == mz.zero
    assert completion_report(k).ok


def test_empty_category_completes_to_two_elements():
    mz, embed = category_to_monoid(category("empty"))
    assert mz.monoid.elements == (BIG_UNIT, ERASER) and embed == {}


def test_missing_composite_is_reported():
    k = build_category("broken", ["A", "B", "C"], [("f", "A", "B"), ("g", "B", "C")])
    report = verify_category(k)
    assert [v.kind for v in report.violations] == ["missing composite"]
    assert report.violations[0].witness == ("f", "g")


def test_non_composable_composite_is_reported():
    k = build_category("bad", ["A", "B"], [("f", "A", "B"), ("g", "A", "B")], {("f", "g"): "f"})
    assert "composite of non-composable pair" in {v.kind for v in verify_category(k).violations}


def test_associativity_failure_is_reported():
    # g*g = h, g*h = g, h*g = h, h*h = h: (gg)g = hg = h but g(gg) = gh = g
    k = build_category(
        "nonassoc",
        ["A"],
        [("g", "A", "A"), ("h", "A", "A")],
        {("g", "g"): "h", ("g", "h"): "g", ("h", "g"): "h", ("h", "h"): "h"},
        {"A": "id"},
    )
    assert "associativity" in {v.kind for v in verify_category(k).violations}


def test_identity_law_failure_is_reported():
    k = FiniteCategory(
        "badid",
        ("A",),
        (Arrow("id", "A", "A"), Arrow("g", "A", "A")),
        {("id", "id"): "id", ("id", "g"): "id", ("g", "id"): "g", ("g", "g"): "g"},
        {"A": "id"},
    )
    assert "identity law" in {v.kind for v in verify_category(k).violations}


def test_dangling_reference_raises():
    k = FiniteCategory("bad", ("A",), (Arrow("f", "A", "Z"),), {}, {"A": "f"})
    with pytest.raises(StructureError):
        verify_category(k)


def test_parse_k2_file(data):
    k = parse_category((data / "k2.category").read_text())
    assert find_category_isomorphism(k, K2) is not None


@pytest.mark.parametrize("k", CORPUS, ids=lambda k: k.name)
def test_format_parse_roundtrip(k):
    again = parse_category(format_category(k))
    assert again.arrows == k.arrows
    assert dict(again.composition) == dict(k.composition)
    assert dict(again.identities) == dict(k.identities)


@pytest.mark.parametrize(
    "text,needle",
    [
        ("category X\nobjects A\n", "order diagrammatic"),
        ("category X\norder classical\nobjects A\n", "diagrammatic"),
        ("order diagrammatic\nobjects A\n", "category"),
        ("category X\norder diagrammatic\nobjects A\narrow f A B\n", "undeclared object"),
        ("category X\norder diagrammatic\nobjects A\ncompose f f = f\n", "unknown arrow"),
        ("category X\norder diagrammatic\nwhatever\n", "unrecognized"),
    ],
)
def test_parse_errors(text, needle):
    with pytest.raises(ParseError, match=needle):
        parse_category(text)


def test_isomorphism_distinguishes_corpus():
    for k, l in itertools.combinations(CORPUS, 2):
        assert find_category_isomorphism(k, l) is None, (k.name, l.name)
    for k in CORPUS:
        assert find_category_isomorphism(k, k) is not None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
def test_isomorphism_survives_renaming(k, rnd):
    names = list(k.arrow_names)
    shuffled = names[:]
    rnd.shuffle(shuffled)
    ren = {a: f"r{i}" for i, a in enumerate(shuffled)}
    objs = {o: f"O{i}" for i, o in enumerate(k.objects)}
    renamed = FiniteCategory(
        "renamed",
        tuple(objs[o] for o in reversed(k.objects)),
        tuple(Arrow(ren[a.name], objs[a.dom], objs[a.cod]) for a in reversed(k.arrows)),
        {(ren[f], ren[g]): ren[h] for (f, g), h in k.composition.items()},
        {objs[o]: ren[i] for o, i in k.identities.items()},
    )
    assert verify_category(renamed).ok
    maps = find_category_isomorphism(k, renamed)
    assert maps is not None
    obj_map, arr_map = maps
    assert sorted(arr_map.values()) == sorted(ren.values())
    for a in k.arrows:
        image = renamed.arrow(arr_map[a.name])
        assert (image.dom, image.cod) == (obj_map[a.dom], obj_map[a.cod])
    for (f, g), h in k.composition.items():
        assert renamed.compose(arr_map[f], arr_map[g]) == arr_map[h]
