"""Built-in monoids, ideals and categories used as the default test corpus."""

from __future__ import annotations

from chainalg.category import FiniteCategory, build_category, category_to_monoid
from chainalg.monoid import FiniteMonoid, make_monoid

TRIVIAL = make_monoid(["E"], "E", [["E"]], "trivial")

# a*a = E
CYCLIC2 = make_monoid(["E", "a"], "E", [["E", "a"], ["a", "E"]], "Z2")

# a*a = a
SEMILATTICE2 = make_monoid(["E", "a"], "E", [["E", "a"], ["a", "a"]], "U1")

TWO = make_monoid(["E", "0"], "E", [["E", "0"], ["0", "0"]], "E0")

# a*a = 0, zero absorbing
M3 = make_monoid(
    ["E", "a", "0"],
    "E",
    [
        ["E", "a", "0"],
        ["a", "0", "0"],
        ["0", "0", "0"],
    ],
    "M3",
)

# a*a = q1, every other product of non-units is q2
M4 = make_monoid(
    ["E", "a", "q1", "q2"],
    "E",
    [
        ["E", "a", "q1", "q2"],
        ["a", "q1", "q2", "q2"],
        ["q1", "q2", "q2", "q2"],
        ["q2", "q2", "q2", "q2"],
    ],
    "M4",
)

# a*a = b, a*b = b*a = b*b = 0: a*a*a = 0 although a*a != 0
NILPOTENT4 = make_monoid(
    ["E", "a", "b", "0"],
    "E",
    [
        ["E", "a", "b", "0"],
        ["a", "b", "0", "0"],
        ["b", "0", "0", "0"],
        ["0", "0", "0", "0"],
    ],
    "N4",
)


def categories() -> list[FiniteCategory]:
    """Twelve small categories covering the shapes the round trips must handle."""
    return [
        build_category("empty", [], []),
        build_category("point", ["A"], []),
        build_category("K2", ["A", "B"], [("f", "A", "B")], identities={"A": "idA", "B": "idB"}),
        build_category("discrete2", ["A", "B"], []),
        build_category("idempotent", ["A"], [("g", "A", "A")], {("g", "g"): "g"}, {"A": "id"}),
        build_category("Z2", ["A"], [("g", "A", "A")], {("g", "g"): "id"}, {"A": "id"}),
        build_category(
            "Z3",
            ["A"],
            [("g", "A", "A"), ("h", "A", "A")],
            {("g", "g"): "h", ("g", "h"): "id", ("h", "g"): "id", ("h", "h"): "g"},
            {"A": "id"},
        ),
        build_category(
            "leftzero",
            ["A"],
            [("g", "A", "A"), ("h", "A", "A")],
            {("g", "g"): "g", ("g", "h"): "g", ("h", "g"): "h", ("h", "h"): "h"},
            {"A": "id"},
        ),
        build_category(
            "chain3",
            ["A", "B", "C"],
            [("f", "A", "B"), ("g", "B", "C"), ("fg", "A", "C")],
            {("f", "g"): "fg"},
        ),
        build_category("parallel", ["A", "B"], [("f", "A", "B"), ("g", "A", "B")]),
        build_category(
            "iso",
            ["A", "B"],
            [("f", "A", "B"), ("f_inv", "B", "A")],
            {("f", "f_inv"): "id_A", ("f_inv", "f"): "id_B"},
        ),
        build_category("span", ["A", "B", "C"], [("f", "A", "B"), ("g", "A", "C")]),
    ]


def category(name: str) -> FiniteCategory:
    for k in categories():
        if k.name == name:
            return k
    raise KeyError(name)


K2 = category("K2")


def k2_monoid() -> tuple[FiniteMonoid, frozenset[int]]:
    mz, _ = category_to_monoid(K2)
    return mz.monoid, frozenset([mz.zero])


def ideal_corpus() -> list[tuple[str, FiniteMonoid, frozenset[int]]]:
    """(label, monoid, associative ideal) triples exercised by corpus-wide checks."""
    out = [
        ("M3:{0}", M3, M3.indices(["0"])),
        ("M3:{a,0}", M3, M3.indices(["a", "0"])),
        ("M4:{q1,q2}", M4, M4.indices(["q1", "q2"])),
        ("U1:{a}", SEMILATTICE2, SEMILATTICE2.indices(["a"])),
        ("E0:{0}", TWO, TWO.indices(["0"])),
    ]
    for k in categories():
        mz, _ = category_to_monoid(k)
        out.append((f"{k.name}^:{{0^}}", mz.monoid, frozenset([mz.zero])))
    return out
