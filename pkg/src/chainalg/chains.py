"""Partially existing sequences driven by a binary existence relation.

A word exists when every letter exists and every adjacent pair exists.  The
non-existing nonempty words form an ideal of the free monoid; all claims
about it are checked up to an explicit length bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from chainalg.checks import ParseError, Report, StructureError, Verdict, Violation
from chainalg.ideals import (
    BoundedFreeMonoid,
    bounded_associativity_verdict,
    bounded_ideal_verdict,
    bounded_primality_verdict,
)

CHAIN_LENGTH_CAP = 12

Word = tuple[str, ...]


@dataclass(frozen=True)
class BinaryExistence:
    alphabet: tuple[str, ...]
    unary: frozenset[str]
    binary: frozenset[tuple[str, str]]
    name: str = "rel"

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "unary", frozenset(self.unary))
        object.__setattr__(self, "binary", frozenset(tuple(p) for p in self.binary))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise StructureError("duplicate symbols in alphabet")
        known = set(self.alphabet)
        for s in self.unary:
            if s not in known:
                raise StructureError(f"unknown symbol {s!r}")
        for a, b in self.binary:
            if a not in known or b not in known:
                raise StructureError(f"pair ({a}, {b}) uses an unknown symbol")

    @classmethod
    def from_pairs(cls, alphabet: Iterable[str], pairs: Iterable[tuple[str, str]], exists: Iterable[str] | None = None, name: str = "rel") -> BinaryExistence:
        alphabet = tuple(alphabet)
        return cls(alphabet, frozenset(alphabet if exists is None else exists), frozenset(pairs), name)

    def ex(self, *symbols: str) -> bool:
        return ex_word(self, symbols)


def validate_rel(rel: BinaryExistence) -> Report:
    """Check the four existence axioms; each failure names the axiom."""
    bad: list[Violation] = []
    for a, b in sorted(rel.binary):
        if a not in rel.unary or b not in rel.unary:
            bad.append(Violation("ternary", (a, b), "pair exists but a letter does not"))
    if not rel.binary:
        bad.append(Violation("exists-pair"))
    if not rel.unary:
        bad.append(Violation("exists-letter"))
    for x in rel.alphabet:
        if x not in rel.unary:
            continue
        if not any(y in rel.unary and (x, y) in rel.binary for y in rel.alphabet):
            bad.append(Violation("right-extension", (x,)))
        if not any(z in rel.unary and (z, x) in rel.binary for z in rel.alphabet):
            bad.append(Violation("left-extension", (x,)))
    return Report(rel.name, tuple(bad))


def _check_symbols(rel: BinaryExistence, w: Sequence[str]) -> None:
    for s in w:
        if s not in rel.alphabet:
            raise StructureError(f"symbol {s!r} is not in the alphabet of {rel.name}")


def ex_word(rel: BinaryExistence, w: Sequence[str]) -> bool:
    _check_symbols(rel, w)
    if len(w) == 0:
        return True
    if len(w) == 1:
        return w[0] in rel.unary
    return all(x in rel.unary for x in w) and all((a, b) in rel.binary for a, b in zip(w, w[1:]))


def ex_by_splitting(rel: BinaryExistence, w: Sequence[str]) -> bool:
    """Existence computed only from the ternary rule ex(ab) & ex(bc) <=> ex(abc),
    splitting a word at every interior letter.  Raises if two splits disagree."""
    _check_symbols(rel, w)

    @lru_cache(maxsize=None)
    def go(word: Word) -> bool:
        if len(word) == 0:
            return True
        if len(word) == 1:
            return word[0] in rel.unary
        if len(word) == 2:
            return word[0] in rel.unary and word[1] in rel.unary and word in rel.binary
        answers = {go(word[: i + 1]) and go(word[i:]) for i in range(1, len(word) - 1)}
        if len(answers) != 1:
            raise AssertionError(f"splits of {word} disagree")
        return answers.pop()

    return go(tuple(w))


def enumerate_chains(rel: BinaryExistence, max_len: int) -> list[Word]:
    """All existing nonempty words up to ``max_len``, shortest first, then in
    alphabet order."""
    if max_len > CHAIN_LENGTH_CAP:
        raise ValueError(f"max length {max_len} exceeds the cap of {CHAIN_LENGTH_CAP}")
    level = [(s,) for s in rel.alphabet if s in rel.unary]
    out: list[Word] = []
    for _ in range(max_len):
        if not level:
            break
        out.extend(level)
        level = [w + (s,) for w in level for s in rel.alphabet if (w[-1], s) in rel.binary and s in rel.unary]
    return out


def show_word(w: Sequence[str]) -> str:
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(w)


@dataclass(frozen=True)
class FourProperties:
    subsequence_closure: Verdict
    extension: Verdict
    empty_neutral: Verdict
    unit_length: Verdict
    max_len: int

    @property
    def ok(self) -> bool:
        return all(self.as_dict().values())

    def as_dict(self) -> dict[str, Verdict]:
        return {
            "subsequence-closure": self.subsequence_closure,
            "extension": self.extension,
            "empty-neutral": self.empty_neutral,
            "unit-length": self.unit_length,
        }


def verify_four_properties(rel: BinaryExistence, max_len: int) -> FourProperties:
    """Scan every word up to ``max_len`` for the four sequence properties.

    Extension is checked for chains shorter than ``max_len`` so the extended
    word stays inside the bound.
    """
    words = [w for n in range(max_len + 1) for w in itertools.product(rel.alphabet, repeat=n)]
    exists = {w: ex_word(rel, w) for w in words}

    closure = Verdict(True)
    for w in words:
        if not exists[w]:
            continue
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                if not exists[w[i:j]]:
                    closure = Verdict(False, (show_word(w), show_word(w[i:j])), "factor of a chain is not a chain")
                    break
            if not closure:
                break
        if not closure:
            break

    extension = Verdict(True)
    for w in words:
        if not w or not exists[w] or len(w) >= max_len:
            continue
        right = any(exists[w + (s,)] for s in rel.alphabet)
        left = any(exists[(s,) + w] for s in rel.alphabet)
        if not right:
            extension = Verdict(False, (show_word(w),), "no right extension")
            break
        if not left:
            extension = Verdict(False, (show_word(w),), "no left extension")
            break

    empty = Verdict(exists[()])
    if empty:
        for w in words:
            if ex_word(rel, w + ()) != exists[w] or ex_word(rel, () + w) != exists[w]:
                empty = Verdict(False, (show_word(w),))
                break

    unit = Verdict(True)
    for s in rel.alphabet:
        if ex_word(rel, (s,)) != (s in rel.unary):
            unit = Verdict(False, (s,))
            break
    return FourProperties(closure, extension, empty, unit, max_len)


@dataclass(frozen=True)
class ForbiddenFactorIdeal:
    alphabet: tuple[str, ...]
    forbidden_pairs: frozenset[tuple[str, str]]
    forbidden_letters: frozenset[str]
    length_bound: int

    def __contains__(self, w: Sequence[str]) -> bool:
        w = tuple(w)
        return any(s in self.forbidden_letters for s in w) or any(p in self.forbidden_pairs for p in zip(w, w[1:]))

    @property
    def free(self) -> BoundedFreeMonoid:
        return BoundedFreeMonoid(self.alphabet, self.length_bound)


@dataclass(frozen=True)
class IdealFromRel:
    ideal: ForbiddenFactorIdeal
    two_sided: Verdict
    associative: Verdict
    prime: Verdict
    matches_ex: Verdict
    checks: dict = field(default_factory=dict, hash=False)

    @property
    def ok(self) -> bool:
        return bool(self.two_sided and self.associative and self.matches_ex)


def ideal_from_rel(rel: BinaryExistence, length_bound: int) -> IdealFromRel:
    """The ideal of non-chains, described by forbidden letters and pairs, with
    ideal, associativity and primality checked up to ``length_bound``.

    Membership is decided from the forbidden factors, independently of
    :func:`ex_word`; ``matches_ex`` compares the two on every bounded word.
    """
    existing = [s for s in rel.alphabet if s in rel.unary]
    pairs = frozenset((a, b) for a in existing for b in existing if (a, b) not in rel.binary)
    letters = frozenset(s for s in rel.alphabet if s not in rel.unary)
    ideal = ForbiddenFactorIdeal(rel.alphabet, pairs, letters, length_bound)
    free = ideal.free
    member = ideal.__contains__

    matches = Verdict(True)
    for w in free.words():
        if ex_word(rel, w) == (w in ideal):
            matches = Verdict(False, (show_word(w),), "ex and membership agree")
            break
    two_sided = bounded_ideal_verdict(free, member)
    if two_sided:
        associative = bounded_associativity_verdict(free, member)
        prime = bounded_primality_verdict(free, member)
    else:
        associative = prime = Verdict(False, None, "not an ideal")
    return IdealFromRel(ideal, two_sided, associative, prime, matches)


# -- text format --------------------------------------------------------------


def parse_rel(text: str) -> BinaryExistence:
    name = None
    alphabet: list[str] | None = None
    exists: list[str] | None = None
    pairs: list[tuple[str, str]] = []
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        toks = s.split()
        key = toks[0]
        if key == "rel" and len(toks) == 2 and name is None:
            name = toks[1]
        elif key == "alphabet" and alphabet is None:
            alphabet = toks[1:]
        elif key == "exists" and exists is None:
            exists = toks[1:]
        elif key == "pair" and len(toks) == 3:
            pairs.append((toks[1], toks[2]))
        else:
            raise ParseError(f"unrecognized line {s!r}", no)
    if name is None:
        raise ParseError("missing 'rel <name>' line")
    if alphabet is None:
        raise ParseError("missing 'alphabet' line")
    try:
        return BinaryExistence.from_pairs(alphabet, pairs, exists, name)
    except StructureError as exc:
        raise ParseError(str(exc)) from None


def format_rel(rel: BinaryExistence) -> str:
    out = [f"rel {rel.name}", "alphabet " + " ".join(rel.alphabet)]
    out.append("exists " + " ".join(s for s in rel.alphabet if s in rel.unary))
    for a in rel.alphabet:
        for b in rel.alphabet:
            if (a, b) in rel.binary:
                out.append(f"pair {a} {b}")
    return "\n".join(out) + "\n"


def alternating() -> BinaryExistence:
    return BinaryExistence.from_pairs("ab", [("a", "b"), ("b", "a")], name="alternating")
