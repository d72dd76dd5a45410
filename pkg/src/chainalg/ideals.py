"""Two-sided ideals of finite monoids: associative and prime ideals, quotients,
and a brute-force check that collapsing an ideal to a zero is a pushout.

A subset ``Q`` may be given as element names or indices.  ``Q`` must be
nonempty and must not contain the unit; a unit-containing ideal is the whole
monoid, which :func:`quotient_to_unit` demonstrates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from chainalg.checks import StructureError, Verdict
from chainalg.monoid import (
    FiniteMonoid,
    MonoidHom,
    check_hom,
    homomorphisms,
    small_monoids,
    verify_monoid,
)

IDEAL_ENUMERATION_CAP = 6


class DegenerateIdealError(ValueError):
    """Q is empty or contains the unit."""


class NotAssociativeIdealError(ValueError):
    def __init__(self, message: str, witness: tuple[str, ...] | None = None):
        super().__init__(message)
        self.witness = witness


class NotIdealError(NotAssociativeIdealError):
    """Q fails two-sided absorption, so it is not an ideal at all."""


@dataclass(frozen=True)
class IdealSubset:
    monoid: FiniteMonoid
    members: frozenset[int]
    prime: bool | None = None

    def names(self) -> tuple[str, ...]:
        return self.monoid.names(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members


Subset = Iterable["str | int"] | IdealSubset


def members_of(m: FiniteMonoid, q: Subset) -> frozenset[int]:
    if isinstance(q, IdealSubset):
        return q.members
    members = m.indices(q)
    if not members:
        raise DegenerateIdealError("Q must be nonempty")
    if m.unit in members:
        raise DegenerateIdealError("Q contains the unit; collapsing it trivializes the monoid")
    return members


def _absorption_failure(m: FiniteMonoid, q: frozenset[int]) -> tuple[int, int, str] | None:
    for x in sorted(q):
        for y in range(len(m)):
            if m.table[x][y] not in q:
                return x, y, "right"
            if m.table[y][x] not in q:
                return x, y, "left"
    return None


def is_ideal(m: FiniteMonoid, q: Subset) -> bool:
    if isinstance(m, BoundedFreeMonoid):
        return bool(bounded_ideal_verdict(m, q))
    return _absorption_failure(m, members_of(m, q)) is None


def ideal_verdict(m: FiniteMonoid, q: Subset) -> Verdict:
    members = members_of(m, q)
    bad = _absorption_failure(m, members)
    if bad is None:
        return Verdict(True)
    x, y, side = bad
    names = m.elements
    prod = m.table[x][y] if side == "right" else m.table[y][x]
    pair = (names[x], names[y]) if side == "right" else (names[y], names[x])
    return Verdict(False, pair, f"product {names[prod]} leaves Q")


def require_ideal(m: FiniteMonoid, q: Subset) -> frozenset[int]:
    members = members_of(m, q)
    v = ideal_verdict(m, members)
    if not v:
        raise NotIdealError(f"Q is not a two-sided ideal: {' '.join(v.witness)} {v.detail}", v.witness)
    return members


def is_associative_ideal(m: FiniteMonoid, q: Subset) -> Verdict:
    """Check abc in Q  =>  ab in Q or bc in Q, for all a, b, c other than the unit."""
    if isinstance(m, BoundedFreeMonoid):
        return bounded_associativity_verdict(m, q)
    members = require_ideal(m, q)
    t, names = m.table, m.elements
    others = [i for i in range(len(m)) if i != m.unit]
    for a, b, c in itertools.product(others, repeat=3):
        ab, bc = t[a][b], t[b][c]
        if t[ab][c] in members and ab not in members and bc not in members:
            return Verdict(False, (names[a], names[b], names[c]), "abc in Q but ab, bc not in Q")
    return Verdict(True)


def is_prime_ideal(m: FiniteMonoid, q: Subset) -> Verdict:
    """Check xy in Q  <=>  x in Q or y in Q, for every pair."""
    if isinstance(m, BoundedFreeMonoid):
        return bounded_primality_verdict(m, q)
    members = require_ideal(m, q)
    t, names = m.table, m.elements
    for x, y in itertools.product(range(len(m)), repeat=2):
        inside = t[x][y] in members
        either = x in members or y in members
        if inside and not either:
            return Verdict(False, (names[x], names[y]), "xy in Q but x, y not in Q")
        if either and not inside:
            return Verdict(False, (names[x], names[y]), "x or y in Q but xy not in Q")
    return Verdict(True)


def generated_ideal(m: FiniteMonoid, seed: Iterable[str | int]) -> IdealSubset:
    members = set(m.indices(seed))
    if not members:
        raise DegenerateIdealError("seed must be nonempty")
    frontier = list(members)
    while frontier:
        x = frontier.pop()
        for y in range(len(m)):
            for z in (m.table[x][y], m.table[y][x]):
                if z not in members:
                    members.add(z)
                    frontier.append(z)
    if m.unit in members:
        raise DegenerateIdealError("seed generates whole monoid")
    return IdealSubset(m, frozenset(members))


def all_ideals(m: FiniteMonoid) -> list[frozenset[int]]:
    """Every nonempty two-sided ideal avoiding the unit, smallest first."""
    others = [i for i in range(len(m)) if i != m.unit]
    found = []
    for size in range(1, len(others) + 1):
        for combo in itertools.combinations(others, size):
            q = frozenset(combo)
            if _absorption_failure(m, q) is None:
                found.append(q)
    return found


def enumerate_associative_ideals(m: FiniteMonoid, cap: int = IDEAL_ENUMERATION_CAP) -> list[IdealSubset]:
    if len(m) > cap:
        raise ValueError(f"monoid of order {len(m)} exceeds the ideal enumeration cap of {cap}")
    return [
        IdealSubset(m, q, bool(is_prime_ideal(m, q)))
        for q in all_ideals(m)
        if is_associative_ideal(m, q)
    ]


def is_local_unit(m: FiniteMonoid, q: frozenset[int], e: int) -> bool:
    """Whether ``e`` acts as an identity on everything it multiplies outside Q.

    The unit always qualifies.  Any other candidate must lie outside Q and be
    idempotent (ee = e outside Q); the quantifier runs over non-unit elements.
    """
    if e == m.unit:
        return True
    t = m.table
    if e in q or t[e][e] != e:
        return False
    for x in range(len(m)):
        if x == m.unit:
            continue
        if t[e][x] not in q and t[e][x] != x:
            return False
        if t[x][e] not in q and t[x][e] != x:
            return False
    return True


# -- quotients ---------------------------------------------------------------


@dataclass(frozen=True)
class QuotientResult:
    quotient: FiniteMonoid
    zero: int
    projection: MonoidHom


def _fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "'"
    return name


def quotient_to_zero(m: FiniteMonoid, q: Subset, zero_name: str = "0") -> QuotientResult:
    """Identify all of Q with one absorbing element, leaving the rest intact.

    A singleton Q keeps its element's name; otherwise the new zero is named
    ``zero_name`` (primed if that clashes).
    """
    members = members_of(m, q)
    v = is_associative_ideal(m, members)
    if not v:
        raise NotAssociativeIdealError(f"Q is not an associative ideal: {' '.join(v.witness)}", v.witness)
    first_q = min(members)
    keep = [i for i in range(len(m)) if i not in members or i == first_q]
    new_index = {old: k for k, old in enumerate(keep)}
    zero = new_index[first_q]
    proj = tuple(zero if i in members else new_index[i] for i in range(len(m)))
    names = [m.elements[i] for i in keep]
    if len(members) > 1:
        names[zero] = _fresh_name(zero_name, (m.elements[i] for i in range(len(m)) if i not in members))
    table = tuple(tuple(proj[m.table[a][b]] for b in keep) for a in keep)
    quotient = FiniteMonoid(tuple(names), proj[m.unit], table, f"{m.name}/Q")
    return QuotientResult(quotient, zero, MonoidHom(m, quotient, proj))


def congruence_classes(m: FiniteMonoid, glued: Iterable[tuple[int, int]]) -> list[int]:
    """Least two-sided congruence containing ``glued``; returns class representatives."""
    parent = list(range(len(m)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[max(rx, ry)] = min(rx, ry)
        return True

    for x, y in glued:
        union(x, y)
    changed = True
    while changed:
        changed = False
        for x, y in itertools.combinations(range(len(m)), 2):
            if find(x) != find(y):
                continue
            for z in range(len(m)):
                changed |= union(m.table[x][z], m.table[y][z])
                changed |= union(m.table[z][x], m.table[z][y])
    return [find(x) for x in range(len(m))]


def quotient_by_congruence(m: FiniteMonoid, classes: Sequence[int], name: str) -> FiniteMonoid:
    reps = sorted(set(classes))
    pos = {r: k for k, r in enumerate(reps)}
    table = tuple(tuple(pos[classes[m.table[a][b]]] for b in reps) for a in reps)
    return FiniteMonoid(tuple(m.elements[r] for r in reps), pos[classes[m.unit]], table, name)


def quotient_to_unit(m: FiniteMonoid, q: Subset) -> FiniteMonoid:
    """Identify every member of Q with the unit and close under the congruence."""
    members = require_ideal(m, q)
    classes = congruence_classes(m, ((m.unit, x) for x in members))
    return quotient_by_congruence(m, classes, f"{m.name}/(Q=E)")


# -- pushout -----------------------------------------------------------------


@dataclass(frozen=True)
class CoconeRecord:
    target: str
    pairs: int
    mediator_counts: tuple[int, ...]

    @property
    def unique(self) -> bool:
        return all(c == 1 for c in self.mediator_counts)


@dataclass(frozen=True)
class PushoutWitness:
    corner: FiniteMonoid
    two_element: FiniteMonoid
    inclusion: MonoidHom
    collapse: MonoidHom
    apex: QuotientResult
    induced: MonoidHom
    records: tuple[CoconeRecord, ...] = field(default_factory=tuple)

    @property
    def commutes(self) -> bool:
        left = [self.apex.projection(self.inclusion(i)) for i in range(len(self.corner))]
        right = [self.induced(self.collapse(i)) for i in range(len(self.corner))]
        return left == right

    @property
    def ok(self) -> bool:
        return self.commutes and all(r.unique for r in self.records)

    def counterexample(self) -> CoconeRecord | None:
        for r in self.records:
            if not r.unique:
                return r
        return None


TWO_ELEMENT = FiniteMonoid(("E", "0"), 0, ((0, 1), (1, 1)), "E0")


def _pushout_square(m: FiniteMonoid, members: frozenset[int]):
    corner_idx = [m.unit] + sorted(members)
    pos = {old: k for k, old in enumerate(corner_idx)}
    corner = FiniteMonoid(
        tuple(m.elements[i] for i in corner_idx),
        0,
        tuple(tuple(pos[m.table[a][b]] for b in corner_idx) for a in corner_idx),
        f"{m.name}:E+Q",
    )
    inclusion = MonoidHom(corner, m, tuple(corner_idx))
    collapse = MonoidHom(corner, TWO_ELEMENT, tuple(0 if k == 0 else 1 for k in range(len(corner))))
    apex = quotient_to_zero(m, members)
    induced = MonoidHom(TWO_ELEMENT, apex.quotient, (apex.quotient.unit, apex.zero))
    return corner, inclusion, collapse, apex, induced


def verify_pushout(m: FiniteMonoid, q: Subset, corpus: Sequence[FiniteMonoid] | None = None) -> PushoutWitness:
    """Check the universal property of M -> M/Q against every monoid in ``corpus``.

    For each target X, every pair h1: M -> X, h0: {E,0} -> X that agrees on the
    corner {E} + Q must factor through exactly one r: M/Q -> X.  The mediating
    maps are found by enumerating all homomorphisms M/Q -> X, independently of
    how the quotient was built.
    """
    members = members_of(m, q)
    corpus = small_monoids(3) if corpus is None else list(corpus)
    if not corpus:
        raise ValueError("corpus must be nonempty")
    for x in corpus:
        report = verify_monoid(x)
        if not report.ok:
            raise StructureError(f"corpus monoid {x.name} is invalid: {report.violations[0]}")
    corner, inclusion, collapse, apex, induced = _pushout_square(m, members)
    for h in (inclusion, collapse, apex.projection, induced):
        if not check_hom(h).ok:
            raise AssertionError(f"square map {h.source.name}->{h.target.name} is not a homomorphism")
    m0 = apex.quotient
    proj = apex.projection.map
    records = []
    for x in corpus:
        h0s = list(homomorphisms(TWO_ELEMENT, x))
        h1s = list(homomorphisms(m, x))
        rs = list(homomorphisms(m0, x))
        counts = []
        for h1 in h1s:
            for h0 in h0s:
                if any(h1[inclusion(k)] != h0[collapse(k)] for k in range(len(corner))):
                    continue
                n = sum(
                    1
                    for r in rs
                    if all(r[proj[i]] == h1[i] for i in range(len(m)))
                    and all(r[induced(k)] == h0[k] for k in range(2))
                )
                counts.append(n)
        records.append(CoconeRecord(x.name, len(counts), tuple(counts)))
    return PushoutWitness(corner, TWO_ELEMENT, inclusion, collapse, apex, induced, tuple(records))


def weak_simplicity_check(m: FiniteMonoid, q: Subset, allow_unit_witness: bool = True) -> Verdict:
    """Every x outside Q has y, z outside Q with xy, zx outside Q.

    With ``allow_unit_witness`` off, neither the unit nor any local unit may
    serve as y or z.
    """
    if isinstance(m, BoundedFreeMonoid):
        return bounded_weak_simplicity(m, q, allow_unit_witness)
    members = require_ideal(m, q)
    t, names = m.table, m.elements
    outside = [i for i in range(len(m)) if i not in members]
    witnesses = outside
    if not allow_unit_witness:
        witnesses = [y for y in outside if not is_local_unit(m, members, y)]
    for x in outside:
        if not any(t[x][y] not in members for y in witnesses):
            return Verdict(False, (names[x],), "no right witness")
        if not any(t[z][x] not in members for z in witnesses):
            return Verdict(False, (names[x],), "no left witness")
    return Verdict(True)


# -- free monoids, checked up to a length bound --------------------------------

Word = tuple[str, ...]


@dataclass(frozen=True)
class BoundedFreeMonoid:
    """The free monoid on ``alphabet`` with every check restricted to words of
    length at most ``bound``.  Results hold only within that bound."""

    alphabet: tuple[str, ...]
    bound: int

    def words(self, min_len: int = 0, max_len: int | None = None) -> Iterator[Word]:
        top = self.bound if max_len is None else max_len
        for n in range(min_len, top + 1):
            yield from itertools.product(self.alphabet, repeat=n)


WordSet = Callable[[Word], bool]


def _as_predicate(q) -> WordSet:
    if callable(q):
        return q
    words = {tuple(w) for w in q}
    return lambda w: w in words


def _show(w: Word) -> str:
    if not w:
        return "()"
    return "".join(w) if all(len(s) == 1 for s in w) else ".".join(w)


def bounded_ideal_verdict(f: BoundedFreeMonoid, q) -> Verdict:
    inq = _as_predicate(q)
    if inq(()):
        raise DegenerateIdealError("Q contains the empty word")
    for x in f.words(1):
        if not inq(x):
            continue
        for y in f.words(0, f.bound - len(x)):
            if not inq(x + y):
                return Verdict(False, (_show(x), _show(y)), "xy leaves Q")
            if not inq(y + x):
                return Verdict(False, (_show(y), _show(x)), "yx leaves Q")
    return Verdict(True)


def bounded_associativity_verdict(f: BoundedFreeMonoid, q) -> Verdict:
    inq = _as_predicate(q)
    v = bounded_ideal_verdict(f, inq)
    if not v:
        raise NotIdealError("Q is not a two-sided ideal within the bound", v.witness)
    for total in range(3, f.bound + 1):
        for w in itertools.product(f.alphabet, repeat=total):
            if not inq(w):
                continue
            for i in range(1, total - 1):
                for j in range(i + 1, total):
                    if not inq(w[:j]) and not inq(w[i:]):
                        return Verdict(False, (_show(w[:i]), _show(w[i:j]), _show(w[j:])), "abc in Q but ab, bc not in Q")
    return Verdict(True)


def bounded_primality_verdict(f: BoundedFreeMonoid, q) -> Verdict:
    inq = _as_predicate(q)
    v = bounded_ideal_verdict(f, inq)
    if not v:
        raise NotIdealError("Q is not a two-sided ideal within the bound", v.witness)
    for total in range(f.bound + 1):
        for w in itertools.product(f.alphabet, repeat=total):
            for i in range(total + 1):
                x, y = w[:i], w[i:]
                inside, either = inq(w), inq(x) or inq(y)
                if inside != either:
                    return Verdict(False, (_show(x), _show(y)), "xy in Q but x, y not in Q" if inside else "x or y in Q but xy not in Q")
    return Verdict(True)


def bounded_weak_simplicity(f: BoundedFreeMonoid, q, allow_unit_witness: bool = True) -> Verdict:
    """Words shorter than the bound must extend on both sides without entering Q."""
    inq = _as_predicate(q)
    shortest = 0 if allow_unit_witness else 1
    for x in f.words(0, f.bound - 1):
        if inq(x):
            continue
        room = f.bound - len(x)
        exts = [y for y in f.words(shortest, room) if not inq(y)]
        if not any(not inq(x + y) for y in exts):
            return Verdict(False, (_show(x),), "no right witness")
        if not any(not inq(z + x) for z in exts):
            return Verdict(False, (_show(x),), "no left witness")
    return Verdict(True)


def contains_factor(factor: Sequence[str]) -> WordSet:
    factor = tuple(factor)
    k = len(factor)
    return lambda w: any(tuple(w[i : i + k]) == factor for i in range(len(w) - k + 1))


def contains_letter(letter: str) -> WordSet:
    return lambda w: letter in w
