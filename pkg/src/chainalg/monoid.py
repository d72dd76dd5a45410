"""Finite monoids stored as multiplication tables over element indices.

Element names are opaque labels; every algorithm works on indices so that
relabeling never changes a result.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from chainalg.checks import ParseError, Report, StructureError, Verdict, Violation

ENUMERATION_CAP = 4
ENUMERATION_NAMES = ("E", "a", "b", "c")


@dataclass(frozen=True)
class FiniteMonoid:
    elements: tuple[str, ...]
    unit: int
    table: tuple[tuple[int, ...], ...]
    name: str = "M"

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))
        n = len(self.elements)
        if n == 0:
            raise StructureError("a monoid needs at least one element")
        if len(set(self.elements)) != n:
            raise StructureError(f"duplicate element names in {self.elements}")
        if not 0 <= self.unit < n:
            raise StructureError(f"unit index {self.unit} out of range for {n} elements")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise StructureError(f"table is not {n}x{n}")
        for i, row in enumerate(self.table):
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise StructureError(f"entry ({i},{j}) = {v} out of range")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise StructureError(f"unknown element {name!r} in monoid {self.name}") from None

    def indices(self, names: Iterable[str | int]) -> frozenset[int]:
        out = set()
        for x in names:
            if isinstance(x, (int, np.integer)):
                if not 0 <= x < len(self):
                    raise StructureError(f"element index {x} out of range")
                out.add(int(x))
            else:
                out.add(self.index(x))
        return frozenset(out)

    def names(self, indices: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in sorted(indices))

    def renamed(self, name: str) -> FiniteMonoid:
        return FiniteMonoid(self.elements, self.unit, self.table, name)


@dataclass(frozen=True)
class MonoidHom:
    source: FiniteMonoid
    target: FiniteMonoid
    map: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.map[i]


def verify_monoid(candidate: FiniteMonoid) -> Report:
    """List every failed unit law and associativity triple.

    Structural problems were already rejected when the candidate was built.
    """
    m, n, e = candidate.table, len(candidate), candidate.unit
    names = candidate.elements
    bad: list[Violation] = []
    for i in range(n):
        if m[e][i] != i:
            bad.append(Violation("unit-law", (names[e], names[i]), f"{names[e]}*{names[i]}={names[m[e][i]]}"))
        if m[i][e] != i:
            bad.append(Violation("unit-law", (names[i], names[e]), f"{names[i]}*{names[e]}={names[m[i][e]]}"))
    for i, j, k in itertools.product(range(n), repeat=3):
        if m[m[i][j]][k] != m[i][m[j][k]]:
            bad.append(Violation("associativity", (names[i], names[j], names[k])))
    return Report(candidate.name, tuple(bad))


def make_monoid(elements: Sequence[str], unit: str | int, rows: Sequence[Sequence[str | int]], name: str = "M") -> FiniteMonoid:
    """Build a monoid from names, raising if any axiom fails."""
    elements = tuple(elements)
    lookup = {x: i for i, x in enumerate(elements)}

    def idx(v: str | int) -> int:
        if isinstance(v, str):
            if v not in lookup:
                raise StructureError(f"unknown element {v!r}")
            return lookup[v]
        return int(v)

    m = FiniteMonoid(elements, idx(unit), tuple(tuple(idx(v) for v in row) for row in rows), name)
    report = verify_monoid(m)
    if not report.ok:
        raise StructureError(f"{name} is not a monoid: {report.violations[0]}")
    return m


def product(m: FiniteMonoid, word: Sequence[int]) -> int:
    acc = m.unit
    for letter in word:
        if not 0 <= letter < len(m):
            raise StructureError(f"letter {letter} out of range")
        acc = m.table[acc][letter]
    return acc


def check_hom(h: MonoidHom) -> Report:
    src, tgt, f = h.source, h.target, h.map
    if len(f) != len(src):
        raise StructureError(f"map has {len(f)} entries, source has {len(src)} elements")
    if any(not 0 <= v < len(tgt) for v in f):
        raise StructureError("map entry out of range for target")
    subject = f"{src.name}->{tgt.name}"
    if f[src.unit] != tgt.unit:
        return Report(subject, (Violation("unit", (src.elements[src.unit],), f"maps to {tgt.elements[f[src.unit]]}"),))
    for i, j in itertools.product(range(len(src)), repeat=2):
        lhs = f[src.table[i][j]]
        rhs = tgt.table[f[i]][f[j]]
        if lhs != rhs:
            detail = f"h({src.elements[i]}*{src.elements[j]})={tgt.elements[lhs]} but h*h={tgt.elements[rhs]}"
            return Report(subject, (Violation("product", (src.elements[i], src.elements[j]), detail),))
    return Report(subject)


def homomorphisms(src: FiniteMonoid, tgt: FiniteMonoid) -> Iterator[tuple[int, ...]]:
    """Yield every monoid homomorphism src -> tgt as a tuple of target indices.

    Exhaustive over all maps, pruned by unit preservation and by checking each
    product as soon as all three of its entries are assigned.
    """
    n = len(src)
    order = [src.unit] + [i for i in range(n) if i != src.unit]
    f = [-1] * n

    def consistent(upto: int) -> bool:
        assigned = order[: upto + 1]
        new = order[upto]
        for a in assigned:
            for x, y in ((a, new), (new, a)):
                c = src.table[x][y]
                if f[c] >= 0 and f[c] != tgt.table[f[x]][f[y]]:
                    return False
        return True

    def extend(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == n:
            yield tuple(f)
            return
        el = order[pos]
        choices = [tgt.unit] if el == src.unit else range(len(tgt))
        for v in choices:
            f[el] = v
            if consistent(pos):
                yield from extend(pos + 1)
        f[el] = -1

    # consistency checks only ever look at assigned triples; verify the full
    # table at the end so a late-assigned product entry is never skipped.
    for cand in extend(0):
        if all(cand[src.table[i][j]] == tgt.table[cand[i]][cand[j]] for i in range(n) for j in range(n)):
            yield cand


def find_isomorphism(m: FiniteMonoid, n: FiniteMonoid) -> tuple[int, ...] | None:
    """Return a unit-preserving, table-preserving bijection m -> n, if any."""
    if len(m) != len(n):
        return None
    size = len(m)
    idem_m = [m.table[i][i] == i for i in range(size)]
    idem_n = [n.table[i][i] == i for i in range(size)]
    if sorted(idem_m) != sorted(idem_n):
        return None
    phi = [-1] * size
    used = [False] * size
    order = [m.unit] + [i for i in range(size) if i != m.unit]

    def ok(new: int) -> bool:
        for a in order:
            if phi[a] < 0:
                continue
            for x, y in ((a, new), (new, a)):
                c = m.table[x][y]
                d = n.table[phi[x]][phi[y]]
                if phi[c] >= 0:
                    if phi[c] != d:
                        return False
                elif used[d]:
                    return False
        return True

    def search(pos: int) -> bool:
        if pos == size:
            return True
        el = order[pos]
        choices = [n.unit] if el == m.unit else [j for j in range(size) if not used[j] and j != n.unit]
        for j in choices:
            if idem_m[el] != idem_n[j]:
                continue
            phi[el] = j
            used[j] = True
            if ok(el) and search(pos + 1):
                return True
            phi[el] = -1
            used[j] = False
        return False

    if search(0):
        return tuple(phi)
    return None


def relabel_table(table: Sequence[Sequence[int]], perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Table of the same monoid after renaming index i to perm[i]."""
    n = len(table)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = perm[table[i][j]]
    return tuple(tuple(r) for r in out)


def canonical_table(table: Sequence[Sequence[int]], unit: int = 0) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least relabeled table with the unit moved to index 0."""
    n = len(table)
    others = [i for i in range(n) if i != unit]
    best = None
    for images in itertools.permutations(range(1, n)):
        perm = [0] * n
        for src, dst in zip(others, images):
            perm[src] = dst
        cand = relabel_table(table, perm)
        if best is None or cand < best:
            best = cand
    return best


def _associative_tables(n: int) -> np.ndarray:
    """All n x n tables with unit 0 that are associative, as an (k, n, n) array."""
    free = (n - 1) * (n - 1)
    count = n**free
    # digits of 0..count-1 in base n fill the non-unit block row by row
    digits = (np.arange(count)[:, None] // (n ** np.arange(free - 1, -1, -1))[None, :]) % n
    tables = np.empty((count, n, n), dtype=np.int64)
    tables[:, 0, :] = np.arange(n)
    tables[:, :, 0] = np.arange(n)
    tables[:, 1:, 1:] = digits.reshape(count, n - 1, n - 1)
    rows = np.arange(count)
    good = np.ones(count, dtype=bool)
    for i, j, k in itertools.product(range(1, n), repeat=3):
        left = tables[rows, tables[:, i, j], k]
        right = tables[rows, i, tables[:, j, k]]
        good &= left == right
    return tables[good]


def enumerate_monoids(n: int) -> list[FiniteMonoid]:
    """One monoid per isomorphism class of order ``n``, in canonical order.

    Order 4 scans 4**9 candidate tables and takes about a second.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n > ENUMERATION_CAP:
        raise ValueError(f"order {n} exceeds the enumeration cap of {ENUMERATION_CAP}")
    names = ENUMERATION_NAMES[:n]
    if n == 1:
        return [FiniteMonoid(names, 0, ((0,),), "M1_0")]
    classes = {canonical_table(t.tolist()) for t in _associative_tables(n)}
    return [FiniteMonoid(names, 0, t, f"M{n}_{k}") for k, t in enumerate(sorted(classes))]


def small_monoids(max_order: int = 3) -> list[FiniteMonoid]:
    return [m for k in range(1, max_order + 1) for m in enumerate_monoids(k)]


# -- text format --------------------------------------------------------------

_TOKEN = re.compile(r"\S+")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_monoid(text: str) -> tuple[FiniteMonoid, dict[str, frozenset[int]]]:
    """Parse the monoid file format, returning the monoid and its named ideals.

    Axioms are not checked here; pass the result to :func:`verify_monoid`.
    """
    lines = [(no, _strip(raw)) for no, raw in enumerate(text.splitlines(), 1)]
    lines = [(no, s) for no, s in lines if s]
    if not lines:
        raise ParseError("empty monoid file")

    def expect(pos: int, keyword: str) -> list[str]:
        if pos >= len(lines):
            raise ParseError(f"missing '{keyword}' line")
        no, s = lines[pos]
        toks = s.split()
        if toks[0] != keyword:
            raise ParseError(f"expected '{keyword}', found {toks[0]!r}", no, 1)
        return toks[1:]

    header = expect(0, "monoid")
    if len(header) != 1:
        raise ParseError("monoid line takes exactly one name", lines[0][0])
    elements = expect(1, "elements")
    if not elements:
        raise ParseError("no elements listed", lines[1][0])
    if len(set(elements)) != len(elements):
        raise ParseError("duplicate element names", lines[1][0])
    unit = expect(2, "unit")
    if len(unit) != 1:
        raise ParseError("unit line takes exactly one element", lines[2][0])
    lookup = {x: i for i, x in enumerate(elements)}
    if unit[0] not in lookup:
        raise ParseError(f"unknown unit {unit[0]!r}", lines[2][0])
    n = len(elements)
    rows = []
    pos = 3
    for r in range(n):
        if pos >= len(lines):
            raise ParseError(f"table has {r} rows, expected {n}")
        no, s = lines[pos]
        toks = s.split()
        if toks[0] == "ideal":
            raise ParseError(f"table has {r} rows, expected {n}", no)
        if len(toks) != n:
            raise ParseError(f"row has {len(toks)} entries, expected {n}", no)
        row = []
        for tok in toks:
            if tok not in lookup:
                raise ParseError(f"unknown element {tok!r}", no, s.index(tok) + 1)
            row.append(lookup[tok])
        rows.append(tuple(row))
        pos += 1
    ideals: dict[str, frozenset[int]] = {}
    for no, s in lines[pos:]:
        toks = s.split()
        if toks[0] != "ideal" or len(toks) < 3:
            raise ParseError(f"expected 'ideal <name> <elements...>', found {s!r}", no)
        for tok in toks[2:]:
            if tok not in lookup:
                raise ParseError(f"unknown element {tok!r} in ideal", no)
        if toks[1] in ideals:
            raise ParseError(f"duplicate ideal name {toks[1]!r}", no)
        ideals[toks[1]] = frozenset(lookup[t] for t in toks[2:])
    monoid = FiniteMonoid(tuple(elements), lookup[unit[0]], tuple(rows), header[0])
    return monoid, ideals


def format_monoid(m: FiniteMonoid, ideals: dict[str, Iterable[int]] | None = None) -> str:
    width = max(len(x) for x in m.elements)
    out = [f"monoid {m.name}", "elements " + " ".join(m.elements), f"unit {m.elements[m.unit]}"]
    for row in m.table:
        out.append(" ".join(m.elements[v].ljust(width) for v in row).rstrip())
    for name, members in (ideals or {}).items():
        out.append(f"ideal {name} " + " ".join(m.names(members)))
    return "\n".join(out) + "\n"


def is_isomorphic(m: FiniteMonoid, n: FiniteMonoid) -> bool:
    return find_isomorphism(m, n) is not None


def hom_verdict(h: MonoidHom) -> Verdict:
    r = check_hom(h)
    if r.ok:
        return Verdict(True)
    v = r.violations[0]
    return Verdict(False, v.witness, v.detail)
