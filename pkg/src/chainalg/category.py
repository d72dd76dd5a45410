"""Finite categories as explicit data, and their completion to a monoid with zero.

Composition is diagrammatic throughout: ``compose(f, g)`` is "f then g" and
needs ``cod(f) == dom(g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from chainalg.checks import ParseError, Report, StructureError, Verdict, Violation
from chainalg.ideals import is_associative_ideal
from chainalg.monoid import FiniteMonoid, verify_monoid

BIG_UNIT = "E^"
ERASER = "0^"


@dataclass(frozen=True)
class Arrow:
    name: str
    dom: str
    cod: str


@dataclass(frozen=True, eq=True)
class FiniteCategory:
    name: str
    objects: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    composition: Mapping[tuple[str, str], str] = field(default_factory=dict, hash=False)
    identities: Mapping[str, str] = field(default_factory=dict, hash=False)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise StructureError(f"unknown arrow {name!r} in category {self.name}")

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def compose(self, f: str, g: str) -> str | None:
        return self.composition.get((f, g))


@dataclass(frozen=True)
class MonoidWithZero:
    monoid: FiniteMonoid
    zero: int


def build_category(
    name: str,
    objects: Sequence[str],
    arrows: Iterable[tuple[str, str, str]],
    composites: Mapping[tuple[str, str], str] | Iterable[tuple[str, str, str]] = (),
    identities: Mapping[str, str] | None = None,
) -> FiniteCategory:
    """Assemble a category, creating identity arrows ``id_<obj>`` where none
    are named and filling in every composite that involves an identity."""
    identities = dict(identities or {})
    arrow_list = [Arrow(*a) for a in arrows]
    known = {a.name for a in arrow_list}
    for obj in objects:
        if obj not in identities:
            identities[obj] = f"id_{obj}"
        ident = identities[obj]
        if ident not in known:
            arrow_list.insert(0, Arrow(ident, obj, obj))
            known.add(ident)
    # identities first, in object order, then the remaining arrows as given
    id_names = [identities[o] for o in objects]
    ordered = [next(a for a in arrow_list if a.name == i) for i in id_names]
    ordered += [a for a in arrow_list if a.name not in set(id_names)]
    comp: dict[tuple[str, str], str] = {}
    items = composites.items() if isinstance(composites, Mapping) else (((f, g), h) for f, g, h in composites)
    for (f, g), h in items:
        comp[(f, g)] = h
    for a in ordered:
        if a.dom in identities:
            comp.setdefault((identities[a.dom], a.name), a.name)
        if a.cod in identities:
            comp.setdefault((a.name, identities[a.cod]), a.name)
    return FiniteCategory(name, tuple(objects), tuple(ordered), comp, identities)


def _check_structure(k: FiniteCategory) -> None:
    objs = set(k.objects)
    if len(objs) != len(k.objects):
        raise StructureError(f"duplicate objects in {k.name}")
    names = [a.name for a in k.arrows]
    if len(set(names)) != len(names):
        raise StructureError(f"duplicate arrow names in {k.name}")
    for a in k.arrows:
        if a.dom not in objs or a.cod not in objs:
            raise StructureError(f"arrow {a.name} refers to an unknown object")
    known = set(names)
    for (f, g), h in k.composition.items():
        for x in (f, g, h):
            if x not in known:
                raise StructureError(f"composite {f};{g}={h} mentions unknown arrow {x!r}")
    for obj, ident in k.identities.items():
        if obj not in objs:
            raise StructureError(f"identity for unknown object {obj!r}")
        if ident not in known:
            raise StructureError(f"identity arrow {ident!r} is not an arrow")
    for obj in k.objects:
        if obj not in k.identities:
            raise StructureError(f"object {obj} has no identity arrow")


def verify_category(k: FiniteCategory) -> Report:
    _check_structure(k)
    by_name = {a.name: a for a in k.arrows}
    comp = k.composition
    bad: list[Violation] = []
    for obj in k.objects:
        ident = by_name[k.identities[obj]]
        if ident.dom != obj or ident.cod != obj:
            bad.append(Violation("identity-type", (ident.name,), f"{ident.dom}->{ident.cod}, expected {obj}->{obj}"))
    for f, g in itertools.product(k.arrows, repeat=2):
        key = (f.name, g.name)
        if f.cod == g.dom:
            if key not in comp:
                bad.append(Violation("missing composite", key))
                continue
            h = by_name[comp[key]]
            if h.dom != f.dom or h.cod != g.cod:
                bad.append(Violation("composite type", key, f"{h.name}: {h.dom}->{h.cod}"))
        elif key in comp:
            bad.append(Violation("composite of non-composable pair", key))
    for f in k.arrows:
        left, right = k.identities.get(f.dom), k.identities.get(f.cod)
        if comp.get((left, f.name), f.name) != f.name:
            bad.append(Violation("identity law", (left, f.name)))
        if comp.get((f.name, right), f.name) != f.name:
            bad.append(Violation("identity law", (f.name, right)))
    for f, g, h in itertools.product(k.arrows, repeat=3):
        fg, gh = comp.get((f.name, g.name)), comp.get((g.name, h.name))
        if fg is None or gh is None:
            continue
        lhs, rhs = comp.get((fg, h.name)), comp.get((f.name, gh))
        if lhs is not None and rhs is not None and lhs != rhs:
            bad.append(Violation("associativity", (f.name, g.name, h.name)))
    return Report(k.name, tuple(bad))


def category_to_monoid(k: FiniteCategory) -> tuple[MonoidWithZero, dict[str, int]]:
    """Complete ``k`` with a big unit and an erasing zero.

    Elements are ordered: big unit, the arrows of ``k``, zero.  A product of
    arrows is their composite when composable, else the zero.  Returns the
    monoid and the embedding arrow name -> element index.
    """
    arrows = k.arrow_names
    taken = set(arrows)
    unit_name, zero_name = BIG_UNIT, ERASER
    while unit_name in taken:
        unit_name += "'"
    while zero_name in taken or zero_name == unit_name:
        zero_name += "'"
    elements = (unit_name, *arrows, zero_name)
    n = len(elements)
    zero = n - 1
    embed = {a: i + 1 for i, a in enumerate(arrows)}
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        table[0][i] = table[i][0] = i
        if i:
            table[zero][i] = table[i][zero] = zero
    for f in arrows:
        for g in arrows:
            h = k.compose(f, g)
            table[embed[f]][embed[g]] = zero if h is None else embed[h]
    monoid = FiniteMonoid(elements, 0, tuple(tuple(r) for r in table), f"{k.name}^")
    return MonoidWithZero(monoid, zero), embed


def verify_associative_zero(mz: MonoidWithZero) -> Verdict:
    m, z = mz.monoid, mz.zero
    t, names = m.table, m.elements
    for x in range(len(m)):
        if t[x][z] != z or t[z][x] != z:
            return Verdict(False, (names[x],), "zero does not absorb")
    others = [i for i in range(len(m)) if i != m.unit]
    for a, b, c in itertools.product(others, repeat=3):
        ab, bc = t[a][b], t[b][c]
        if t[ab][c] == z and ab != z and bc != z:
            return Verdict(False, (names[a], names[b], names[c]), "abc=0 but ab, bc nonzero")
    return Verdict(True)


def completion_report(k: FiniteCategory) -> Report:
    """Soundness of the completion: valid monoid, associative zero, faithful embedding."""
    mz, embed = category_to_monoid(k)
    m = mz.monoid
    bad = list(verify_monoid(m).violations)
    v = verify_associative_zero(mz)
    if not v:
        bad.append(Violation("associative-zero", v.witness or (), v.detail))
    if not is_associative_ideal(m, [mz.zero]):
        bad.append(Violation("zero-ideal", (m.elements[mz.zero],)))
    if len(set(embed.values())) != len(embed) or mz.zero in embed.values() or m.unit in embed.values():
        bad.append(Violation("embedding not injective"))
    for f, g in itertools.product(k.arrows, repeat=2):
        prod = m.table[embed[f.name]][embed[g.name]]
        h = k.compose(f.name, g.name)
        if f.cod == g.dom:
            if h is None or prod != embed[h]:
                bad.append(Violation("composite not preserved", (f.name, g.name)))
        elif prod != mz.zero:
            bad.append(Violation("non-composable pair not erased", (f.name, g.name)))
    return Report(k.name, tuple(bad))


def find_category_isomorphism(k: FiniteCategory, l: FiniteCategory) -> tuple[dict[str, str], dict[str, str]] | None:
    """Search for bijections on objects and arrows preserving dom, cod,
    identities and composition.  Returns (object map, arrow map) or None."""
    if len(k.objects) != len(l.objects) or len(k.arrows) != len(l.arrows):
        return None
    if len(k.composition) != len(l.composition):
        return None
    obj_map: dict[str, str] = {}
    arr_map: dict[str, str] = {}
    used_obj: set[str] = set()
    used_arr: set[str] = set()
    # identities first so the object map gets fixed early
    k_ids = [k.identities[o] for o in k.objects]
    order = [k.arrow(a) for a in k_ids] + [a for a in k.arrows if a.name not in set(k_ids)]
    l_is_id = set(l.identities.values())

    def bind_obj(a: str, b: str, trail: list[str]) -> bool:
        if a in obj_map:
            return obj_map[a] == b
        if b in used_obj:
            return False
        obj_map[a] = b
        used_obj.add(b)
        trail.append(a)
        return True

    def consistent(f: str) -> bool:
        for g in list(arr_map):
            for x, y in ((f, g), (g, f)):
                h = k.compose(x, y)
                h2 = l.compose(arr_map[x], arr_map[y])
                if (h is None) != (h2 is None):
                    return False
                if h is not None and h in arr_map and arr_map[h] != h2:
                    return False
        return True

    def search(pos: int) -> bool:
        if pos == len(order):
            return all(
                l.compose(arr_map[f], arr_map[g]) == (None if h is None else arr_map[h])
                for f in k.arrow_names
                for g in k.arrow_names
                for h in [k.compose(f, g)]
            )
        a = order[pos]
        is_id = a.name in k_ids
        for b in l.arrows:
            if b.name in used_arr or (b.name in l_is_id) != is_id:
                continue
            trail: list[str] = []
            if bind_obj(a.dom, b.dom, trail) and bind_obj(a.cod, b.cod, trail):
                if not is_id or l.identities.get(obj_map[a.dom]) == b.name:
                    arr_map[a.name] = b.name
                    used_arr.add(b.name)
                    if consistent(a.name) and search(pos + 1):
                        return True
                    del arr_map[a.name]
                    used_arr.discard(b.name)
            for o in trail:
                used_obj.discard(obj_map.pop(o))
        return False

    if not search(0):
        return None
    return dict(obj_map), dict(arr_map)


# -- text format --------------------------------------------------------------


def parse_category(text: str) -> FiniteCategory:
    name = None
    order_seen = False
    objects: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    identities: dict[str, str] = {}
    composites: dict[tuple[str, str], str] = {}
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        toks = s.split()
        key = toks[0]
        if key == "category" and len(toks) == 2 and name is None:
            name = toks[1]
        elif key == "order":
            if toks[1:] != ["diagrammatic"]:
                raise ParseError("only 'order diagrammatic' is supported", no)
            order_seen = True
        elif key == "objects":
            objects.extend(toks[1:])
        elif key == "arrow" and len(toks) == 4:
            arrows.append((toks[1], toks[2], toks[3]))
        elif key == "identity" and len(toks) == 3:
            identities[toks[2]] = toks[1]
            arrows.append((toks[1], toks[2], toks[2]))
        elif key == "compose" and len(toks) == 5 and toks[3] == "=":
            composites[(toks[1], toks[2])] = toks[4]
        else:
            raise ParseError(f"unrecognized line {s!r}", no)
    if name is None:
        raise ParseError("missing 'category <name>' line")
    if not order_seen:
        raise ParseError("missing mandatory 'order diagrammatic' header")
    objs = set(objects)
    for a, d, c in arrows:
        if d not in objs or c not in objs:
            raise ParseError(f"arrow {a} uses an undeclared object")
    names = {a for a, _, _ in arrows} | {f"id_{o}" for o in objects if o not in identities}
    for (f, g), h in composites.items():
        for x in (f, g, h):
            if x not in names:
                raise ParseError(f"compose mentions unknown arrow {x!r}")
    return build_category(name, objects, arrows, composites, identities)


def format_category(k: FiniteCategory) -> str:
    out = [f"category {k.name}", "order diagrammatic", "objects " + " ".join(k.objects)]
    ids = set(k.identities.values())
    for obj in k.objects:
        out.append(f"identity {k.identities[obj]} {obj}")
    for a in k.arrows:
        if a.name not in ids:
            out.append(f"arrow {a.name} {a.dom} {a.cod}")
    for (f, g), h in sorted(k.composition.items()):
        if f in ids or g in ids:
            continue
        out.append(f"compose {f} {g} = {h}")
    return "\n".join(out) + "\n"
