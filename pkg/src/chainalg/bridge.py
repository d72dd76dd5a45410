"""From a monoid with an associative ideal to a category, and back.

Removing the unit and the ideal leaves a carrier with a partial product
(defined exactly where the monoid product avoids Q).  Its local units become
objects; when every element has a unique left and right local unit the
carrier is a category.  :func:`build_and_verify_R` checks the element-level
correspondence between the two sides.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from chainalg.category import (
    Arrow,
    FiniteCategory,
    category_to_monoid,
    find_category_isomorphism,
    verify_category,
)
from chainalg.checks import StructureError, Verdict
from chainalg.ideals import (
    NotAssociativeIdealError,
    Subset,
    require_ideal,
    is_associative_ideal,
    is_local_unit,
    members_of,
    quotient_to_zero,
)
from chainalg.monoid import FiniteMonoid, find_isomorphism, verify_monoid


def _require_associative(m: FiniteMonoid, q: Subset) -> frozenset[int]:
    members = members_of(m, q)
    v = is_associative_ideal(m, members)
    if not v:
        raise NotAssociativeIdealError(f"Q is not an associative ideal: {' '.join(v.witness)}", v.witness)
    return members


def local_units(m: FiniteMonoid, q: Subset) -> frozenset[int]:
    """Indices of all local units; always contains ``m.unit``."""
    members = _require_associative(m, q)
    return frozenset(e for e in range(len(m)) if is_local_unit(m, members, e))


def check_unit_coverage(m: FiniteMonoid, q: Subset, include_unit: bool = False) -> Verdict:
    """Every non-unit x outside Q needs local units e, e' with ex and xe' outside Q."""
    members = _require_associative(m, q)
    units = [e for e in local_units(m, members) if include_unit or e != m.unit]
    t = m.table
    for x in range(len(m)):
        if x in members or x == m.unit:
            continue
        if not any(t[e][x] not in members for e in units):
            return Verdict(False, (m.elements[x],), "no local unit on the left")
        if not any(t[x][e] not in members for e in units):
            return Verdict(False, (m.elements[x],), "no local unit on the right")
    return Verdict(True)


def adjoin_local_unit(m: FiniteMonoid, q: Subset, name: str = "u") -> tuple[FiniteMonoid, int]:
    """Add a fresh element acting as identity on every non-unit element.

    The fresh element u satisfies uu = u and uE = Eu = u.  Indices of ``m``
    are preserved and u is appended last.  Refused when the extension is not
    associative (this happens when two non-units multiply to E).  Only a
    two-sided ideal is required: Q need not stay associative in the result,
    since u may sit between two elements whose product lies in Q.
    """
    members = require_ideal(m, q)
    n = len(m)
    while name in m.elements:
        name += "'"
    rows = [list(r) + [n if i == m.unit else i] for i, r in enumerate(m.table)]
    rows.append([n if j == m.unit else j for j in range(n)] + [n])
    ext = FiniteMonoid((*m.elements, name), m.unit, tuple(tuple(r) for r in rows), f"{m.name}+{name}")
    report = verify_monoid(ext)
    if not report.ok:
        raise ValueError(f"adjoining {name} to {m.name} breaks the monoid axioms: {report.violations[0]}")
    if not is_local_unit(ext, members, n):
        raise AssertionError("fresh unit is not local")
    return ext, n


@dataclass(frozen=True)
class PartialCompositionStructure:
    carrier: tuple[str, ...]
    product: Mapping[tuple[str, str], str] = field(hash=False)
    local_units: frozenset[str] = frozenset()
    source: str = ""

    def defined(self, a: str, b: str) -> bool:
        return (a, b) in self.product

    def weak_associativity(self) -> Verdict:
        p = self.product
        for a, b, c in itertools.product(self.carrier, repeat=3):
            if (a, b) in p and (b, c) in p:
                left, right = p.get((p[(a, b)], c)), p.get((a, p[(b, c)]))
                if left is None or right is None or left != right:
                    return Verdict(False, (a, b, c), "ab, bc defined but (ab)c, a(bc) disagree")
        return Verdict(True)


def partial_structure(m: FiniteMonoid, members: frozenset[int]) -> PartialCompositionStructure:
    """Carrier and partial product without checking that Q is associative."""
    names, t = m.elements, m.table
    carrier = [i for i in range(len(m)) if i != m.unit and i not in members]
    product = {}
    for a, b in itertools.product(carrier, repeat=2):
        c = t[a][b]
        if c in members:
            continue
        if c == m.unit:
            raise StructureError(f"{names[a]}*{names[b]} is the unit; the product leaves the carrier")
        product[(names[a], names[b])] = names[c]
    units = frozenset(names[e] for e in carrier if is_local_unit(m, members, e))
    return PartialCompositionStructure(tuple(names[i] for i in carrier), product, units, m.name)


def monoid_to_partial(m: FiniteMonoid, q: Subset) -> PartialCompositionStructure:
    members = _require_associative(m, q)
    p = partial_structure(m, members)
    v = p.weak_associativity()
    if not v:
        raise AssertionError(f"associative ideal gave a non weakly associative product at {v.witness}")
    return p


@dataclass(frozen=True)
class PartialOutcome:
    category: FiniteCategory | None
    diagnosis: str = ""
    forced: bool = False

    @property
    def ok(self) -> bool:
        return self.category is not None


def partial_to_category(p: PartialCompositionStructure, name: str | None = None) -> PartialOutcome:
    """Read a category off a partial structure whose objects are its local units.

    Each element's domain is its unique left local unit and its codomain its
    unique right local unit.  Missing or ambiguous units, or category axioms
    failing afterwards, give a diagnosis instead of a category.
    """
    units = [e for e in p.carrier if e in p.local_units]
    dom, cod = {}, {}
    for x in p.carrier:
        left = [e for e in units if p.defined(e, x)]
        right = [e for e in units if p.defined(x, e)]
        for side, found, slot in (("left", left, dom), ("right", right, cod)):
            if not found:
                return PartialOutcome(None, f"no {side} local unit for {x}")
            if len(found) > 1:
                return PartialOutcome(None, f"multiple {side} local units for {x}: {','.join(found)}")
            slot[x] = found[0]
    k = FiniteCategory(
        name or f"{p.source}~",
        tuple(units),
        tuple(Arrow(x, dom[x], cod[x]) for x in p.carrier),
        dict(p.product),
        {e: e for e in units},
    )
    report = verify_category(k)
    if not report.ok:
        return PartialOutcome(None, f"weak category: {report.violations[0]}")
    return PartialOutcome(k, "", forced=True)


def roundtrip_category(k: FiniteCategory) -> tuple[str, str]:
    """Category -> monoid with zero -> partial structure -> category."""
    mz, _ = category_to_monoid(k)
    p = monoid_to_partial(mz.monoid, [mz.zero])
    out = partial_to_category(p, k.name)
    if not out.ok:
        return "FAIL", out.diagnosis
    if find_category_isomorphism(out.category, k) is None:
        return "FAIL", "rebuilt category is not isomorphic to the original"
    return "OK", ""


def roundtrip_monoid(m: FiniteMonoid, q: Subset) -> tuple[str, str]:
    """Monoid with ideal -> partial structure -> category -> monoid with zero,
    compared against collapsing Q directly."""
    members = members_of(m, q)
    v = is_associative_ideal(m, members)
    if not v:
        return "FAIL", "ideal not associative at " + " ".join(v.witness)
    try:
        p = monoid_to_partial(m, members)
    except StructureError as exc:
        return "WEAK", str(exc)
    out = partial_to_category(p)
    if not out.ok:
        return "WEAK", out.diagnosis
    back, _ = category_to_monoid(out.category)
    if find_isomorphism(back.monoid, quotient_to_zero(m, members).quotient) is None:
        return "FAIL", "completed category differs from the quotient by Q"
    return "OK", ""


def roundtrip_line(name: str, status: str, detail: str) -> str:
    return f"ROUNDTRIP {name} {status}" + (f" {detail}" if detail else "")


# -- the correspondence R ----------------------------------------------------


@dataclass(frozen=True)
class Clause:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CorrespondenceR:
    pairs: frozenset[tuple[str, str]]
    unit_image: str
    zero_image: str
    clauses: tuple[Clause, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)

    def lines(self, subject: str) -> list[str]:
        return [
            f"CHECK {subject}:R:{c.name} {'PASS' if c.ok else 'FAIL'}" + (f" {c.detail}" if c.detail and not c.ok else "")
            for c in self.clauses
        ]


def build_and_verify_R(m: FiniteMonoid, q: Subset, k: FiniteCategory) -> CorrespondenceR:
    """Pair E with the big unit, all of Q with the eraser and the carrier with
    the arrows of ``k``, then check each clause of the correspondence.

    The carrier-arrow pairing is a product-preserving bijection when one
    exists; otherwise elements are paired in listed order so the failing
    clauses show where the two sides disagree.
    """
    members = _require_associative(m, q)
    mz, embed = category_to_monoid(k)
    k1 = mz.monoid
    big_unit, eraser = k1.elements[k1.unit], k1.elements[mz.zero]
    carrier = [i for i in range(len(m)) if i != m.unit and i not in members]
    arrows = list(k.arrow_names)
    pairs: set[tuple[str, str]] = {(m.elements[m.unit], big_unit)}
    pairs |= {(m.elements[x], eraser) for x in members}

    bijection_detail = ""
    if len(carrier) != len(arrows):
        bijection_detail = f"{len(carrier)} vs {len(arrows)}"
    else:
        quotient = quotient_to_zero(m, members)
        iso = find_isomorphism(quotient.quotient, k1)
        proj = quotient.projection.map
        if iso is not None:
            for x in carrier:
                pairs.add((m.elements[x], k1.elements[iso[proj[x]]]))
        else:
            pairs |= {(m.elements[x], a) for x, a in zip(carrier, arrows)}

    partners: dict[str, set[str]] = {x: set() for x in m.elements}
    owners: dict[str, set[str]] = {x: set() for x in k1.elements}
    for a, x in pairs:
        partners[a].add(x)
        owners[x].add(a)
    names = m.elements
    clauses = []

    missing = [a for a in names if not partners[a]]
    clauses.append(Clause("total", not missing, " ".join(missing)))
    u = names[m.unit]
    clauses.append(Clause("unit", partners[u] == {big_unit}, ",".join(sorted(partners[u]))))
    bad_q = [names[x] for x in sorted(members) if partners[names[x]] != {eraser}]
    clauses.append(Clause("ideal", not bad_q, " ".join(bad_q)))

    arrow_set = set(arrows)
    bad_c = [names[x] for x in carrier if len(partners[names[x]] & arrow_set) != 1]
    clauses.append(Clause("carrier-to-arrows", not bad_c and not bijection_detail, bijection_detail or " ".join(bad_c)))
    carrier_names = {names[x] for x in carrier}
    bad_a = [a for a in arrows if len(owners[a] & carrier_names) != 1]
    clauses.append(Clause("arrows-to-carrier", not bad_a and not bijection_detail, bijection_detail or " ".join(bad_a)))

    idents = set(k.identities.values())
    bad_l = []
    for a, x in pairs:
        if a == u or x in (big_unit, eraser):
            continue
        if is_local_unit(m, members, m.index(a)) != (x in idents):
            bad_l.append(f"{a}~{x}")
    clauses.append(Clause("local-units", not bad_l, " ".join(sorted(bad_l))))

    bad_p = []
    for (a, x), (b, y) in itertools.product(sorted(pairs), repeat=2):
        ab = names[m.table[m.index(a)][m.index(b)]]
        xy = k1.elements[k1.table[k1.index(x)][k1.index(y)]]
        if (ab, xy) not in pairs:
            bad_p.append(f"{a}*{b}~{x}*{y}")
    clauses.append(Clause("products", not bad_p, bad_p[0] if bad_p else ""))
    return CorrespondenceR(frozenset(pairs), big_unit, eraser, tuple(clauses))
