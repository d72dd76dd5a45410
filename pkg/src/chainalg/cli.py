"""Command-line entry point.

Every report is a sequence of ``KEY value ...`` lines.  Exit status is 0 when
all checks pass, 1 when some check fails and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from chainalg import bridge, chains, ideals, logic
from chainalg.category import category_to_monoid, completion_report, format_category, parse_category, verify_category
from chainalg.checks import StructureError, check_line
from chainalg.corpus import categories
from chainalg.monoid import FiniteMonoid, enumerate_monoids, format_monoid, parse_monoid, verify_monoid

OK, CHECK_FAILED, BAD_INPUT = 0, 1, 2


class Output:
    def __init__(self, full: bool):
        self.full = full
        self.lines: list[str] = []
        self.failed = False

    def emit(self, line: str) -> None:
        self.lines.append(line)

    def trace(self, line: str) -> None:
        if self.full:
            self.lines.append(line)

    def check(self, name: str, verdict, extra: str = "") -> bool:
        ok = bool(verdict)
        self.failed |= not ok
        self.lines.append(check_line(name, verdict, extra))
        return ok


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise StructureError(f"cannot read {path}: {exc.strerror}") from None


def _kind(text: str) -> str:
    for raw in text.splitlines():
        s = raw.split("#", 1)[0].strip()
        if s:
            return s.split()[0]
    return ""


def _load_monoid(path: str) -> tuple[FiniteMonoid, dict[str, frozenset[int]]]:
    m, named = parse_monoid(_read(path))
    report = verify_monoid(m)
    if not report.ok:
        raise StructureError(f"{m.name} is not a monoid: {report.violations[0]}")
    return m, named


def _selected(m: FiniteMonoid, named: dict[str, frozenset[int]], which: str | None) -> dict[str, frozenset[int]]:
    if which is not None:
        if which not in named:
            raise StructureError(f"{m.name} declares no ideal named {which!r}")
        return {which: named[which]}
    if not named:
        raise StructureError(f"{m.name} declares no ideal; add an 'ideal <name> ...' line")
    return named


def _braces(m: FiniteMonoid, members) -> str:
    return "{" + ",".join(m.elements[i] for i in sorted(members)) + "}"


# -- subcommands ---------------------------------------------------------------


def cmd_verify(args, out: Output) -> None:
    text = _read(args.file)
    kind = _kind(text)
    if kind == "monoid":
        m, named = parse_monoid(text)
        report = verify_monoid(m)
        out.check("monoid", report)
        for v in report.violations[1:]:
            out.trace(f"VIOLATION {v}")
        if report.ok:
            for name, members in named.items():
                out.check(f"ideal:{name}", ideals.ideal_verdict(m, members))
    elif kind == "category":
        k = parse_category(text)
        report = verify_category(k)
        out.check("category", report)
        for v in report.violations[1:]:
            out.trace(f"VIOLATION {v}")
        if report.ok:
            out.check("completion", completion_report(k))
    elif kind == "rel":
        out.check("rel", chains.validate_rel(chains.parse_rel(text)))
    else:
        raise StructureError(f"cannot tell what {args.file} contains (first keyword {kind!r})")


def cmd_ideals(args, out: Output) -> None:
    m, named = _load_monoid(args.file)
    if named and args.ideal is None:
        chosen = named
    elif args.ideal is not None:
        chosen = _selected(m, named, args.ideal)
    else:
        chosen = {_braces(m, q.members): q.members for q in ideals.enumerate_associative_ideals(m)}
        if len(m) <= ideals.IDEAL_ENUMERATION_CAP:
            chosen = {_braces(m, q): q for q in ideals.all_ideals(m)}
    for name, members in chosen.items():
        if not out.check(f"ideal:{name}", ideals.ideal_verdict(m, members)):
            continue
        assoc = ideals.is_associative_ideal(m, members)
        prime = ideals.is_prime_ideal(m, members)
        weak = ideals.weak_simplicity_check(m, members, args.allow_unit_witness)
        line = f"IDEAL {name} {_braces(m, members)} associative={'yes' if assoc else 'no'} prime={'yes' if prime else 'no'}"
        line += f" weakly-simple={'yes' if weak else 'no'}"
        out.emit(line)
        if not assoc:
            out.trace(f"WITNESS {name} associative {' '.join(assoc.witness)}")
        if not prime:
            out.trace(f"WITNESS {name} prime {' '.join(prime.witness)}")
        if assoc:
            units = bridge.local_units(m, members)
            out.trace(f"LOCAL_UNITS {name} " + " ".join(m.names(units)))


def cmd_quotient(args, out: Output) -> None:
    m, named = _load_monoid(args.file)
    for name, members in _selected(m, named, args.ideal).items():
        assoc = ideals.is_associative_ideal(m, members)
        if not out.check(f"quotient:{name}:associative", assoc):
            continue
        res = ideals.quotient_to_zero(m, members)
        proj = res.projection.map
        outside = [i for i in range(len(m)) if i not in members]
        injective = len({proj[i] for i in outside}) == len(outside) and res.zero not in {proj[i] for i in outside}
        out.check(f"quotient:{name}:injective-off-Q", injective)
        out.check(f"quotient:{name}:zero-associative", ideals.is_associative_ideal(res.quotient, [res.zero]))
        out.emit(f"QUOTIENT {name} zero {res.quotient.elements[res.zero]} order {len(res.quotient)}")
        for line in format_monoid(res.quotient).splitlines():
            out.trace(f"TABLE {line}")
        collapsed = ideals.quotient_to_unit(m, members)
        out.emit(f"QUOTIENT_TO_UNIT {name} order {len(collapsed)}")
        out.check(f"quotient:{name}:to-unit-trivial", len(collapsed) == 1)


def cmd_pushout(args, out: Output) -> None:
    m, named = _load_monoid(args.file)
    corpus = [x for k in range(1, args.corpus_order + 1) for x in enumerate_monoids(k)]
    for name, members in _selected(m, named, args.ideal).items():
        assoc = ideals.is_associative_ideal(m, members)
        if not out.check(f"pushout:{name}:associative", assoc):
            continue
        w = ideals.verify_pushout(m, members, corpus)
        out.check(f"pushout:{name}:commutes", w.commutes)
        bad = w.counterexample()
        out.check(f"pushout:{name}:unique-mediator", bad is None, "" if bad is None else f"target {bad.target}")
        for r in w.records:
            out.trace(f"COCONE {name} {r.target} pairs {r.pairs} mediators {','.join(map(str, r.mediator_counts)) or '-'}")


def cmd_to_monoid(args, out: Output) -> None:
    k = parse_category(_read(args.file))
    report = verify_category(k)
    if not report.ok:
        out.check("category", report)
        return
    mz, embed = category_to_monoid(k)
    out.lines.extend(format_monoid(mz.monoid, {"zero": [mz.zero]}).splitlines())
    for f in k.arrow_names:
        out.trace(f"# EMBED {f} {mz.monoid.elements[embed[f]]}")


def cmd_to_category(args, out: Output) -> None:
    m, named = _load_monoid(args.file)
    for name, members in _selected(m, named, args.ideal).items():
        assoc = ideals.is_associative_ideal(m, members)
        if not assoc:
            out.check(f"to-category:{name}:associative", assoc)
            continue
        try:
            p = bridge.partial_structure(m, members)
        except StructureError as exc:
            out.check(f"to-category:{name}", False, str(exc))
            continue
        res = bridge.partial_to_category(p, f"{m.name}~{name}")
        if not res.ok:
            out.check(f"to-category:{name}", False, res.diagnosis)
            continue
        out.lines.extend(format_category(res.category).splitlines())


def cmd_roundtrip(args, out: Output) -> None:
    if args.file is None:
        for k in categories():
            _roundtrip_category(k, out)
        return
    text = _read(args.file)
    if _kind(text) == "category":
        k = parse_category(text)
        if out.check("category", verify_category(k)):
            _roundtrip_category(k, out)
        return
    m, named = _load_monoid(args.file)
    for name, members in _selected(m, named, args.ideal).items():
        status, detail = bridge.roundtrip_monoid(m, members)
        out.failed |= status != "OK"
        out.emit(bridge.roundtrip_line(f"{m.name}:{name}", status, detail))


def _roundtrip_category(k, out: Output) -> None:
    status, detail = bridge.roundtrip_category(k)
    out.failed |= status != "OK"
    out.emit(bridge.roundtrip_line(k.name, status, detail))
    mz, _ = category_to_monoid(k)
    r = bridge.build_and_verify_R(mz.monoid, [mz.zero], k)
    out.failed |= not r.ok
    for line in r.lines(k.name):
        if line.split()[2] == "FAIL" or out.full:
            out.emit(line)


def cmd_chains(args, out: Output) -> None:
    rel = chains.parse_rel(_read(args.file))
    out.check("rel", chains.validate_rel(rel))
    for w in chains.enumerate_chains(rel, args.max_len):
        out.emit(f"CHAIN {chains.show_word(w)}")
    props = chains.verify_four_properties(rel, args.max_len)
    for name, verdict in props.as_dict().items():
        out.check(name, verdict)
    if args.bound is not None:
        res = chains.ideal_from_rel(rel, args.bound)
        out.check("ideal:two-sided", res.two_sided)
        out.check("ideal:matches-ex", res.matches_ex)
        out.check("ideal:associative", res.associative)
        prime = "yes" if res.prime else "no " + " ".join(res.prime.witness or ())
        out.emit(f"IDEAL bound {args.bound} prime={prime.rstrip()}")


def cmd_localize(args, out: Output) -> None:
    axioms = logic.parse_axioms(_read(args.file))
    report = logic.localize(axioms, reading=args.reading)
    for f in report.outputs:
        out.emit(logic.show(f))
    for r in report.trace:
        out.trace(f"# {r}")
    for w in report.warnings:
        out.emit(f"# WARNING {w}")


def cmd_model_check(args, out: Output) -> None:
    m, named = _load_monoid(args.file)
    axioms = _read(args.axioms) if args.axioms else logic.MONOID_AXIOMS
    for name, members in _selected(m, named, args.ideal).items():
        assoc = ideals.is_associative_ideal(m, members)
        if not out.check(f"model-check:{name}:associative", assoc):
            continue
        report = logic.check_localized_monoid_theory(m, members, axioms)
        out.failed |= not report.ok
        for line in report.lines():
            if line.startswith("TAU_CANDIDATES"):
                out.trace(line)
            else:
                out.emit(line)


def cmd_search(args, out: Output) -> None:
    counterexamples = 0
    for n in range(1, args.order + 1):
        for m in enumerate_monoids(n):
            for q in ideals.all_ideals(m):
                assoc = ideals.is_associative_ideal(m, q)
                prime = ideals.is_prime_ideal(m, q)
                if prime and not assoc:
                    counterexamples += 1
                    out.emit(f"PRIME_NOT_ASSOC {m.name} {_braces(m, q)}")
                if assoc and not prime:
                    out.emit(f"ASSOC_NOT_PRIME {m.name} {_braces(m, q)}")
                    out.trace(f"# {m.name} prime fails at {' '.join(prime.witness)}")
    out.check(f"prime-implies-associative:order<={args.order}", counterexamples == 0)


# -- wiring --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainalg", description="Check monoids with ideals, categories and existence relations.")
    parser.add_argument("--format", choices=["summary", "full-trace"], default="summary")
    parser.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file=True, ideal=False):
        p = sub.add_parser(name, help=help_text)
        if file:
            p.add_argument("file")
        if ideal:
            p.add_argument("--ideal", help="name of an ideal declared in the file (default: all)")
        p.set_defaults(func=func)
        return p

    add("verify", cmd_verify, "validate a monoid, category or existence relation file")
    p = add("ideals", cmd_ideals, "classify declared ideals, or enumerate all of them", ideal=True)
    p.add_argument("--allow-unit-witness", action=argparse.BooleanOptionalAction, default=True)
    add("quotient", cmd_quotient, "collapse an ideal to zero and to the unit", ideal=True)
    p = add("pushout", cmd_pushout, "check the pushout property of the quotient", ideal=True)
    p.add_argument("--corpus-order", type=int, default=3, choices=[1, 2, 3])
    add("to-monoid", cmd_to_monoid, "complete a category to a monoid with zero")
    add("to-category", cmd_to_category, "read a category off a monoid and ideal", ideal=True)
    p = add("roundtrip", cmd_roundtrip, "round trip categories (built-in corpus if no file)", file=False, ideal=True)
    p.add_argument("file", nargs="?")
    p = add("chains", cmd_chains, "enumerate chains and check the sequence properties")
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--bound", type=int, help="also check the ideal of non-chains up to this length")
    p = add("localize", cmd_localize, "rewrite axioms with existence guards")
    p.add_argument("--reading", choices=["adjacent", "literal"], default="adjacent")
    p = add("model-check", cmd_model_check, "evaluate localized axioms on a monoid with ideal", ideal=True)
    p.add_argument("--axioms", help="axiom file (default: the monoid axioms)")
    p = add("search", cmd_search, "scan small monoids for associative ideals that are not prime", file=False)
    p.add_argument("--order", type=int, default=3, choices=[1, 2, 3, 4])
    return parser


def execute(args: argparse.Namespace) -> tuple[int, str]:
    out = Output(args.format == "full-trace")
    if getattr(args, "max_len", None) is not None and not 0 <= args.max_len <= chains.CHAIN_LENGTH_CAP:
        return BAD_INPUT, f"error: --max-len must be between 0 and {chains.CHAIN_LENGTH_CAP}\n"
    try:
        args.func(args, out)
    except (StructureError, ideals.DegenerateIdealError, ideals.NotIdealError) as exc:
        return BAD_INPUT, "\n".join(out.lines + [f"error: {exc}"]) + "\n"
    text = "\n".join(out.lines) + "\n" if out.lines else ""
    return (CHECK_FAILED if out.failed else OK), text


def run(argv: list[str]) -> tuple[int, str]:
    """Parse ``argv`` and return (exit status, report text) without printing."""
    return execute(build_parser().parse_args(argv))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    status, text = execute(args)
    if status == BAD_INPUT:
        sys.stderr.write(text)
    elif args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
