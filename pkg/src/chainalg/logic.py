"""First-order axioms: parser, printer, localizing rewriter and a finite-model
evaluator.

Grammar, one axiom per line::

    formula := ('forall' | 'exists') VAR '.' formula
             | disjunct ('implies' formula)?           # right associative
             | disjunct 'iff' disjunct
    disjunct := conjunct ('or' conjunct)*
    conjunct := unary ('and' unary)*
    unary    := 'not' unary | '(' formula ')' | quantified | atom
    atom     := NAME '(' term (',' term)* ')'
    term     := NAME '(' term (',' term)* ')' | NAME

A bare name is a variable when a quantifier binds it and a constant
otherwise.  ``eq`` is built-in equality; ``ex`` is the existence predicate
and may take any number of arguments.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from chainalg.bridge import local_units
from chainalg.checks import ParseError
from chainalg.ideals import NotAssociativeIdealError, Subset, is_associative_ideal, members_of
from chainalg.monoid import FiniteMonoid

EQ = "eq"
EX = "ex"
PRODUCT = "op"
KEYWORDS = {"forall", "exists", "and", "or", "implies", "iff", "not"}


# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Func:
    name: str
    args: tuple["Term", ...]


Term = Union[Var, Const, Func]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    premise: "Formula"
    conclusion: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Iff, Forall, Exists]


# -- printer -------------------------------------------------------------------


def show_term(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    return f"{t.name}({', '.join(show_term(a) for a in t.args)})"


def _operand(f: Formula) -> str:
    text = show(f)
    return f"({text})" if isinstance(f, (Forall, Exists)) else text


def show(f: Formula) -> str:
    if isinstance(f, Atom):
        return f"{f.pred}({', '.join(show_term(a) for a in f.args)})"
    if isinstance(f, Not):
        return "not " + _operand(f.body)
    if isinstance(f, And):
        return "(" + " and ".join(_operand(p) for p in f.parts) + ")"
    if isinstance(f, Or):
        return "(" + " or ".join(_operand(p) for p in f.parts) + ")"
    if isinstance(f, Implies):
        return f"({_operand(f.premise)} implies {_operand(f.conclusion)})"
    if isinstance(f, Iff):
        return f"({_operand(f.left)} iff {_operand(f.right)})"
    if isinstance(f, Forall):
        return f"forall {f.var} . {show(f.body)}"
    if isinstance(f, Exists):
        return f"exists {f.var} . {show(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


# -- parser --------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "name", "punct", "end"
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(1):
            toks.append(_Tok("name", m.group(1), line, m.start(1) + 1))
        elif m.group(2):
            ch = m.group(2)
            if ch not in "(),.":
                raise ParseError(f"unexpected character {ch!r}", line, m.start(2) + 1)
            toks.append(_Tok("punct", ch, line, m.start(2) + 1))
        pos = m.end()
    toks.append(_Tok("end", "", line, len(text.rstrip()) + 1))
    return toks


class _Parser:
    def __init__(self, text: str, line: int):
        self.toks = _tokenize(text, line)
        self.pos = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.pos]

    def error(self, message: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def take(self, text: str) -> _Tok:
        tok = self.tok
        if tok.text != text or tok.kind == "end":
            found = "end of line" if tok.kind == "end" else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind != "end" and self.tok.text == text

    def name(self, what: str) -> _Tok:
        tok = self.tok
        if tok.kind != "name" or tok.text in KEYWORDS:
            found = "end of line" if tok.kind == "end" else repr(tok.text)
            raise self.error(f"expected {what}, found {found}")
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        f = self.formula(())
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r} after formula")
        return f

    def formula(self, bound: tuple[str, ...]) -> Formula:
        if self.at("forall") or self.at("exists"):
            return self.quantified(bound)
        left = self.disjunct(bound)
        if self.at("implies"):
            self.pos += 1
            return Implies(left, self.formula(bound))
        if self.at("iff"):
            self.pos += 1
            return Iff(left, self.disjunct(bound))
        return left

    def quantified(self, bound: tuple[str, ...]) -> Formula:
        kind = self.tok.text
        self.pos += 1
        var = self.name("variable").text
        self.take(".")
        body = self.formula(bound + (var,))
        return Forall(var, body) if kind == "forall" else Exists(var, body)

    def disjunct(self, bound: tuple[str, ...]) -> Formula:
        parts = [self.conjunct(bound)]
        while self.at("or"):
            self.pos += 1
            parts.append(self.conjunct(bound))
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunct(self, bound: tuple[str, ...]) -> Formula:
        parts = [self.unary(bound)]
        while self.at("and"):
            self.pos += 1
            parts.append(self.unary(bound))
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self, bound: tuple[str, ...]) -> Formula:
        if self.at("not"):
            self.pos += 1
            return Not(self.unary(bound))
        if self.at("forall") or self.at("exists"):
            return self.quantified(bound)
        if self.at("("):
            self.pos += 1
            f = self.formula(bound)
            self.take(")")
            return f
        tok = self.name("formula")
        if not self.at("("):
            raise self.error(f"predicate {tok.text!r} needs an argument list")
        return Atom(tok.text, self.arguments(bound))

    def arguments(self, bound: tuple[str, ...]) -> tuple[Term, ...]:
        self.take("(")
        args = [self.term(bound)]
        while self.at(","):
            comma = self.tok
            self.pos += 1
            if self.tok.kind == "end" or self.at(")"):
                raise self.error("trailing ',' in argument list", comma)
            args.append(self.term(bound))
        self.take(")")
        return tuple(args)

    def term(self, bound: tuple[str, ...]) -> Term:
        tok = self.name("term")
        if self.at("("):
            return Func(tok.text, self.arguments(bound))
        return Var(tok.text) if tok.text in bound else Const(tok.text)


def _symbols(f: Formula) -> Iterator[tuple[str, str, int]]:
    """Yield (kind, name, arity) for every predicate and function occurrence."""

    def terms(t: Term) -> Iterator[tuple[str, str, int]]:
        if isinstance(t, Func):
            yield "function", t.name, len(t.args)
            for a in t.args:
                yield from terms(a)

    for node in _walk(f):
        if isinstance(node, Atom):
            yield "predicate", node.pred, len(node.args)
            for a in node.args:
                yield from terms(a)


def _walk(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from _walk(f.body)
    elif isinstance(f, (And, Or)):
        for p in f.parts:
            yield from _walk(p)
    elif isinstance(f, Implies):
        yield from _walk(f.premise)
        yield from _walk(f.conclusion)
    elif isinstance(f, Iff):
        yield from _walk(f.left)
        yield from _walk(f.right)
    elif isinstance(f, (Forall, Exists)):
        yield from _walk(f.body)


def check_arities(numbered: Iterable[tuple[int, Formula]]) -> None:
    """Each symbol keeps one arity across all formulas; ``ex`` is variadic."""
    seen: dict[tuple[str, str], int] = {}
    for no, f in numbered:
        for kind, name, arity in _symbols(f):
            if kind == "predicate" and name == EX:
                continue
            if kind == "predicate" and name == EQ and arity != 2:
                raise ParseError(f"arity mismatch for {EQ}: takes 2 arguments, got {arity}", no)
            key = (kind, name)
            if seen.setdefault(key, arity) != arity:
                raise ParseError(f"arity mismatch for {kind} {name}: {seen[key]} vs {arity}", no)


def parse_formula(text: str, line: int = 1) -> Formula:
    f = _Parser(text, line).parse()
    check_arities([(line, f)])
    return f


def parse_axioms(text: str) -> list[Formula]:
    numbered = []
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0]
        if s.strip():
            numbered.append((no, _Parser(s, no).parse()))
    check_arities(numbered)
    return [f for _, f in numbered]


# -- localization ----------------------------------------------------------------


@dataclass(frozen=True)
class Rewrite:
    axiom: int
    kind: str  # "guard", "constant" or "skipped"
    target: str
    result: str

    def __str__(self) -> str:
        return f"{self.kind.upper()} {self.axiom} {self.target} -> {self.result}"


@dataclass(frozen=True)
class LocalizationReport:
    inputs: tuple[Formula, ...]
    outputs: tuple[Formula, ...]
    trace: tuple[Rewrite, ...]
    warnings: tuple[str, ...] = ()


def _has_var(t: Term) -> bool:
    if isinstance(t, Var):
        return True
    if isinstance(t, Func):
        return any(_has_var(a) for a in t.args)
    return False


def tau_name(side: int, const: str) -> str:
    return f"tau{side}_{const}"


class _Localizer:
    def __init__(self, reading: str, product: str):
        if reading not in ("adjacent", "literal"):
            raise ValueError(f"unknown reading {reading!r}")
        self.reading = reading
        self.product = product
        self.trace: list[Rewrite] = []
        self.warnings: list[str] = []
        self.axiom = 0

    # constants ----------------------------------------------------------

    def _leaves(self, t: Term) -> list[Term]:
        if isinstance(t, Func) and t.name == self.product:
            return [leaf for a in t.args for leaf in self._leaves(a)]
        return [t]

    def _rebuild(self, t: Term, leaves: Iterator[Term]) -> Term:
        if isinstance(t, Func) and t.name == self.product:
            return Func(t.name, tuple(self._rebuild(a, leaves) for a in t.args))
        return next(leaves)

    def _localize_sequence(self, seq: Sequence[Term]) -> list[Term]:
        """Replace constants in a sequence by terms of a neighbouring element."""
        inner = [t if isinstance(t, Const) else self._localize_term(t) for t in seq]
        out = list(inner)
        for i, t in enumerate(inner):
            if not isinstance(t, Const):
                continue
            left = inner[i - 1] if i > 0 else None
            right = inner[i + 1] if i + 1 < len(inner) else None
            if left is not None and _has_var(left):
                out[i] = Func(tau_name(1, t.name), (left,))
            elif right is not None and _has_var(right):
                out[i] = Func(tau_name(2, t.name), (right,))
            else:
                self.warnings.append(f"axiom {self.axiom}: constant {t.name} has no adjacent variable term; axiom left unchanged")
                self.trace.append(Rewrite(self.axiom, "skipped", t.name, t.name))
                continue
            self.trace.append(Rewrite(self.axiom, "constant", t.name, show_term(out[i])))
        return out

    def _localize_term(self, t: Term) -> Term:
        if isinstance(t, Func) and t.name == self.product:
            leaves = self._localize_sequence(self._leaves(t))
            return self._rebuild(t, iter(leaves))
        if isinstance(t, Func):
            return Func(t.name, tuple(self._localize_sequence(t.args)))
        return t

    # guards ----------------------------------------------------------------

    def _pairs(self, seq: Sequence[Term]) -> list[tuple[Term, Term]]:
        if self.reading == "adjacent":
            return list(zip(seq, seq[1:]))
        return [(seq[0], s) for s in seq[1:]]

    def _term_guards(self, t: Term) -> list[tuple[Term, Term]]:
        if not isinstance(t, Func):
            return []
        if t.name == self.product:
            leaves = self._leaves(t)
            out = self._pairs(leaves)
            for leaf in leaves:
                out += self._term_guards(leaf)
            return out
        return [p for a in t.args for p in self._term_guards(a)]

    def guard(self, atom: Atom) -> Formula | None:
        pairs: list[tuple[Term, Term]] = []
        if atom.pred not in (EQ, EX) and len(atom.args) >= 2:
            pairs += self._pairs(atom.args)
        for a in atom.args:
            pairs += self._term_guards(a)
        unique = list(dict.fromkeys(pairs))
        if not unique:
            return None
        atoms = tuple(Atom(EX, p) for p in unique)
        return atoms[0] if len(atoms) == 1 else And(atoms)

    def atom(self, a: Atom) -> Formula:
        if a.pred == EX:
            return a
        new = Atom(a.pred, tuple(self._localize_sequence(a.args)))
        g = self.guard(new)
        if g is None:
            return new
        self.trace.append(Rewrite(self.axiom, "guard", show(new), show(g)))
        return Implies(g, new)

    def formula(self, f: Formula) -> Formula:
        if isinstance(f, Atom):
            return self.atom(f)
        if isinstance(f, Implies) and isinstance(f.conclusion, Atom) and f.conclusion.pred != EX:
            # already guarded: leave the guard alone
            if self.guard(f.conclusion) == f.premise:
                return f
        if isinstance(f, Not):
            return Not(self.formula(f.body))
        if isinstance(f, And):
            return And(tuple(self.formula(p) for p in f.parts))
        if isinstance(f, Or):
            return Or(tuple(self.formula(p) for p in f.parts))
        if isinstance(f, Implies):
            return Implies(self.formula(f.premise), self.formula(f.conclusion))
        if isinstance(f, Iff):
            return Iff(self.formula(f.left), self.formula(f.right))
        if isinstance(f, Forall):
            return Forall(f.var, self.formula(f.body))
        if isinstance(f, Exists):
            return Exists(f.var, self.formula(f.body))
        raise TypeError(f"not a formula: {f!r}")


def localize(axioms: Sequence[Formula], reading: str = "adjacent", product: str = PRODUCT) -> LocalizationReport:
    """Guard every atom with existence of the sequences it mentions and replace
    constants by one-place terms of a neighbouring element.

    ``reading="adjacent"`` guards consecutive pairs (x_j, x_j+1);
    ``reading="literal"`` guards (x_1, x_j+1) for comparison.
    """
    loc = _Localizer(reading, product)
    outputs = []
    for i, f in enumerate(axioms):
        loc.axiom = i
        mark = len(loc.trace)
        out = loc.formula(f)
        if any(r.kind == "skipped" for r in loc.trace[mark:]):
            # a constant with nothing to attach to: keep the whole axiom as written
            loc.trace[mark:] = [r for r in loc.trace[mark:] if r.kind == "skipped"]
            out = f
        outputs.append(out)
    return LocalizationReport(tuple(axioms), tuple(outputs), tuple(loc.trace), tuple(loc.warnings))


# -- finite models ---------------------------------------------------------------


class EvaluationError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


Value = str


@dataclass
class FiniteStructure:
    domain: tuple[Value, ...]
    functions: dict[str, Callable[..., Value]] = field(default_factory=dict)
    predicates: dict[str, Callable[..., bool]] = field(default_factory=dict)
    constants: dict[str, Value] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.domain = tuple(self.domain)
        if EX not in self.predicates:
            raise ValueError("a structure must interpret the existence predicate ex")

    def with_functions(self, extra: Mapping[str, Callable[..., Value]]) -> FiniteStructure:
        return FiniteStructure(self.domain, {**self.functions, **extra}, dict(self.predicates), dict(self.constants))


def table_function(table: Mapping[tuple[Value, ...], Value]) -> Callable[..., Value]:
    return lambda *args: table[args]


def eval_term(t: Term, s: FiniteStructure, env: Mapping[str, Value]) -> Value:
    if isinstance(t, Var):
        if t.name not in env:
            raise EvaluationError(f"unbound variable {t.name}")
        return env[t.name]
    if isinstance(t, Const):
        if t.name in env:
            return env[t.name]
        if t.name not in s.constants:
            raise EvaluationError(f"uninterpreted constant {t.name}")
        return s.constants[t.name]
    if t.name not in s.functions:
        raise EvaluationError(f"uninterpreted function {t.name}")
    return s.functions[t.name](*(eval_term(a, s, env) for a in t.args))


def evaluate(f: Formula, s: FiniteStructure, env: Mapping[str, Value] | None = None) -> bool:
    """Truth value by exhaustive expansion of quantifiers over the domain."""
    env = dict(env or {})
    if isinstance(f, Atom):
        args = [eval_term(a, s, env) for a in f.args]
        if f.pred == EQ:
            return args[0] == args[1]
        if f.pred not in s.predicates:
            raise EvaluationError(f"uninterpreted predicate {f.pred}")
        return bool(s.predicates[f.pred](*args))
    if isinstance(f, Not):
        return not evaluate(f.body, s, env)
    if isinstance(f, And):
        return all(evaluate(p, s, env) for p in f.parts)
    if isinstance(f, Or):
        return any(evaluate(p, s, env) for p in f.parts)
    if isinstance(f, Implies):
        return not evaluate(f.premise, s, env) or evaluate(f.conclusion, s, env)
    if isinstance(f, Iff):
        return evaluate(f.left, s, env) == evaluate(f.right, s, env)
    if isinstance(f, Forall):
        return all(evaluate(f.body, s, {**env, f.var: v}) for v in s.domain)
    if isinstance(f, Exists):
        return any(evaluate(f.body, s, {**env, f.var: v}) for v in s.domain)
    raise TypeError(f"not a formula: {f!r}")


def free_variables(f: Formula) -> list[str]:
    seen: dict[str, None] = {}

    def term(t: Term, bound: frozenset[str]) -> None:
        if isinstance(t, Var) and t.name not in bound:
            seen.setdefault(t.name)
        elif isinstance(t, Func):
            for a in t.args:
                term(a, bound)

    def go(g: Formula, bound: frozenset[str]) -> None:
        if isinstance(g, Atom):
            for a in g.args:
                term(a, bound)
        elif isinstance(g, Not):
            go(g.body, bound)
        elif isinstance(g, (And, Or)):
            for p in g.parts:
                go(p, bound)
        elif isinstance(g, Implies):
            go(g.premise, bound)
            go(g.conclusion, bound)
        elif isinstance(g, Iff):
            go(g.left, bound)
            go(g.right, bound)
        else:
            go(g.body, bound | {g.var})

    go(f, frozenset())
    return list(seen)


def satisfiable(f: Formula, s: FiniteStructure, variables: Sequence[str]) -> bool:
    """Whether some assignment of ``variables`` makes ``f`` true."""
    for values in itertools.product(s.domain, repeat=len(variables)):
        if evaluate(f, s, dict(zip(variables, values))):
            return True
    return False


def monoid_structure(m: FiniteMonoid, q: Subset, unit_constant: str = "e0") -> FiniteStructure:
    """Domain = elements of ``m``; op = table; ex(x1..xn) = the product lies outside Q."""
    members = members_of(m, q)
    names = m.elements
    idx = {x: i for i, x in enumerate(names)}

    def op(x: Value, y: Value) -> Value:
        return names[m.table[idx[x]][idx[y]]]

    def ex(*xs: Value) -> bool:
        acc = m.unit
        for x in xs:
            acc = m.table[acc][idx[x]]
        return acc not in members

    return FiniteStructure(names, {PRODUCT: op}, {EX: ex}, {unit_constant: names[m.unit]})


def total_structure(m: FiniteMonoid, constants: Mapping[str, Value] | None = None) -> FiniteStructure:
    """Everything exists; each tau symbol is read back as its constant."""
    names = m.elements
    idx = {x: i for i, x in enumerate(names)}
    consts = dict(constants or {"e0": names[m.unit]})
    functions: dict[str, Callable[..., Value]] = {PRODUCT: lambda x, y: names[m.table[idx[x]][idx[y]]]}
    for c, v in consts.items():
        for side in (1, 2):
            functions[tau_name(side, c)] = lambda _x, v=v: v
    return FiniteStructure(names, functions, {EX: lambda *xs: True}, consts)


MONOID_AXIOMS = """\
forall x . forall y . forall z . eq(op(op(x, y), z), op(x, op(y, z)))
forall x . eq(op(e0, x), x)
forall x . eq(op(x, e0), x)
"""


@dataclass(frozen=True)
class TauSearch:
    chosen: dict[str, dict[Value, Value]]
    candidates: dict[str, dict[Value, tuple[Value, ...]]]
    vacuous: dict[str, tuple[Value, ...]]


@dataclass(frozen=True)
class ModelCheckReport:
    subject: str
    axioms: tuple[tuple[str, bool], ...]
    taus: TauSearch
    guards_satisfiable: bool

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.axioms) and self.guards_satisfiable

    def lines(self) -> list[str]:
        out = [f"CHECK {self.subject}:axiom{i} {'PASS' if ok else 'FAIL'} {text}" for i, (text, ok) in enumerate(self.axioms)]
        out.append(f"CHECK {self.subject}:guards-satisfiable {'PASS' if self.guards_satisfiable else 'FAIL'}")
        for sym in sorted(self.taus.chosen):
            table = self.taus.chosen[sym]
            out.append(f"TAU {sym} " + " ".join(f"{x}->{v}" for x, v in table.items()))
            for x, cands in self.taus.candidates[sym].items():
                out.append(f"TAU_CANDIDATES {sym} {x} " + (",".join(cands) if cands else "-"))
        return out


def _guards(f: Formula) -> list[Formula]:
    return [g.premise for g in _walk(f) if isinstance(g, Implies) and all(
        isinstance(a, Atom) and a.pred == EX for a in ((g.premise.parts) if isinstance(g.premise, And) else (g.premise,))
    )]


def _tau_symbols(f: Formula) -> set[str]:
    out = set()
    for kind, name, _ in _symbols(f):
        if kind == "function" and re.fullmatch(r"tau[12]_\w+", name):
            out.add(name)
    return out


def check_localized_monoid_theory(m: FiniteMonoid, q: Subset, axioms_text: str = MONOID_AXIOMS) -> ModelCheckReport:
    """Evaluate the localized monoid axioms on (M, Q), searching tau
    interpretations among local units.

    A candidate e for tau(x) must make the axiom's guard true at x (the term
    really exists) and its conclusion true.  Units other than E are
    preferred; elements with no existing candidate (the members of Q) get E.
    """
    members = members_of(m, q)
    v = is_associative_ideal(m, members)
    if not v:
        raise NotAssociativeIdealError(f"Q is not an associative ideal: {' '.join(v.witness)}", v.witness)
    units = sorted(local_units(m, members))
    unit_names = [m.elements[e] for e in units]
    unit = m.elements[m.unit]
    base = monoid_structure(m, members)
    report = localize(parse_axioms(axioms_text))

    chosen: dict[str, dict[Value, Value]] = {}
    candidates: dict[str, dict[Value, tuple[Value, ...]]] = {}
    vacuous: dict[str, tuple[Value, ...]] = {}
    for f in report.outputs:
        syms = _tau_symbols(f)
        if not syms:
            continue
        if len(syms) != 1 or not isinstance(f, Forall) or not isinstance(f.body, Implies):
            raise ValueError(f"tau search needs 'forall x . (guard implies atom)' with one tau symbol: {show(f)}")
        sym = syms.pop()
        matrix = f.body
        per_x: dict[Value, tuple[Value, ...]] = {}
        pick: dict[Value, Value] = {}
        empty = []
        for x in m.elements:
            good = []
            for e in unit_names:
                s = base.with_functions({sym: lambda _y, e=e: e})
                env = {f.var: x}
                if evaluate(matrix.premise, s, env) and evaluate(matrix.conclusion, s, env):
                    good.append(e)
            per_x[x] = tuple(good)
            small = [e for e in good if e != unit]
            if small:
                pick[x] = small[0]
            elif good:
                pick[x] = good[0]
            else:
                pick[x] = unit
                empty.append(x)
        chosen[sym] = pick
        candidates[sym] = per_x
        vacuous[sym] = tuple(empty)

    model = base.with_functions({sym: (lambda y, t=table: t[y]) for sym, table in chosen.items()})
    results = tuple((show(f), evaluate(f, model)) for f in report.outputs)
    guards_ok = all(
        satisfiable(g, model, free_variables(g)) for f in report.outputs for g in _guards(f)
    )
    return ModelCheckReport(m.name, results, TauSearch(chosen, candidates, vacuous), guards_ok)
