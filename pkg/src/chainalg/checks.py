"""Result types shared by every checker in the package."""

from __future__ import annotations

from dataclasses import dataclass, field


class StructureError(ValueError):
    """Input is malformed (wrong shape, dangling name, index out of range).

    Kept distinct from an axiom failure, which is reported, not raised.
    """


class ParseError(StructureError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple[str, ...] = ()
    detail: str = ""

    def __str__(self) -> str:
        parts = [self.kind, *self.witness]
        if self.detail:
            parts.append(f"({self.detail})")
        return " ".join(parts)


@dataclass(frozen=True)
class Report:
    """Outcome of a validation: empty ``violations`` means the object is fine."""

    subject: str
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def line(self) -> str:
        if self.ok:
            return f"CHECK {self.subject} PASS"
        return f"CHECK {self.subject} FAIL {self.violations[0]}"


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer with the counterexample that decided a "no"."""

    holds: bool
    witness: tuple[str, ...] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


def check_line(name: str, verdict: Verdict | Report | bool, extra: str = "") -> str:
    ok = bool(verdict)
    parts = ["CHECK", name, "PASS" if ok else "FAIL"]
    if not ok:
        if isinstance(verdict, Verdict):
            if verdict.witness:
                parts.extend(verdict.witness)
            if verdict.detail:
                parts.append(verdict.detail)
        elif isinstance(verdict, Report):
            parts.append(str(verdict.violations[0]))
    if extra:
        parts.append(extra)
    return " ".join(parts)
