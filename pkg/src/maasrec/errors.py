"""Shared error types for document validation and rule parsing."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One problem found in a document, located by a JSON-path-like string."""

    path: str
    reason: str

    def __str__(self) -> str:
        return f"{self.path}: {self.reason}"


class SchemaError(ValueError):
    """A document failed validation; carries one Violation per problem."""

    def __init__(self, violations):
        self.violations: list[Violation] = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class RuleSyntaxError(ValueError):
    """Rule text could not be parsed; line/column are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
        elif column is not None:
            where = f"column {column}"
        super().__init__(f"{where}: {message}" if where else message)

    def with_line(self, line: int) -> "RuleSyntaxError":
        return RuleSyntaxError(self.message, line=line, column=self.column)


class EmptyCatalogError(ValueError):
    """Recommendation was requested against a catalog with no plans."""


class AdapterError(RuntimeError):
    """An external adapter (routing engine) failed or is not configured."""
