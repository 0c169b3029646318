"""Constraint rules relating traveler answers to admissible plan attributes.

Rules are one-per-line text following a small object-style grammar::

    rule := "If" cond ("and" cond)* "then" cons
    cond := "user." ident ("=" | "!=") literal
    cons := "product." ident ("=" | "!=") literal
          | "product.id" "in" "{" id ("," id)* "}"

Literals are single-quoted strings or bare numbers. Condition literals are
typed by the variable they test (yes/no flags, frequency tokens); quota
consequences compare against the plan's amount for that mode, where an absent
mode counts as 0. Rule files allow blank lines and ``#`` comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Union

from .catalog import MaasPlan, PLAN_MODES, format_number
from .errors import RuleSyntaxError
from .profiles import FrequencyAnswer, UserProfile

# DSL variable name -> (value kind, accessor on UserProfile).
USER_VARIABLES: dict[str, tuple[str, Callable[[UserProfile], object]]] = {
    "driving_license": ("flag", lambda p: p.driving_license),
    "can_cycle": ("flag", lambda p: p.can_cycle),
    "fare_reductions": ("flag", lambda p: p.fare_reductions),
    "public_transport_usage": ("frequency", lambda p: p.usage["public_transport"]),
    "taxi_usage": ("frequency", lambda p: p.usage["taxi"]),
    "bikesharing_usage": ("frequency", lambda p: p.usage["bike_sharing"]),
    "carsharing_usage": ("frequency", lambda p: p.usage["car_sharing"]),
}

# product.<attr> vocabulary: per-mode quota amounts plus price and id.
PRODUCT_ATTRIBUTES = PLAN_MODES + ("price", "id")


@dataclass(frozen=True)
class ConditionAtom:
    """``user.variable = value`` or ``user.variable != value``."""

    variable: str
    operator: str  # "=" or "!="
    value: object  # bool for flags, canonical token str for frequencies

    def holds(self, profile: UserProfile) -> bool:
        kind, accessor = USER_VARIABLES[self.variable]
        actual = accessor(profile)
        if kind == "frequency":
            actual = actual.token  # type: ignore[union-attr]
        matched = actual == self.value
        return matched if self.operator == "=" else not matched


@dataclass(frozen=True)
class AttributeConsequence:
    """``product.attr = value`` / ``product.attr != value``."""

    attribute: str
    operator: str
    value: object  # float for quota/price, str for id

    def satisfied(self, plan: MaasPlan) -> bool:
        if self.attribute == "id":
            matched = plan.id == self.value
        elif self.attribute == "price":
            matched = plan.price == self.value
        elif self.attribute in PLAN_MODES:
            matched = plan.quota_amount(self.attribute) == self.value
        else:
            raise ValueError(f"unknown product attribute {self.attribute!r}")
        return matched if self.operator == "=" else not matched


@dataclass(frozen=True)
class IdSetConsequence:
    """``product.id in {id, ...}``."""

    ids: tuple[str, ...]

    def satisfied(self, plan: MaasPlan) -> bool:
        return plan.id in self.ids


Consequence = Union[AttributeConsequence, IdSetConsequence]


@dataclass(frozen=True)
class ConstraintRule:
    id: str
    condition: tuple[ConditionAtom, ...]
    consequence: Consequence


# --- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>'[^']*')
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>!=|=)
  | (?P<dot>\.)
  | (?P<lbrace>\{)
  | (?P<rbrace>\})
  | (?P<comma>,)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int  # 1-based


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise RuleSyntaxError(f"unexpected character {text[pos]!r}", column=pos + 1)
        kind = match.lastgroup or ""
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), pos + 1))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], length: int):
        self.tokens = tokens
        self.pos = 0
        self.end_column = length + 1

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _fail(self, expected: str) -> RuleSyntaxError:
        token = self.peek()
        if token is None:
            return RuleSyntaxError(f"expected {expected}, found end of rule", column=self.end_column)
        return RuleSyntaxError(f"expected {expected}, found {token.text!r}", column=token.column)

    def take(self, kind: str, expected: str) -> _Token:
        token = self.peek()
        if token is None or token.kind != kind:
            raise self._fail(expected)
        self.pos += 1
        return token

    def keyword(self, word: str) -> _Token:
        token = self.peek()
        if token is None or token.kind != "word" or token.text.lower() != word:
            raise self._fail(f"keyword '{word}'")
        self.pos += 1
        return token

    def at_keyword(self, word: str) -> bool:
        token = self.peek()
        return token is not None and token.kind == "word" and token.text.lower() == word


def _literal_text(parser: _Parser) -> tuple[str, bool, int]:
    """Returns (text, was_quoted, column) for a string or number literal."""
    token = parser.peek()
    if token is None:
        raise parser._fail("a literal")
    if token.kind == "string":
        parser.pos += 1
        return token.text[1:-1], True, token.column
    if token.kind == "number":
        parser.pos += 1
        return token.text, False, token.column
    raise parser._fail("a literal")


def _coerce_condition_value(variable: str, text: str, column: int) -> object:
    kind = USER_VARIABLES[variable][0]
    lowered = text.strip().lower()
    if kind == "flag":
        if lowered in ("yes", "true"):
            return True
        if lowered in ("no", "false"):
            return False
        raise RuleSyntaxError(f"{variable} expects 'yes' or 'no', got {text!r}", column=column)
    try:
        return FrequencyAnswer.parse(lowered).token
    except ValueError as exc:
        raise RuleSyntaxError(f"{variable}: {exc}", column=column) from None


def parse_rule(text: str, rule_id: str = "") -> ConstraintRule:
    """Parse one rule line. Raises RuleSyntaxError with a 1-based column."""
    parser = _Parser(_tokenize(text), len(text))
    parser.keyword("if")

    atoms: list[ConditionAtom] = []
    while True:
        parser.keyword("user")
        parser.take("dot", "'.'")
        name_token = parser.take("word", "a user variable name")
        variable = name_token.text.lower()
        if variable not in USER_VARIABLES:
            raise RuleSyntaxError(f"unknown user variable {name_token.text!r}", column=name_token.column)
        operator = parser.take("op", "'=' or '!='").text
        literal, _, column = _literal_text(parser)
        atoms.append(ConditionAtom(variable, operator, _coerce_condition_value(variable, literal, column)))
        if parser.at_keyword("and"):
            parser.keyword("and")
            continue
        break

    parser.keyword("then")
    parser.keyword("product")
    parser.take("dot", "'.'")
    attr_token = parser.take("word", "a product attribute name")
    attribute = attr_token.text.lower()
    if attribute not in PRODUCT_ATTRIBUTES:
        raise RuleSyntaxError(f"unknown product attribute {attr_token.text!r}", column=attr_token.column)

    consequence: Consequence
    if attribute == "id" and parser.at_keyword("in"):
        parser.keyword("in")
        parser.take("lbrace", "'{'")
        ids: list[str] = []
        while True:
            token = parser.peek()
            if token is None or token.kind not in ("word", "number", "string"):
                raise parser._fail("a plan id")
            parser.pos += 1
            ids.append(token.text[1:-1] if token.kind == "string" else token.text)
            token = parser.peek()
            if token is not None and token.kind == "comma":
                parser.pos += 1
                continue
            break
        parser.take("rbrace", "'}'")
        consequence = IdSetConsequence(tuple(ids))
    else:
        operator = parser.take("op", "'=' or '!='").text
        literal, quoted, column = _literal_text(parser)
        if attribute == "id":
            consequence = AttributeConsequence("id", operator, literal)
        else:
            try:
                value = float(literal)
            except ValueError:
                raise RuleSyntaxError(
                    f"product.{attribute} expects a numeric value, got {literal!r}", column=column
                ) from None
            consequence = AttributeConsequence(attribute, operator, value)

    trailing = parser.peek()
    if trailing is not None:
        raise RuleSyntaxError(f"unexpected trailing input {trailing.text!r}", column=trailing.column)
    return ConstraintRule(id=rule_id, condition=tuple(atoms), consequence=consequence)


def condition_holds(rule: ConstraintRule, profile: UserProfile) -> bool:
    """True iff every atom of the rule's condition matches the profile."""
    return all(atom.holds(profile) for atom in rule.condition)


def consequence_satisfied(rule: ConstraintRule, plan: MaasPlan) -> bool:
    return rule.consequence.satisfied(plan)


def _print_condition_value(value: object) -> str:
    if isinstance(value, bool):
        return "'yes'" if value else "'no'"
    return f"'{value}'"


def print_rule(rule: ConstraintRule) -> str:
    """Canonical text form; parse_rule(print_rule(r)) reproduces r."""
    parts = [
        f"user.{atom.variable}{atom.operator}{_print_condition_value(atom.value)}"
        for atom in rule.condition
    ]
    condition = " and ".join(parts)
    if isinstance(rule.consequence, IdSetConsequence):
        consequence = "product.id in {" + ",".join(rule.consequence.ids) + "}"
    elif rule.consequence.attribute == "id":
        consequence = f"product.id{rule.consequence.operator}'{rule.consequence.value}'"
    else:
        value = format_number(rule.consequence.value)  # type: ignore[arg-type]
        consequence = f"product.{rule.consequence.attribute}{rule.consequence.operator}{value}"
    return f"If {condition} then {consequence}"


def load_rules(text: str) -> list[ConstraintRule]:
    """Parse a rule file: one rule per line, '#' comments, blank lines allowed.

    Rule ids are assigned "1", "2", ... in order of appearance. Raises
    RuleSyntaxError carrying the 1-based line of the first bad rule.
    """
    rules: list[ConstraintRule] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rules.append(parse_rule(stripped, rule_id=str(len(rules) + 1)))
        except RuleSyntaxError as exc:
            raise exc.with_line(lineno) from None
    return rules


def serialize_rules(rules) -> str:
    return "".join(print_rule(rule) + "\n" for rule in rules)
