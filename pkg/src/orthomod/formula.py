"""Propositional formulas over quantum connectives: parser, printer, evaluators.

Grammar (precedence ``!`` > ``&`` > ``|``, binary operators left-associative)::

    expr   := term ('|' term)*
    term   := factor ('&' factor)*
    factor := ('!' | '~' | '¬') factor | '(' expr ')' | NAME | '1' | '0'

``∧`` and ``∨`` are accepted as aliases of ``&`` and ``|``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

import numpy as np

from .errors import (
    DimensionMismatchError,
    FieldMismatchError,
    FormulaSyntaxError,
    InvalidInputError,
    UnboundVariableError,
)
from .subspace import (
    DEFAULT_POLICY,
    NumericPolicy,
    Subspace,
    _check_vector,
    complement,
    contains_vector,
    full_space,
    join,
    meet,
    zero_subspace,
)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


Formula = Union[Var, Not, And, Or, Top, Bottom]

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_WORD_RE = re.compile(r"[A-Za-z0-9_]+")
_SYMBOLS = {
    "&": "AND", "∧": "AND",
    "|": "OR", "∨": "OR",
    "!": "NOT", "~": "NOT", "¬": "NOT",
    "(": "LPAREN", ")": "RPAREN",
}
_OPERAND_START = ("NAME", "1", "0", "!", "(")


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, TOP, BOTTOM, AND, OR, NOT, LPAREN, RPAREN, EOF
    text: str
    offset: int  # byte offset into the UTF-8 encoded input


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def tokenize(text: str) -> Iterator[Token]:
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            yield Token(_SYMBOLS[ch], ch, _byte_offset(text, i))
            i += 1
            continue
        m = _WORD_RE.match(text, i)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {ch!r}", _byte_offset(text, i))
        word = m.group()
        if NAME_RE.fullmatch(word):
            kind = "NAME"
        elif word in ("0", "1"):
            kind = "TOP" if word == "1" else "BOTTOM"
        else:
            raise FormulaSyntaxError(f"invalid token {word!r}", _byte_offset(text, i), _OPERAND_START)
        yield Token(kind, word, _byte_offset(text, i))
        i = m.end()
    yield Token("EOF", "", _byte_offset(text, len(text)))


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def parse(self) -> Formula:
        if self.tok.kind == "EOF":
            raise FormulaSyntaxError("empty formula", self.tok.offset, _OPERAND_START)
        f = self.expr()
        if self.tok.kind != "EOF":
            raise FormulaSyntaxError(
                f"unexpected {self.tok.text!r}", self.tok.offset, ("&", "|", "end of input")
            )
        return f

    def expr(self) -> Formula:
        f = self.term()
        while self.tok.kind == "OR":
            self.advance()
            f = Or(f, self.term())
        return f

    def term(self) -> Formula:
        f = self.factor()
        while self.tok.kind == "AND":
            self.advance()
            f = And(f, self.factor())
        return f

    def factor(self) -> Formula:
        t = self.tok
        if t.kind == "NOT":
            self.advance()
            return Not(self.factor())
        if t.kind == "LPAREN":
            self.advance()
            f = self.expr()
            if self.tok.kind != "RPAREN":
                raise FormulaSyntaxError(
                    f"unexpected {self.tok.text or 'end of input'!r}", self.tok.offset, ("&", "|", ")")
                )
            self.advance()
            return f
        if t.kind == "NAME":
            self.advance()
            return Var(t.text)
        if t.kind == "TOP":
            self.advance()
            return Top()
        if t.kind == "BOTTOM":
            self.advance()
            return Bottom()
        what = "end of input" if t.kind == "EOF" else repr(t.text)
        raise FormulaSyntaxError(f"expected an operand, found {what}", t.offset, _OPERAND_START)


def parse(text: str) -> Formula:
    """Parse ``text`` into a :data:`Formula`; raises :class:`FormulaSyntaxError`."""
    return _Parser(text).parse()


_PREC = {Or: 1, And: 2, Not: 3}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 4)


def pretty_print(f: Formula) -> str:
    """Render with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Top):
        return "1"
    if isinstance(f, Bottom):
        return "0"
    if isinstance(f, Not):
        inner = pretty_print(f.child)
        return "!" + (f"({inner})" if _prec(f.child) < 3 else inner)
    if isinstance(f, (And, Or)):
        p = _prec(f)
        op = " & " if isinstance(f, And) else " | "
        left, right = pretty_print(f.left), pretty_print(f.right)
        if _prec(f.left) < p:
            left = f"({left})"
        if _prec(f.right) <= p:
            right = f"({right})"
        return left + op + right
    raise TypeError(f"not a formula: {f!r}")


def variables(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, Not):
        return variables(f.child)
    if isinstance(f, (And, Or)):
        return variables(f.left) | variables(f.right)
    return set()


def depth(f: Formula) -> int:
    if isinstance(f, Not):
        return 1 + depth(f.child)
    if isinstance(f, (And, Or)):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


class Assignment(Mapping[str, Subspace]):
    """Binding of variable names to subspaces of one common ambient space."""

    def __init__(self, bindings: Mapping[str, Subspace], ambient_dim: int | None = None,
                 field: str | None = None):
        items = dict(bindings)
        if ambient_dim is None:
            if not items:
                raise InvalidInputError("ambient_dim is required for an empty assignment")
            ambient_dim = next(iter(items.values())).ambient_dim
        if field is None:
            field = next(iter(items.values())).field if items else "complex"
        for name, s in items.items():
            if s.ambient_dim != ambient_dim:
                raise DimensionMismatchError(f"{name}: dimension {s.ambient_dim}, expected {ambient_dim}")
            if s.field != field:
                raise FieldMismatchError(f"{name}: field {s.field}, expected {field}")
        self._bindings = items
        self.ambient_dim = ambient_dim
        self.field = field

    def __getitem__(self, name):
        return self._bindings[name]

    def __iter__(self):
        return iter(self._bindings)

    def __len__(self):
        return len(self._bindings)


def eval_subspace(f: Formula, a: Assignment, policy: NumericPolicy = DEFAULT_POLICY) -> Subspace:
    missing = variables(f) - set(a)
    if missing:
        raise UnboundVariableError(missing)
    return _eval(f, a, policy)


def _eval(f: Formula, a: Assignment, policy: NumericPolicy) -> Subspace:
    if isinstance(f, Var):
        return a[f.name]
    if isinstance(f, Not):
        return complement(_eval(f.child, a, policy), policy)
    if isinstance(f, And):
        return meet(_eval(f.left, a, policy), _eval(f.right, a, policy), policy)
    if isinstance(f, Or):
        return join(_eval(f.left, a, policy), _eval(f.right, a, policy), policy)
    if isinstance(f, Top):
        return full_space(a.ambient_dim, a.field)
    if isinstance(f, Bottom):
        return zero_subspace(a.ambient_dim, a.field)
    raise TypeError(f"not a formula: {f!r}")


def _nonzero_state(S: Subspace, v) -> np.ndarray:
    v = _check_vector(S, v)
    if not np.any(v):
        raise InvalidInputError("zero state vector: it belongs to every subspace")
    return v


def eval_membership(f: Formula, a: Assignment, v, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    """Truth of ``f`` at state ``v``: whether ``v`` lies in the subspace ``f`` denotes."""
    s = eval_subspace(f, a, policy)
    return contains_vector(s, _nonzero_state(s, v), policy)
