"""Formulas of P1 / LPcAt: syntax tree, parser, printer and structural measures.

Surface syntax (ASCII, with unicode aliases accepted on input)::

    -X    weak negation (questioning)     also ¬
    ~X    strong negation
    #p    incompatibility, atoms only      also ⊥ and !
    X & Y, X | Y, X -> Y, X <-> Y          also ∧ ∨ → ↔

Binding, tightest first: prefix operators, ``&``, ``|``, ``->``, ``<->``.
``&`` and ``|`` group to the left, ``->`` and ``<->`` to the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class FormulaSyntaxError(ValueError):
    """Malformed formula text."""

    def __init__(self, position: int | None, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        self.text = text
        where = "" if position is None else f" at position {position}"
        super().__init__(f"expected {expected}{where}")


class IncompatOnCompound(FormulaSyntaxError):
    """Incompatibility applied to something other than an atom."""

    def __init__(self, position: int | None = None, text: str = ""):
        super().__init__(position, "an atom after the incompatibility operator", text)


class Formula:
    """Base class of all formula nodes. Instances are immutable."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"


@dataclass(frozen=True)
class WeakNeg(Formula):
    arg: Formula


@dataclass(frozen=True)
class StrongNeg(Formula):
    arg: Formula


@dataclass(frozen=True)
class Incompat(Formula):
    arg: Atom

    def __post_init__(self):
        if isinstance(self.arg, str):
            object.__setattr__(self, "arg", Atom(self.arg))
        elif not isinstance(self.arg, Atom):
            raise IncompatOnCompound()


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=False)
class Iff(Formula):
    """Biconditional; equal (and hashed) as ``(X -> Y) & (Y -> X)``."""

    left: Formula
    right: Formula

    def expansion(self) -> And:
        return And(Imp(self.left, self.right), Imp(self.right, self.left))

    def __eq__(self, other):
        if not isinstance(other, Formula):
            return NotImplemented
        return expand_iff(self) == expand_iff(other)

    def __hash__(self):
        return hash(expand_iff(self))


UNARY = (WeakNeg, StrongNeg)
BINARY = (And, Or, Imp, Iff)


def expand_iff(f: Formula) -> Formula:
    """Replace every biconditional by its conjunction of conditionals."""
    match f:
        case Atom() | Incompat():
            return f
        case Iff(left, right):
            x, y = expand_iff(left), expand_iff(right)
            return And(Imp(x, y), Imp(y, x))
        case WeakNeg(arg) | StrongNeg(arg):
            return type(f)(expand_iff(arg))
        case And(left, right) | Or(left, right) | Imp(left, right):
            return type(f)(expand_iff(left), expand_iff(right))
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over ``f`` and every subformula occurrence."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        match g:
            case Incompat(arg):
                stack.append(arg)
            case WeakNeg(arg) | StrongNeg(arg):
                stack.append(arg)
            case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                stack.append(r)
                stack.append(l)


def atoms(f: Formula) -> list[str]:
    """Distinct atom names in order of first occurrence."""
    seen: dict[str, None] = {}
    for g in subformulas(f):
        if isinstance(g, Atom):
            seen.setdefault(g.name)
    return list(seen)


def complexity(f: Formula) -> int:
    match f:
        case Atom():
            return 0
        case Incompat():
            return 2
        case WeakNeg(arg) | StrongNeg(arg):
            return 1 + complexity(arg)
        case Iff():
            return complexity(f.expansion())
        case And(l, r) | Or(l, r) | Imp(l, r):
            return 1 + max(complexity(l), complexity(r))
    raise TypeError(f"not a formula: {f!r}")


def size(f: Formula) -> int:
    """Number of connective and atom occurrences once biconditionals are expanded."""
    return sum(1 for _ in subformulas(expand_iff(f)))


# -- parsing -----------------------------------------------------------------

_ALIASES = {"¬": "-", "∧": "&", "∨": "|", "→": "->", "↔": "<->", "⊥": "#", "!": "#"}
_SYMBOLS = ("<->", "->", "-", "~", "#", "&", "|", "(", ")")


@dataclass(frozen=True)
class _Token:
    kind: str  # a symbol from _SYMBOLS, "atom" or "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _ALIASES:
            tokens.append(_Token(_ALIASES[c], c, i))
            i += 1
            continue
        if c.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("atom", text[i:j], i))
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(_Token(sym, sym, i))
                i += len(sym)
                break
        else:
            raise FormulaSyntaxError(i, "a connective, atom or parenthesis", text)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def take(self, kind: str) -> _Token:
        tok = self.tok
        if tok.kind != kind:
            raise FormulaSyntaxError(tok.pos, repr(kind) if kind != "end" else "end of input", self.text)
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.imp()
        if self.tok.kind == "<->":
            self.i += 1
            return Iff(left, self.formula())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.tok.kind == "->":
            self.i += 1
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.tok.kind == "|":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.tok.kind == "&":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.tok
        if tok.kind == "-":
            self.i += 1
            return WeakNeg(self.unary())
        if tok.kind == "~":
            self.i += 1
            return StrongNeg(self.unary())
        if tok.kind == "#":
            self.i += 1
            arg = self.tok
            if arg.kind == "atom":
                self.i += 1
                return Incompat(Atom(arg.text))
            if arg.kind in ("(", "-", "~", "#"):
                raise IncompatOnCompound(arg.pos, self.text)
            raise FormulaSyntaxError(arg.pos, "an atom", self.text)
        if tok.kind == "atom":
            self.i += 1
            return Atom(tok.text)
        if tok.kind == "(":
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        raise FormulaSyntaxError(tok.pos, "an atom, prefix operator or '('", self.text)


def parse(text: str) -> Formula:
    """Parse formula text; raises FormulaSyntaxError or IncompatOnCompound."""
    p = _Parser(text)
    f = p.formula()
    p.take("end")
    return f


# -- rendering ---------------------------------------------------------------

GLYPHS = {
    "ascii": {WeakNeg: "-", StrongNeg: "~", Incompat: "#", And: "&", Or: "|", Imp: "->", Iff: "<->"},
    "unicode": {WeakNeg: "¬", StrongNeg: "~", Incompat: "⊥", And: "∧", Or: "∨", Imp: "→", Iff: "↔"},
}

_PRECEDENCE = {Iff: 1, Imp: 2, Or: 3, And: 4}


def render(f: Formula, style: str = "ascii") -> str:
    """Print ``f`` with parentheses only where precedence demands them.

    A binary operand that is itself binary at the same binding level is
    always parenthesized, so nested conditionals read ``A -> (B -> C)``.
    """
    glyphs = GLYPHS[style]

    def go(g: Formula) -> str:
        match g:
            case Atom(name):
                return name
            case Incompat(arg):
                return glyphs[Incompat] + arg.name
            case WeakNeg(arg) | StrongNeg(arg):
                return glyphs[type(g)] + wrap(arg, 5)
            case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                prec = _PRECEDENCE[type(g)]
                return f"{wrap(l, prec)} {glyphs[type(g)]} {wrap(r, prec)}"
        raise TypeError(f"not a formula: {g!r}")

    def wrap(g: Formula, parent_prec: int) -> str:
        text = go(g)
        if type(g) in _PRECEDENCE and _PRECEDENCE[type(g)] <= parent_prec:
            return f"({text})"
        return text

    return go(f)
