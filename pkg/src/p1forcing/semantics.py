"""Sette's three-valued matrices for P1 and truth-table validity.

Values are 1 (accepted), * (accepted by default) and 0 (rejected); 1 and *
are designated. Only atoms can take *: every connective returns 0 or 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .formula import And, Atom, Formula, Iff, Imp, Incompat, Or, StrongNeg, WeakNeg, atoms


class TruthValue(Enum):
    ZERO = "0"
    STAR = "*"
    ONE = "1"

    @property
    def designated(self) -> bool:
        return self is not TruthValue.ZERO

    @classmethod
    def parse(cls, text: str) -> "TruthValue":
        try:
            return cls(text.strip())
        except ValueError:
            raise ValueError(f"not a truth value: {text!r} (use 0, * or 1)") from None

    def __str__(self) -> str:
        return self.value


ZERO, STAR, ONE = TruthValue.ZERO, TruthValue.STAR, TruthValue.ONE

# Row/column order of the printed matrices.
VALUE_ORDER = (ONE, STAR, ZERO)

Assignment = Mapping[str, TruthValue]


class MissingAtom(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"assignment has no value for atom {self.name!r}"


class TooManyAtoms(ValueError):
    pass


def _binary(rows: str) -> dict[tuple[TruthValue, TruthValue], TruthValue]:
    """Build a matrix from rows written in 1, *, 0 order."""
    table = {}
    for a, row in zip(VALUE_ORDER, rows.split()):
        for b, cell in zip(VALUE_ORDER, row):
            table[a, b] = TruthValue(cell)
    return table


IMP_TABLE = _binary("110 110 111")
AND_TABLE = _binary("110 110 000")
OR_TABLE = _binary("111 111 110")
IFF_TABLE = _binary("110 110 001")
WEAKNEG_TABLE = {ONE: ZERO, STAR: ONE, ZERO: ONE}
STRONGNEG_TABLE = {ONE: ZERO, STAR: ZERO, ZERO: ONE}
INCOMPAT_TABLE = {ONE: ONE, STAR: ZERO, ZERO: ONE}


def evaluate(f: Formula, v: Assignment) -> TruthValue:
    """Value of ``f`` under the atom assignment ``v``."""
    match f:
        case Atom(name):
            try:
                return v[name]
            except KeyError:
                raise MissingAtom(name) from None
        case WeakNeg(arg):
            return WEAKNEG_TABLE[evaluate(arg, v)]
        case StrongNeg(arg):
            return STRONGNEG_TABLE[evaluate(arg, v)]
        case Incompat(arg):
            return INCOMPAT_TABLE[evaluate(arg, v)]
        case And(l, r):
            return AND_TABLE[evaluate(l, v), evaluate(r, v)]
        case Or(l, r):
            return OR_TABLE[evaluate(l, v), evaluate(r, v)]
        case Imp(l, r):
            return IMP_TABLE[evaluate(l, v), evaluate(r, v)]
        case Iff():
            return evaluate(f.expansion(), v)
    raise TypeError(f"not a formula: {f!r}")


def assignments(names: list[str]):
    """Every assignment over ``names``, lexicographic with values ordered 1, *, 0."""
    for values in itertools.product(VALUE_ORDER, repeat=len(names)):
        yield dict(zip(names, values))


def truth_table(f: Formula) -> list[tuple[dict[str, TruthValue], TruthValue]]:
    return [(v, evaluate(f, v)) for v in assignments(atoms(f))]


@dataclass(frozen=True)
class TValid:
    pass


@dataclass(frozen=True)
class TInvalid:
    countermodel: dict[str, TruthValue]


MAX_ORACLE_ATOMS = 12


def t_validity(f: Formula, allow_large: bool = False) -> TValid | TInvalid:
    """Truth-table validity: no assignment gives ``f`` the value 0.

    The countermodel returned is the first refuting row of ``truth_table``.
    """
    names = atoms(f)
    if len(names) > MAX_ORACLE_ATOMS and not allow_large:
        raise TooManyAtoms(
            f"{len(names)} atoms means 3^{len(names)} rows; pass allow_large=True to enumerate anyway"
        )
    for v in assignments(names):
        if evaluate(f, v) is ZERO:
            return TInvalid(v)
    return TValid()


def classical_value(f: Formula, v: Mapping[str, bool]) -> bool:
    """Two-valued reading: both negations classical, incompatibility constantly true."""
    match f:
        case Atom(name):
            return v[name]
        case WeakNeg(arg) | StrongNeg(arg):
            return not classical_value(arg, v)
        case Incompat():
            return True
        case And(l, r):
            return classical_value(l, v) and classical_value(r, v)
        case Or(l, r):
            return classical_value(l, v) or classical_value(r, v)
        case Imp(l, r):
            return not classical_value(l, v) or classical_value(r, v)
        case Iff(l, r):
            return classical_value(l, v) == classical_value(r, v)
    raise TypeError(f"not a formula: {f!r}")


def format_assignment(v: Assignment, sep: str = " ") -> str:
    return sep.join(f"{name}={value}" for name, value in v.items())


def parse_assignment(text: str) -> dict[str, TruthValue]:
    """Read ``A=*,B=0`` (commas or whitespace between pairs)."""
    result = {}
    for item in text.replace(",", " ").split():
        name, eq, value = item.partition("=")
        if not eq or not name:
            raise ValueError(f"malformed assignment item {item!r}, expected NAME=VALUE")
        result[name.strip()] = TruthValue.parse(value)
    return result
