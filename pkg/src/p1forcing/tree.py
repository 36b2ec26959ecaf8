"""Forcing trees: one node per connective or atom occurrence.

Nodes carrying structurally equal subformulas share a *cell*; marks live on
cells, so two occurrences of the same formula can never disagree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    And,
    Atom,
    Formula,
    Imp,
    Incompat,
    Or,
    StrongNeg,
    WeakNeg,
    expand_iff,
)

# Operator kinds, shared with the engine.
ATOM, WNEG, SNEG, INCOMPAT, AND, OR, IMP = "atom", "wneg", "sneg", "incompat", "and", "or", "imp"

OP_OF = {WeakNeg: WNEG, StrongNeg: SNEG, Incompat: INCOMPAT, And: AND, Or: OR, Imp: IMP}

GLYPH = {WNEG: "¬", SNEG: "~", INCOMPAT: "⊥", AND: "∧", OR: "∨", IMP: "→"}
ASCII_GLYPH = {WNEG: "-", SNEG: "~", INCOMPAT: "#", AND: "&", OR: "|", IMP: "->"}

# Tags of children: i/d = left/right operand, a = scope of a prefix operator.
CHILD_TAGS = {
    WNEG: ("a¬",),
    SNEG: ("a~",),
    INCOMPAT: ("a⊥",),
    AND: ("i∧", "d∧"),
    OR: ("i∨", "d∨"),
    IMP: ("i→", "d→"),
}
ROOT_TAG = "root"

# Mark bitmasks.
M0, MSTAR, M1 = 1, 2, 4
ATOM_ALLOWED = M0 | MSTAR | M1
COMPOUND_ALLOWED = M0 | M1


class EmptyPremises(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    id: int
    glyph: str
    tag: str
    formula: Formula
    children: tuple[int, ...]
    cell: int
    parent: int | None
    level: int  # edges from the root


@dataclass(frozen=True)
class Cell:
    id: int
    formula: Formula
    op: str
    children: tuple[int, ...]  # cell ids
    nodes: tuple[int, ...]  # occurrences, ascending
    allowed: int

    @property
    def is_atom(self) -> bool:
        return self.op == ATOM


@dataclass(frozen=True)
class ForcingTree:
    formula: Formula
    nodes: tuple[Node, ...]
    cells: tuple[Cell, ...]
    atom_cells: dict[str, int]
    root: int = 0

    @property
    def root_cell(self) -> int:
        return self.nodes[self.root].cell

    def node_of(self, cell: int) -> Node:
        """First occurrence of a cell."""
        return self.nodes[self.cells[cell].nodes[0]]

    def leaves(self) -> list[Node]:
        return [n for n in self.nodes if not n.children]


def build_tree(f: Formula) -> ForcingTree:
    """Build the forcing tree of ``f`` (biconditionals are expanded first)."""
    f = expand_iff(f)
    nodes: list[dict] = []
    cell_ids: dict[Formula, int] = {}
    cell_info: list[dict] = []

    def cell_for(g: Formula) -> int:
        cid = cell_ids.get(g)
        if cid is None:
            cid = cell_ids[g] = len(cell_info)
            cell_info.append({"formula": g, "nodes": []})
        return cid

    # Iterative pre-order so deep formulas do not hit the recursion limit.
    stack: list[tuple[Formula, str, int | None, int]] = [(f, ROOT_TAG, None, 0)]
    while stack:
        g, tag, parent, level = stack.pop()
        nid = len(nodes)
        cid = cell_for(g)
        cell_info[cid]["nodes"].append(nid)
        if parent is not None:
            nodes[parent]["children"].append(nid)
        if isinstance(g, Atom):
            glyph, kids = g.name, ()
        else:
            op = OP_OF[type(g)]
            glyph = GLYPH[op]
            match g:
                case Incompat(arg) | WeakNeg(arg) | StrongNeg(arg):
                    kids = (arg,)
                case And(l, r) | Or(l, r) | Imp(l, r):
                    kids = (l, r)
            for kid, ktag in reversed(list(zip(kids, CHILD_TAGS[op]))):
                stack.append((kid, ktag, nid, level + 1))
        nodes.append({"glyph": glyph, "tag": tag, "formula": g, "children": [], "cell": cid,
                      "parent": parent, "level": level})

    frozen_nodes = tuple(
        Node(i, n["glyph"], n["tag"], n["formula"], tuple(n["children"]), n["cell"], n["parent"], n["level"])
        for i, n in enumerate(nodes)
    )
    cells = []
    for cid, info in enumerate(cell_info):
        g = info["formula"]
        first = frozen_nodes[info["nodes"][0]]
        op = ATOM if isinstance(g, Atom) else OP_OF[type(g)]
        cells.append(Cell(
            id=cid,
            formula=g,
            op=op,
            children=tuple(frozen_nodes[k].cell for k in first.children),
            nodes=tuple(info["nodes"]),
            allowed=ATOM_ALLOWED if op == ATOM else COMPOUND_ALLOWED,
        ))
    atom_cells = {c.formula.name: c.id for c in cells if c.op == ATOM}
    return ForcingTree(f, frozen_nodes, tuple(cells), atom_cells)


def depth(f: Formula) -> int:
    """Depth measure: atoms 0, incompatibility 2, every other connective adds 1."""
    return _depth(expand_iff(f))


def _depth(f: Formula) -> int:
    match f:
        case Atom():
            return 0
        case Incompat():
            return 2
        case WeakNeg(arg) | StrongNeg(arg):
            return 1 + _depth(arg)
        case And(l, r) | Or(l, r) | Imp(l, r):
            return 1 + max(_depth(l), _depth(r))
    raise TypeError(f"not a formula: {f!r}")


def conjoin(formulas: list[Formula]) -> Formula:
    """Right-associated conjunction X1 & (X2 & (...))."""
    if not formulas:
        raise EmptyPremises("an argument needs at least one premise")
    result = formulas[-1]
    for g in reversed(formulas[:-1]):
        result = And(g, result)
    return result


def argument_formula(premises: list[Formula], conclusion: Formula) -> Formula:
    return Imp(conjoin(premises), conclusion)


def argument_tree(premises: list[Formula], conclusion: Formula) -> ForcingTree:
    """Tree of the argument 'from premises infer conclusion'."""
    return build_tree(argument_formula(premises, conclusion))
