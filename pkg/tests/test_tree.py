import pytest
from hypothesis import given

from p1forcing.formula import And, Atom, Imp, Incompat, WeakNeg, expand_iff, parse, subformulas
from p1forcing.tree import (
    ATOM_ALLOWED,
    COMPOUND_ALLOWED,
    EmptyPremises,
    argument_formula,
    argument_tree,
    build_tree,
    depth,
)

from strategies import formulas

A, B = Atom("A"), Atom("B")


def shape(tree, nid=0):
    node = tree.nodes[nid]
    return (node.glyph, node.tag, [shape(tree, k) for k in node.children])


def test_tree_of_first_example():
    tree = build_tree(parse("-A -> (A -> B)"))
    assert shape(tree) == (
        "→", "root", [
            ("¬", "i→", [("A", "a¬", [])]),
            ("→", "d→", [("A", "i→", []), ("B", "d→", [])]),
        ],
    )
    a_nodes = [n for n in tree.nodes if n.glyph == "A"]
    assert len(a_nodes) == 2 and a_nodes[0].cell == a_nodes[1].cell
    assert tree.leaves() == [n for n in tree.nodes if n.glyph in "AB"]


def test_single_atom_tree():
    tree = build_tree(Atom("p"))
    assert len(tree.nodes) == 1 and tree.nodes[0].tag == "root" and not tree.nodes[0].children


def test_incompat_tree():
    tree = build_tree(Incompat(A))
    assert shape(tree) == ("⊥", "root", [("A", "a⊥", [])])


@given(formulas(with_iff=True))
def test_node_count_and_sharing(f):
    tree = build_tree(f)
    g = expand_iff(f)
    subs = list(subformulas(g))
    assert len(tree.nodes) == len(subs)
    assert [n.formula for n in tree.nodes] == subs
    for a in tree.nodes:
        for b in tree.nodes:
            assert (a.cell == b.cell) == (a.formula == b.formula)
    for cell in tree.cells:
        assert cell.allowed == (ATOM_ALLOWED if isinstance(cell.formula, Atom) else COMPOUND_ALLOWED)
    assert all(not n.children for n in tree.nodes if isinstance(n.formula, Atom))
    assert all(n.children for n in tree.nodes if not isinstance(n.formula, Atom))


def test_depth_examples():
    assert depth(Atom("p")) == 0
    assert depth(Incompat(Atom("p"))) == 2
    # -B: 1, A -> -B: 2, (A -> -B) -> -A: 3, whole: 4
    assert depth(parse("(A -> B) -> ((A -> -B) -> -A)")) == 4


@given(formulas())
def test_depth_is_weighted_height(f):
    tree = build_tree(f)

    def height(nid):
        node = tree.nodes[nid]
        weight = 2 if node.glyph == "⊥" else 1
        return max((weight + height(k) for k in node.children), default=0)

    assert depth(f) == height(0)


def test_argument_tree():
    assert argument_formula([A], B) == Imp(A, B)
    f = argument_formula([A, Incompat(A), Imp(A, B)], Incompat(B))
    assert f == Imp(And(A, And(Incompat(A), Imp(A, B))), Incompat(B))
    assert argument_tree([Atom("p"), Atom("q")], Atom("p")).formula == parse("(p & q) -> p")
    with pytest.raises(EmptyPremises):
        argument_tree([], A)


def test_levels():
    tree = build_tree(parse("-A -> (A -> B)"))
    assert [n.level for n in tree.nodes] == [0, 1, 2, 1, 2, 2]
    assert tree.nodes[2].parent == 1
