import random

from p1forcing.formula import Atom, Incompat, subformulas
from p1forcing.generate import (
    atom_names,
    count_formulas,
    enumerate_formulas,
    formulas_by_depth,
    random_formula,
    random_formulas,
)


def connective_depth(f):
    kids = [g for g in [getattr(f, "arg", None), getattr(f, "left", None), getattr(f, "right", None)] if g]
    return 0 if isinstance(f, Atom) else 1 + max(connective_depth(k) for k in kids)


def test_atom_names():
    assert atom_names(3) == ["p", "q", "r"]
    assert atom_names(7)[5:] == ["p5", "p6"]


def test_counts():
    assert [count_formulas(2, d) for d in range(4)] == [2, 20, 1244, 4645100]
    for d in range(3):
        space = list(enumerate_formulas(["p", "q"], d))
        assert len(space) == count_formulas(2, d) == len(set(space))


def test_layers_have_exact_depth():
    for k, layer in enumerate(formulas_by_depth(["p", "q"], 2)):
        assert all(connective_depth(f) == k for f in layer)


def test_depth_zero_space():
    assert list(enumerate_formulas(["p", "q"], 0)) == [Atom("p"), Atom("q")]


def test_deterministic():
    assert list(enumerate_formulas(["p"], 2)) == list(enumerate_formulas(["p"], 2))
    assert random_formulas(50, ["p", "q", "r"], 6, 1) == random_formulas(50, ["p", "q", "r"], 6, 1)
    assert random_formulas(50, ["p", "q", "r"], 6, 1) != random_formulas(50, ["p", "q", "r"], 6, 2)


def test_random_formulas_respect_bounds():
    rng = random.Random(3)
    for _ in range(500):
        f = random_formula(rng, ["p", "q"], 4)
        assert connective_depth(f) <= 4
        for g in subformulas(f):
            if isinstance(g, Incompat):
                assert isinstance(g.arg, Atom)
