import random

from p1forcing.engine import AInvalid, check_validity
from p1forcing.fastcheck import check_space, solve_tree, space_formula, space_size
from p1forcing.formula import Atom, Imp, Incompat, parse
from p1forcing.generate import count_formulas, enumerate_formulas, formulas_by_depth
from p1forcing.semantics import TInvalid, ZERO, evaluate, t_validity
from p1forcing.tree import M0, build_tree


def base_space(names, depth):
    layers = formulas_by_depth(names, depth)
    base = [f for layer in layers for f in layer]
    return base, len(base) - len(layers[-1])


def test_space_indexing_covers_the_next_depth():
    names = ["p", "q"]
    base, start = base_space(names, 1)
    assert space_size(len(base), start) == count_formulas(2, 2)
    space = [space_formula(base, start, i) for i in range(space_size(len(base), start))]
    assert len(set(space)) == len(space)
    assert set(space) == set(enumerate_formulas(names, 2))


def test_check_space_depth_two():
    base, start = base_space(["p", "q"], 1)
    report = check_space(["p", "q"], base, start)
    assert report.checked == count_formulas(2, 2)
    assert report.disagreements == 0 and report.unsound_models == 0 and not report.examples
    valid = sum(not isinstance(t_validity(f), TInvalid) for f in enumerate_formulas(["p", "q"], 2))
    assert report.engine_valid == valid


def test_check_space_samples_against_reference_paths():
    names = ["p", "q"]
    base, start = base_space(names, 2)
    rng = random.Random(7)
    for i in rng.sample(range(space_size(len(base), start)), 300):
        f = space_formula(base, start, i)
        verdict = check_validity(f, trace=False, compiled=False)
        assert isinstance(verdict, AInvalid) == isinstance(t_validity(f), TInvalid)


def test_solve_tree_marking():
    valid, marking = solve_tree(build_tree(parse("-A -> (A -> B)")))
    assert not valid and marking[0] == M0
    valid, marking = solve_tree(build_tree(Imp(Incompat(Atom("A")), Atom("A"))))
    assert not valid
    valid, marking = solve_tree(build_tree(parse("A | -A")))
    assert valid and marking is None


def test_single_atom_spaces():
    base, start = base_space(["p"], 1)
    report = check_space(["p"], base, start)
    assert report.checked == count_formulas(1, 2) and report.disagreements == 0
