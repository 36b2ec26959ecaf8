import pytest
from hypothesis import given

from p1forcing.formula import (
    And,
    Atom,
    FormulaSyntaxError,
    Iff,
    Imp,
    Incompat,
    IncompatOnCompound,
    Or,
    StrongNeg,
    WeakNeg,
    atoms,
    complexity,
    expand_iff,
    parse,
    render,
    size,
    subformulas,
)

from strategies import formulas

A, B, p = Atom("A"), Atom("B"), Atom("p")


def test_parse_conditional_with_weak_negation():
    assert parse("-A -> (A -> B)") == Imp(WeakNeg(A), Imp(A, B))


def test_parse_atom():
    assert parse("p") == p


def test_incompat_on_compound_rejected():
    with pytest.raises(IncompatOnCompound):
        parse("#(A & B)")
    with pytest.raises(IncompatOnCompound):
        parse("#-A")
    with pytest.raises(IncompatOnCompound):
        Incompat(And(A, B))


def test_incompat_on_compound_is_a_syntax_error():
    assert issubclass(IncompatOnCompound, FormulaSyntaxError)


@pytest.mark.parametrize("text", ["", "(", "A &", "A B", "-> A", "A -> ", "(A", "A)", "A $ B", "1A"])
def test_malformed(text):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.expected


def test_error_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("A & & B")
    assert info.value.position == 4


@pytest.mark.parametrize(
    "text, expected",
    [
        ("A & B | A", Or(And(A, B), A)),
        ("A | B & A", Or(A, And(B, A))),
        ("A -> B -> A", Imp(A, Imp(B, A))),
        ("A & B & p", And(And(A, B), p)),
        ("A | B | p", Or(Or(A, B), p)),
        ("A -> B | p", Imp(A, Or(B, p))),
        ("-A & ~B", And(WeakNeg(A), StrongNeg(B))),
        ("--A", WeakNeg(WeakNeg(A))),
        ("~#A", StrongNeg(Incompat(A))),
        ("A <-> B <-> p", Iff(A, Iff(B, p))),
        ("A -> B <-> p", Iff(Imp(A, B), p)),
    ],
)
def test_precedence_and_associativity(text, expected):
    assert parse(text) == expected


def test_unicode_aliases():
    assert parse("¬A → (A ∧ B ∨ ⊥B)") == Imp(WeakNeg(A), Or(And(A, B), Incompat(B)))
    assert parse("A ↔ B") == Iff(A, B)
    assert parse("!A") == Incompat(A)


def test_atom_names():
    assert parse("x_1 & Foo2") == And(Atom("x_1"), Atom("Foo2"))
    assert parse("a") != parse("A")


def test_render_examples():
    assert render(Imp(WeakNeg(A), Imp(A, B)), "unicode") == "¬A → (A → B)"
    assert render(p, "ascii") == "p"
    assert render(And(A, Incompat(A)), "ascii") == "A & #A"
    assert render(Imp(Imp(A, B), A)) == "(A -> B) -> A"
    assert render(WeakNeg(And(A, B))) == "-(A & B)"


@given(formulas(with_iff=True))
def test_round_trip(f):
    for style in ("ascii", "unicode"):
        assert parse(render(f, style)) == f


def test_iff_equals_expansion():
    f = Iff(A, B)
    assert f == And(Imp(A, B), Imp(B, A))
    assert hash(f) == hash(And(Imp(A, B), Imp(B, A)))
    assert expand_iff(Iff(A, WeakNeg(B))) == And(Imp(A, WeakNeg(B)), Imp(WeakNeg(B), A))


def test_complexity_examples():
    assert complexity(p) == 0
    assert complexity(Incompat(p)) == 2
    assert complexity(Imp(WeakNeg(A), Imp(A, B))) == 2


@given(formulas())
def test_complexity_grows(f):
    for g in list(subformulas(f))[1:]:
        assert complexity(f) > complexity(g)


def test_atoms_first_occurrence():
    assert atoms(parse("-A -> (A -> B)")) == ["A", "B"]
    assert atoms(p) == ["p"]
    assert atoms(parse("(A -> B) -> ((A -> -B) -> -A)")) == ["A", "B"]
    assert atoms(parse("q & (p | #q)")) == ["q", "p"]


def test_subformulas_preorder_and_size():
    f = parse("-A -> (A -> B)")
    assert list(subformulas(f)) == [f, WeakNeg(A), A, Imp(A, B), A, B]
    assert size(f) == 6


@given(formulas())
def test_incompat_only_on_atoms(f):
    for g in subformulas(f):
        if isinstance(g, Incompat):
            assert isinstance(g.arg, Atom)
