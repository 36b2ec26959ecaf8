from hypothesis import strategies as st

from p1forcing.formula import And, Atom, Iff, Imp, Incompat, Or, StrongNeg, WeakNeg
from p1forcing.semantics import TruthValue

NAMES = ["p", "q", "r"]

atoms_st = st.sampled_from(NAMES).map(Atom)


def formulas(names=NAMES, max_leaves=12, with_iff=False):
    leaf = st.sampled_from(names).map(Atom) | st.sampled_from(names).map(lambda n: Incompat(Atom(n)))
    binary = [And, Or, Imp] + ([Iff] if with_iff else [])

    def extend(children):
        return (
            st.builds(WeakNeg, children)
            | st.builds(StrongNeg, children)
            | st.builds(lambda op, a, b: op(a, b), st.sampled_from(binary), children, children)
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


values = st.sampled_from(list(TruthValue))


def assignments_for(names=NAMES):
    return st.fixed_dictionaries({n: values for n in names})
