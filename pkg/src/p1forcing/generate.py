"""Formula spaces for cross-checking the engine against truth tables.

Connective depth counts nesting of connectives: atoms have depth 0 and
``#p`` has depth 1. Incompatibility is only ever applied to atoms.
"""

from __future__ import annotations

import random
from typing import Iterator

from .formula import And, Atom, Formula, Imp, Incompat, Or, StrongNeg, WeakNeg

UNARY_OPS = (WeakNeg, StrongNeg)
BINARY_OPS = (And, Or, Imp)


def atom_names(count: int) -> list[str]:
    """``p, q, r, s, t`` then ``p5, p6, ...``."""
    base = ["p", "q", "r", "s", "t"]
    return base[:count] + [f"p{i}" for i in range(len(base), count)]


def formulas_by_depth(names: list[str], max_depth: int) -> list[list[Formula]]:
    """``layers[k]`` holds every formula of connective depth exactly ``k``."""
    layers: list[list[Formula]] = [[Atom(n) for n in names]]
    below = list(layers[0])
    for k in range(1, max_depth + 1):
        start = len(below) - len(layers[k - 1])
        layer: list[Formula] = []
        if k == 1:
            layer.extend(Incompat(Atom(n)) for n in names)
        for op in UNARY_OPS:
            layer.extend(op(f) for f in layers[k - 1])
        for op in BINARY_OPS:
            for i, left in enumerate(below):
                for j, right in enumerate(below):
                    if i >= start or j >= start:
                        layer.append(op(left, right))
        layers.append(layer)
        below.extend(layer)
    return layers


def enumerate_formulas(names: list[str], max_depth: int) -> Iterator[Formula]:
    """Every formula over ``names`` up to ``max_depth``, shallow first, deterministic."""
    for layer in formulas_by_depth(names, max_depth):
        yield from layer


def count_formulas(n_atoms: int, max_depth: int) -> int:
    """Size of the enumerated space, without building it."""
    total = n_atoms
    for _ in range(max_depth):
        total = 2 * n_atoms + 2 * total + 3 * total * total
    return total


def random_formula(rng: random.Random, names: list[str], max_depth: int) -> Formula:
    """A random formula of connective depth at most ``max_depth``."""
    if max_depth == 0 or rng.random() < 0.15:
        return Atom(rng.choice(names))
    roll = rng.random()
    if roll < 0.1:
        return Incompat(Atom(rng.choice(names)))
    if roll < 0.35:
        op = rng.choice(UNARY_OPS)
        return op(random_formula(rng, names, max_depth - 1))
    op = rng.choice(BINARY_OPS)
    return op(random_formula(rng, names, max_depth - 1), random_formula(rng, names, max_depth - 1))


def random_formulas(count: int, names: list[str], max_depth: int, seed: int) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, names, max_depth) for _ in range(count)]
