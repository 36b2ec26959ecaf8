"""Compiled verdict-only solver and the batch cross-checker built on it.

The solver runs the same procedure as ``engine.check_validity`` (reject the
root, propagate with the rule-derived revise tables, branch on the cell with
fewest marks, deepest first, trying 1, *, 0) over flat arrays, without a
trace. The local-consistency closure does not depend on revision order, so
verdicts and refuting markings coincide with the traced engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np

from .engine import REVISE, ROLES, VALUE_BIT
from .formula import And, Atom, Formula, Imp, Incompat, Or, StrongNeg, WeakNeg
from .semantics import (
    AND_TABLE,
    IMP_TABLE,
    INCOMPAT_TABLE,
    OR_TABLE,
    STRONGNEG_TABLE,
    WEAKNEG_TABLE,
    assignments,
    evaluate,
)
from .tree import AND, ATOM, IMP, INCOMPAT, OR, SNEG, WNEG, ForcingTree

OPCODE = {ATOM: 0, WNEG: 1, SNEG: 2, INCOMPAT: 3, AND: 4, OR: 5, IMP: 6}
FORMULA_OPCODE = {WeakNeg: 1, StrongNeg: 2, Incompat: 3, And: 4, Or: 5, Imp: 6}
OPCODE_FORMULA = {v: k for k, v in FORMULA_OPCODE.items()}


def _tables():
    un = np.zeros((7, 64, 2), dtype=np.uint8)
    bi = np.zeros((7, 512, 3), dtype=np.uint8)
    same = np.zeros((7, 64, 2), dtype=np.uint8)
    for op in ROLES:
        code = OPCODE[op]
        table, same_table = REVISE[op]
        if same_table is None:
            un[code] = np.array(table, dtype=np.uint8)
        else:
            bi[code] = np.array(table, dtype=np.uint8)
            same[code] = np.array(same_table, dtype=np.uint8)
    return un, bi, same


UN, BI, SAME = _tables()


# -- compiled core -----------------------------------------------------------------


@numba.njit(cache=True)
def _push(x, queue, queued, head, count, n):
    if not queued[x]:
        queue[(head + count) % n] = x
        queued[x] = True
        count += 1
    return count


@numba.njit(cache=True)
def _notify(x, c, op, pptr, pidx, queue, queued, head, count, n):
    if x != c and op[x] != 0:
        count = _push(x, queue, queued, head, count, n)
    for j in range(pptr[x], pptr[x + 1]):
        y = pidx[j]
        if y != c:
            count = _push(y, queue, queued, head, count, n)
    return count


@numba.njit(cache=True)
def _propagate(doms, n, op, k0, k1, pptr, pidx, start, queue, queued, un, bi, same):
    """Local consistency to fixpoint; False on a double mark."""
    for i in range(n):
        queued[i] = False
    head = 0
    count = 0
    if start < 0:
        for c in range(n):
            if op[c] != 0:
                count = _push(c, queue, queued, head, count, n)
    else:
        if op[start] != 0:
            count = _push(start, queue, queued, head, count, n)
        for j in range(pptr[start], pptr[start + 1]):
            count = _push(pidx[j], queue, queued, head, count, n)
    while count > 0:
        c = queue[head]
        head = (head + 1) % n
        count -= 1
        queued[c] = False
        o = op[c]
        a = k0[c]
        if o <= 3:
            r = un[o, doms[c] | (doms[a] << 3)]
            np_, na = r[0], r[1]
            if np_ == 0 or na == 0:
                return False
            if np_ != doms[c]:
                doms[c] = np_
                count = _notify(c, c, op, pptr, pidx, queue, queued, head, count, n)
            if na != doms[a]:
                doms[a] = na
                count = _notify(a, c, op, pptr, pidx, queue, queued, head, count, n)
            continue
        b = k1[c]
        if a == b:
            r = same[o, doms[c] | (doms[a] << 3)]
            np_, na = r[0], r[1]
            nb = na
        else:
            r3 = bi[o, doms[c] | (doms[a] << 3) | (doms[b] << 6)]
            np_, na, nb = r3[0], r3[1], r3[2]
        if np_ == 0 or na == 0 or nb == 0:
            return False
        if np_ != doms[c]:
            doms[c] = np_
            count = _notify(c, c, op, pptr, pidx, queue, queued, head, count, n)
        if na != doms[a]:
            doms[a] = na
            count = _notify(a, c, op, pptr, pidx, queue, queued, head, count, n)
        if b != a and nb != doms[b]:
            doms[b] = nb
            count = _notify(b, c, op, pptr, pidx, queue, queued, head, count, n)
    return True


@numba.njit(cache=True)
def _popcount(d):
    return (d & 1) + ((d >> 1) & 1) + ((d >> 2) & 1)


@numba.njit(cache=True)
def _pick(doms, n, level, first):
    best = -1
    for c in range(n):
        d = doms[c]
        pc = _popcount(d)
        if pc <= 1:
            continue
        if best < 0:
            best = c
            continue
        bp = _popcount(doms[best])
        if pc < bp or (pc == bp and (level[c] > level[best]
                                     or (level[c] == level[best] and first[c] < first[best]))):
            best = c
    return best


@numba.njit(cache=True)
def _solve(n, op, k0, k1, pptr, pidx, level, first, allowed, out, un, bi, same):
    """Indirect forcing on a flat network; True when the root cannot be 0.

    On an invalid verdict ``out`` receives the full singleton marking.
    """
    order = np.array([4, 2, 1], dtype=np.uint8)  # 1, *, 0
    stack = np.empty((n + 1, n), dtype=np.uint8)
    cells = np.empty(n + 1, dtype=np.int64)
    tried = np.empty(n + 1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    queued = np.empty(n, dtype=np.bool_)
    for i in range(n):
        stack[0, i] = allowed[i]
    stack[0, 0] &= 1  # root rejected
    if stack[0, 0] == 0:
        return True
    if not _propagate(stack[0], n, op, k0, k1, pptr, pidx, -1, queue, queued, un, bi, same):
        return True
    sp = 0
    cell = _pick(stack[0], n, level, first)
    cells[0] = cell
    tried[0] = 0
    while True:
        if cell < 0:
            for i in range(n):
                out[i] = stack[sp, i]
            return False
        advanced = False
        while tried[sp] < 3:
            bit = order[tried[sp]]
            tried[sp] += 1
            if stack[sp, cell] & bit:
                for i in range(n):
                    stack[sp + 1, i] = stack[sp, i]
                stack[sp + 1, cell] = bit
                if _propagate(stack[sp + 1], n, op, k0, k1, pptr, pidx, cell,
                              queue, queued, un, bi, same):
                    advanced = True
                    break
        if advanced:
            sp += 1
            cell = _pick(stack[sp], n, level, first)
            cells[sp] = cell
            tried[sp] = 0
            continue
        if sp == 0:
            return True
        sp -= 1
        cell = cells[sp]


# -- single trees ------------------------------------------------------------------


@dataclass
class FlatNetwork:
    op: np.ndarray
    k0: np.ndarray
    k1: np.ndarray
    pptr: np.ndarray
    pidx: np.ndarray
    level: np.ndarray
    first: np.ndarray
    allowed: np.ndarray
    atom_cells: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_tree(cls, tree: ForcingTree) -> "FlatNetwork":
        n = len(tree.cells)
        op = np.array([OPCODE[c.op] for c in tree.cells], dtype=np.int64)
        k0 = np.array([c.children[0] if c.children else -1 for c in tree.cells], dtype=np.int64)
        k1 = np.array([c.children[-1] if c.children else -1 for c in tree.cells], dtype=np.int64)
        parents: list[list[int]] = [[] for _ in range(n)]
        for c in tree.cells:
            for k in dict.fromkeys(c.children):
                parents[k].append(c.id)
        pptr = np.zeros(n + 1, dtype=np.int64)
        for i, ps in enumerate(parents):
            pptr[i + 1] = pptr[i] + len(ps)
        pidx = np.array([p for ps in parents for p in ps], dtype=np.int64)
        firsts = [tree.nodes[c.nodes[0]] for c in tree.cells]
        level = np.array([node.level for node in firsts], dtype=np.int64)
        first = np.array([node.id for node in firsts], dtype=np.int64)
        allowed = np.array([c.allowed for c in tree.cells], dtype=np.uint8)
        return cls(op, k0, k1, pptr, pidx, level, first, allowed, dict(tree.atom_cells))


def solve_tree(tree: ForcingTree) -> tuple[bool, list[int] | None]:
    """(valid, marking bitmasks per cell or None) for one tree."""
    net = FlatNetwork.from_tree(tree)
    out = np.zeros(len(tree.cells), dtype=np.uint8)
    valid = _solve(len(tree.cells), net.op, net.k0, net.k1, net.pptr, net.pidx, net.level,
                   net.first, net.allowed, out, UN, BI, SAME)
    return bool(valid), (None if valid else [int(x) for x in out])


# -- batch over an enumerated space -------------------------------------------------


@numba.njit(cache=True)
def _localize(root, g_op, g_k0, g_k1, stamp, tag, local_of, l_gid, op, k0, k1, pptr, pidx,
              level, first, allowed, pstack, lstack):
    """Flatten the tree rooted at global id ``root`` into local arrays; returns cell count."""
    n = 0
    nid = 0
    sp = 0
    pstack[0] = root
    lstack[0] = 0
    sp = 1
    while sp > 0:
        sp -= 1
        g = pstack[sp]
        lev = lstack[sp]
        if stamp[g] != tag:
            stamp[g] = tag
            local_of[g] = n
            l_gid[n] = g
            level[n] = lev
            first[n] = nid
            n += 1
        nid += 1
        o = g_op[g]
        if o == 0:
            continue
        if o >= 4:
            pstack[sp] = g_k1[g]
            lstack[sp] = lev + 1
            sp += 1
        pstack[sp] = g_k0[g]
        lstack[sp] = lev + 1
        sp += 1
    for i in range(n + 1):
        pptr[i] = 0
    for i in range(n):
        g = l_gid[i]
        o = g_op[g]
        op[i] = o
        if o == 0:
            k0[i] = -1
            k1[i] = -1
            allowed[i] = 7
            continue
        allowed[i] = 5
        k0[i] = local_of[g_k0[g]]
        k1[i] = local_of[g_k1[g]] if o >= 4 else k0[i]
        pptr[k0[i] + 1] += 1
        if k1[i] != k0[i]:
            pptr[k1[i] + 1] += 1
    for i in range(n):
        pptr[i + 1] += pptr[i]
    fill = pptr[:n].copy()
    for i in range(n):
        if op[i] == 0:
            continue
        pidx[fill[k0[i]]] = i
        fill[k0[i]] += 1
        if k1[i] != k0[i]:
            pidx[fill[k1[i]]] = i
            fill[k1[i]] += 1
    return n


@numba.njit(cache=True)
def _check_one(root, g_op, g_k0, g_k1, vec, atom_gids, n_rows, stamp, tag, local_of, l_gid,
               op, k0, k1, pptr, pidx, level, first, allowed, out, pstack, lstack, un, bi, same):
    """Returns (engine valid, oracle valid, model refutes) for global formula ``root``."""
    n = _localize(root, g_op, g_k0, g_k1, stamp, tag, local_of, l_gid, op, k0, k1, pptr, pidx,
                  level, first, allowed, pstack, lstack)
    engine_valid = _solve(n, op, k0, k1, pptr, pidx, level, first, allowed, out, un, bi, same)
    oracle_valid = True
    for r in range(n_rows):
        if vec[root, r] == 1:
            oracle_valid = False
            break
    refutes = True
    if not engine_valid:
        # Row of the leaf reading; atoms absent from the formula read as 1.
        row = 0
        for k in range(atom_gids.shape[0]):
            g = atom_gids[k]
            digit = 0
            if stamp[g] == tag:
                m = out[local_of[g]]
                digit = 0 if m == 4 else (1 if m == 2 else 2)
            row = row * 3 + digit
        refutes = vec[root, row] == 1
    return engine_valid, oracle_valid, refutes


@numba.njit(cache=True)
def _check_space(g_op, g_k0, g_k1, vec, n_base, start, atom_gids, un, bi, same, umat, bmat,
                 max_report, report, counts):
    """Check the base formulas and every formula one connective above them.

    ``report`` rows: (top op or -1, left gid, right gid, engine valid, oracle valid, refutes).
    ``counts``: checked, engine-valid, disagreements, unsound models.
    """
    g = n_base  # scratch slot for the formula under test
    n_rows = vec.shape[1]
    cap = 64
    stamp = np.zeros(n_base + 1, dtype=np.int64)
    local_of = np.zeros(n_base + 1, dtype=np.int64)
    l_gid = np.empty(cap, dtype=np.int64)
    op = np.empty(cap, dtype=np.int64)
    k0 = np.empty(cap, dtype=np.int64)
    k1 = np.empty(cap, dtype=np.int64)
    pptr = np.empty(cap + 1, dtype=np.int64)
    pidx = np.empty(2 * cap, dtype=np.int64)
    level = np.empty(cap, dtype=np.int64)
    first = np.empty(cap, dtype=np.int64)
    allowed = np.empty(cap, dtype=np.uint8)
    out = np.empty(cap, dtype=np.uint8)
    pstack = np.empty(4 * cap, dtype=np.int64)
    lstack = np.empty(4 * cap, dtype=np.int64)
    tag = 0
    n_reported = 0
    total = n_base + 2 * (n_base - start) + 3 * (n_base * n_base - start * start)
    for idx in range(total):
        tag += 1
        if idx < n_base:
            top, a, b = -1, idx, idx
            root = idx
        else:
            j = idx - n_base
            if j < 2 * (n_base - start):
                top = 1 + j // (n_base - start)
                a = start + j % (n_base - start)
                b = a
            else:
                j -= 2 * (n_base - start)
                per = n_base * n_base - start * start
                top = 4 + j // per
                j = j % per
                # Pairs with at least one operand from the newest layer.
                if j < (n_base - start) * n_base:
                    a = start + j // n_base
                    b = j % n_base
                else:
                    j -= (n_base - start) * n_base
                    a = j // (n_base - start)
                    b = start + j % (n_base - start)
            g_op[g] = top
            g_k0[g] = a
            g_k1[g] = b
            for r in range(n_rows):
                if top <= 3:
                    vec[g, r] = umat[top, vec[a, r]]
                else:
                    vec[g, r] = bmat[top, vec[a, r], vec[b, r]]
            root = g
        ev, ov, ref = _check_one(root, g_op, g_k0, g_k1, vec, atom_gids, n_rows, stamp, tag,
                                 local_of, l_gid, op, k0, k1, pptr, pidx, level, first, allowed,
                                 out, pstack, lstack, un, bi, same)
        counts[0] += 1
        if ev:
            counts[1] += 1
        bad = ev != ov or not ref
        if ev != ov:
            counts[2] += 1
        if not ref:
            counts[3] += 1
        if bad and n_reported < max_report:
            report[n_reported, 0] = top
            report[n_reported, 1] = a
            report[n_reported, 2] = b
            report[n_reported, 3] = ev
            report[n_reported, 4] = ov
            report[n_reported, 5] = ref
            n_reported += 1
    return n_reported


def _matrices():
    umat = np.zeros((7, 8), dtype=np.uint8)
    bmat = np.zeros((7, 8, 8), dtype=np.uint8)
    for code, table in ((1, WEAKNEG_TABLE), (2, STRONGNEG_TABLE), (3, INCOMPAT_TABLE)):
        for a, r in table.items():
            umat[code, VALUE_BIT[a]] = VALUE_BIT[r]
    for code, table in ((4, AND_TABLE), (5, OR_TABLE), (6, IMP_TABLE)):
        for (a, b), r in table.items():
            bmat[code, VALUE_BIT[a], VALUE_BIT[b]] = VALUE_BIT[r]
    return umat, bmat


@dataclass
class SpaceReport:
    checked: int
    engine_valid: int
    disagreements: int
    unsound_models: int
    examples: list[tuple[Formula, bool, bool, bool]]


def check_space(names: list[str], base: list[Formula], newest_start: int,
                max_report: int = 20) -> SpaceReport:
    """Engine vs truth tables over ``base`` and every formula one connective above it.

    ``base`` must be closed under subformulas, list subformulas before the
    formulas containing them, and start with the atoms in ``names`` order;
    ``base[newest_start:]`` is its deepest layer. Incompatibility of atoms is
    expected to be in ``base`` already, so the new layer adds only negations
    and binary connectives.
    """
    gid = {f: i for i, f in enumerate(base)}
    n = len(base)
    g_op = np.zeros(n + 1, dtype=np.int64)
    g_k0 = np.full(n + 1, -1, dtype=np.int64)
    g_k1 = np.full(n + 1, -1, dtype=np.int64)
    for i, f in enumerate(base):
        if isinstance(f, Atom):
            continue
        g_op[i] = FORMULA_OPCODE[type(f)]
        if isinstance(f, (WeakNeg, StrongNeg, Incompat)):
            g_k0[i] = g_k1[i] = gid[f.arg]
        else:
            g_k0[i], g_k1[i] = gid[f.left], gid[f.right]
    # Truth-table columns of the base formulas, straight from the evaluator.
    rows = list(assignments(names))
    vec = np.zeros((n + 1, len(rows)), dtype=np.uint8)
    for i, f in enumerate(base):
        for r, v in enumerate(rows):
            vec[i, r] = VALUE_BIT[evaluate(f, v)]
    atom_gids = np.array([gid[Atom(nm)] for nm in names], dtype=np.int64)
    umat, bmat = _matrices()
    report = np.zeros((max_report, 6), dtype=np.int64)
    counts = np.zeros(4, dtype=np.int64)
    n_rep = _check_space(g_op, g_k0, g_k1, vec, n, newest_start, atom_gids, UN, BI, SAME,
                         umat, bmat, max_report, report, counts)
    examples = []
    for top, a, b, ev, ov, ref in report[:n_rep]:
        if top < 0:
            f = base[a]
        elif top <= 3:
            f = OPCODE_FORMULA[int(top)](base[a])
        else:
            f = OPCODE_FORMULA[int(top)](base[a], base[b])
        examples.append((f, bool(ev), bool(ov), bool(ref)))
    return SpaceReport(int(counts[0]), int(counts[1]), int(counts[2]), int(counts[3]), examples)


def space_formula(base: list[Formula], newest_start: int, index: int) -> Formula:
    """The formula checked at position ``index`` by ``check_space`` (for sampling)."""
    n, start = len(base), newest_start
    if index < n:
        return base[index]
    j = index - n
    width = n - start
    if j < 2 * width:
        return OPCODE_FORMULA[1 + j // width](base[start + j % width])
    j -= 2 * width
    per = n * n - start * start
    op = OPCODE_FORMULA[4 + j // per]
    j %= per
    if j < width * n:
        return op(base[start + j // n], base[j % n])
    j -= width * n
    return op(base[j // width], base[start + j % width])


def space_size(base_size: int, newest_start: int) -> int:
    width = base_size - newest_start
    return base_size + 2 * width + 3 * (base_size * base_size - newest_start * newest_start)
