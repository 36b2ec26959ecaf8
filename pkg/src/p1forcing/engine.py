"""Mark forcing on trees.

Each cell of a forcing tree holds a *domain*: the marks it may still take,
as a bitmask over {0, *, 1}. Compound cells never admit *. Propagation
restricts the domains around every connective to the tuples allowed by the
primitive marking rules until nothing changes; a domain emptying out is a
double mark. Validity by indirect forcing seeds the root with 0 and searches
(propagate, then branch on an undetermined cell) for a well-marked tree.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .formula import Formula
from .semantics import MissingAtom, TruthValue
from .tree import (
    AND,
    ATOM,
    COMPOUND_ALLOWED,
    IMP,
    INCOMPAT,
    M0,
    M1,
    MSTAR,
    OR,
    SNEG,
    WNEG,
    ForcingTree,
    build_tree,
)

VALUE_BIT = {TruthValue.ZERO: M0, TruthValue.STAR: MSTAR, TruthValue.ONE: M1}
BIT_VALUE = {bit: value for value, bit in VALUE_BIT.items()}
ALL_MARKS = M0 | MSTAR | M1

# Mark conditions used by the rules.
EQ0, EQS, EQ1 = M0, MSTAR, M1
NE0, NES, NE1 = MSTAR | M1, M0 | M1, M0 | MSTAR

# Order in which branching tries marks: accept, accept by default, reject.
BRANCH_ORDER = (M1, MSTAR, M0)


def marks(mask: int) -> frozenset[TruthValue]:
    return frozenset(v for bit, v in BIT_VALUE.items() if mask & bit)


def mask_of(values) -> int:
    m = 0
    for v in values:
        m |= VALUE_BIT[v]
    return m


def _singleton(mask: int) -> bool:
    return mask in (M0, MSTAR, M1)


# -- rule catalogue ------------------------------------------------------------
#
# Roles: "p" is the connective's own node, "i"/"d" the left/right operands,
# "a" the scope of a prefix operator. A rule fires when every premise role's
# domain lies inside the premise mask; each conclusion role is then restricted
# to the conclusion mask.


@dataclass(frozen=True)
class Rule:
    name: str
    op: str
    premises: tuple[tuple[str, int], ...]
    conclusions: tuple[tuple[str, int], ...]
    primitive: bool = False

    def holds(self, tup: dict[str, int]) -> bool:
        """Whether a tuple of single marks is compatible with this rule."""
        if all(tup[role] & mask for role, mask in self.premises):
            return all(tup[role] & mask for role, mask in self.conclusions)
        return True


def _r(name, op, premises, conclusions, primitive=False):
    return Rule(name, op, tuple(premises.items()), tuple(conclusions.items()), primitive)


RULES: tuple[Rule, ...] = (
    # conditional
    _r("R→", IMP, {"p": EQ0}, {"i": NE0, "d": EQ0}, True),
    _r("nRiRd→", IMP, {"i": NE0, "d": EQ0}, {"p": EQ0}, True),
    _r("Ri→", IMP, {"i": EQ0}, {"p": EQ1}),
    _r("nRd→", IMP, {"d": NE0}, {"p": EQ1}),
    _r("nRiA→", IMP, {"i": NE0, "p": EQ1}, {"d": NE0}),
    _r("RdA→", IMP, {"d": EQ0, "p": EQ1}, {"i": EQ0}),
    # conjunction
    _r("nRinRd∧", AND, {"i": NE0, "d": NE0}, {"p": EQ1}, True),
    _r("A∧", AND, {"p": EQ1}, {"i": NE0, "d": NE0}, True),
    _r("Ri∧", AND, {"i": EQ0}, {"p": EQ0}),
    _r("Rd∧", AND, {"d": EQ0}, {"p": EQ0}),
    _r("nRiR∧", AND, {"i": NE0, "p": EQ0}, {"d": EQ0}),
    _r("nRdR∧", AND, {"d": NE0, "p": EQ0}, {"i": EQ0}),
    # disjunction
    _r("RiRd∨", OR, {"i": EQ0, "d": EQ0}, {"p": EQ0}, True),
    _r("R∨", OR, {"p": EQ0}, {"i": EQ0, "d": EQ0}, True),
    _r("nRi∨", OR, {"i": NE0}, {"p": EQ1}),
    _r("nRd∨", OR, {"d": NE0}, {"p": EQ1}),
    _r("RdA∨", OR, {"d": EQ0, "p": EQ1}, {"i": NE0}),
    _r("RiA∨", OR, {"i": EQ0, "p": EQ1}, {"d": NE0}),
    # strong negation
    _r("A~", SNEG, {"p": EQ1}, {"a": EQ0}, True),
    _r("Ra~", SNEG, {"a": EQ0}, {"p": EQ1}, True),
    _r("R~", SNEG, {"p": EQ0}, {"a": NE0}),
    _r("nRa~", SNEG, {"a": NE0}, {"p": EQ0}),
    # weak negation (questioning)
    _r("A¬", WNEG, {"p": EQ1}, {"a": NE1}, True),
    _r("Ra¬", WNEG, {"a": EQ0}, {"p": EQ1}, True),
    _r("A*a¬", WNEG, {"a": EQS}, {"p": EQ1}, True),
    _r("Aa¬", WNEG, {"a": EQ1}, {"p": EQ0}),
    _r("R¬", WNEG, {"p": EQ0}, {"a": EQ1}),
    # incompatibility
    _r("RI", INCOMPAT, {"p": EQ0}, {"a": EQS}, True),
    _r("A*a¬I", INCOMPAT, {"a": EQS}, {"p": EQ0}, True),
    _r("nRa¬AI", INCOMPAT, {"a": NE0, "p": EQ1}, {"a": EQ1}),
    _r("AI", INCOMPAT, {"p": EQ1}, {"a": NES}),
    _r("Ra¬I", INCOMPAT, {"a": EQ0}, {"p": EQ1}),
    _r("Aa¬I", INCOMPAT, {"a": EQ1}, {"p": EQ1}),
)

ROLES = {WNEG: ("p", "a"), SNEG: ("p", "a"), INCOMPAT: ("p", "a"), AND: ("p", "i", "d"),
         OR: ("p", "i", "d"), IMP: ("p", "i", "d")}

# Name of the step that pins an atom by intersecting two partial marks.
ATOM_PIN_RULE = {MSTAR: "nRnAat", M1: "nA*nRat", M0: "nAnA*at"}

SEED_RULES = frozenset({"RR", "OM", "ORd", "ORi", "OnRi", "OI", "ABM", "LM"})


def rule_relation(op: str, primitive_only: bool = True) -> frozenset[tuple[int, ...]]:
    """Mark tuples (in ROLES order) that violate none of the operator's rules."""
    roles = ROLES[op]
    spaces = [(M0, M1)] + [(M0, MSTAR, M1)] * (len(roles) - 1)
    rules = [r for r in RULES if r.op == op and (r.primitive or not primitive_only)]
    allowed = set()
    for tup in itertools.product(*spaces):
        named = dict(zip(roles, tup))
        if all(r.holds(named) for r in rules):
            allowed.add(tup)
    return frozenset(allowed)


RELATIONS = {op: rule_relation(op) for op in ROLES}


def _revise_tables(op: str):
    """Lookup tables mapping packed domains to the arc-consistent domains.

    Unary: index p | a << 3. Binary: index p | i << 3 | d << 6. A second
    binary table handles both operands being the same cell (index p | x << 3).
    """
    rel = RELATIONS[op]
    if len(ROLES[op]) == 2:
        table = [None] * 64
        for dp, da in itertools.product(range(8), repeat=2):
            np_ = na = 0
            for p, a in rel:
                if p & dp and a & da:
                    np_ |= p
                    na |= a
            table[dp | da << 3] = (np_, na)
        return table, None
    table = [None] * 512
    same = [None] * 64
    for dp, di, dd in itertools.product(range(8), repeat=3):
        np_ = ni = nd = 0
        for p, i, d in rel:
            if p & dp and i & di and d & dd:
                np_ |= p
                ni |= i
                nd |= d
        table[dp | di << 3 | dd << 6] = (np_, ni, nd)
    for dp, dx in itertools.product(range(8), repeat=2):
        np_ = nx = 0
        for p, i, d in rel:
            if i == d and p & dp and i & dx:
                np_ |= p
                nx |= i
        same[dp | dx << 3] = (np_, nx)
    return table, same


REVISE = {op: _revise_tables(op) for op in ROLES}


# -- state and trace ---------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    number: int
    rule: str
    node: int
    domain: frozenset[TruthValue]  # the marks this step asserts for the node
    premises: tuple[int, ...] = ()


@dataclass
class MarkState:
    """Per-cell mark domains plus the justification trace.

    ``domains`` holds bitmasks; use ``domain(cell)`` for sets of TruthValue.
    The trace list is shared between a state and the branches copied from it.
    """

    domains: list[int]
    trace: list[TraceStep] | None = field(default_factory=list)
    cell_step: dict[int, int] = field(default_factory=dict)
    node_step: dict[int, int] = field(default_factory=dict)
    node_view: dict[int, int] = field(default_factory=dict)
    assumption: int | None = None

    @classmethod
    def initial(cls, tree: ForcingTree, tracing: bool = True) -> "MarkState":
        return cls([c.allowed for c in tree.cells], [] if tracing else None)

    @property
    def tracing(self) -> bool:
        return self.trace is not None

    def domain(self, cell: int) -> frozenset[TruthValue]:
        return marks(self.domains[cell])

    def value(self, cell: int) -> TruthValue | None:
        d = self.domains[cell]
        return BIT_VALUE[d] if _singleton(d) else None

    def is_complete(self) -> bool:
        return all(_singleton(d) for d in self.domains)

    def branch(self, fresh_trace: bool = False) -> "MarkState":
        trace = self.trace
        if fresh_trace and trace is not None:
            trace = list(trace)
        return MarkState(list(self.domains), trace, dict(self.cell_step), dict(self.node_step),
                         dict(self.node_view), self.assumption)

    # trace bookkeeping

    def log(self, rule: str, node: int, mask: int, premises=()) -> int:
        n = len(self.trace) + 1
        self.trace.append(TraceStep(n, rule, node, marks(mask), tuple(premises)))
        return n

    def settle(self, tree: ForcingTree, node: int, step: int) -> None:
        cell = tree.nodes[node].cell
        self.cell_step[cell] = step
        self.node_step[node] = step
        self.node_view[node] = step

    def cite(self, tree: ForcingTree, node: int) -> int | None:
        """Step justifying the current mark seen at ``node``, adding IM if needed."""
        cell = tree.nodes[node].cell
        step = self.cell_step.get(cell)
        if step is None:
            return None
        if self.node_view.get(node) != step:
            im = self.log("IM", node, self.domains[cell], (step,))
            self.node_step[node] = im
            self.node_view[node] = step
        return self.node_step[node]

    def seed(self, tree: ForcingTree, rule: str, node: int, mask: int) -> int:
        cell = tree.nodes[node].cell
        self.domains[cell] &= mask
        if self.trace is None:
            return 0
        n = self.log(rule, node, mask)
        self.settle(tree, node, n)
        return n


@dataclass(frozen=True)
class Fixpoint:
    state: MarkState


@dataclass(frozen=True)
class Contradiction:
    trace: list[TraceStep] | None
    cell: int


# -- propagation -----------------------------------------------------------------


class _Network:
    """Flat view of a tree for the propagation loop."""

    def __init__(self, tree: ForcingTree):
        self.tree = tree
        n = len(tree.cells)
        self.op = [c.op for c in tree.cells]
        self.kids = [c.children for c in tree.cells]
        parents: list[list[int]] = [[] for _ in range(n)]
        for c in tree.cells:
            for k in dict.fromkeys(c.children):
                parents[k].append(c.id)
        self.parents = parents
        self.compound = [c.id for c in tree.cells if c.op != ATOM]


def _network(tree: ForcingTree) -> _Network:
    net = tree.__dict__.get("_network")
    if net is None:
        net = _Network(tree)
        object.__setattr__(tree, "_network", net)
    return net


def _revise(op: str, kids: tuple[int, ...], c: int, doms: list[int]) -> tuple[int, ...]:
    """New (parent, child...) domains for the constraint at cell ``c``."""
    table, same = REVISE[op]
    if len(kids) == 1:
        return table[doms[c] | doms[kids[0]] << 3]
    i, d = kids
    if i == d:
        np_, nx = same[doms[c] | doms[i] << 3]
        return np_, nx, nx
    return table[doms[c] | doms[i] << 3 | doms[d] << 6]


def propagate(tree: ForcingTree, state: MarkState, touched=None,
              conflict_rule: str = "DM") -> Fixpoint | Contradiction:
    """Restrict ``state`` in place to local consistency with every connective.

    ``touched`` lists cells whose domains changed since the state was last
    consistent; by default every constraint is revised. On a double mark the
    trace gets the step that caused it and a closing ``conflict_rule`` step.
    """
    net = _network(tree)
    doms = state.domains
    if touched is None:
        queue = deque(net.compound)
    else:
        queue = deque()
        for c in touched:
            if net.op[c] != ATOM:
                queue.append(c)
            queue.extend(net.parents[c])
    queued = set(queue)
    ops, kids_of, parents = net.op, net.kids, net.parents
    tracing = state.trace is not None
    while queue:
        c = queue.popleft()
        queued.discard(c)
        op, kids = ops[c], kids_of[c]
        new = _revise(op, kids, c, doms)
        cells = (c,) + kids
        if 0 in new:
            if tracing:
                _trace_conflict(tree, state, c, new, conflict_rule)
            bad = cells[new.index(0)]
            doms[bad] = 0
            return Contradiction(state.trace, bad)
        changed = [x for x, nd in zip(cells, new) if nd != doms[x]]
        if not changed:
            continue
        if tracing:
            _trace_revision(tree, state, c, new)
        else:
            for x, nd in zip(cells, new):
                doms[x] = nd
        for x in dict.fromkeys(changed):
            if x != c and ops[x] != ATOM and x not in queued:
                queue.append(x)
                queued.add(x)
            for y in parents[x]:
                if y != c and y not in queued:
                    queue.append(y)
                    queued.add(y)
    return Fixpoint(state)


# -- trace construction --------------------------------------------------------


def _roles(tree: ForcingTree, c: int) -> list[tuple[str, int]]:
    """(role, node) pairs of the constraint at cell ``c``, on its first occurrence."""
    cell = tree.cells[c]
    rep = tree.nodes[cell.nodes[0]]
    return list(zip(ROLES[cell.op], (rep.id,) + rep.children))


def _standalone(tree: ForcingTree, doms: list[int], c: int, role_nodes, target: int) -> int:
    """What the constraint alone says about role ``target``, ignoring its current domain."""
    cells = [tree.nodes[n].cell for _, n in role_nodes]
    trial = list(doms)
    trial[cells[target]] = tree.cells[cells[target]].allowed
    new = _revise(tree.cells[c].op, tuple(cells[1:]), c, trial)
    return new[target] & tree.cells[cells[target]].allowed


def _match_rule(op: str, role: str, old: dict[str, int], conclusion: int, allowed: int,
                allow_self: bool) -> Rule | None:
    for rule in RULES:
        if rule.op != op:
            continue
        concl = dict(rule.conclusions).get(role)
        if concl is None or concl & allowed != conclusion:
            continue
        if not allow_self and any(r == role for r, _ in rule.premises):
            continue
        if all(old[r] and old[r] & ~m == 0 for r, m in rule.premises):
            return rule
    return None


def _explain(tree: ForcingTree, state: MarkState, c: int, role_nodes, target: int,
             new_mask: int) -> tuple[int, int]:
    """Log the steps deriving ``new_mask`` for one role; returns (last step, asserted mask).

    ``new_mask`` may be 0 when the derivation contradicts the current domain.
    """
    doms = state.domains
    op = tree.cells[c].op
    role, node = role_nodes[target]
    cell = tree.nodes[node].cell
    allowed = tree.cells[cell].allowed
    old = {r: doms[tree.nodes[n].cell] for r, n in role_nodes}
    node_of = dict(role_nodes)

    def cite(roles) -> list[int]:
        steps = [state.cite(tree, node_of[r]) for r in roles]
        return [s for s in dict.fromkeys(steps) if s is not None]

    if new_mask:
        rule = _match_rule(op, role, old, new_mask, allowed, allow_self=True)
        if rule is not None:
            premises = cite(r for r, _ in rule.premises)
            return state.log(rule.name, node, new_mask, premises), new_mask

    alone = _standalone(tree, doms, c, role_nodes, target)
    rule = _match_rule(op, role, old, alone, allowed, allow_self=False)
    if rule is not None:
        premises = cite(r for r, _ in rule.premises)
        name = rule.name
    else:
        others = [r for r, n in role_nodes if r != role
                  and doms[tree.nodes[n].cell] != tree.cells[tree.nodes[n].cell].allowed]
        premises = cite(others)
        name = "AC"
    step = state.log(name, node, alone, premises)
    if alone == new_mask or not new_mask:
        return step, alone
    prior = state.cite(tree, node)
    pin = ATOM_PIN_RULE.get(new_mask) if tree.cells[cell].op == ATOM else None
    return state.log(pin or "AC", node, new_mask, [s for s in (step, prior) if s]), new_mask


def _trace_revision(tree: ForcingTree, state: MarkState, c: int, new: tuple[int, ...]) -> None:
    role_nodes = _roles(tree, c)
    doms = state.domains
    # Explain every change against the domains before this revision, then commit.
    results = []
    done = set()
    for target, (role, node) in enumerate(role_nodes):
        cell = tree.nodes[node].cell
        if new[target] == doms[cell] or cell in done:
            continue
        done.add(cell)
        step, _ = _explain(tree, state, c, role_nodes, target, new[target])
        results.append((node, cell, step, new[target]))
    for node, cell, step, mask in results:
        doms[cell] = mask
        state.settle(tree, node, step)


def _trace_conflict(tree: ForcingTree, state: MarkState, c: int, new: tuple[int, ...],
                    conflict_rule: str) -> None:
    role_nodes = _roles(tree, c)
    target = new.index(0)
    node = role_nodes[target][1]
    step, _ = _explain(tree, state, c, role_nodes, target, 0)
    prior = state.cite(tree, node)
    premises = [s for s in (state.assumption, prior, step) if s]
    state.log(conflict_rule, node, 0, premises)


# -- validity -------------------------------------------------------------------


@dataclass(frozen=True)
class AValid:
    reason: str  # "AMM" (indirect forcing) or "RM1" (direct forcing)
    trace: list[TraceStep] | None


@dataclass(frozen=True)
class AInvalid:
    marking: MarkState
    assignment: dict[str, TruthValue]
    trace: list[TraceStep] | None


EngineVerdict = AValid | AInvalid


def _pick_branch(tree: ForcingTree, doms: list[int]) -> int | None:
    """Undetermined cell with the fewest marks left, deepest first, then lowest node id."""
    best, best_key = None, None
    for cell in tree.cells:
        d = doms[cell.id]
        if _singleton(d):
            continue
        first = tree.nodes[cell.nodes[0]]
        key = (bin(d).count("1"), -first.level, first.id)
        if best_key is None or key < best_key:
            best, best_key = cell.id, key
    return best


def _search(tree: ForcingTree, state: MarkState, touched,
            conflict_rule: str) -> tuple[MarkState | None, int | None]:
    """Depth-first search for a full marking; returns (solution, closing step)."""
    result = propagate(tree, state, touched, conflict_rule)
    if isinstance(result, Contradiction):
        return None, (len(state.trace) if state.tracing else None)
    cell = _pick_branch(tree, state.domains)
    if cell is None:
        return state, None
    node = tree.cells[cell].nodes[0]
    dom = state.domains[cell]
    closes = []
    for bit in BRANCH_ORDER:
        if not dom & bit:
            continue
        child = state.branch()
        child.assumption = child.seed(tree, "OM", node, bit) or None
        found, close = _search(tree, child, (cell,), "OI-DM")
        if found is not None:
            return found, None
        closes.append(close)
    if not state.tracing:
        return None, None
    # Every option for the cell closed, so the assumption above it fails.
    premises = [s for s in (state.assumption, *closes) if s]
    return None, state.log(conflict_rule, node, 0, premises)


def _leaf_assignment(tree: ForcingTree, state: MarkState) -> dict[str, TruthValue]:
    return {name: BIT_VALUE[state.domains[cell]] for name, cell in tree.atom_cells.items()}


def check_validity(f: Formula | ForcingTree, trace: bool = True,
                   compiled: bool = True) -> EngineVerdict:
    """Decide validity by indirect forcing: mark the root 0 and look for a well-marked tree.

    Without a trace the compiled solver runs the same search; ``compiled=False``
    keeps the pure Python path.
    """
    tree = f if isinstance(f, ForcingTree) else build_tree(f)
    if not trace and compiled:
        from .fastcheck import solve_tree

        valid, marking = solve_tree(tree)
        if valid:
            return AValid("AMM", None)
        found = MarkState.initial(tree, tracing=False)
        found.domains[:] = marking
        return AInvalid(found, _leaf_assignment(tree, found), None)
    state = MarkState.initial(tree, tracing=trace)
    step = state.seed(tree, "RR", tree.root, M0)
    if trace:
        state.assumption = step
    found, _ = _search(tree, state, None, "RR-DM")
    if found is None:
        return AValid("AMM", state.trace)
    if trace:
        found.log("ABM", tree.root, found.domains[tree.root_cell])
    return AInvalid(found, _leaf_assignment(tree, found), found.trace)


# -- direct forcing ---------------------------------------------------------------


@dataclass(frozen=True)
class Forced1:
    trace: list[TraceStep] | None


@dataclass(frozen=True)
class NotForced:
    state: MarkState


@dataclass(frozen=True)
class _Option:
    rule: str  # conclusion rule name
    seed: str  # label of the hypothetical mark
    assume_node: int
    assume: int
    watch_node: int
    want: int  # success when the watched domain lies inside this mask
    conclude_node: int
    conclude: int


def _options(tree: ForcingTree, doms: list[int]):
    for cell in tree.cells:
        if _singleton(doms[cell.id]) or cell.op not in (IMP, OR):
            continue
        rep = tree.nodes[cell.nodes[0]]
        i, d = rep.children
        if cell.op == IMP:
            yield _Option("ORd-Ri→", "ORd", d, EQ0, i, EQ0, rep.id, EQ1)
            yield _Option("OnRi-nRd→", "OnRi", i, NE0, d, NE0, rep.id, EQ1)
        else:
            yield _Option("ORi-nRd∨", "ORi", i, EQ0, d, NE0, rep.id, EQ1)
            yield _Option("ORd-nRi∨", "ORd", d, EQ0, i, NE0, rep.id, EQ1)
    root_cell = tree.root_cell
    for cell in tree.cells:
        d = doms[cell.id]
        if _singleton(d) or cell.id == root_cell:
            continue
        node = cell.nodes[0]
        for bit in BRANCH_ORDER:
            if d & bit:
                yield _Option("OI-DM", "OI", node, bit, node, 0, node, d & ~bit)


def check_validity_direct(f: Formula | ForcingTree, trace: bool = True) -> Forced1 | NotForced:
    """Try to force the root to 1 without rejecting it first.

    Option rules run as hypothetical propagations on a copy of the state; a
    hypothesis that yields the option's consequent (or a double mark) lets the
    option's conclusion be marked on the main state. Best effort only.
    """
    tree = f if isinstance(f, ForcingTree) else build_tree(f)
    nodes = tree.nodes
    state = MarkState.initial(tree, tracing=trace)
    propagate(tree, state)
    while True:
        root_mask = state.domains[tree.root_cell]
        if root_mask == M1:
            if trace:
                state.log("RM1", tree.root, M1, [s for s in (state.cite(tree, tree.root),) if s])
            return Forced1(state.trace)
        for opt in _options(tree, state.domains):
            cell = nodes[opt.assume_node].cell
            if state.domains[cell] & opt.assume in (0, state.domains[cell]):
                continue
            probe = state.branch(fresh_trace=True)
            seed = probe.seed(tree, opt.seed, opt.assume_node, opt.assume)
            probe.assumption = seed or None
            result = propagate(tree, probe, (cell,), "OI-DM")
            watch = nodes[opt.watch_node].cell
            if isinstance(result, Fixpoint) and probe.domains[watch] & ~opt.want:
                continue
            target = nodes[opt.conclude_node].cell
            new_mask = state.domains[target] & opt.conclude
            if trace:
                if isinstance(result, Contradiction):
                    evidence = probe.trace[-1].number
                else:
                    evidence = probe.cite(tree, opt.watch_node)
                state.trace[:] = probe.trace
                step = state.log(opt.rule, opt.conclude_node, new_mask, [s for s in (seed, evidence) if s])
                state.settle(tree, opt.conclude_node, step)
            state.domains[target] = new_mask
            propagate(tree, state, (target,))
            break
        else:
            return NotForced(state)


# -- extension of leaf marks ------------------------------------------------------


def extend_marks(tree: ForcingTree, leaf_marks, trace: bool = False) -> MarkState:
    """Extend marks on the atoms to every node by propagation alone."""
    state = MarkState.initial(tree, tracing=trace)
    touched = []
    for name, cell in tree.atom_cells.items():
        if name not in leaf_marks:
            raise MissingAtom(name)
        state.seed(tree, "LM", tree.cells[cell].nodes[0], VALUE_BIT[leaf_marks[name]])
        touched.append(cell)
    result = propagate(tree, state, touched)
    if isinstance(result, Contradiction) or not state.is_complete():
        raise AssertionError("leaf marks did not extend to a unique full marking")
    return state


# -- trace formatting -------------------------------------------------------------


def _join(numbers) -> str:
    numbers = [str(n) for n in numbers]
    if len(numbers) <= 1:
        return "".join(numbers)
    return ", ".join(numbers[:-1]) + " y " + numbers[-1]


def format_trace(trace: list[TraceStep]) -> str:
    """One line per step, ``<n>. <rule> en <premises>``; joint conclusions share a line."""
    lines = []
    group: list[TraceStep] = []

    def flush():
        if not group:
            return
        head = ", ".join(str(s.number) for s in group)
        step = group[0]
        if step.premises and step.rule not in SEED_RULES:
            lines.append(f"{head}. {step.rule} en {_join(step.premises)}")
        else:
            lines.append(f"{head}. {step.rule}")
        group.clear()

    for step in trace:
        if group and (step.rule != group[0].rule or step.premises != group[0].premises
                      or step.rule in SEED_RULES or step.rule == "IM"):
            flush()
        group.append(step)
    flush()
    return "\n".join(lines)
