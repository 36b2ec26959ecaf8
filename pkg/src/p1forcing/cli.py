"""Command-line front end: check, table, tree, corpus, compare.

Exit status: 0 success, 1 bad input (syntax, model, file), 2 engine and
truth tables disagree, 3 invalid formula under ``--fail-on-invalid``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources

from .engine import (
    AInvalid,
    Forced1,
    MarkState,
    check_validity,
    check_validity_direct,
    extend_marks,
    format_trace,
)
from .formula import Formula, FormulaSyntaxError, atoms, parse, render
from .generate import atom_names, count_formulas, formulas_by_depth, random_formulas
from .semantics import (
    ZERO,
    MissingAtom,
    TInvalid,
    TooManyAtoms,
    TruthValue,
    evaluate,
    format_assignment,
    parse_assignment,
    t_validity,
    truth_table,
)
from .tree import ASCII_GLYPH, ATOM, M0, M1, MSTAR, ROOT_TAG, ForcingTree, build_tree

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE, EXIT_INVALID = 0, 1, 2, 3

MARK_TEXT = {M1: "(1)", M0: "[0]", MSTAR: "<*>"}
DOT_SHAPE = {M1: "ellipse", M0: "box", MSTAR: "triangle"}
TABLE_ATOM_LIMIT = 6
COMPARE_LIMIT = 50_000_000


class InputError(Exception):
    pass


def _parse(text: str) -> Formula:
    try:
        return parse(text)
    except FormulaSyntaxError as e:
        raise InputError(f"syntax error: {e}: {text!r}") from None


def _style(args) -> str:
    return "unicode" if getattr(args, "unicode", False) else "ascii"


def verdict_line(verdict) -> str:
    if isinstance(verdict, AInvalid):
        return f"A-INVALID  model: {format_assignment(verdict.assignment)}"
    return "A-VALID"


# -- check -------------------------------------------------------------------------


def cmd_check(args, out) -> int:
    f = _parse(args.formula)
    verdict = check_validity(f, trace=args.trace)
    print(verdict_line(verdict), file=out)
    if args.trace:
        print(format_trace(verdict.trace), file=out)
    status = EXIT_OK
    if args.direct:
        direct = check_validity_direct(f, trace=args.trace)
        forced = isinstance(direct, Forced1)
        print(f"direct: {'root forced to 1' if forced else 'not forced'}", file=out)
        if forced and args.trace:
            print(format_trace(direct.trace), file=out)
        if forced and isinstance(verdict, AInvalid):
            print("error: direct forcing proved a formula the engine refuted", file=sys.stderr)
            status = EXIT_DISAGREE
    if args.oracle:
        try:
            oracle = t_validity(f, allow_large=args.max_atoms_override)
        except TooManyAtoms as e:
            raise InputError(f"{e} (or --max-atoms-override)") from None
        if isinstance(oracle, TInvalid):
            print(f"oracle: T-INVALID  countermodel: {format_assignment(oracle.countermodel)}", file=out)
        else:
            print("oracle: T-VALID", file=out)
        agree = isinstance(oracle, TInvalid) == isinstance(verdict, AInvalid)
        if isinstance(verdict, AInvalid):
            value = evaluate(f, verdict.assignment)
            print(f"oracle: value under model = {value}", file=out)
            agree = agree and value is ZERO
        if not agree:
            print("error: engine and truth tables disagree", file=sys.stderr)
            return EXIT_DISAGREE
        print("oracle: agrees", file=out)
    if status == EXIT_OK and args.fail_on_invalid and isinstance(verdict, AInvalid):
        return EXIT_INVALID
    return status


# -- table -------------------------------------------------------------------------


def table_rows(f: Formula) -> list[tuple[list[TruthValue], TruthValue]]:
    names = atoms(f)
    return [([v[n] for n in names], value) for v, value in truth_table(f)]


def cmd_table(args, out) -> int:
    f = _parse(args.formula)
    names = atoms(f)
    if len(names) > TABLE_ATOM_LIMIT and not args.max_atoms_override:
        raise InputError(f"{len(names)} atoms gives 3^{len(names)} rows; "
                         f"pass --max-atoms-override to print anyway")
    text = render(f, _style(args))
    widths = [max(1, len(n)) for n in names]
    head = " ".join(n.ljust(w) for n, w in zip(names, widths))
    print(f"{head} | {text} | designated", file=out)
    for values, value in table_rows(f):
        cells = " ".join(str(v).ljust(w) for v, w in zip(values, widths))
        flag = "yes" if value.designated else "no"
        print(f"{cells} | {str(value).ljust(len(text))} | {flag}", file=out)
    return EXIT_OK


# -- tree --------------------------------------------------------------------------


@dataclass
class Decorated:
    tree: ForcingTree
    marks: list[int] | None = None  # per cell
    verdict: object = None


def _glyph(tree: ForcingTree, node_id: int, style: str) -> str:
    node = tree.nodes[node_id]
    op = tree.cells[node.cell].op
    if op == ATOM or style == "unicode":
        return node.glyph
    return ASCII_GLYPH[op]


def _node_mark(d: Decorated, node_id: int) -> int | None:
    if d.marks is None:
        return None
    m = d.marks[d.tree.nodes[node_id].cell]
    return m if m in MARK_TEXT else None


def render_ascii(d: Decorated, style: str = "ascii") -> str:
    lines = []
    for node in d.tree.nodes:
        mark = _node_mark(d, node.id)
        label = _glyph(d.tree, node.id, style)
        if node.tag != ROOT_TAG:
            label = f"{node.tag}: {label}"
        if mark is not None:
            label += f" {MARK_TEXT[mark]}"
        lines.append("  " * node.level + label)
    return "\n".join(lines)


def render_dot(d: Decorated, style: str = "ascii") -> str:
    lines = ["digraph forcing_tree {", "  node [fontname=\"monospace\"];"]
    for node in d.tree.nodes:
        mark = _node_mark(d, node.id)
        label = _glyph(d.tree, node.id, style)
        if mark is None:
            attrs = f'label="{label}", shape=plaintext'
        else:
            attrs = f'label="{label} {MARK_TEXT[mark]}", shape={DOT_SHAPE[mark]}'
        lines.append(f"  n{node.id} [{attrs}];")
    for node in d.tree.nodes:
        for kid in node.children:
            lines.append(f'  n{node.id} -> n{kid} [label="{d.tree.nodes[kid].tag}"];')
    lines.append("}")
    return "\n".join(lines)


def tree_json(d: Decorated, style: str = "ascii", trace=None) -> dict:
    nodes = []
    for node in d.tree.nodes:
        item = {
            "id": node.id,
            "glyph": _glyph(d.tree, node.id, style),
            "tag": node.tag,
            "cell": node.cell,
            "children": list(node.children),
        }
        mark = _node_mark(d, node.id)
        if mark is not None:
            item["mark"] = MARK_TEXT[mark][1]
        nodes.append(item)
    doc: dict = {"nodes": nodes, "root": d.tree.root}
    if d.verdict is not None:
        doc["verdict"] = "A-INVALID" if isinstance(d.verdict, AInvalid) else "A-VALID"
        if isinstance(d.verdict, AInvalid):
            doc["model"] = {k: str(v) for k, v in d.verdict.assignment.items()}
    if trace is not None:
        doc["trace"] = format_trace(trace).splitlines()
    return doc


def cmd_tree(args, out) -> int:
    f = _parse(args.formula)
    tree = build_tree(f)
    d = Decorated(tree)
    trace = None
    if args.model is not None:
        try:
            model = parse_assignment(args.model)
            state: MarkState = extend_marks(tree, model)
        except ValueError as e:
            raise InputError(f"bad model: {e}") from None
        except MissingAtom as e:
            raise InputError(f"bad model: {e}") from None
        d.marks = state.domains
    elif args.check:
        verdict = check_validity(tree, trace=args.trace)
        d.verdict = verdict
        trace = verdict.trace if args.trace else None
        if isinstance(verdict, AInvalid):
            d.marks = verdict.marking.domains
    style = _style(args)
    if args.format == "json":
        print(json.dumps(tree_json(d, style, trace), ensure_ascii=False, indent=2), file=out)
        return EXIT_OK
    if args.format == "dot":
        print(render_dot(d, style), file=out)
    else:
        if d.verdict is not None:
            print(verdict_line(d.verdict), file=out)
        print(render_ascii(d, style), file=out)
    if trace is not None and args.format != "json":
        print(format_trace(trace), file=out)
    return EXIT_OK


# -- corpus ------------------------------------------------------------------------


@dataclass
class CorpusEntry:
    line: int
    text: str
    expect: str | None = None  # "valid" / "invalid"
    model: dict[str, TruthValue] | None = None


def parse_corpus(text: str) -> list[CorpusEntry]:
    entries = []
    for number, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.startswith("#"):
            continue
        body, *notes = raw.split("@")
        entry = CorpusEntry(number, body.strip())
        if not entry.text:
            raise InputError(f"line {number}: missing formula")
        for note in notes:
            key, _, rest = note.strip().partition(" ")
            if key in ("valid", "invalid") and not rest.strip():
                if entry.expect is not None:
                    raise InputError(f"line {number}: more than one verdict annotation")
                entry.expect = key
            elif key == "model":
                try:
                    entry.model = parse_assignment(rest)
                except ValueError as e:
                    raise InputError(f"line {number}: {e}") from None
            else:
                raise InputError(f"line {number}: unknown annotation @{note.strip()}")
        if entry.model is not None and entry.expect == "valid":
            raise InputError(f"line {number}: @model given for a @valid entry")
        entries.append(entry)
    return entries


def run_entry(entry: CorpusEntry) -> tuple[bool, str]:
    f = parse(entry.text)
    verdict = check_validity(f, trace=False)
    got = "invalid" if isinstance(verdict, AInvalid) else "valid"
    problems = []
    expect = entry.expect or ("invalid" if entry.model else None)
    if expect is not None and got != expect:
        problems.append(f"expected @{expect}")
    if entry.model is not None and isinstance(verdict, AInvalid):
        if verdict.assignment != entry.model:
            problems.append(f"expected model {format_assignment(entry.model)}")
    if isinstance(verdict, AInvalid) and evaluate(f, verdict.assignment) is not ZERO:
        problems.append("model does not refute the formula")
    return not problems, verdict_line(verdict) + ("" if not problems else "  " + "; ".join(problems))


def worked_examples_text() -> str:
    return resources.files("p1forcing").joinpath("data/worked_examples.txt").read_text(encoding="utf-8")


def cmd_corpus(args, out) -> int:
    if args.examples:
        text = worked_examples_text()
    elif args.path is None:
        raise InputError("give a corpus file or --examples")
    else:
        try:
            with open(args.path, encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as e:
            raise InputError(f"cannot read corpus: {e}") from None
    entries = parse_corpus(text)
    for e in entries:
        try:
            parse(e.text)
        except FormulaSyntaxError as err:
            raise InputError(f"line {e.line}: syntax error: {err}") from None
    passed = 0
    for e in entries:
        ok, report = run_entry(e)
        passed += ok
        print(f"{'PASS' if ok else 'FAIL'}  {e.text}  {report}", file=out)
    print(f"{passed}/{len(entries)} pass", file=out)
    return EXIT_OK if passed == len(entries) else EXIT_INVALID


# -- compare -----------------------------------------------------------------------


@dataclass
class Disagreement:
    formula: Formula
    engine: str
    oracle: str


def compare_formulas(formulas) -> tuple[int, int, list[Disagreement]]:
    """Engine vs truth tables one formula at a time: (checked, A-valid, disagreements)."""
    checked = valid = 0
    bad = []
    for f in formulas:
        verdict = check_validity(f, trace=False)
        oracle = t_validity(f, allow_large=True)
        checked += 1
        engine_invalid = isinstance(verdict, AInvalid)
        valid += not engine_invalid
        if engine_invalid != isinstance(oracle, TInvalid):
            bad.append(Disagreement(f, verdict_line(verdict), "T-VALID" if engine_invalid else "T-INVALID"))
        elif engine_invalid and evaluate(f, verdict.assignment) is not ZERO:
            bad.append(Disagreement(f, verdict_line(verdict), "model does not refute"))
    return checked, valid, bad


def compare_exhaustive(n_atoms: int, max_depth: int) -> tuple[int, int, list[Disagreement]]:
    names = atom_names(n_atoms)
    if max_depth <= 1:
        layers = formulas_by_depth(names, max_depth)
        return compare_formulas(f for layer in layers for f in layer)
    from .fastcheck import check_space

    layers = formulas_by_depth(names, max_depth - 1)
    base = [f for layer in layers for f in layer]
    report = check_space(names, base, len(base) - len(layers[-1]))
    bad = []
    for f, engine_valid, oracle_valid, refutes in report.examples:
        oracle = "T-VALID" if oracle_valid else "T-INVALID"
        if not refutes:
            oracle += ", model does not refute"
        bad.append(Disagreement(f, "A-VALID" if engine_valid else "A-INVALID", oracle))
    return report.checked, report.engine_valid, bad


def cmd_compare(args, out) -> int:
    names = atom_names(args.atoms)
    if args.random is not None:
        formulas = random_formulas(args.random, names, args.max_depth, args.seed)
        checked, valid, bad = compare_formulas(formulas)
        what = f"random {args.random} formulas, depth <= {args.max_depth}, atoms {','.join(names)}, seed {args.seed}"
    else:
        size = count_formulas(args.atoms, args.max_depth)
        if size > args.limit:
            raise InputError(f"exhaustive space has {size} formulas, above --limit {args.limit}")
        checked, valid, bad = compare_exhaustive(args.atoms, args.max_depth)
        what = f"exhaustive depth <= {args.max_depth}, atoms {','.join(names)}"
    print(f"{what}: {checked} formulas, {valid} A-valid, {checked - valid} A-invalid", file=out)
    for d in bad:
        print(f"DISAGREE  {render(d.formula)}  engine: {d.engine}  oracle: {d.oracle}", file=out)
    print(f"{len(bad)} disagreements", file=out)
    return EXIT_OK if not bad else EXIT_DISAGREE


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="p1forcing", description="Forcing trees for P1 / LPcAt.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_style(sp):
        sp.add_argument("--unicode", action="store_true", help="print connectives as unicode glyphs")
        return sp

    c = with_style(sub.add_parser("check", help="decide A-validity of a formula"))
    c.add_argument("formula")
    c.add_argument("--trace", action="store_true", help="print the justification trace")
    c.add_argument("--oracle", action="store_true", help="cross-check against truth tables")
    c.add_argument("--fail-on-invalid", action="store_true", help="exit 3 when A-invalid")
    c.add_argument("--direct", action="store_true", help="also try direct forcing of the root")
    c.add_argument("--max-atoms-override", action="store_true",
                   help="let --oracle enumerate more than 12 atoms")
    c.set_defaults(run=cmd_check)

    t = with_style(sub.add_parser("table", help="print the three-valued truth table"))
    t.add_argument("formula")
    t.add_argument("--max-atoms-override", action="store_true")
    t.set_defaults(run=cmd_table)

    tr = with_style(sub.add_parser("tree", help="render the forcing tree"))
    tr.add_argument("formula")
    tr.add_argument("--format", choices=("ascii", "dot", "json"), default="ascii")
    tr.add_argument("--model", help="atom marks such as A=*,B=0")
    tr.add_argument("--check", action="store_true", help="decorate with the refuting marking, if any")
    tr.add_argument("--trace", action="store_true", help="with --check, include the trace")
    tr.set_defaults(run=cmd_tree)

    co = with_style(sub.add_parser("corpus", help="run a file of annotated formulas"))
    co.add_argument("path", nargs="?")
    co.add_argument("--examples", action="store_true", help="run the bundled worked examples")
    co.set_defaults(run=cmd_corpus)

    cm = sub.add_parser("compare", help="engine against truth tables over many formulas")
    cm.add_argument("--max-depth", type=int, default=2)
    cm.add_argument("--atoms", type=int, default=2, help="number of atoms (p, q, r, ...)")
    cm.add_argument("--random", type=int, metavar="N", help="sample N random formulas instead")
    cm.add_argument("--seed", type=int, default=1)
    cm.add_argument("--limit", type=int, default=COMPARE_LIMIT,
                    help="refuse exhaustive spaces larger than this")
    cm.set_defaults(run=cmd_compare)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "compare":
        if args.atoms < 1:
            parser.error("--atoms must be at least 1")
        if args.max_depth < 0:
            parser.error("--max-depth must be non-negative")
        if args.random is None and args.max_depth > 4:
            parser.error("exhaustive mode supports --max-depth up to 4")
        if args.random is not None and args.random < 0:
            parser.error("--random must be non-negative")
    try:
        return args.run(args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
