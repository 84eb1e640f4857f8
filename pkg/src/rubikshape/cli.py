"""Command-line interface.

Exit codes: 0 on success (including negative verdicts), 1 when an input
fails validation or a request cannot be met, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import io
import sys
from math import factorial

from . import movelang, square, theorem
from .group import build_bsgs, classify, group_order
from .movelang import MoveLangError, load_shape_file
from .perm import format_cycles
from .shape import ShapeError, generators


class CliError(Exception):
    pass


def _load(path):
    try:
        return load_shape_file(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}") from None
    except (ShapeError, MoveLangError) as exc:
        raise CliError(f"{path}: {exc}") from None


def _square_only(doc):
    standard, _ = square.standard_square()
    if doc.shape.cycles != standard.cycles:
        raise CliError("this command needs the standard 2x2 square shape")


def _append_ledger(path, tag, entries):
    if not path or not entries:
        return
    with open(path, "a", encoding="utf-8") as fh:
        for e in entries:
            fh.write(f"- [{tag}] {e}\n")


def cmd_validate(args, out):
    doc = _load(args.file)
    s = doc.shape
    out.write(f"valid: {s.describe()}\n")
    for i, c in enumerate(s.cycles):
        start = c.index(min(c))
        out.write(f"cycle M{i + 1}: ({' '.join(str(e + 1) for e in c[start:] + c[:start])})\n")
    if doc.colors is not None:
        out.write(f"colors: {doc.colors}\n")
    for name, w in doc.macros.items():
        out.write(f"macro {name}: {movelang.format_word(w)}\n")
    return 0


def cmd_apply(args, out):
    doc = _load(args.file)
    conv = square.parse_convention(args.convention)
    env = set(doc.shape.move_names()) | set(doc.macros)
    try:
        w = movelang.parse_word(args.word, env)
    except MoveLangError as exc:
        raise CliError(str(exc)) from None
    p = square.evaluate(w, doc.shape, conv, doc.macros)
    out.write(f"convention: {conv.id}\n")
    out.write(f"atoms: {movelang.atom_count(square.expand_word(w, doc.macros))}\n")
    out.write(f"permutation: {format_cycles(p, 1)}\n")
    if doc.colors is not None:
        out.write(f"before: {doc.colors}\n")
        out.write(f"after: {square.apply_perm(p, doc.colors)}\n")
    return 0


def _macros_to_verify(doc):
    table = square.published_macros()
    if not doc.macros:
        return table, square.macro_env(table)
    known = {m.name: m for m in table}
    out = []
    for name, w in doc.macros.items():
        contract = square.contract_from_name(name)
        if contract is None:
            continue
        src = known[name].source if name in known and known[name].word == w else "file"
        out.append(square.MacroDef(name, w, contract, src))
    return out, dict(doc.macros)


def cmd_verify_macros(args, out):
    doc = _load(args.file)
    _square_only(doc)
    macros, env = _macros_to_verify(doc)
    reports = [square.verify_macro(m, env=env) for m in macros]
    out.write("\n".join(r.to_text() for r in reports))
    verified = sum(1 for r in reports if r.passing())
    out.write(f"\nsummary: {len(reports)} macros, {verified} label-exact under some convention, "
              f"{len(reports) - verified} replaced by synthesized words\n")
    _append_ledger(args.ledger, "macro-audit", square.discrepancies(reports))
    return 0


def cmd_group_order(args, out):
    doc = _load(args.file)
    g = build_bsgs(doc.shape.n_edges, list(generators(doc.shape).items()))
    out.write(f"degree: {doc.shape.n_edges}\n")
    out.write(f"order: {group_order(g)}\n")
    out.write(f"classification: {classify(g)}\n")
    return 0


def cmd_completeness(args, out):
    doc = _load(args.file)
    s = doc.shape
    g = build_bsgs(s.n_edges, list(generators(s).items()))
    order = group_order(g)
    out.write(f"label-order: {order}\n")
    out.write(f"label-total: {factorial(s.n_edges)}\n")
    out.write(f"label-complete: {str(order == factorial(s.n_edges)).lower()}\n")
    if doc.colors is not None:
        bfs = square.ColorBfs(s, doc.colors, workers=args.workers)
        total = square.multinomial_count(doc.colors)
        out.write(f"color-reachable: {bfs.reachable}\n")
        out.write(f"color-total: {total}\n")
        out.write(f"color-complete: {str(bfs.reachable == total).lower()}\n")
    return 0


def cmd_bfs(args, out):
    doc = _load(args.file)
    if doc.colors is None:
        raise CliError("the shape file has no color directives")
    bfs = square.ColorBfs(doc.shape, doc.colors, workers=args.workers)
    metric = args.metric or f"quarter-turn-{2 * doc.shape.n_cycles}"
    if metric != f"quarter-turn-{2 * doc.shape.n_cycles}":
        raise CliError(f"unsupported metric {metric!r}")
    out.write(bfs.report(metric).to_text())
    return 0


def cmd_solve(args, out):
    doc = _load(args.file)
    try:
        src = square.ColorState(args.source)
        dst = square.ColorState(args.target)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    for cs in (src, dst):
        if len(cs) != doc.shape.n_edges:
            raise CliError(f"state {cs} does not have {doc.shape.n_edges} edges")
    if src.counts() != dst.counts():
        raise CliError("states have different color counts")
    try:
        w = square.solve_color(src, dst, shape=doc.shape)
    except square.Unreachable as exc:
        raise CliError(str(exc)) from None
    out.write(f"word: {movelang.format_word(w)}\n")
    out.write(f"moves: {movelang.atom_count(w)}\n")
    return 0


def cmd_theorem1_audit(args, out):
    if not (2 <= args.k <= theorem.MAX_AUDIT and 2 <= args.l <= theorem.MAX_AUDIT):
        raise CliError(f"k and l must lie in 2..{theorem.MAX_AUDIT}")
    rep = theorem.verify_base_case(args.k, args.l)
    out.write(rep.to_text())
    entries = list(rep.discrepancies)
    if rep.discrepancies and rep.validated:
        entries.append(f"k={args.k} l={args.l}: words verified under {', '.join(rep.validated)}")
    _append_ledger(args.ledger, "theorem1-audit", entries)
    return 0


def cmd_theorem1(args, out):
    doc = _load(args.file)
    out.write(theorem.constructive_completeness(doc.shape).to_text())
    return 0


def cmd_parity(args, out):
    doc = _load(args.file)
    even, cert = theorem.parity_obstruction(doc.shape)
    out.write(f"edges: {doc.shape.n_edges}\n")
    out.write(f"certificate: {theorem.format_certificate(cert)}\n")
    if even:
        out.write("all generators even: not complete\n")
        out.write("verdict: false\n")
    else:
        out.write("some generator odd: no parity obstruction\n")
        out.write("verdict: undetermined\n")
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--ledger", help="append confirmed discrepancies to this file")
    common.add_argument("--convention", default=square.DEFAULT_CONVENTION.id,
                        help="ltr-forward (default), ltr-backward, rtl-forward, rtl-backward")
    common.add_argument("--metric", help="BFS metric id (quarter-turn-2n)")
    common.add_argument("--workers", type=int, default=1, help="BFS threads")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="rubikshape", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *positional):
        sp = sub.add_parser(name, parents=[common])
        for arg, kw in positional:
            sp.add_argument(arg, **kw)
        sp.set_defaults(func=func)

    add("validate", cmd_validate, ("file", {}))
    add("apply", cmd_apply, ("file", {}), ("word", {}))
    add("verify-macros", cmd_verify_macros, ("file", {}))
    add("group-order", cmd_group_order, ("file", {}))
    add("completeness", cmd_completeness, ("file", {}))
    add("bfs", cmd_bfs, ("file", {}))
    add("solve", cmd_solve, ("file", {}), ("source", {}), ("target", {}))
    add("theorem1-audit", cmd_theorem1_audit, ("k", {"type": int}), ("l", {"type": int}))
    add("theorem1", cmd_theorem1, ("file", {}))
    add("parity", cmd_parity, ("file", {}))
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
