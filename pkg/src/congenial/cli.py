"""Command-line front end: ``congenial validate|decide|conditions|relate|zoo``.

Exit codes: 0 success / WQO / RELATED, 1 validation failure, 2 input error,
10 NOT-WQO, 11 NOT-RELATED.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import algebra, conditions, decider, formats, words, zoo

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2
EXIT_NOT_WQO = 10
EXIT_NOT_RELATED = 11


def _colour(text: str, code: str) -> str:
    if os.environ.get("WQO_COLOR", "1") == "0" or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def cmd_validate(args) -> int:
    try:
        _, S = formats.load_semigroup(args.path)
    except formats.FormatError as exc:
        return _fail(str(exc), EXIT_INPUT)
    except algebra.AlgebraError as exc:
        print(str(exc))
        return EXIT_INVALID
    n_idem = len(algebra.idempotents(S))
    n_j = len(algebra.j_classes(S))
    print(f"OK: {len(S)} elements, {n_idem} idempotents, {n_j} J-classes")
    return EXIT_OK


def _load_hom(path):
    try:
        return formats.load_homomorphism(path), None
    except (formats.FormatError, algebra.AlgebraError, words.WordError) as exc:
        return None, _fail(str(exc), EXIT_INPUT)


def cmd_decide(args) -> int:
    hom, err = _load_hom(args.hom_path)
    if err is not None:
        return err
    try:
        automaton = None
        if args.stats or args.dot:
            automaton = decider.explore(hom, args.one_sided, args.state_budget)
        if automaton is not None and args.no_probe:
            verdict = decider.find_cycle(automaton)
        else:
            verdict = decider.decide_wqo(hom, args.one_sided, args.state_budget,
                                         probe=not args.no_probe)
    except decider.StateBudgetExceeded as exc:
        return _fail(str(exc), EXIT_INPUT)
    print(_colour(verdict.label, "32" if verdict.wqo else "31"))
    if not verdict.wqo:
        print(f"witness-prefix: {words.format_word(verdict.prefix)}")
        print(f"witness-period: {words.format_word(verdict.period)}")
    if not hom.onto:
        print("note: the letter map is not onto; decided over the generated subsemigroup")
    if args.stats:
        print(f"reachable-states: {automaton.n_states}")
        print(f"transitions: {automaton.n_transitions}")
    if args.dot:
        Path(args.dot).write_text(decider.export_dot(automaton), encoding="utf-8")
    return EXIT_OK if verdict.wqo else EXIT_NOT_WQO


def cmd_conditions(args) -> int:
    try:
        _, S = formats.load_semigroup(args.path)
    except (formats.FormatError, algebra.AlgebraError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    rows = []
    reports = [conditions.check_condition_1(S), conditions.check_sufficient_xyx(S),
               conditions.check_kunc_unordered(S)]
    if len(S) <= args.polstar_cap:
        reports.append(conditions.check_polstar(S, args.polstar_cap))
    else:
        rows.append(("polstar", "skipped", f"{len(S)} elements > cap {args.polstar_cap}"))
    for n in range(1, args.max_n + 1):
        try:
            reports.append(conditions.check_cyclic_condition(S, n))
        except conditions.TupleBudgetExceeded as exc:
            rows.append((f"cyclic_{n}", "skipped", str(exc)))
    for r in reports:
        ce = "" if r.holds else "(" + ", ".join(S.elements[x] for x in r.counterexample) + ")"
        rows.append((r.name, "holds" if r.holds else "fails", ce))
    order = {name: i for i, name in enumerate(
        ["condition_1", "sufficient_xyx", "kunc_unordered", "polstar"]
        + [f"cyclic_{n}" for n in range(1, args.max_n + 1)])}
    rows.sort(key=lambda row: order[row[0]])
    congenial = conditions.is_congenial(S)
    rows.append(("congenial", "true" if congenial else "false", ""))
    width = max(len(r[0]) for r in rows)
    for name, status, extra in rows:
        colour = "32" if status in ("holds", "true") else "31" if status in ("fails", "false") else "33"
        line = f"{name + ':':<{width + 1}} {_colour(status, colour)}"
        print(f"{line}  {extra}" if extra else line)
    return EXIT_OK


def cmd_relate(args) -> int:
    hom, err = _load_hom(args.hom_path)
    if err is not None:
        return err
    try:
        u = words.parse_word(args.u, hom.alphabet)
        v = words.parse_word(args.v, hom.alphabet)
    except words.WordError as exc:
        return _fail(str(exc), EXIT_INPUT)
    proof = words.leq_sigma(hom, u, v)
    if proof is None:
        print(_colour("NOT-RELATED", "31"))
        return EXIT_NOT_RELATED
    print(_colour("RELATED", "32"))
    names = hom.target.elements
    blocks = [words.format_word(b) for b in proof.blocks]
    width = max([len(a) for a in proof.letters] + [1])
    bwidth = max([len(b) for b in blocks] + [1])
    for a, b, block in zip(proof.letters, blocks, proof.blocks):
        lhs, rhs = names[hom.image(a)], names[words.sigma_eval(hom, block)]
        print(f"  {a:<{width}} <= {b:<{bwidth}}   [{lhs} <= {rhs}]")
    return EXIT_OK


def cmd_zoo(args) -> int:
    if args.action == "list":
        width = max(len(k) for k in zoo.CATALOG)
        for name, (desc, _) in zoo.CATALOG.items():
            print(f"{name:<{width}}  {desc}")
        return EXIT_OK
    if not args.name:
        return _fail("zoo emit needs an entry name", EXIT_INPUT)
    try:
        entry = zoo.get(args.name)
    except zoo.UnknownZooName as exc:
        return _fail(str(exc), EXIT_INPUT)
    sg_path, hom_path = formats.write_zoo_entry(entry, args.out)
    print(sg_path)
    print(hom_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="congenial",
                                description="Well quasi-orders from finite ordered semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a semigroup file")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    d = sub.add_parser("decide", help="decide whether <=_sigma is a wqo")
    d.add_argument("hom_path")
    d.add_argument("--stats", action="store_true", help="print reachable state and transition counts")
    d.add_argument("--dot", metavar="PATH", help="write the reachable automaton as Graphviz text")
    d.add_argument("--one-sided", action="store_true", help="use the one-sided language {aw}")
    d.add_argument("--state-budget", type=int, metavar="N", help="abort beyond N reachable states")
    d.add_argument("--no-probe", action="store_true",
                   help="skip the short-period probe; the witness is the first DFS cycle")
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("conditions", help="run the element-level condition checkers")
    c.add_argument("path")
    c.add_argument("--max-n", type=int, default=4, metavar="N", help="largest cyclic tuple length (default 4)")
    c.add_argument("--polstar-cap", type=int, default=16, metavar="N",
                   help="skip the subset scan above N elements (default 16)")
    c.set_defaults(func=cmd_conditions)

    r = sub.add_parser("relate", help="test u <=_sigma v and print the block factorization")
    r.add_argument("hom_path")
    r.add_argument("u")
    r.add_argument("v")
    r.set_defaults(func=cmd_relate)

    z = sub.add_parser("zoo", help="list or emit built-in examples")
    z.add_argument("action", choices=["list", "emit"])
    z.add_argument("name", nargs="?")
    z.add_argument("-o", "--out", default=".", help="output directory for emit (default .)")
    z.set_defaults(func=cmd_zoo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
