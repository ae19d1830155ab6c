"""Subcommand parser and handlers."""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, TextIO

from ..core import db, journal, utils
from ..core.alphabet import ChangingAlphabet, TreeWord, make_alphabet
from ..core.automaton import Automaton, apply_state_word_traced, invert, same_tables_up_to, union
from ..core.automaton_file import dumps_automaton, load_automaton, loads_automaton
from ..core.dot_export import export_dot
from ..core.duality import dual_apply, dual_apply_inverse, dual_graph_component
from ..core.errors import LabError, ParseError, VerificationError
from ..core.freeness import freeness_sweep, freeness_witness, proof_level, proof_permutations
from ..core.orbits import connect_equal_length, connect_irreducible, swap_witness
from ..core.patterns import format_pattern, free_reduce, parse_pattern
from ..core.report_export import export_report_pdf
from ..core.settings import LabSettings
from ..core.stabilization import class_table, stabilization_certificate
from ..core.free_automata import build_automaton_A, build_automaton_B
from .tables import class_grid, render_table

logger = logging.getLogger(__name__)

FAMILIES = {"woryna": build_automaton_A, "woryna-B": build_automaton_B}
DEFAULT_RULE = "affine 1 1 2"


@dataclass
class Session:
    """Settings and the report of the running command."""

    settings: LabSettings
    report: journal.RunReport
    out: Optional[TextIO] = None

    def emit(self, text: str = "") -> None:
        print(text, file=self.out or sys.stdout)


def _automaton(args: argparse.Namespace) -> Automaton:
    if args.automaton:
        return load_automaton(Path(args.automaton))
    return FAMILIES[args.family](make_alphabet(args.r, admissible=True))


def _family_alphabet(args: argparse.Namespace) -> ChangingAlphabet:
    return make_alphabet(args.r, admissible=True)


def _parse_rename(text: str) -> Dict[str, str]:
    mapping: Dict[str, str] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        old, sep, new = part.partition("=")
        if not sep or not old.strip() or not new.strip():
            raise ParseError(f"malformed rename {part!r}: expected old=new")
        mapping[utils.normalize_state_token(old.strip())] = utils.normalize_state_token(new.strip())
    return mapping


def _check(session: Session, passed: bool, message: str, expected: object, actual: object) -> None:
    session.report.mark(passed)
    if not passed:
        raise VerificationError(message, expected=expected, actual=actual)


def cmd_eval(args: argparse.Namespace, session: Session) -> None:
    automaton = _automaton(args)
    xi = utils.parse_state_word(args.xi)
    word = TreeWord(args.level, utils.parse_letters(args.word))
    image, finals = apply_state_word_traced(automaton, args.level, xi, word)
    session.report.inputs.update(level=args.level, xi=args.xi, word=args.word)
    session.report.outputs.update(image=utils.format_letters(image.letters), finals=finals)
    session.emit(utils.format_letters(image.letters))
    session.emit(f"final states: {utils.format_state_word(finals)}")


def cmd_dual(args: argparse.Namespace, session: Session) -> None:
    automaton = _automaton(args)
    xi = utils.parse_state_word(args.xi)
    word = TreeWord(args.level, utils.parse_letters(args.word))
    session.report.inputs.update(level=args.level, xi=args.xi, word=args.word, inverse=args.inverse)
    if args.inverse:
        result = dual_apply_inverse(automaton, args.level, word, xi)
        back = dual_apply(automaton, args.level, word, result)
        _check(session, back == xi, "preimage does not map back", xi, back)
    else:
        result = dual_apply(automaton, args.level, word, xi)
        traced = xi
        for level, letter in word.levels():
            traced = dual_graph_component(automaton, level).follow(letter, traced)
        _check(session, traced == result, "dual graph path disagrees with the dual map", result, traced)
    session.report.outputs["result"] = utils.format_state_word(result)
    session.emit(utils.format_state_word(result))
    session.emit("verified: yes")


def _write_automaton(args: argparse.Namespace, session: Session, built: Automaton) -> None:
    levels = args.levels or session.settings.check_levels
    text = dumps_automaton(built, levels)
    reloaded = loads_automaton(text)
    _check(
        session,
        same_tables_up_to(built, reloaded, levels),
        "emitted automaton does not reload to the same tables",
        "identical tables",
        "mismatch",
    )
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        session.emit(f"wrote {args.out}")
    else:
        session.emit(text)
    session.report.outputs.update(states=list(built.states), levels=levels, out=args.out)


def cmd_invert(args: argparse.Namespace, session: Session) -> None:
    automaton = _automaton(args)
    _write_automaton(args, session, invert(automaton))


def cmd_union(args: argparse.Namespace, session: Session) -> None:
    first = _automaton(args)
    second = load_automaton(Path(args.other)) if args.other else invert(first)
    rename = _parse_rename(args.rename) if args.rename else None
    session.report.inputs.update(other=args.other, rename=args.rename)
    _write_automaton(args, session, union(first, second, rename))


def cmd_connect(args: argparse.Namespace, session: Session) -> None:
    alphabet = _family_alphabet(args)
    budget, limit = session.settings.restriction_budget, session.settings.bfs_limit
    xi, eta = utils.parse_state_word(args.xi), utils.parse_state_word(args.eta)
    session.report.inputs.update(xi=args.xi, eta=args.eta, zeta=args.zeta, min_length=args.min_length)
    automaton = build_automaton_B(alphabet)
    if args.zeta is None:
        word = connect_irreducible(alphabet, xi, eta, budget, limit)
        image = dual_apply(automaton, word.base_level, word, xi)
        _check(session, image == eta, "connecting word misses its target", eta, image)
        session.report.outputs.update(level=word.base_level, word=utils.format_letters(word.letters))
        session.emit(f"level {word.base_level}: {utils.format_letters(word.letters)}")
    else:
        zeta = utils.parse_state_word(args.zeta)
        pair = connect_equal_length(alphabet, xi, eta, zeta, args.min_length, budget, limit)
        for word, target in ((pair.first, eta), (pair.second, zeta)):
            image = dual_apply(automaton, 1, word, xi)
            _check(session, image == target, "equal-length word misses its target", target, image)
        _check(session, len(pair.first) == len(pair.second) >= args.min_length, "lengths differ", "equal", "unequal")
        session.report.outputs.update(
            w=utils.format_letters(pair.first.letters), v=utils.format_letters(pair.second.letters)
        )
        session.emit(f"w = {utils.format_letters(pair.first.letters)}")
        session.emit(f"v = {utils.format_letters(pair.second.letters)}")
    session.emit("verified: yes")


def cmd_stabilize(args: argparse.Namespace, session: Session) -> None:
    automaton = _automaton(args)
    budget = session.settings.restriction_budget
    bound = args.search_bound or session.settings.search_bound
    session.report.inputs.update(n=args.n, window=args.window, search_bound=bound)
    found = stabilization_certificate(automaton, args.n, args.window, bound, budget)
    last = (found or 1) + args.window
    levels = list(range(1, last + 1))
    headers, rows = class_grid(class_table(automaton, levels, args.n, budget), levels)
    session.emit(render_table(headers, rows))
    if found is None:
        session.emit(f"lambda = none (no level up to {bound} passes a window of {args.window})")
    else:
        session.emit(f"lambda = {found}")
        session.emit(f"window checked: levels {found}..{found + args.window}")
    session.report.outputs["lambda"] = found
    if args.pdf:
        export_report_pdf("Stabilization certificate", session.report, headers, rows, Path(args.pdf))
        session.emit(f"wrote {args.pdf}")


def cmd_freeness(args: argparse.Namespace, session: Session) -> None:
    alphabet = _family_alphabet(args)
    depth_cap = args.depth_cap or session.settings.depth_cap
    session.report.inputs.update(xi=args.xi, max_len=args.max_len, depth_cap=depth_cap)
    automaton = build_automaton_B(alphabet)
    if args.xi is not None:
        given = utils.parse_state_word(args.xi)
        xi = free_reduce(given)
        if xi != given:
            session.emit(f"reduced to: {utils.format_state_word(xi) or '(empty)'}")
            session.report.inputs["reduced"] = utils.format_state_word(xi)
        rows = [(xi, freeness_witness(alphabet, xi, depth_cap))]
    else:
        sweep = freeness_sweep(alphabet, args.max_len, depth_cap, session.settings.workers)
        rows = [(row.xi, row.witness) for row in sweep.rows]
    table = []
    missing = 0
    max_depth = 0
    for xi, witness in rows:
        if witness is None:
            missing += 1
            table.append([utils.format_state_word(xi), "none", "-", "-"])
            continue
        image = apply_state_word_traced(automaton, 1, xi, witness.word)[0]
        _check(session, image != witness.word, "witness is fixed", "moved word", image)
        max_depth = max(max_depth, witness.depth)
        table.append(
            [
                utils.format_state_word(xi),
                utils.format_letters(witness.word.letters),
                utils.format_letters(image.letters),
                witness.depth,
            ]
        )
    headers = ["word", "witness", "image", "depth"]
    session.emit(render_table(headers, table))
    session.emit(f"words: {len(rows)}  max depth: {max_depth}  without witness: {missing}")
    session.report.outputs.update(words=len(rows), max_depth=max_depth, missing=missing)
    if args.pdf:
        export_report_pdf("Freeness witnesses", session.report, headers, table, Path(args.pdf))
        session.emit(f"wrote {args.pdf}")


def cmd_export_dot(args: argparse.Namespace, session: Session) -> None:
    automaton = _automaton(args)
    levels = list(utils.parse_letters(args.levels)) or [1]
    source = export_dot(automaton, levels, dual=args.dual)
    session.report.inputs.update(levels=levels, dual=args.dual)
    if args.out:
        Path(args.out).write_text(source, encoding="utf-8")
        session.emit(f"wrote {args.out}")
    else:
        session.emit(source.rstrip("\n"))


def cmd_swap(args: argparse.Namespace, session: Session) -> None:
    alphabet = _family_alphabet(args)
    pattern = parse_pattern(args.pattern)
    witness = swap_witness(pattern, alphabet)
    session.report.mark(True)
    session.report.inputs["pattern"] = format_pattern(pattern)
    session.report.outputs.update(xi=witness.xi, level=witness.level, letter=witness.letter, image=witness.image)
    session.emit(f"xi = {utils.format_state_word(witness.xi)}")
    session.emit(f"level {witness.level}, letter {witness.letter}")
    session.emit(f"image = {utils.format_state_word(witness.image)}")
    session.emit("verified: yes")


def cmd_permutations(args: argparse.Namespace, session: Session) -> None:
    alphabet = _family_alphabet(args)
    level = args.level or proof_level(alphabet, args.l, args.rflag)
    result = proof_permutations(alphabet, level, args.l, args.rflag)
    session.report.mark(result.ok)
    session.report.inputs.update(level=level, l=args.l, rflag=args.rflag)
    session.report.outputs.update(pi1=result.pi1, pi2=result.pi2)
    session.emit(f"level {level} (r = {len(result.pi1)})")
    session.emit(f"pi1 = {utils.format_letters(result.pi1)}")
    session.emit(f"pi2 = {utils.format_letters(result.pi2)}")
    for name, passed in result.checks.items():
        session.emit(f"{name}: {'yes' if passed else 'no'}")


def cmd_history(args: argparse.Namespace, session: Session) -> None:
    db.init_db()
    with db.get_conn() as conn:
        runs = journal.list_runs(conn, args.limit)
    rows = [
        [run["id"], run["started_at"], run["command"], {None: "-", True: "yes", False: "no"}[run["verified"]], f"{run['wall_time']:.3f}"]
        for run in runs
    ]
    session.emit(render_table(["id", "started", "command", "verified", "seconds"], rows))


def _add_automaton_options(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--automaton", metavar="FILE", help="automaton definition file")
    source.add_argument("--family", choices=sorted(FAMILIES), default="woryna-B", help="preset family")
    parser.add_argument("--r", default=DEFAULT_RULE, help='alphabet rule, e.g. "affine 1 1 2"')


def _add_family_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=["woryna-B"], default="woryna-B", help=argparse.SUPPRESS)
    parser.add_argument("--r", default=DEFAULT_RULE, help='alphabet rule, e.g. "affine 1 1 2"')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualtree", description="Automata over changing alphabets.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
    parser.add_argument("--settings", metavar="PATH", help="settings file (default: data dir settings.json)")
    parser.add_argument("--budget", type=int, help="maximum |Q|^n for restriction tables")
    parser.add_argument("--workers", type=int, help="threads for freeness sweeps")
    parser.add_argument("--journal", action="store_true", help="record this run in the journal")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="apply a state word to a tree word")
    _add_automaton_options(p)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--xi", default="")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("dual", help="apply a dual mapping to a state word")
    _add_automaton_options(p)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--word", required=True)
    p.add_argument("--xi", required=True)
    p.add_argument("--inverse", action="store_true", help="compute the preimage instead")
    p.set_defaults(func=cmd_dual)

    for name, func, text in (("invert", cmd_invert, "write the inverse automaton"), ("union", cmd_union, "write a union")):
        p = sub.add_parser(name, help=text)
        _add_automaton_options(p)
        p.add_argument(
            "--levels",
            type=int,
            help="levels to materialize; on a growing alphabet the saved automaton stops at the last one",
        )
        p.add_argument("--out", help="output file (default stdout)")
        if name == "union":
            p.add_argument("--other", metavar="FILE", help="second automaton (default: inverse of the first)")
            p.add_argument("--rename", help='renaming of the second automaton, e.g. "a=a^-1,b=b^-1"')
        p.set_defaults(func=func)

    p = sub.add_parser("connect", help="connect freely irreducible words by a dual mapping")
    _add_family_options(p)
    p.add_argument("--xi", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--zeta", help="second target; switches to equal-length words at level 1")
    p.add_argument("--min-length", type=int, default=1)
    p.set_defaults(func=cmd_connect)

    p = sub.add_parser("stabilize", help="certify n-equivalence of levels")
    _add_automaton_options(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--search-bound", type=int)
    p.add_argument("--pdf", help="also write a PDF report")
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("freeness", help="find words moved by reduced group words")
    _add_family_options(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--xi")
    group.add_argument("--max-len", type=int)
    p.add_argument("--depth-cap", type=int)
    p.add_argument("--pdf", help="also write a PDF report")
    p.set_defaults(func=cmd_freeness)

    p = sub.add_parser("export-dot", help="DOT digraphs of levels")
    _add_automaton_options(p)
    p.add_argument("--levels", default="1", help='comma-separated levels, e.g. "1,2,3"')
    p.add_argument("--dual", action="store_true", help="export dual-graph components")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("swap", help="single-letter swap of the second part of a pattern")
    _add_family_options(p)
    p.add_argument("--pattern", required=True, help='e.g. "++-" or "* * *^-1"')
    p.set_defaults(func=cmd_swap)

    p = sub.add_parser("permutations", help="permutations pi_1 and pi_2 of the freeness argument")
    _add_family_options(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--rflag", type=int, choices=[0, 1], required=True)
    p.add_argument("--level", type=int)
    p.set_defaults(func=cmd_permutations)

    p = sub.add_parser("history", help="list journal entries")
    p.add_argument("--limit", type=int, default=20)
    p.set_defaults(func=cmd_history)
    return parser


def apply_overrides(settings: LabSettings, args: argparse.Namespace) -> LabSettings:
    if args.budget is not None:
        settings.restriction_budget = args.budget
    if args.workers is not None:
        settings.workers = args.workers
    if args.journal:
        settings.journal = True
    return settings


def _log_failure(args: argparse.Namespace) -> None:
    if args.verbose:
        logger.error("command %s failed", args.command, exc_info=True)


def run(
    args: argparse.Namespace, settings: LabSettings, out: Optional[TextIO] = None, err: Optional[TextIO] = None
) -> int:
    """Run one parsed command; returns the exit code."""
    err = err or sys.stderr
    report = journal.RunReport(args.command, {"argv": sys.argv[1:]})
    session = Session(settings, report, out)
    started = time.perf_counter()
    code = 0
    try:
        args.func(args, session)
    except VerificationError as exc:
        session.report.mark(False)
        _log_failure(args)
        print(f"error: {exc}", file=err)
        print(f"  expected: {exc.expected}", file=err)
        print(f"  actual:   {exc.actual}", file=err)
        code = exc.exit_code
    except LabError as exc:
        _log_failure(args)
        print(f"error: {exc}", file=err)
        code = exc.exit_code
    report.wall_time = time.perf_counter() - started
    report.outputs.setdefault("exit_code", code)
    if settings.journal and args.command != "history":
        db.init_db()
        with db.get_conn() as conn:
            run_id = journal.record_run(conn, report)
        logger.info("recorded run %d", run_id)
    return code

