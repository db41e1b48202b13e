"""``flc``: batch checks, constructions and formula evaluation on text files.

Exit codes: 0 when every check passes, 1 when a check fails or the input
violates a precondition, 2 when the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .algebra import AXIOMS, CONSUMPTION, RESIDUATED, STORAGE, FLAlgebra, run_axioms
from .cover import CoverSystem, check_cover_axioms, check_modal_fl_cover, check_residuated_cover, prop_algebra
from .errors import FLCError, FormatError, ParseError, PreconditionError, StructureError
from .formats import Document, format_algebra, format_cover, format_prop_algebra, load_document
from .logic.semantics import Model, check_semantic_agreement, closed_instances, truth_set
from .logic.syntax import format_formula, free_variables, parse_formula
from .negation import check_classical, check_grishin_equivalence, default_seed
from .order import check_lattice
from .report import AxiomReport
from .representation import canonical_cover_system, verify_representation, verify_strong
from .search import MAX_SEARCH_SIZE, PredicateError, enumerate_algebras, parse_predicate

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunReport:
    command: str
    digest: str = ""
    report: AxiomReport = field(default_factory=AxiomReport)
    started: float = field(default_factory=time.perf_counter)

    def emit(self, out=None) -> None:
        out = out or sys.stdout
        print(f"# flc {self.command}", file=out)
        if self.digest:
            print(f"# input sha256={self.digest}", file=out)
        print(f"# seed={default_seed()}", file=out)
        for line in self.report.lines():
            print(line, file=out)
        failed = len(self.report.failures())
        verdict = "PASS" if self.report.ok else "FAIL"
        print(f"# result={verdict} checks={len(self.report.results)} failed={failed}", file=out)
        print(f"# wall={time.perf_counter() - self.started:.3f}s", file=out)


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load(path: str) -> tuple[Document, str]:
    p = Path(path)
    try:
        return load_document(p), _digest(p)
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror or e}") from None


def _single(doc: Document, kind: str):
    return doc.find(kind).value


# ---------------------------------------------------------------------------
# Checker stacks

def algebra_report(A: FLAlgebra) -> AxiomReport:
    """Lattice laws, residuation, then whichever modal axioms the algebra carries tables for."""
    rep = AxiomReport().extend(check_lattice(A.lattice), prefix="lattice-")
    res = run_axioms(A, RESIDUATED)
    rep.extend(res)
    if not res.ok:
        return rep
    present = {p for p in ("zero", "bang", "quest") if getattr(A, p) is not None}
    ids = [i for i in STORAGE + CONSUMPTION if AXIOMS[i][1] <= present]
    return rep.extend(run_axioms(A, ids))


def cover_report(S: CoverSystem) -> AxiomReport:
    rep = check_cover_axioms(S)
    if not rep.ok or S.dot is None or S.epsilon is None:
        return rep
    res = check_residuated_cover(S)
    rep.extend(res)
    if res.ok and S.is_modal:
        rep.extend(check_modal_fl_cover(S))
    return rep


def model_report(M: Model) -> AxiomReport:
    rep = cover_report(M.system)
    if rep.ok:
        rep.extend(check_semantic_agreement(M), prefix="semantics-")
    return rep


# ---------------------------------------------------------------------------
# Commands

def cmd_check(args) -> int:
    doc, digest = _load(args.file)
    run = RunReport(f"check {args.kind} {args.file}", digest)
    blocks = doc.of_kind(args.kind)
    if not blocks:
        raise FormatError(f"{args.file} has no {args.kind} block")
    build = {"algebra": algebra_report, "cover": cover_report, "model": model_report}[args.kind]
    for b in blocks:
        prefix = f"{b.name}." if len(blocks) > 1 else ""
        run.report.extend(build(b.value), prefix=prefix)
    run.emit()
    return EXIT_OK if run.report.ok else EXIT_FAIL


def cmd_prop(args) -> int:
    doc, digest = _load(args.file)
    S = _single(doc, "cover")
    run = RunReport(f"prop {args.file}", digest, cover_report(S))
    if S.dot is None or S.epsilon is None:
        raise PreconditionError(f"{S.name} has no fusion; Prop(S) needs a residuated cover system")
    run.emit()
    if not run.report.ok:
        return EXIT_FAIL
    P = prop_algebra(S, check=False)
    Path(args.out).write_text(format_prop_algebra(P))
    print(f"# wrote {len(P.props)}-element algebra {P.algebra.name} to {args.out}")
    return EXIT_OK


def cmd_represent(args) -> int:
    doc, digest = _load(args.file)
    A = _single(doc, "algebra")
    run = RunReport(f"represent {args.file}", digest, algebra_report(A))
    if not run.report.ok:
        run.emit()
        return EXIT_FAIL
    S = canonical_cover_system(A)
    if args.verify:
        run.report.extend(verify_representation(A), prefix="represent-")
        run.report.add("represent-strong", [] if verify_strong(A) else [(S.name,)])
    run.emit()
    if not run.report.ok:
        return EXIT_FAIL
    Path(args.out).write_text(format_cover(S))
    print(f"# wrote canonical cover system {S.name} to {args.out}")
    return EXIT_OK


def cmd_eval(args) -> int:
    doc, _ = _load(args.file)
    M = _single(doc, "model")
    S = M.system
    phi = parse_formula(args.formula, M.signature, M.universe)
    labelled = bool(free_variables(phi)) and args.closed_instances
    sentences = closed_instances(M, phi) if labelled else [phi]
    point = None
    if args.at is not None:
        if args.at not in S.names:
            raise PreconditionError(f"{args.at!r} is not a point of {S.name}")
        point = S.index(args.at)
    for psi in sentences:
        X = truth_set(M, psi)
        value = S.fmt(X) if point is None else ("true" if point in X else "false")
        print(f"{format_formula(psi)}: {value}" if labelled else value)
    return EXIT_OK


def cmd_classical(args) -> int:
    doc, _ = _load(args.file)
    covers = doc.of_kind("cover")
    if covers:
        S = covers[0].value
    else:
        A = _single(doc, "algebra")
        g = check_grishin_equivalence(A)
        print(f"classical-fl {str(g.classical).lower()}")
        print(f"grishin {str(g.grishin).lower()}")
        S = canonical_cover_system(A)
    print(f"classical {str(check_classical(S)).lower()}")
    return EXIT_OK


def cmd_search(args) -> int:
    if not 1 <= args.size <= MAX_SEARCH_SIZE:
        raise FormatError(f"--size must be between 1 and {MAX_SEARCH_SIZE}")
    expr = parse_predicate(args.predicate)
    count = 0
    for A in enumerate_algebras(args.size, expr):
        if count:
            print()
        sys.stdout.write(format_algebra(A))
        count += 1
    print(f"# count={count}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the full checker stack on a file")
    c.add_argument("kind", choices=("algebra", "cover", "model"))
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("prop", help="write the proposition algebra of a cover system")
    c.add_argument("file")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_prop)

    c = sub.add_parser("represent", help="write the canonical cover system of an algebra")
    c.add_argument("file")
    c.add_argument("--verify", action="store_true", help="also check the representation clauses")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_represent)

    c = sub.add_parser("eval", help="evaluate a formula in a model")
    c.add_argument("file")
    c.add_argument("-f", "--formula", required=True)
    c.add_argument("--at", metavar="POINT")
    c.add_argument("--closed-instances", action="store_true",
                   help="evaluate every closed instance of an open formula")
    c.set_defaults(func=cmd_eval)

    c = sub.add_parser("classical", help="decide classicality of a cover system or algebra")
    c.add_argument("file")
    c.set_defaults(func=cmd_classical)

    c = sub.add_parser("search", help="enumerate small algebras satisfying a predicate")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--predicate", default="fl")
    c.set_defaults(func=cmd_search)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ParseError, PredicateError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except StructureError as e:
        if e.report is not None:
            for line in e.report.lines():
                print(line)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except FLCError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
