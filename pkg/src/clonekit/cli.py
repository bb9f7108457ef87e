"""Command-line front end.

Exit codes: 0 success, 1 semantic error, 2 parse/format error, 3 when
``fol valid`` or ``fol implies`` finds a counter-model.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import fol, lam, terms
from .errors import ParseError, SemanticError
from .fol.semantics import default_budget

SCHEMA = 1
EXIT_OK, EXIT_SEMANTIC, EXIT_PARSE, EXIT_COUNTERMODEL = 0, 1, 2, 3


class Report:
    """Accumulates a text rendering and a JSON payload for one command."""

    def __init__(self, command: str):
        self.lines: list[str] = []
        self.data: dict = {"schema": SCHEMA, "command": command}
        self.code = EXIT_OK

    def line(self, text: str) -> None:
        self.lines.append(text)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, sort_keys=True, ensure_ascii=False) + "\n"
        return "".join(f"{ln}\n" for ln in self.lines)


def _read_input(args) -> str:
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                return fh.read()
        except OSError as e:
            raise ParseError(f"cannot read {args.file}: {e.strerror}") from None
    return args.expr


def _load_json(path: str, loader: Callable):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return loader(text)


def _parse_env(values: Sequence[str] | None) -> tuple[int, ...]:
    out = []
    for v in values or ():
        for part in v.replace(",", " ").split():
            try:
                out.append(int(part))
            except ValueError:
                raise ParseError(f"environment entries must be integers, got {part!r}") from None
    return tuple(out)


def _check_env_range(env: Sequence[int], size: int) -> None:
    bad = [d for d in env if not (0 <= d < size)]
    if bad:
        raise SemanticError(f"environment entries {bad} are outside the carrier 0..{size - 1}")


# -- lam ---------------------------------------------------------------------

def cmd_lam_parse(args, rep: Report) -> None:
    t = lam.parse(_read_input(args))
    s = lam.format_term(t)
    rep.line(s)
    rep.data.update(term=s, rank=lam.rank(t), free=sorted(lam.free_indices(t)))


def cmd_lam_norm(args, rep: Report) -> None:
    t = lam.parse(_read_input(args))
    r = lam.normalize(t, args.max_steps, args.eta)
    s = lam.format_term(r.result)
    rep.line(s)
    rep.line(f"steps={r.steps} normalized={'true' if r.normalized else 'false'}")
    rep.data.update(term=s, steps=r.steps, normalized=r.normalized, eta=args.eta)


# -- term --------------------------------------------------------------------

def cmd_term_eval(args, rep: Report) -> None:
    t = terms.parse_term(_read_input(args))
    alg = _load_json(args.algebra, terms.algebra_from_json)
    env = _parse_env(args.env)
    _check_env_range(env, alg.size)
    v = terms.eval_term(t, alg, env)
    rep.line(str(v))
    rep.data.update(term=terms.format_term(t), env=list(env), value=v)


def cmd_term_rank(args, rep: Report) -> None:
    t = terms.parse_term(_read_input(args))
    r, fv = terms.rank(t), sorted(terms.free_vars(t))
    rep.line(f"rank={r}")
    rep.line("free=" + (" ".join(f"x{i}" for i in fv) if fv else "none"))
    rep.data.update(term=terms.format_term(t), rank=r, free=fv)


# -- clone -------------------------------------------------------------------

def cmd_clone_closure(args, rep: Report) -> None:
    alg = _load_json(args.algebra, terms.algebra_from_json)
    fns = terms.clone_closure(alg, args.arity, args.bound)
    rep.line(f"{len(fns)} function(s) of arity {args.arity} on a carrier of size {alg.size}")
    for f in fns:
        rep.line(" ".join(map(str, f)))
    rep.data.update(arity=args.arity, carrier=alg.size, count=len(fns), functions=[list(f) for f in fns])


# -- fol ---------------------------------------------------------------------

def cmd_fol_eval(args, rep: Report) -> None:
    p = fol.parse_formula(_read_input(args))
    model = _load_json(args.model, fol.interpretation_from_json)
    env = _parse_env(args.env)
    _check_env_range(env, model.size)
    v = fol.eval_formula(p, model, env)
    rep.line(str(v))
    rep.data.update(formula=fol.format_formula(p), env=list(env), value=v)


def cmd_fol_true(args, rep: Report) -> None:
    p = fol.parse_formula(_read_input(args))
    model = _load_json(args.model, fol.interpretation_from_json)
    v = fol.is_true(p, model)
    rep.line("true" if v else "false")
    rep.data.update(formula=fol.format_formula(p), true=v)


def _report_counter_model(rep: Report, cm, max_domain: int) -> None:
    if cm is None:
        rep.line(f"no counter-model up to domain size {max_domain}")
        rep.data.update(counter_model=None, valid_up_to=max_domain)
        return
    rep.code = EXIT_COUNTERMODEL
    model_json = fol.interpretation_to_json(cm.model)
    rep.line(f"counter-model of size {cm.model.size}")
    rep.line(json.dumps(model_json, sort_keys=True, ensure_ascii=False))
    rep.line("env=" + " ".join(map(str, cm.env)))
    rep.data.update(counter_model=model_json, env=list(cm.env), valid_up_to=cm.model.size - 1)


def cmd_fol_valid(args, rep: Report) -> None:
    p = fol.parse_formula(_read_input(args))
    cm = fol.find_counter_model(p, args.max_domain, args.budget)
    rep.data.update(formula=fol.format_formula(p), max_domain=args.max_domain)
    _report_counter_model(rep, cm, args.max_domain)


def cmd_fol_implies(args, rep: Report) -> None:
    premises = [fol.parse_formula(s) for s in args.premise or ()]
    p = fol.parse_formula(_read_input(args))
    cm = fol.find_counter_model_implication(premises, p, args.max_domain, args.budget)
    rep.data.update(
        premises=[fol.format_formula(q) for q in premises],
        formula=fol.format_formula(p),
        max_domain=args.max_domain,
    )
    _report_counter_model(rep, cm, args.max_domain)


def cmd_fol_axioms(args, rep: Report) -> None:
    report = fol.quantifier_axiom_check(args.domain_size, args.max_rank, budget=args.budget)
    for r in report.results:
        status = "holds" if r.holds else "FAILS"
        rep.line(f"({r.number}) {r.name}: {status} [{r.checked} checked]")
        if r.witness:
            rep.line(f"    witness: {r.witness}")
    rep.line(report.summary())
    rep.data.update(
        domain_size=report.domain_size,
        max_rank=report.max_rank,
        passed=report.passed,
        conditions=[
            {"number": r.number, "name": r.name, "holds": r.holds, "checked": r.checked, "witness": r.witness}
            for r in report.results
        ],
    )
    if not report.all_hold:
        rep.code = EXIT_SEMANTIC


# -- argument parsing --------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def _common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    if with_input:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("expr", nargs="?", help="inline expression")
        src.add_argument("--file", help="read the expression from a file (';' starts a comment)")


def _budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=_positive, default=None,
                   help="enumeration budget (default 10^7, or $CLONE_KERNEL_BUDGET)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clonekit", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True)

    g = top.add_parser("lam", help="lambda terms").add_subparsers(dest="command", required=True)
    p = g.add_parser("parse", help="convert to de Bruijn form")
    _common(p)
    p.set_defaults(func=cmd_lam_parse)
    p = g.add_parser("norm", help="normal-order reduction")
    _common(p)
    p.add_argument("--max-steps", type=_positive, default=10_000)
    p.add_argument("--eta", action="store_true", help="also contract eta redexes")
    p.set_defaults(func=cmd_lam_norm)

    g = top.add_parser("term", help="first-order terms").add_subparsers(dest="command", required=True)
    p = g.add_parser("eval", help="evaluate in a finite algebra")
    _common(p)
    p.add_argument("--algebra", required=True, help="algebra JSON file")
    p.add_argument("--env", nargs="*", default=(), help="carrier elements d1 d2 ...")
    p.set_defaults(func=cmd_term_eval)
    p = g.add_parser("rank", help="rank and free variables")
    _common(p)
    p.set_defaults(func=cmd_term_rank)

    g = top.add_parser("clone", help="clone closure").add_subparsers(dest="command", required=True)
    p = g.add_parser("closure", help="n-ary part of the clone generated by an algebra's operations")
    _common(p, with_input=False)
    p.add_argument("--algebra", required=True)
    p.add_argument("--arity", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, default=16, help="largest allowed m^n (default 16)")
    p.set_defaults(func=cmd_clone_closure)

    g = top.add_parser("fol", help="first-order formulas").add_subparsers(dest="command", required=True)
    p = g.add_parser("eval", help="evaluate under one assignment")
    _common(p)
    p.add_argument("--model", required=True, help="interpretation JSON file")
    p.add_argument("--env", nargs="*", default=())
    p.set_defaults(func=cmd_fol_eval)
    p = g.add_parser("true", help="is the formula true in the model")
    _common(p)
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_fol_true)
    p = g.add_parser("valid", help="bounded counter-model search")
    _common(p)
    p.add_argument("--max-domain", type=_positive, default=3)
    _budget(p)
    p.set_defaults(func=cmd_fol_valid)
    p = g.add_parser("implies", help="bounded logical consequence")
    _common(p)
    p.add_argument("--premise", action="append", help="premise formula (repeatable)")
    p.add_argument("--max-domain", type=_positive, default=3)
    _budget(p)
    p.set_defaults(func=cmd_fol_implies)
    p = g.add_parser("axioms", help="check the quantifier-algebra conditions on truth tables")
    _common(p, with_input=False)
    p.add_argument("--domain-size", type=_positive, default=2)
    p.add_argument("--max-rank", type=_nonneg, default=2)
    _budget(p)
    p.set_defaults(func=cmd_fol_axioms)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    rep = Report(f"{args.group} {args.command}")
    try:
        if getattr(args, "budget", None) is None and hasattr(args, "budget"):
            args.budget = default_budget()
        args.func(args, rep)
    except ParseError as e:
        print(f"error: {e}", file=err)
        return EXIT_PARSE
    except (SemanticError, ValueError) as e:
        print(f"error: {e}", file=err)
        return EXIT_SEMANTIC
    except RecursionError:
        print("error: term too deep", file=err)
        return EXIT_SEMANTIC
    out.write(rep.render(args.format))
    return rep.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
