"""Formulas with de Bruijn universal quantifier, as a right algebra of the term clone."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .. import sexpr, terms
from ..errors import ParseError
from ..subst import Subst, bind_perm
from ..terms import TERMS, FOTerm, Signature, Var

EQ = "≈"


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[FOTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __repr__(self) -> str:
        if self.predicate == EQ and len(self.args) == 2:
            return f"{self.args[0]!r} ≈ {self.args[1]!r}"
        return f"{self.predicate}({', '.join(map(repr, self.args))})"


@dataclass(frozen=True)
class Falsum:
    def __repr__(self) -> str:
        return "F"


@dataclass(frozen=True)
class Implies:
    ante: "Formula"
    cons: "Formula"

    def __repr__(self) -> str:
        return f"({self.ante!r} ⇒ {self.cons!r})"


@dataclass(frozen=True)
class Forall:
    body: "Formula"

    def __repr__(self) -> str:
        return f"∀({self.body!r})"


Formula = Union[Atom, Falsum, Implies, Forall]
FALSUM = Falsum()


@dataclass(frozen=True)
class Language:
    """Function symbols plus predicate symbols; ``≈`` (arity 2) is always present."""

    signature: Signature = field(default_factory=Signature)
    predicates: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        preds = dict(self.predicates)
        if preds.setdefault(EQ, 2) != 2:
            raise ValueError("the identity predicate must have arity 2")
        clash = set(preds) & set(self.signature.functions)
        if clash:
            raise ValueError(f"names used as both function and predicate symbols: {sorted(clash)}")
        object.__setattr__(self, "predicates", preds)

    def check(self, p: Formula) -> None:
        if isinstance(p, Atom):
            if self.predicates.get(p.predicate) != len(p.args):
                raise ParseError(f"predicate {p.predicate!r} is not in the language at arity {len(p.args)}")
            for t in p.args:
                self.signature.check(t)
        elif isinstance(p, Implies):
            self.check(p.ante)
            self.check(p.cons)
        elif isinstance(p, Forall):
            self.check(p.body)


def eq(s: FOTerm, t: FOTerm) -> Atom:
    return Atom(EQ, (s, t))


def apply_subst(p: Formula, sigma: Subst[FOTerm]) -> Formula:
    if isinstance(p, Atom):
        return Atom(p.predicate, tuple(terms.apply_subst(t, sigma) for t in p.args))
    if isinstance(p, Implies):
        return Implies(apply_subst(p.ante, sigma), apply_subst(p.cons, sigma))
    if isinstance(p, Forall):
        return Forall(apply_subst(p.body, sigma.lift()))
    return p


def free_vars(p: Formula) -> frozenset[int]:
    if isinstance(p, Atom):
        out: frozenset[int] = frozenset()
        for t in p.args:
            out |= terms.free_vars(t)
        return out
    if isinstance(p, Implies):
        return free_vars(p.ante) | free_vars(p.cons)
    if isinstance(p, Forall):
        return frozenset(i - 1 for i in free_vars(p.body) if i > 1)
    return frozenset()


def rank(p: Formula) -> int:
    return max(free_vars(p), default=0)


def symbols(p: Formula) -> tuple[dict[str, int], dict[str, int]]:
    """(function symbols, predicate symbols) occurring in ``p``, with arities."""
    funcs: dict[str, int] = {}
    preds: dict[str, int] = {}
    _collect(p, funcs, preds)
    return funcs, preds


def _collect(p: Formula, funcs: dict[str, int], preds: dict[str, int]) -> None:
    if isinstance(p, Atom):
        if preds.setdefault(p.predicate, len(p.args)) != len(p.args):
            raise ParseError(f"predicate {p.predicate!r} used with two different arities")
        for t in p.args:
            terms.symbols(t, funcs)
    elif isinstance(p, Implies):
        _collect(p.ante, funcs, preds)
        _collect(p.cons, funcs, preds)
    elif isinstance(p, Forall):
        _collect(p.body, funcs, preds)


def language_of(formulas: Iterable[Formula]) -> Language:
    funcs: dict[str, int] = {}
    preds: dict[str, int] = {}
    for p in formulas:
        _collect(p, funcs, preds)
    return Language(Signature(funcs), preds)


# -- derived connectives -----------------------------------------------------

def neg(p: Formula) -> Formula:
    return Implies(p, FALSUM)


def verum() -> Formula:
    return neg(FALSUM)


def or_(p: Formula, q: Formula) -> Formula:
    return Implies(neg(p), q)


def and_(p: Formula, q: Formula) -> Formula:
    return neg(Implies(p, neg(q)))


def iff(p: Formula, q: Formula) -> Formula:
    return and_(Implies(p, q), Implies(q, p))


def exists(p: Formula) -> Formula:
    return neg(Forall(neg(p)))


def forall_named(i: int, p: Formula) -> Formula:
    """Classical ``∀x_i. p``."""
    return Forall(apply_subst(p, bind_perm(TERMS, i)))


def exists_named(i: int, p: Formula) -> Formula:
    return exists(apply_subst(p, bind_perm(TERMS, i)))


def free_atom(tag: str, arity: int) -> Atom:
    """``tag(x1, ..., xn)``: a generator of the free predicate algebra over ``tag``."""
    return Atom(tag, tuple(Var(i) for i in range(1, arity + 1)))


# -- text --------------------------------------------------------------------

_KEYWORDS = {"atom", "eq", "imp", "forall", "exists", "forall-x", "exists-x", "not", "and", "or", "iff"}


def formula_from_sexpr(x: sexpr.SExpr) -> Formula:
    if isinstance(x, sexpr.Symbol):
        if x == "false":
            return FALSUM
        if x == "true":
            return verum()
        raise ParseError(f"expected a formula, got {str(x)!r}", x.pos)
    kw = sexpr.head(x)
    if kw is None:
        raise ParseError(f"expected a formula, got {sexpr.render(x)!r}", x.pos)
    sub = formula_from_sexpr
    if kw == "atom":
        if len(x) < 2 or not isinstance(x[1], sexpr.Symbol):
            raise ParseError("atom needs a predicate name", x.pos)
        return Atom(str(x[1]), tuple(terms.term_from_sexpr(t) for t in x[2:]))
    if kw == "eq":
        sexpr.expect_arity(x, 2, "eq")
        return eq(terms.term_from_sexpr(x[1]), terms.term_from_sexpr(x[2]))
    if kw in ("imp", "and", "or", "iff"):
        sexpr.expect_arity(x, 2, kw)
        build = {"imp": Implies, "and": and_, "or": or_, "iff": iff}[kw]
        return build(sub(x[1]), sub(x[2]))
    if kw in ("forall", "exists", "not"):
        sexpr.expect_arity(x, 1, kw)
        build = {"forall": Forall, "exists": exists, "not": neg}[kw]
        return build(sub(x[1]))
    if kw in ("forall-x", "exists-x"):
        sexpr.expect_arity(x, 2, kw)
        i = sexpr.parse_index(x[1], prefix="") if isinstance(x[1], sexpr.Symbol) else None
        if i is None:
            i = sexpr.parse_index(x[1])
        if i is None:
            raise ParseError(f"{kw} expects a variable index, got {sexpr.render(x[1])!r}", sexpr.pos_of(x[1]))
        build = forall_named if kw == "forall-x" else exists_named
        return build(i, sub(x[2]))
    raise ParseError(f"unknown formula form {kw!r}", x[0].pos)


def parse_formula(text: str) -> Formula:
    return formula_from_sexpr(sexpr.read_one(text))


def format_formula(p: Formula) -> str:
    if isinstance(p, Atom):
        args = " ".join(terms.format_term(t) for t in p.args)
        if p.predicate == EQ and len(p.args) == 2:
            return f"(eq {args})"
        return f"(atom {p.predicate}{' ' + args if args else ''})"
    if isinstance(p, Implies):
        return f"(imp {format_formula(p.ante)} {format_formula(p.cons)})"
    if isinstance(p, Forall):
        return f"(forall {format_formula(p.body)})"
    return "false"
