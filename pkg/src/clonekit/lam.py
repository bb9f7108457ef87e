"""The initial lambda clone: de Bruijn terms, beta/eta rewriting, named binders.

Variables are 1-based indices.  Under ``Lam`` index 1 is the bound
variable and index ``j + 1`` refers to the enclosing scope's ``x_j``;
substitution crosses a binder by lifting (see :func:`clonekit.subst.lift`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import sexpr
from .errors import ParseError
from .subst import AffineVar, Clone, Subst, bind_perm, shift_down


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"variable index must be positive, got {self.index!r}")

    def __repr__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Lam:
    body: "LTerm"

    def __repr__(self) -> str:
        return f"λ({self.body!r})"


@dataclass(frozen=True)
class App:
    fun: "LTerm"
    arg: "LTerm"

    def __repr__(self) -> str:
        return f"({self.fun!r} {self.arg!r})"


LTerm = Union[Var, Lam, App]


class LambdaClone(Clone[LTerm]):
    name = "lambda"

    def var(self, i: int) -> Var:
        return Var(i)

    def act(self, t: LTerm, sigma: Subst[LTerm]) -> LTerm:
        return apply_subst(t, sigma)


LAMBDA = LambdaClone()


def apply_subst(t: LTerm, sigma: Subst[LTerm]) -> LTerm:
    if isinstance(t, Var):
        return sigma[t.index]
    if isinstance(t, App):
        return App(apply_subst(t.fun, sigma), apply_subst(t.arg, sigma))
    return Lam(apply_subst(t.body, sigma.lift()))


def shift(t: LTerm, n: int = 1) -> LTerm:
    return LAMBDA.shift(t, n)


def free_indices(t: LTerm) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    if isinstance(t, App):
        return free_indices(t.fun) | free_indices(t.arg)
    return frozenset(i - 1 for i in free_indices(t.body) if i > 1)


def rank(t: LTerm) -> int:
    return max(free_indices(t), default=0)


def size(t: LTerm) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, App):
        return 1 + size(t.fun) + size(t.arg)
    return 1 + size(t.body)


# -- binders -----------------------------------------------------------------

def abstract(t: LTerm) -> LTerm:
    """The abstract binding operation on ``x1``."""
    return Lam(t)


def named_binder(i: int, t: LTerm) -> LTerm:
    """Bind the variable ``x_i`` in ``t``; every other free variable keeps its name."""
    return Lam(apply_subst(t, bind_perm(LAMBDA, i)))


def apply_to(fun: LTerm, *args: LTerm) -> LTerm:
    for a in args:
        fun = App(fun, a)
    return fun


# -- rewriting ---------------------------------------------------------------

def contract(body: LTerm, arg: LTerm) -> LTerm:
    """``body[arg, x1, x2, ...]``: the reduct of ``App(Lam(body), arg)``."""
    return apply_subst(body, Subst(LAMBDA, (arg,), AffineVar(-1)))


def beta_step(t: LTerm) -> Optional[LTerm]:
    """Contract the leftmost-outermost beta redex, or return None."""
    if isinstance(t, App):
        if isinstance(t.fun, Lam):
            return contract(t.fun.body, t.arg)
        r = beta_step(t.fun)
        if r is not None:
            return App(r, t.arg)
        r = beta_step(t.arg)
        return None if r is None else App(t.fun, r)
    if isinstance(t, Lam):
        r = beta_step(t.body)
        return None if r is None else Lam(r)
    return None


def _is_eta_redex(t: LTerm) -> bool:
    return (
        isinstance(t, Lam)
        and isinstance(t.body, App)
        and t.body.arg == Var(1)
        and 1 not in free_indices(t.body.fun)
    )


def eta_step(t: LTerm) -> Optional[LTerm]:
    """Contract the leftmost-outermost eta redex ``λ(m x1)`` with ``x1`` not free in ``m``."""
    if _is_eta_redex(t):
        return apply_subst(t.body.fun, shift_down(LAMBDA))
    if isinstance(t, App):
        r = eta_step(t.fun)
        if r is not None:
            return App(r, t.arg)
        r = eta_step(t.arg)
        return None if r is None else App(t.fun, r)
    if isinstance(t, Lam):
        r = eta_step(t.body)
        return None if r is None else Lam(r)
    return None


@dataclass(frozen=True)
class ReduceReport:
    result: LTerm
    steps: int
    normalized: bool


def normalize(t: LTerm, max_steps: int = 10_000, use_eta: bool = False) -> ReduceReport:
    """Normal-order reduction with a step budget.

    Eta steps are taken only once no beta redex remains.  ``normalized``
    is False when the budget ran out before a normal form was reached.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    steps = 0
    while True:
        nxt = beta_step(t)
        if nxt is None and use_eta:
            nxt = eta_step(t)
        if nxt is None:
            return ReduceReport(t, steps, True)
        if steps == max_steps:
            return ReduceReport(t, steps, False)
        t = nxt
        steps += 1


# -- Church numerals ---------------------------------------------------------

def church(n: int) -> LTerm:
    body: LTerm = Var(1)
    for _ in range(n):
        body = App(Var(2), body)
    return Lam(Lam(body))


def unchurch(t: LTerm) -> Optional[int]:
    """Inverse of :func:`church` on normal forms; None for anything else."""
    if not (isinstance(t, Lam) and isinstance(t.body, Lam)):
        return None
    body, n = t.body.body, 0
    while isinstance(body, App) and body.fun == Var(2):
        body, n = body.arg, n + 1
    return n if body == Var(1) else None


# λm.λn.λf.λx. m f (n f x)
CHURCH_PLUS: LTerm = Lam(Lam(Lam(Lam(
    apply_to(Var(4), Var(2), apply_to(Var(3), Var(2), Var(1)))
))))

# λx.(x x) applied to itself
OMEGA: LTerm = App(Lam(App(Var(1), Var(1))), Lam(App(Var(1), Var(1))))


# -- text --------------------------------------------------------------------

def format_term(t: LTerm) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Lam):
        return f"(lam {format_term(t.body)})"
    return f"(app {format_term(t.fun)} {format_term(t.arg)})"


def _is_name(tok: sexpr.SExpr) -> bool:
    return (
        isinstance(tok, sexpr.Symbol)
        and tok.isascii()
        and (tok[0].isalpha() or tok[0] == "_")
        and all(c.isalnum() or c in "_'-" for c in tok)
        and sexpr.parse_index(tok) is None
        and tok not in ("lam", "app", "fn", "free")
    )


def _max_raw_index(x: sexpr.SExpr) -> int:
    if isinstance(x, sexpr.Symbol):
        return sexpr.parse_index(x) or 0
    return max((_max_raw_index(y) for y in x), default=0)


def _free_names(x: sexpr.SExpr, bound: frozenset[str], out: list[str]) -> None:
    if isinstance(x, sexpr.Symbol):
        if _is_name(x) and x not in bound and x not in out:
            out.append(str(x))
        return
    if sexpr.head(x) == "fn" and len(x) == 3 and _is_name(x[1]):
        _free_names(x[2], bound | {str(x[1])}, out)
        return
    for y in x[1:] if sexpr.head(x) in ("lam", "app") else x:
        _free_names(y, bound, out)


class _Converter:
    """Named-to-de-Bruijn conversion driven by :func:`named_binder`.

    Each binder gets a fresh variable index that occurs nowhere else, so the
    result does not depend on the binder's spelling.
    """

    def __init__(self, free: list[str], start: int, stride: int):
        self.free = {name: i + 1 for i, name in enumerate(free)}
        self.next_fresh = start
        self.stride = stride

    def fresh(self) -> int:
        # stride exceeds any lam nesting, so shifted outer indices never reach a newer one
        self.next_fresh += self.stride
        return self.next_fresh

    def conv(self, x: sexpr.SExpr, env: dict[str, tuple[int, int]], depth: int) -> LTerm:
        # env maps a name to (index, raw-lam depth at which the index is meaningful)
        if isinstance(x, sexpr.Symbol):
            i = sexpr.parse_index(x)
            if i is not None:
                return Var(i)
            if not _is_name(x):
                raise ParseError(f"unexpected token {str(x)!r}", x.pos)
            if x in env:
                idx, at = env[x]
                return Var(idx + depth - at)
            return Var(self.free[x] + depth)
        kw = sexpr.head(x)
        if kw == "lam":
            sexpr.expect_arity(x, 1, "lam")
            return Lam(self.conv(x[1], env, depth + 1))
        if kw == "app":
            if len(x) < 3:
                raise ParseError(f"app expects at least 2 arguments in {sexpr.render(x)!r}", x.pos)
            out = self.conv(x[1], env, depth)
            for y in x[2:]:
                out = App(out, self.conv(y, env, depth))
            return out
        if kw == "fn":
            sexpr.expect_arity(x, 2, "fn")
            if not _is_name(x[1]):
                raise ParseError(f"binder name must be an identifier, got {sexpr.render(x[1])!r}", sexpr.pos_of(x[1]))
            i = self.fresh()
            body = self.conv(x[2], {**env, str(x[1]): (i, depth)}, depth)
            return named_binder(i, body)
        where = x.pos if isinstance(x, sexpr.SList) else (0, 0)
        if kw is None:
            raise ParseError(f"expected a lambda term, got {sexpr.render(x)!r}", where)
        raise ParseError(f"unknown form {kw!r}", x[0].pos)


def parse(text: str) -> LTerm:
    """Parse de Bruijn syntax with optional named sugar.

    ``x<k>``, ``(lam t)``, ``(app t u ...)``, ``(fn name t)``.  Free names
    take indices 1, 2, ... in order of first occurrence, unless a leading
    ``(free a b ...)`` form fixes the order.
    """
    forms = sexpr.read_all(text)
    declared: list[str] = []
    if forms and sexpr.head(forms[0]) == "free":
        for tok in forms[0][1:]:
            if not _is_name(tok):
                raise ParseError(f"free-variable names must be identifiers, got {sexpr.render(tok)!r}", sexpr.pos_of(tok))
            if tok in declared:
                raise ParseError(f"duplicate free name {str(tok)!r}", tok.pos)
            declared.append(str(tok))
        forms = forms[1:]
    if len(forms) != 1:
        pos = sexpr.pos_of(forms[1]) if len(forms) > 1 else (1, 1)
        raise ParseError("expected exactly one lambda term", pos)
    root = forms[0]
    names = list(declared)
    _free_names(root, frozenset(), names)
    depth = _depth(root)
    conv = _Converter(names, max(len(names), _max_raw_index(root)) + depth, depth + 1)
    return conv.conv(root, {}, 0)


def _depth(x: sexpr.SExpr) -> int:
    if isinstance(x, sexpr.Symbol):
        return 0
    return 1 + max((_depth(y) for y in x), default=0)


parse_named = parse
