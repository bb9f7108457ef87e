"""First-order terms over a signature and their evaluation in finite algebras.

Terms form a clone: variables are ``Var(i)`` and substitution replaces
variables homomorphically.  A :class:`FiniteAlgebra` is a left algebra of
that clone; :func:`eval_term` is its multiplication.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from . import sexpr
from .errors import BoundExceeded, EnvTooShort, ParseError, UnknownSymbol
from .subst import Clone, Subst


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"variable index must be positive, got {self.index!r}")

    def __repr__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Op:
    symbol: str
    args: tuple["FOTerm", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __repr__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}({', '.join(map(repr, self.args))})"


FOTerm = Union[Var, Op]


class TermClone(Clone[FOTerm]):
    name = "term"

    def var(self, i: int) -> Var:
        return Var(i)

    def act(self, t: FOTerm, sigma: Subst[FOTerm]) -> FOTerm:
        return apply_subst(t, sigma)


TERMS = TermClone()


def apply_subst(t: FOTerm, sigma: Subst[FOTerm]) -> FOTerm:
    if isinstance(t, Var):
        return sigma[t.index]
    return Op(t.symbol, tuple(apply_subst(a, sigma) for a in t.args))


def free_vars(t: FOTerm) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    out: set[int] = set()
    for a in t.args:
        out |= free_vars(a)
    return frozenset(out)


def rank(t: FOTerm) -> int:
    """Largest variable index in ``t``, 0 for closed terms."""
    if isinstance(t, Var):
        return t.index
    return max((rank(a) for a in t.args), default=0)


def symbols(t: FOTerm, acc: dict[str, int] | None = None) -> dict[str, int]:
    """Function symbols occurring in ``t`` with the arity they are used at."""
    acc = {} if acc is None else acc
    if isinstance(t, Op):
        seen = acc.setdefault(t.symbol, len(t.args))
        if seen != len(t.args):
            raise ParseError(f"symbol {t.symbol!r} used with arities {seen} and {len(t.args)}")
        for a in t.args:
            symbols(a, acc)
    return acc


@dataclass(frozen=True)
class Signature:
    functions: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for name, arity in self.functions.items():
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"arity of {name!r} must be a non-negative integer")

    def check(self, t: FOTerm) -> None:
        """Raise unless every application in ``t`` is arity-correct."""
        if isinstance(t, Var):
            return
        if t.symbol not in self.functions:
            raise UnknownSymbol(f"function symbol {t.symbol!r} is not in the signature")
        if self.functions[t.symbol] != len(t.args):
            raise ParseError(
                f"{t.symbol!r} has arity {self.functions[t.symbol]}, applied to {len(t.args)} argument(s)"
            )
        for a in t.args:
            self.check(a)


@dataclass(frozen=True)
class Operation:
    arity: int
    table: tuple[int, ...]


@dataclass(frozen=True)
class FiniteAlgebra:
    """Carrier ``{0, ..., size-1}`` with one total table per operation symbol.

    Tables are flattened row-major: the first argument is the most
    significant digit in base ``size``.
    """

    size: int
    ops: Mapping[str, Operation] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"carrier size must be >= 1, got {self.size!r}")
        ops = {}
        for name, op in self.ops.items():
            if not isinstance(op, Operation):
                arity, table = op
                op = Operation(arity, tuple(table))
            if len(op.table) != self.size ** op.arity:
                raise ValueError(
                    f"table for {name!r} has {len(op.table)} entries, expected {self.size ** op.arity}"
                )
            if any(not (0 <= v < self.size) for v in op.table):
                raise ValueError(f"table for {name!r} has entries outside the carrier")
            ops[name] = op
        object.__setattr__(self, "ops", ops)

    @property
    def signature(self) -> Signature:
        return Signature({name: op.arity for name, op in self.ops.items()})

    def apply(self, symbol: str, args: Sequence[int]) -> int:
        try:
            op = self.ops[symbol]
        except KeyError:
            raise UnknownSymbol(f"the algebra has no operation {symbol!r}") from None
        if len(args) != op.arity:
            raise UnknownSymbol(f"{symbol!r} has arity {op.arity}, got {len(args)} argument(s)")
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return op.table[idx]

    def __hash__(self):
        return hash((self.size, tuple(sorted((k, v) for k, v in self.ops.items()))))


def eval_term(t: FOTerm, algebra: FiniteAlgebra, env: Sequence[int]) -> int:
    r = rank(t)
    if len(env) < r:
        raise EnvTooShort(f"term of rank {r} needs an environment of length >= {r}, got {len(env)}")
    return _eval(t, algebra, env)


def _eval(t: FOTerm, algebra: FiniteAlgebra, env: Sequence[int]) -> int:
    if isinstance(t, Var):
        return env[t.index - 1]
    return algebra.apply(t.symbol, [_eval(a, algebra, env) for a in t.args])


# -- clone closure -----------------------------------------------------------

FunctionTable = tuple[int, ...]


def _saturate(algebra: FiniteAlgebra, n: int, bound: int) -> dict[FunctionTable, tuple]:
    if n < 1:
        raise ValueError("arity must be positive")
    m = algebra.size
    if m ** n > bound:
        raise BoundExceeded(f"{m}^{n} = {m ** n} table entries exceeds the bound {bound}")
    points = list(itertools.product(range(m), repeat=n))
    trace: dict[FunctionTable, tuple] = {}
    for i in range(n):
        trace.setdefault(tuple(p[i] for p in points), ("proj", i + 1))
    frontier = set(trace)
    ops = sorted(algebra.ops.items())
    while frontier:
        members = sorted(trace)
        fresh: dict[FunctionTable, tuple] = {}
        for name, op in ops:
            for args in itertools.product(members, repeat=op.arity):
                if op.arity and not any(a in frontier for a in args):
                    continue
                f = tuple(
                    algebra.apply(name, [a[k] for a in args]) for k in range(len(points))
                )
                if f not in trace and f not in fresh:
                    fresh[f] = (name, args)
        trace.update(fresh)
        frontier = set(fresh)
    return trace


def clone_closure(algebra: FiniteAlgebra, n: int, bound: int = 16) -> list[FunctionTable]:
    """The ``n``-ary operations generated by the projections, sorted by table.

    Each operation is a table over ``{0..m-1}^n`` in the same row-major
    layout as the algebra's own tables.
    """
    return sorted(_saturate(algebra, n, bound))


def closure_derivations(algebra: FiniteAlgebra, n: int, bound: int = 16) -> dict[FunctionTable, tuple]:
    """Map each member of the closure to how it was first produced.

    Values are ``("proj", i)`` or ``(symbol, argument_tables)``.
    """
    return _saturate(algebra, n, bound)


# -- text and JSON -----------------------------------------------------------

def term_from_sexpr(x: sexpr.SExpr) -> FOTerm:
    if isinstance(x, sexpr.Symbol):
        i = sexpr.parse_index(x)
        if i is not None:
            return Var(i)
        return Op(str(x), ())
    if not x or not isinstance(x[0], sexpr.Symbol):
        raise ParseError(f"expected a term, got {sexpr.render(x)!r}", x.pos)
    name = x[0]
    if sexpr.parse_index(name) is not None:
        raise ParseError(f"variable {str(name)!r} cannot be applied", name.pos)
    return Op(str(name), tuple(term_from_sexpr(a) for a in x[1:]))


def parse_term(text: str) -> FOTerm:
    """``x3`` is a variable, ``c`` or ``(c)`` a constant, ``(f t1 ... tn)`` an application."""
    return term_from_sexpr(sexpr.read_one(text))


def format_term(t: FOTerm) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if not t.args:
        return t.symbol
    return "(" + " ".join([t.symbol] + [format_term(a) for a in t.args]) + ")"


def algebra_from_json(data: Mapping | str) -> FiniteAlgebra:
    """Read ``{"carrier": m, "ops": {"f": {"arity": n, "table": [...]}}}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", (e.lineno, e.colno)) from None
    try:
        size = data["carrier"]
        ops = {
            name: Operation(spec["arity"], tuple(spec["table"]))
            for name, spec in data.get("ops", {}).items()
        }
        return FiniteAlgebra(size, ops)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed algebra JSON: {e}") from None


def algebra_to_json(algebra: FiniteAlgebra) -> dict:
    return {
        "carrier": algebra.size,
        "ops": {
            name: {"arity": op.arity, "table": list(op.table)}
            for name, op in sorted(algebra.ops.items())
        },
    }


def table_of(fn, size: int, arity: int) -> tuple[int, ...]:
    """Tabulate a Python function in the row-major layout used everywhere here."""
    return tuple(fn(*p) for p in itertools.product(range(size), repeat=arity))


def algebra(size: int, **ops: tuple[int, Iterable[int]]) -> FiniteAlgebra:
    """Convenience constructor: ``algebra(2, f=(2, [0, 1, 1, 0]))``."""
    return FiniteAlgebra(size, {k: Operation(a, tuple(t)) for k, (a, t) in ops.items()})
