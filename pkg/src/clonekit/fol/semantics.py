"""Finite interpretations, satisfaction, and bounded counter-model search.

Environments are finite tuples; a formula of rank ``n`` only ever reads the
first ``n`` entries, so the infinite tail of an assignment is dropped.
Validity is undecidable in general: everything here that quantifies over
interpretations is bounded by domain size and says so in its name.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .. import terms
from ..errors import BoundExceeded, EnvTooShort, ParseError, UnknownSymbol
from ..terms import FiniteAlgebra, Operation
from .formula import EQ, Atom, Forall, Formula, Implies, language_of, rank

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    """The enumeration budget, overridable through ``CLONE_KERNEL_BUDGET``."""
    raw = os.environ.get("CLONE_KERNEL_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"CLONE_KERNEL_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParseError("CLONE_KERNEL_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class Relation:
    arity: int
    tuples: frozenset[tuple[int, ...]]


@dataclass(frozen=True)
class Interpretation:
    """A non-empty domain ``{0..m-1}``, operations, and relations.

    ``≈`` is always the diagonal and may not be supplied.
    """

    algebra: FiniteAlgebra
    relations: Mapping[str, Relation] = field(default_factory=dict)

    def __post_init__(self):
        if EQ in self.relations:
            raise ValueError("the identity relation is fixed to the diagonal and cannot be overridden")
        m = self.algebra.size
        rels = {}
        for name, rel in self.relations.items():
            if not isinstance(rel, Relation):
                arity, tuples = rel
                rel = Relation(arity, frozenset(tuple(t) for t in tuples))
            for tup in rel.tuples:
                if len(tup) != rel.arity or any(not (0 <= d < m) for d in tup):
                    raise ValueError(f"tuple {tup} is not in the domain for {name!r}/{rel.arity}")
            if name in self.algebra.ops:
                raise ValueError(f"{name!r} is both an operation and a relation")
            rels[name] = rel
        object.__setattr__(self, "relations", rels)

    @property
    def size(self) -> int:
        return self.algebra.size

    def holds(self, predicate: str, args: Sequence[int]) -> bool:
        if predicate == EQ:
            if len(args) != 2:
                raise UnknownSymbol("the identity predicate has arity 2")
            return args[0] == args[1]
        try:
            rel = self.relations[predicate]
        except KeyError:
            raise UnknownSymbol(f"the interpretation has no relation {predicate!r}") from None
        if rel.arity != len(args):
            raise UnknownSymbol(f"{predicate!r} has arity {rel.arity}, got {len(args)} argument(s)")
        return tuple(args) in rel.tuples

    def __hash__(self):
        return hash((self.algebra, tuple(sorted(self.relations.items()))))


def eval_formula(p: Formula, model: Interpretation, env: Sequence[int]) -> int:
    r = rank(p)
    if len(env) < r:
        raise EnvTooShort(f"formula of rank {r} needs an environment of length >= {r}, got {len(env)}")
    return int(_sat(p, model, tuple(env)))


def _sat(p: Formula, model: Interpretation, env: tuple[int, ...]) -> bool:
    if isinstance(p, Atom):
        return model.holds(p.predicate, [terms._eval(t, model.algebra, env) for t in p.args])
    if isinstance(p, Implies):
        return not _sat(p.ante, model, env) or _sat(p.cons, model, env)
    if isinstance(p, Forall):
        return all(_sat(p.body, model, (d,) + env) for d in range(model.size))
    return False


def envs(size: int, n: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(size), repeat=n)


def is_true(p: Formula, model: Interpretation) -> bool:
    """Every assignment satisfies ``p``."""
    return all(_sat(p, model, env) for env in envs(model.size, rank(p)))


def satisfying_envs(p: Formula, model: Interpretation, n: int | None = None) -> list[tuple[int, ...]]:
    n = rank(p) if n is None else n
    return [env for env in envs(model.size, n) if _sat(p, model, env)]


# -- bounded search ----------------------------------------------------------

@dataclass(frozen=True)
class CounterModel:
    model: Interpretation
    env: tuple[int, ...]


def _interpretation_count(funcs: Mapping[str, int], preds: Mapping[str, int], m: int) -> int:
    count = 1
    for k in funcs.values():
        count *= m ** (m**k)
    for k in preds.values():
        count *= 2 ** (m**k)
    return count


def interpretations(funcs: Mapping[str, int], preds: Mapping[str, int], m: int) -> Iterator[Interpretation]:
    """Every interpretation of the given symbols on an ``m``-element domain, in a fixed order."""
    fnames = sorted(funcs)
    pnames = sorted(p for p in preds if p != EQ)
    f_choices = [list(itertools.product(range(m), repeat=m ** funcs[f])) for f in fnames]
    points = {k: list(envs(m, k)) for k in set(preds[p] for p in pnames)}
    p_choices = [list(itertools.product((0, 1), repeat=m ** preds[p])) for p in pnames]
    for tables in itertools.product(*f_choices):
        algebra = FiniteAlgebra(m, {f: Operation(funcs[f], t) for f, t in zip(fnames, tables)})
        for bits in itertools.product(*p_choices):
            rels = {}
            for p, b in zip(pnames, bits):
                pts = points[preds[p]]
                rels[p] = Relation(preds[p], frozenset(pt for pt, on in zip(pts, b) if on))
            yield Interpretation(algebra, rels)


def _search_cost(funcs, preds, max_domain: int, n: int) -> int:
    preds = {p: k for p, k in preds.items() if p != EQ}
    return sum(_interpretation_count(funcs, preds, m) * m**n for m in range(1, max_domain + 1))


def find_counter_model_implication(
    premises: Sequence[Formula],
    conclusion: Formula,
    max_domain: int,
    budget: int | None = None,
) -> CounterModel | None:
    """First (model, assignment) satisfying every premise but not the conclusion.

    Domains are tried in increasing size; within a size the order is the
    one produced by :func:`interpretations`.
    """
    if max_domain < 1:
        raise ValueError("max_domain must be positive")
    budget = default_budget() if budget is None else budget
    lang = language_of([*premises, conclusion])
    funcs = dict(lang.signature.functions)
    preds = dict(lang.predicates)
    n = max(rank(q) for q in [*premises, conclusion])
    cost = _search_cost(funcs, preds, max_domain, n)
    if cost > budget:
        raise BoundExceeded(f"bounded search needs {cost} evaluations, budget is {budget}")
    for m in range(1, max_domain + 1):
        for model in interpretations(funcs, preds, m):
            for env in envs(m, n):
                if all(_sat(q, model, env) for q in premises) and not _sat(conclusion, model, env):
                    return CounterModel(model, env)
    return None


def find_counter_model(p: Formula, max_domain: int, budget: int | None = None) -> CounterModel | None:
    return find_counter_model_implication((), p, max_domain, budget)


def is_valid_bounded(p: Formula, max_domain: int, budget: int | None = None) -> bool:
    """True when no interpretation of size <= ``max_domain`` falsifies ``p``.

    This refutes; it does not prove validity.
    """
    return find_counter_model(p, max_domain, budget) is None


def implies_bounded(
    premises: Iterable[Formula], p: Formula, max_domain: int, budget: int | None = None
) -> bool:
    return find_counter_model_implication(tuple(premises), p, max_domain, budget) is None


# -- JSON --------------------------------------------------------------------

def interpretation_from_json(data: Mapping | str) -> Interpretation:
    """The algebra JSON plus ``{"relations": {"r": {"arity": n, "tuples": [[...]]}}}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", (e.lineno, e.colno)) from None
    algebra = terms.algebra_from_json(data)
    try:
        rels = {
            name: Relation(spec["arity"], frozenset(tuple(t) for t in spec["tuples"]))
            for name, spec in data.get("relations", {}).items()
        }
        return Interpretation(algebra, rels)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed interpretation JSON: {e}") from None


def interpretation_to_json(model: Interpretation) -> dict:
    out = terms.algebra_to_json(model.algebra)
    out["relations"] = {
        name: {"arity": rel.arity, "tuples": [list(t) for t in sorted(rel.tuples)]}
        for name, rel in sorted(model.relations.items())
    }
    return out
