"""Exhaustive check of the quantifier-algebra conditions on a predicate set algebra.

The five conditions, for all elements ``a, b`` and variables ``y, z``:

1. Boolean algebra laws for ∨, ∧, ¬, F, T
2. ∃(a ∨ b) = ∃a ∨ ∃b
3. a ≤ (∃a)+
4. x1 ≈ x1 = T
5. a ∧ (y ≈ z) ≤ a[z/y]

Elements range over every truth table of rank at most ``max_rank``;
variables range over ``x1 .. x_{max_rank+1}`` so that one variable outside
every element's support is always included.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from ..errors import BoundExceeded
from ..subst import duplicate_at, from_terms, shift_up, single_sub
from ..terms import TERMS, Var
from .semantics import default_budget
from .tables import (
    all_tables,
    tt_action,
    tt_and,
    tt_exists,
    tt_falsum,
    tt_forall,
    tt_identity,
    tt_not,
    tt_or,
    tt_verum,
)

CONDITION_NAMES = {
    1: "Boolean algebra laws",
    2: "∃ distributes over ∨",
    3: "a ≤ (∃a)+",
    4: "x1 ≈ x1 = T",
    5: "a ∧ (y ≈ z) ≤ a[z/y]",
}


@dataclass(frozen=True)
class ConditionResult:
    number: int
    name: str
    holds: bool
    checked: int
    witness: Optional[str] = None


@dataclass(frozen=True)
class AxiomReport:
    domain_size: int
    max_rank: int
    results: tuple[ConditionResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> int:
        return sum(r.holds for r in self.results)

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.results)

    def summary(self) -> str:
        return f"{self.passed}/{len(self.results)} conditions hold"


def _boolean_laws(m: int) -> list[tuple[str, int, Callable]]:
    F, T = tt_falsum(m), tt_verum(m)
    return [
        ("a ∨ b = b ∨ a", 2, lambda a, b: tt_or(a, b) == tt_or(b, a)),
        ("a ∧ b = b ∧ a", 2, lambda a, b: tt_and(a, b) == tt_and(b, a)),
        ("(a ∨ b) ∨ c = a ∨ (b ∨ c)", 3, lambda a, b, c: tt_or(tt_or(a, b), c) == tt_or(a, tt_or(b, c))),
        ("(a ∧ b) ∧ c = a ∧ (b ∧ c)", 3, lambda a, b, c: tt_and(tt_and(a, b), c) == tt_and(a, tt_and(b, c))),
        ("a ∨ (a ∧ b) = a", 2, lambda a, b: tt_or(a, tt_and(a, b)) == a),
        ("a ∧ (a ∨ b) = a", 2, lambda a, b: tt_and(a, tt_or(a, b)) == a),
        ("a ∨ (b ∧ c) = (a ∨ b) ∧ (a ∨ c)", 3,
         lambda a, b, c: tt_or(a, tt_and(b, c)) == tt_and(tt_or(a, b), tt_or(a, c))),
        ("a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)", 3,
         lambda a, b, c: tt_and(a, tt_or(b, c)) == tt_or(tt_and(a, b), tt_and(a, c))),
        ("a ∨ F = a", 1, lambda a: tt_or(a, F) == a),
        ("a ∧ T = a", 1, lambda a: tt_and(a, T) == a),
        ("a ∨ ¬a = T", 1, lambda a: tt_or(a, tt_not(a)) == T),
        ("a ∧ ¬a = F", 1, lambda a: tt_and(a, tt_not(a)) == F),
        ("F ≠ T", 0, lambda: F != T),
    ]


def _cost(condition: int, n_tables: int, n_vars: int, m: int, max_rank: int) -> int:
    width = m ** (max_rank + 1)
    return {
        1: n_tables**3 * width,
        2: n_tables**2 * width,
        3: n_tables * width,
        4: m**2,
        5: n_tables * n_vars**2 * width,
    }[condition]


def quantifier_axiom_check(
    domain_size: int,
    max_rank: int,
    conditions: Iterable[int] = (1, 2, 3, 4, 5),
    budget: Optional[int] = None,
) -> AxiomReport:
    """Run the selected conditions over all tables of rank <= ``max_rank``.

    Each failing condition carries a witness naming the offending tables.
    """
    m = domain_size
    if m < 1 or max_rank < 0:
        raise ValueError("domain_size must be >= 1 and max_rank >= 0")
    conditions = sorted(set(conditions))
    if not set(conditions) <= set(CONDITION_NAMES):
        raise ValueError(f"conditions are numbered 1-5, got {conditions}")
    budget = default_budget() if budget is None else budget
    n_tables = sum(2 ** (m**r) for r in range(max_rank + 1))
    n_vars = max_rank + 1
    cost = sum(_cost(c, n_tables, n_vars, m, max_rank) for c in conditions)
    if cost > budget:
        raise BoundExceeded(f"axiom check needs about {cost} table operations, budget is {budget}")

    tables = [t for r in range(max_rank + 1) for t in all_tables(m, r)]
    runners = {1: _cond1, 2: _cond2, 3: _cond3, 4: _cond4, 5: _cond5}
    results = tuple(runners[c](tables, m, n_vars) for c in conditions)
    return AxiomReport(m, max_rank, results)


def _result(n: int, checked: int, witness: Optional[str]) -> ConditionResult:
    return ConditionResult(n, CONDITION_NAMES[n], witness is None, checked, witness)


def _cond1(tables, m, n_vars) -> ConditionResult:
    checked = 0
    for name, arity, law in _boolean_laws(m):
        for args in itertools.product(tables, repeat=arity):
            checked += 1
            if not law(*args):
                return _result(1, checked, f"{name} fails at {args}")
    return _result(1, checked, None)


def _cond2(tables, m, n_vars) -> ConditionResult:
    checked = 0
    for a, b in itertools.product(tables, repeat=2):
        checked += 1
        if tt_exists(tt_or(a, b)) != tt_or(tt_exists(a), tt_exists(b)):
            return _result(2, checked, f"a={a!r}, b={b!r}")
    return _result(2, checked, None)


def _cond3(tables, m, n_vars) -> ConditionResult:
    up = shift_up(TERMS)
    for k, a in enumerate(tables, 1):
        if not a <= tt_action(tt_exists(a), up):
            return _result(3, k, f"a={a!r}")
    return _result(3, len(tables), None)


def _cond4(tables, m, n_vars) -> ConditionResult:
    refl = tt_action(tt_identity(m), duplicate_at(TERMS, 1))
    if refl != tt_verum(m):
        return _result(4, 1, f"x1 ≈ x1 is {refl!r}")
    closed = tt_forall(refl)
    if closed != tt_verum(m):
        return _result(4, 2, f"∀(x1 ≈ x1) is {closed!r}")
    return _result(4, 2, None)


def _cond5(tables, m, n_vars) -> ConditionResult:
    eq = tt_identity(m)
    checked = 0
    for y, z in itertools.product(range(1, n_vars + 1), repeat=2):
        eq_yz = tt_action(eq, from_terms(TERMS, (Var(y), Var(z))))
        swap = single_sub(TERMS, Var(z), y)
        for a in tables:
            checked += 1
            if not tt_and(a, eq_yz) <= tt_action(a, swap):
                return _result(5, checked, f"a={a!r}, y=x{y}, z=x{z}")
    return _result(5, checked, None)
