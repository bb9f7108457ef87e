"""Finite-rank elements of the predicate set algebra ``2^(D^N)``.

A :class:`TruthTable` of rank ``n`` is a 0/1 function of the first ``n``
entries of an assignment, stored row-major over ``D^n`` (first variable
most significant).  The same element can be stored at any rank at least
its true rank, so equality compares tables after extending both to a
common rank.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from .. import terms
from ..errors import DomainMismatch
from ..subst import Subst
from ..terms import FiniteAlgebra, FOTerm
from .formula import Formula, rank as formula_rank
from .semantics import Interpretation, _sat


@dataclass(frozen=True, eq=False)
class TruthTable:
    rank: int
    size: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if self.rank < 0 or self.size < 1:
            raise ValueError("rank must be >= 0 and domain size >= 1")
        if len(self.table) != self.size ** self.rank:
            raise ValueError(f"expected {self.size ** self.rank} entries, got {len(self.table)}")
        if any(v not in (0, 1) for v in self.table):
            raise ValueError("truth tables hold 0/1 entries only")

    @classmethod
    def _trusted(cls, rank: int, size: int, table: tuple[int, ...]) -> "TruthTable":
        # internal results are well-formed by construction; skip re-validation
        t = object.__new__(cls)
        object.__setattr__(t, "rank", rank)
        object.__setattr__(t, "size", size)
        object.__setattr__(t, "table", table)
        return t

    @classmethod
    def tabulate(cls, size: int, rank: int, fn: Callable[[tuple[int, ...]], int]) -> "TruthTable":
        return cls(rank, size, tuple(int(fn(env)) for env in itertools.product(range(size), repeat=rank)))

    @classmethod
    def constant(cls, size: int, value: int, rank: int = 0) -> "TruthTable":
        return cls(rank, size, (value,) * size**rank)

    def __call__(self, env: Sequence[int]) -> int:
        idx = 0
        for d in env[: self.rank]:
            idx = idx * self.size + d
        return self.table[idx]

    def extend(self, rank: int) -> "TruthTable":
        """The same element stored at a higher rank."""
        if rank < self.rank:
            raise ValueError("extend cannot lower the rank; use reduced()")
        if rank == self.rank:
            return self
        step = self.size ** (rank - self.rank)
        return TruthTable._trusted(rank, self.size, tuple(v for v in self.table for _ in range(step)))

    def reduced(self) -> "TruthTable":
        """The same element at the least rank that still determines it."""
        t = self
        while t.rank > 0:
            m = t.size
            rows = [t.table[i : i + m] for i in range(0, len(t.table), m)]
            if any(len(set(r)) > 1 for r in rows):
                break
            t = TruthTable._trusted(t.rank - 1, m, tuple(r[0] for r in rows))
        return t

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        if self.size != other.size:
            return False
        n = max(self.rank, other.rank)
        return self.extend(n).table == other.extend(n).table

    def __hash__(self):
        r = self.reduced()
        return hash((r.size, r.rank, r.table))

    def __le__(self, other: "TruthTable") -> bool:
        a, b = _align(self, other)
        return all(x <= y for x, y in zip(a.table, b.table))

    def __repr__(self) -> str:
        return f"TruthTable(rank={self.rank}, size={self.size}, {''.join(map(str, self.table))})"


def _align(p: TruthTable, q: TruthTable) -> tuple[TruthTable, TruthTable]:
    if p.size != q.size:
        raise DomainMismatch(f"domain sizes differ: {p.size} vs {q.size}")
    n = max(p.rank, q.rank)
    return p.extend(n), q.extend(n)


def all_tables(size: int, rank: int) -> Iterator[TruthTable]:
    for bits in itertools.product((0, 1), repeat=size**rank):
        yield TruthTable(rank, size, bits)


# -- predicate algebra operations -------------------------------------------

def tt_implies(p: TruthTable, q: TruthTable) -> TruthTable:
    a, b = _align(p, q)
    return TruthTable._trusted(a.rank, a.size, tuple(int(not x or y) for x, y in zip(a.table, b.table)))


def tt_falsum(size: int) -> TruthTable:
    return TruthTable(0, size, (0,))


def tt_forall(p: TruthTable) -> TruthTable:
    """``(∀p)(d1, d2, ...) = 1`` iff ``p(d, d1, d2, ...) = 1`` for every ``d``."""
    if p.rank == 0:
        return p
    m = p.size
    stride = m ** (p.rank - 1)
    return TruthTable._trusted(
        p.rank - 1,
        m,
        tuple(int(all(p.table[d * stride + i] for d in range(m))) for i in range(stride)),
    )


def tt_identity(size: int) -> TruthTable:
    """``≈`` as a rank-2 table: the diagonal."""
    return TruthTable.tabulate(size, 2, lambda env: env[0] == env[1])


def tt_action(
    p: TruthTable,
    sigma: Subst[FOTerm],
    algebra: Optional[FiniteAlgebra] = None,
    rank: Optional[int] = None,
) -> TruthTable:
    """Precompose ``p`` with a term substitution: ``(p·σ)(d) = p(σ1(d), σ2(d), ...)``.

    Only the first ``p.rank`` terms matter.  The result has the largest rank
    among them unless a larger ``rank`` is requested.  ``algebra`` supplies
    the function symbols; it can be omitted when every term is a variable.
    """
    algebra = FiniteAlgebra(p.size) if algebra is None else algebra
    if algebra.size != p.size:
        raise DomainMismatch(f"algebra has {algebra.size} elements, table has {p.size}")
    ts = sigma.items(p.rank)
    need = max((terms.rank(t) for t in ts), default=0)
    if rank is None:
        rank = need
    elif rank < need:
        raise ValueError(f"requested rank {rank} is below the substitution's rank {need}")
    return TruthTable.tabulate(
        p.size, rank, lambda env: p([terms._eval(t, algebra, env) for t in ts])
    )


def tt_shift(p: TruthTable) -> TruthTable:
    """``p+``: the element acted on by ``[+]``, one rank higher."""
    return TruthTable._trusted(p.rank + 1, p.size, p.table * p.size)


# derived Boolean structure, written in terms of ⇒ and F

def tt_not(p: TruthTable) -> TruthTable:
    return tt_implies(p, tt_falsum(p.size))


def tt_verum(size: int) -> TruthTable:
    return tt_not(tt_falsum(size))


def tt_or(p: TruthTable, q: TruthTable) -> TruthTable:
    return tt_implies(tt_not(p), q)


def tt_and(p: TruthTable, q: TruthTable) -> TruthTable:
    return tt_not(tt_implies(p, tt_not(q)))


def tt_exists(p: TruthTable) -> TruthTable:
    return tt_not(tt_forall(tt_not(p)))


# -- models as homomorphisms -------------------------------------------------

def interpret_hom(p: Formula, model: Interpretation) -> TruthTable:
    """The truth table of ``p`` in ``model`` at rank ``rank(p)``."""
    n = formula_rank(p)
    return TruthTable.tabulate(model.size, n, lambda env: _sat(p, model, env))
