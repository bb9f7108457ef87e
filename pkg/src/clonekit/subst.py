"""Finite encodings of infinite substitution sequences ``[a1, a2, ...]``.

A :class:`Subst` is a finite prefix followed by a tail rule.  The tail is
either ``AffineVar(d)`` (position ``j`` past the prefix holds ``x_{j+d}``)
or ``RepeatLast`` (position ``j`` past the prefix repeats the last prefix
entry).  This family is closed under composition and lifting, which is
all any of the front-ends need.

Each term type plugs in through a :class:`Clone`, which knows how to build
variables and how to act on a term with a substitution.  Substitutions
remember their clone so lookup can manufacture tail variables.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Generic, Iterable, TypeVar, Union

T = TypeVar("T")


class Clone(ABC, Generic[T]):
    """A term type together with its variables and substitution action."""

    name = "clone"

    @abstractmethod
    def var(self, i: int) -> T:
        ...

    @abstractmethod
    def act(self, t: T, sigma: "Subst[T]") -> T:
        ...

    def shift(self, t: T, n: int = 1) -> T:
        """``t`` acted on by ``[+]`` ``n`` times, i.e. every variable index raised by ``n``."""
        if n == 0:
            return t
        return self.act(t, Subst(self, (), AffineVar(n)))

    def __repr__(self) -> str:
        return f"<{self.name} clone>"


@dataclass(frozen=True)
class AffineVar:
    offset: int


@dataclass(frozen=True)
class RepeatLast:
    pass


REPEAT_LAST = RepeatLast()
Tail = Union[AffineVar, RepeatLast]


@dataclass(frozen=True)
class Subst(Generic[T]):
    """An eventually-affine or eventually-constant sequence of terms.

    The representation is normalized on construction (prefix entries that
    the tail rule would reproduce are trimmed), so ``==`` is pointwise
    equality.
    """

    clone: Clone[T]
    prefix: tuple[T, ...]
    tail: Tail

    def __post_init__(self):
        prefix = tuple(self.prefix)
        tail = self.tail
        if isinstance(tail, RepeatLast):
            if not prefix:
                raise ValueError("RepeatLast needs a non-empty prefix")
            while len(prefix) >= 2 and prefix[-1] == prefix[-2]:
                prefix = prefix[:-1]
        elif isinstance(tail, AffineVar):
            if tail.offset < -len(prefix):
                raise ValueError(
                    f"AffineVar({tail.offset}) after a prefix of length {len(prefix)} "
                    "would reach non-positive variable indices"
                )
            d = tail.offset
            while prefix and len(prefix) + d >= 1 and prefix[-1] == self.clone.var(len(prefix) + d):
                prefix = prefix[:-1]
        else:
            raise TypeError(f"not a tail rule: {tail!r}")
        object.__setattr__(self, "prefix", prefix)

    def __getitem__(self, j: int) -> T:
        return lookup(self, j)

    def items(self, n: int) -> list[T]:
        """The first ``n`` entries."""
        return [lookup(self, j) for j in range(1, n + 1)]

    def compose(self, other: "Subst[T]") -> "Subst[T]":
        return compose(self, other)

    def lift(self) -> "Subst[T]":
        return lift(self)

    def __repr__(self) -> str:
        if isinstance(self.tail, RepeatLast):
            tail = "..."
        else:
            tail = f"x(j{self.tail.offset:+d})..." if self.tail.offset else "x(j)..."
        body = ", ".join(map(repr, self.prefix))
        return f"Subst[{body}{', ' if body else ''}{tail}]"


def lookup(sigma: Subst[T], j: int) -> T:
    if j < 1:
        raise ValueError(f"positions start at 1, got {j}")
    k = len(sigma.prefix)
    if j <= k:
        return sigma.prefix[j - 1]
    if isinstance(sigma.tail, RepeatLast):
        return sigma.prefix[-1]
    return sigma.clone.var(j + sigma.tail.offset)


def identity(clone: Clone[T]) -> Subst[T]:
    return Subst(clone, (), AffineVar(0))


def shift_up(clone: Clone[T]) -> Subst[T]:
    """``[+] = [x2, x3, ...]``"""
    return Subst(clone, (), AffineVar(1))


def shift_down(clone: Clone[T]) -> Subst[T]:
    """``[-] = [x1, x1, x2, ...]``"""
    return Subst(clone, (clone.var(1),), AffineVar(-1))


def insert_at(clone: Clone[T], i: int) -> Subst[T]:
    """``[+i] = [x1, ..., x_{i-1}, x_{i+1}, ...]``"""
    _positive(i)
    return Subst(clone, tuple(clone.var(j) for j in range(1, i)), AffineVar(1))


def duplicate_at(clone: Clone[T], i: int) -> Subst[T]:
    """``[-i] = [x1, ..., x_i, x_i, x_{i+1}, ...]``"""
    _positive(i)
    prefix = tuple(clone.var(j) for j in range(1, i + 1)) + (clone.var(i),)
    return Subst(clone, prefix, AffineVar(-1))


def join_finite(clone: Clone[T], terms: Iterable[T]) -> Subst[T]:
    """``[[a1, ..., an]] = [a1, ..., an, an, an, ...]``"""
    terms = tuple(terms)
    if not terms:
        raise ValueError("join_finite needs at least one term")
    return Subst(clone, terms, REPEAT_LAST)


def single_sub(clone: Clone[T], b: T, i: int) -> Subst[T]:
    """``[b/x_i] = [x1, ..., x_{i-1}, b, x_{i+1}, ...]``"""
    _positive(i)
    return Subst(clone, tuple(clone.var(j) for j in range(1, i)) + (b,), AffineVar(0))


def from_terms(clone: Clone[T], terms: Iterable[T]) -> Subst[T]:
    """``[a1, ..., an, x_{n+1}, x_{n+2}, ...]``"""
    return Subst(clone, tuple(terms), AffineVar(0))


def bind_perm(clone: Clone[T], i: int) -> Subst[T]:
    """``[x2, x3, ..., x_i, x1, x_{i+2}, ...]``, the permutation behind the named binders.

    For ``i == 1`` this is ``[x1, x3, x4, ...]``.
    """
    _positive(i)
    prefix = tuple(clone.var(j) for j in range(2, i + 1)) + (clone.var(1),)
    return Subst(clone, prefix, AffineVar(1))


def compose(sigma: Subst[T], tau: Subst[T]) -> Subst[T]:
    """The substitution ``j -> sigma[j] acted on by tau``."""
    if sigma.clone is not tau.clone:
        raise ValueError(f"cannot compose substitutions over {sigma.clone!r} and {tau.clone!r}")
    clone = sigma.clone
    k = len(sigma.prefix)
    if isinstance(sigma.tail, RepeatLast):
        return Subst(clone, tuple(clone.act(s, tau) for s in sigma.prefix), REPEAT_LAST)
    d = sigma.tail.offset
    if isinstance(tau.tail, AffineVar):
        n = max(k, len(tau.prefix) - d)
        tail: Tail = AffineVar(d + tau.tail.offset)
    else:
        # past n both sigma[j] = x_{j+d} and tau[j+d] sit in their tails
        n = max(k + 1, len(tau.prefix) - d)
        tail = REPEAT_LAST
    prefix = tuple(clone.act(lookup(sigma, j), tau) for j in range(1, n + 1))
    return Subst(clone, prefix, tail)


def lift(sigma: Subst[T]) -> Subst[T]:
    """``[x1, a1+, a2+, ...]``: the substitution seen from under one binder."""
    clone = sigma.clone
    prefix = (clone.var(1),) + tuple(clone.shift(s) for s in sigma.prefix)
    return Subst(clone, prefix, sigma.tail)


def _positive(i: Any) -> None:
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"variable index must be a positive integer, got {i!r}")
