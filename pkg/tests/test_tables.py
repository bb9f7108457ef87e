import pytest
from hypothesis import given, settings

from clonekit import fol
from clonekit.errors import DomainMismatch
from clonekit.fol import FALSUM, Forall, Implies, Interpretation, Relation, TruthTable
from clonekit.subst import duplicate_at, join_finite, shift_up
from clonekit.terms import TERMS, FiniteAlgebra, Op, Operation, Var

from gen import fo_terms, formulas, substs

# every generator symbol on a 2-element domain
M = Interpretation(
    FiniteAlgebra(2, {"f": Operation(2, (1, 1, 1, 0)), "g": Operation(1, (1, 0)), "c": Operation(0, (0,))}),
    {"r": Relation(1, frozenset({(1,)})), "s": Relation(2, frozenset({(0, 0), (1, 0)}))},
)

term_substs = substs(TERMS, fo_terms)


def test_table_basics():
    t = TruthTable(2, 2, (1, 0, 0, 1))
    assert t((1, 1)) == 1 and t((1, 0)) == 0
    assert t((0, 0, 1)) == 1
    with pytest.raises(ValueError):
        TruthTable(2, 2, (1, 0, 0))
    with pytest.raises(ValueError):
        TruthTable(1, 2, (1, 2))


def test_semantic_equality_across_ranks():
    one = TruthTable.constant(2, 1)
    assert one == TruthTable.constant(2, 1, rank=3)
    assert hash(one) == hash(TruthTable.constant(2, 1, rank=3))
    assert TruthTable(1, 2, (0, 1)).extend(2) == TruthTable(2, 2, (0, 0, 1, 1))
    assert TruthTable(2, 2, (0, 0, 1, 1)).reduced() == TruthTable(1, 2, (0, 1))
    assert TruthTable(2, 2, (0, 0, 1, 1)).reduced().rank == 1
    assert TruthTable(1, 2, (0, 1)) != TruthTable(1, 3, (0, 1, 1))


def test_examples():
    assert fol.tt_forall(TruthTable.constant(2, 1, rank=1)) == TruthTable.constant(2, 1)
    assert fol.tt_forall(TruthTable.constant(2, 1, rank=1)).rank == 0
    assert fol.tt_identity(2) == TruthTable(2, 2, (1, 0, 0, 1))
    q = fol.tt_forall(fol.tt_identity(2))
    assert q.rank == 1 and q.table == (0, 0)
    assert fol.tt_falsum(3) == TruthTable(0, 3, (0,))


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        fol.tt_implies(fol.tt_falsum(2), fol.tt_falsum(3))
    with pytest.raises(DomainMismatch):
        fol.tt_action(fol.tt_identity(2), shift_up(TERMS), FiniteAlgebra(3))


def test_action_examples():
    eq = fol.tt_identity(2)
    assert fol.tt_action(eq, duplicate_at(TERMS, 1)) == fol.tt_verum(2)
    swapped = fol.tt_action(TruthTable(2, 2, (0, 1, 0, 0)), join_finite(TERMS, [Var(2), Var(1)]))
    assert swapped == TruthTable(2, 2, (0, 0, 1, 0))
    neg1 = fol.tt_action(TruthTable(1, 2, (0, 1)), join_finite(TERMS, [Op("g", (Var(1),))]), M.algebra)
    assert neg1 == TruthTable(1, 2, (1, 0))


def test_shift_is_action_of_shift_up():
    for r in range(3):
        for a in fol.all_tables(2, r):
            assert fol.tt_shift(a) == fol.tt_action(a, shift_up(TERMS), rank=r + 1)


def test_hom_examples():
    assert fol.interpret_hom(FALSUM, M) == TruthTable.constant(2, 0)
    assert fol.interpret_hom(fol.eq(Var(1), Var(2)), M) == fol.tt_identity(2)


@settings(max_examples=400)
@given(formulas, formulas)
def test_hom_commutes_with_connectives(p, q):
    h = lambda x: fol.interpret_hom(x, M)
    assert h(Implies(p, q)) == fol.tt_implies(h(p), h(q))
    assert h(Forall(p)) == fol.tt_forall(h(p))


@settings(max_examples=400)
@given(formulas, term_substs)
def test_hom_commutes_with_substitution(p, s):
    h = lambda x: fol.interpret_hom(x, M)
    assert h(fol.apply_subst(p, s)) == fol.tt_action(h(p), s, M.algebra)


def test_derived_structure():
    a, b = TruthTable(1, 2, (0, 1)), TruthTable(1, 2, (1, 1))
    assert fol.tt_not(a) == TruthTable(1, 2, (1, 0))
    assert fol.tt_and(a, b) == a and fol.tt_or(a, b) == b
    assert fol.tt_exists(a) == fol.tt_verum(2)
    assert a <= b and not b <= a
