"""Acceptance criteria, one test each.

Every test records a one-line verdict that ``conftest.py`` prints in the
terminal summary, so ``pytest -v tests/test_acceptance.py`` ends with a
PASS/FAIL table.  Randomized checks use fixed seeds.
"""

import io
import itertools
import random
import time

import pytest

from clonekit import cli, fol, lam, terms
from clonekit.fol import FALSUM, Atom, Forall, Implies, Interpretation, Relation
from clonekit.subst import compose, identity, lift, lookup, shift_up, single_sub
from clonekit.terms import TERMS, FiniteAlgebra, Op, Operation, Var, table_of

import oracles
from gen import fo_subst, lam_subst, rand_closed_lam, rand_fo, rand_formula, rand_lam

N = 1000


@pytest.fixture
def verdict(record_property):
    def record(criterion, detail):
        record_property("criterion", str(criterion))
        record_property("detail", detail)
    return record


def _clone_axioms_hold(act, a, s1, s2, clone, rng):
    i = rng.randint(1, 12)
    return (
        act(act(a, s1), s2) == act(a, compose(s1, s2))
        and act(a, identity(clone)) == a
        and (clone is None or act(clone.var(i), s1) == lookup(s1, i))
    )


def test_1_clone_axioms(verdict):
    rng = random.Random(1)
    start = time.perf_counter()
    fails = {"FOTerm": 0, "LTerm": 0, "Formula": 0}
    for _ in range(N):
        s1, s2 = fo_subst(rng), fo_subst(rng)
        fails["FOTerm"] += not _clone_axioms_hold(terms.apply_subst, rand_fo(rng), s1, s2, TERMS, rng)
        # formulas are a right algebra: no variables of their own, so no projection axiom
        p = rand_formula(rng)
        fails["Formula"] += not (
            fol.apply_subst(fol.apply_subst(p, s1), s2) == fol.apply_subst(p, compose(s1, s2))
            and fol.apply_subst(p, identity(TERMS)) == p
        )
        l1, l2 = lam_subst(rng), lam_subst(rng)
        fails["LTerm"] += not _clone_axioms_hold(lam.apply_subst, rand_lam(rng), l1, l2, lam.LAMBDA, rng)
    elapsed = time.perf_counter() - start
    ok = not any(fails.values()) and elapsed < 10
    verdict(1, f"{N} cases per sort, failures {fails}, {elapsed:.2f}s (target < 10s)")
    assert ok


def test_2_substitution_lemma(verdict):
    rng = random.Random(2)
    bad = 0
    for _ in range(N):
        a, s1, s2 = rand_lam(rng, 5), lam_subst(rng), lam_subst(rng)
        bad += lam.apply_subst(lam.apply_subst(a, s1), s2) != lam.apply_subst(a, compose(s1, s2))
    verdict(2, f"{N} lambda cases, {bad} failures")
    assert bad == 0


def test_3_binder_vectors(verdict):
    checks = {
        "bind x1 in x1 = λx1, closed": lam.named_binder(1, lam.Var(1)) == lam.Lam(lam.Var(1))
        and not lam.free_indices(lam.named_binder(1, lam.Var(1))),
        "bind x1 in x2 = λx3": lam.named_binder(1, lam.Var(2)) == lam.Lam(lam.Var(3)),
        "rank(λx_i) = i-1 for i=2..6": all(lam.rank(lam.Lam(lam.Var(i))) == i - 1 for i in range(2, 7)),
    }
    rng = random.Random(3)
    closed = 0
    for _ in range(N):
        b = rand_lam(rng, 5, 8)
        t = b
        for _ in range(lam.rank(b)):
            t = lam.Lam(t)
        closed += not lam.free_indices(t)
    checks[f"λ^rank(b) b closed ({N} cases)"] = closed == N
    failed = [k for k, v in checks.items() if not v]
    verdict(3, f"{len(checks) - len(failed)}/{len(checks)} vector groups exact" + (f", failed {failed}" if failed else ""))
    assert not failed


def test_4_beta_eta(verdict):
    plus = lam.normalize(lam.apply_to(lam.CHURCH_PLUS, lam.church(2), lam.church(3)), max_steps=1000)
    omega = lam.normalize(lam.OMEGA, max_steps=50)
    eta = lam.eta_step(lam.Lam(lam.App(lam.Var(2), lam.Var(1))))
    rng = random.Random(4)
    agree = tried = 0
    while tried < 300:
        a = rand_closed_lam(rng, 5)
        r_a = lam.normalize(a, max_steps=2000, use_eta=True)
        if not r_a.normalized:
            continue
        tried += 1
        expanded = lam.Lam(lam.App(lam.apply_subst(a, shift_up(lam.LAMBDA)), lam.Var(1)))
        r_e = lam.normalize(expanded, max_steps=2000, use_eta=True)
        agree += r_e.normalized and r_e.result == r_a.result
    checks = {
        "2+3 = 5": plus.normalized and plus.result == lam.church(5) and plus.steps <= 1000,
        "Ω unnormalized at fuel 50": not omega.normalized,
        "eta λ(x2 x1) = x1": eta == lam.Var(1),
        f"eta expansion ({tried} closed terms)": agree == tried,
    }
    failed = [k for k, v in checks.items() if not v]
    verdict(4, f"2+3 in {plus.steps} steps; {len(checks) - len(failed)}/{len(checks)} checks" + (f", failed {failed}" if failed else ""))
    assert not failed


def test_5_fol_validity(verdict):
    start = time.perf_counter()
    r = lambda t: Atom("r", (t,))
    inst = Implies(fol.forall_named(1, r(Var(1))), fol.apply_subst(r(Var(1)), single_sub(TERMS, Op("c"), 1)))
    ui = fol.is_valid_bounded(inst, 3)
    ef = fol.exists_named(1, fol.forall_named(2, fol.eq(Var(1), Var(2))))
    at1 = fol.is_valid_bounded(ef, 1)
    cm = fol.find_counter_model(ef, 2)
    elapsed = time.perf_counter() - start
    ok = ui and at1 and cm is not None and cm.model.size == 2 and elapsed < 30
    verdict(
        5,
        f"instantiation valid<=3: {ui}; ∃∀≈ valid<=1: {at1}; counter-model size "
        f"{cm.model.size if cm else None}; {elapsed:.2f}s (target < 30s)",
    )
    assert ok


def test_6_quantifier_axioms(verdict):
    start = time.perf_counter()
    report = fol.quantifier_axiom_check(2, 2)
    elapsed = time.perf_counter() - start
    rank2 = sum(1 for _ in fol.all_tables(2, 2))
    ok = report.all_hold and rank2 == 16 and elapsed < 5
    verdict(6, f"{report.summary()} over {rank2} rank-2 tables, {elapsed:.2f}s (target < 5s)")
    assert ok


HOM_MODEL = Interpretation(
    FiniteAlgebra(2, {"g": Operation(1, (1, 0)), "c": Operation(0, (1,))}),
    {"r": Relation(1, frozenset({(0,)})), "s": Relation(2, frozenset({(0, 1), (1, 1)}))},
)


def _formulas_up_to_depth(depth):
    atoms = [
        FALSUM,
        Atom("r", (Var(1),)),
        fol.eq(Var(1), Var(2)),
        Atom("s", (Op("g", (Var(2),)), Op("c"))),
    ]
    levels = [atoms]
    for _ in range(depth - 1):
        prev = [p for lvl in levels for p in lvl]
        new = [Forall(p) for p in levels[-1]]
        new += [Implies(p, q) for p, q in itertools.product(prev, prev) if p in levels[-1] or q in levels[-1]]
        levels.append(new)
    return [p for lvl in levels for p in lvl]


def test_7_homomorphism(verdict):
    forms = _formulas_up_to_depth(3)
    subs = [shift_up(TERMS), single_sub(TERMS, Op("g", (Var(3),)), 1), single_sub(TERMS, Op("c"), 2)]
    h = lambda p: fol.interpret_hom(p, HOM_MODEL)
    bad = int(h(FALSUM) != fol.tt_falsum(2))
    for p in forms:
        hp = h(p)
        bad += h(Forall(p)) != fol.tt_forall(hp)
        bad += h(Implies(p, p)) != fol.tt_implies(hp, hp)
        bad += any(h(fol.apply_subst(p, s)) != fol.tt_action(hp, s, HOM_MODEL.algebra) for s in subs)
    for p, q in zip(forms, reversed(forms)):
        bad += h(Implies(p, q)) != fol.tt_implies(h(p), h(q))
    ok = bad == 0 and len(forms) >= 500
    verdict(7, f"{len(forms)} formulas of depth <= 3, {bad} failures")
    assert ok


def test_8_post_closures(verdict):
    nand_fn = lambda a, b: 1 - (a & b)
    and_fn = lambda a, b: a & b
    nand = terms.clone_closure(FiniteAlgebra(2, {"nand": Operation(2, table_of(nand_fn, 2, 2))}), 2)
    conj = terms.clone_closure(FiniteAlgebra(2, {"and": Operation(2, table_of(and_fn, 2, 2))}), 2)
    nand_oracle = oracles.brute_force_closure(2, {"nand": (2, nand_fn)}, 2)
    and_oracle = oracles.brute_force_closure(2, {"and": (2, and_fn)}, 2)
    agree = set(nand) == nand_oracle and set(conj) == and_oracle
    verdict(
        8,
        f"NAND: {len(nand)} (oracle {len(nand_oracle)}, required 16); "
        f"AND: {len(conj)} (oracle {len(and_oracle)}, required 4)",
    )
    assert agree
    assert len(nand) == 16
    assert len(conj) == 4


def test_9_substitution_engine(verdict):
    rng = random.Random(9)
    J = range(1, 21)
    bad = 0
    for _ in range(N):
        a, b, c = fo_subst(rng), fo_subst(rng), fo_subst(rng)
        bad += compose(compose(a, b), c) != compose(a, compose(b, c))
        bad += [lookup(compose(compose(a, b), c), j) for j in J] != [lookup(compose(a, compose(b, c)), j) for j in J]
        bad += [lookup(compose(a, identity(TERMS)), j) for j in J] != [lookup(a, j) for j in J]
        bad += [lookup(compose(identity(TERMS), a), j) for j in J] != [lookup(a, j) for j in J]
        bad += [lookup(lift(compose(a, b)), j) for j in J] != [lookup(compose(lift(a), lift(b)), j) for j in J]
    verdict(9, f"{N} random triples, positions 1..20, {bad} failures")
    assert bad == 0


def _corpus():
    rng = random.Random(10)
    out = []
    for _ in range(34):
        out.append(("lam", lam.format_term(rand_lam(rng, 4))))
        out.append(("term", terms.format_term(rand_fo(rng, 3))))
        out.append(("fol", fol.format_formula(rand_formula(rng, 3))))
    named = ["(fn y y)", "(fn y (fn z y))", "(free a b) (app b (fn c (app a c)))", "(app x1 x2 x3)"]
    out[: len(named)] = [("lam", s) for s in named]
    sugar = ["true", "(not (eq x1 x2))", "(and (atom r x1) (or false true))", "(forall-x 2 (exists-x x1 (atom s x1 x2)))"]
    out[len(named) : len(named) + len(sugar)] = [("fol", s) for s in sugar]
    return out[:100]


PARSE = {
    "lam": (lam.parse, lam.format_term),
    "term": (terms.parse_term, terms.format_term),
    "fol": (fol.parse_formula, fol.format_formula),
}
CLI_CMD = {"lam": ["lam", "norm"], "term": ["term", "rank"], "fol": ["fol", "valid", "--max-domain", "2"]}


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_10_cli_roundtrip_and_determinism(verdict):
    corpus = _corpus()
    roundtrip_bad = 0
    for kind, text in corpus:
        parse, show = PARSE[kind]
        value = parse(text)
        roundtrip_bad += parse(show(value)) != value
    nondeterministic = 0
    for kind, text in corpus:
        for fmt in ("text", "json"):
            argv = CLI_CMD[kind] + ["--format", fmt, "--", text]
            nondeterministic += _cli(argv) != _cli(argv)
    ok = len(corpus) == 100 and roundtrip_bad == 0 and nondeterministic == 0
    verdict(10, f"{len(corpus)} corpus entries, {roundtrip_bad} round-trip failures, {nondeterministic} differing reruns")
    assert ok
