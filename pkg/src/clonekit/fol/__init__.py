"""First-order logic as a predicate algebra over the term clone."""

from .axioms import AxiomReport, ConditionResult, quantifier_axiom_check
from .formula import (
    EQ,
    FALSUM,
    Atom,
    Falsum,
    Forall,
    Formula,
    Implies,
    Language,
    and_,
    apply_subst,
    eq,
    exists,
    exists_named,
    forall_named,
    format_formula,
    free_atom,
    free_vars,
    iff,
    language_of,
    neg,
    or_,
    parse_formula,
    rank,
    symbols,
    verum,
)
from .semantics import (
    DEFAULT_BUDGET,
    CounterModel,
    Interpretation,
    Relation,
    default_budget,
    envs,
    eval_formula,
    find_counter_model,
    find_counter_model_implication,
    implies_bounded,
    interpretation_from_json,
    interpretation_to_json,
    interpretations,
    is_true,
    is_valid_bounded,
    satisfying_envs,
)
from .tables import (
    TruthTable,
    all_tables,
    interpret_hom,
    tt_action,
    tt_and,
    tt_exists,
    tt_falsum,
    tt_forall,
    tt_identity,
    tt_implies,
    tt_not,
    tt_or,
    tt_shift,
    tt_verum,
)
