"""Syntactic unification with matching-logic equivalence certificates.

The package splits into a small kernel (sorted signatures, patterns,
substitutions), a rule-based unifier with deterministic traces, predicate
encodings of problems and substitutions, a finite-model semantics used as a
ground-truth oracle, a certificate generator for the two equivalence
directions, and an independent certificate checker.
"""

from .checking import CheckerConfig, CheckReport, check_tautology, verify
from .encoding import (
    Axiom,
    AxiomSet,
    AxiomTag,
    PredicatePattern,
    conjoin_with_structure,
    format_axioms,
    generate_axioms,
    phi_of_problem,
    phi_of_subst,
)
from .errors import MlUnifyError
from .patterns import (
    And,
    App,
    Exists,
    Not,
    Pattern,
    Signature,
    Sort,
    Symbol,
    Var,
    Variable,
    bottom,
    conjoin,
    conjuncts,
    defined,
    equal,
    free_vars,
    iff,
    implies,
    make_signature,
    member,
    or_,
    sort_of,
    subst_in_pattern,
    top,
)
from .proofs import (
    Certificate,
    ProofLine,
    cert_from_json,
    cert_to_json,
    expand_derived_rule,
    format_certificate,
    gen_stage1,
    gen_stage2,
)
from .semantics import (
    FiniteModel,
    dump_model,
    equivalence_holds,
    eval_pattern,
    implication_holds,
    load_model,
    occurs_check_countermodel,
    random_injective_model,
    satisfies,
    semantic_equivalences_hold,
)
from .substitution import Substitution, apply_subst, compose, more_general
from .syntax import (
    format_pattern,
    format_signature,
    parse_pattern,
    parse_signature,
)
from .unification import (
    Failed,
    Rule,
    Solved,
    TraceStep,
    UnificationProblem,
    format_trace,
    run,
    step,
    unify,
)

__version__ = "0.1.0"
