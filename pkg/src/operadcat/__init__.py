"""Symbolic engine for symmetric operads and their categorifications.

Build free symmetric operads over a signature, evaluate terms into effective
operads, form the categorified operad with subsingleton hom-sets, decide
canonical-isomorphism queries, compare categorifications across signatures,
and translate between monoidal structures on finite categories and term
actions.
"""
from .categorify import (CanonicalArrow, CategorifiedOperad, TransformationData,
                         categorify, check_equivalence, check_transformation,
                         fork_isomorphism, from_unbiased_term, hom_exists,
                         to_unbiased_term, unbiased_categorification,
                         verify_pseudo_inverse)
from .errors import (ArityMismatchError, CoverageError, DegreeMismatchError,
                     ForkConditionError, LinearityError, OperadError,
                     OracleMismatchError, TermSyntaxError, UnassignedSymbolError)
from .fincat import (Arrow, FinCategory, MultiFunctor, NatTrans, QAlgebraOnCat,
                     SMCStructure, act_functor, act_nat, canonical_nat,
                     check_smc_axioms, compose_functors, fincat_from_json,
                     fincat_to_json, functors_agree, operadic_compose_nats,
                     projection_functor, qalgebra_to_smc, roundtrip_qalgebra,
                     roundtrip_smc, smc_from_json, smc_to_json, smc_to_qalgebra,
                     term_functor)
from .operads import (AxiomBudget, EffectiveOperad, FiniteAlgebra, NamedElement,
                      OperadMorphism, Star, TableFun, algebra_as_morphism,
                      check_morphism, check_operad_axioms, end_operad,
                      identity_morphism, morphism_to_terminal, operad_from_json,
                      operad_to_json, terminal_operad)
from .perms import (Permutation, all_permutations, block_permutation, compose,
                    direct_sum, identity, invert, parse_permutation)
from .report import CheckItem, Report, merge_reports
from .signatures import (ArityCoverage, CoverageReport, GeneratedSuboperad,
                         SectionChoice, Signature, check_surjective_up_to,
                         choose_section, generated_suboperad, generator_lookup,
                         signature_from_json, signature_to_json,
                         standard_comm_signature, unbiased_signature)
from .terms import (Leaf, Node, Symbol, Term, act_term, arity, compose_terms,
                    enumerate_terms, eval_term, format_term, free_operad, graft,
                    is_linear, leaf_labels, node_count, parse_term, random_term,
                    symbols_from_json, symbols_to_json, unit_term)

__version__ = "0.1.0"
