"""Decision procedures for derivability, unifiability and admissibility of
rules in the proper axiomatic extensions of infinite-valued Lukasiewicz
logic, plus the finite basis of admissible rules for each extension."""

from .admissible import (AdmissibilityReport, admissible, admissible_oracle,
                         passive, q_generators, unifiable)
from .axioms import alpha, design_target, verify_axiomatizes
from .basis import Basis, build_basis, render
from .chains import (FiniteChain, LexChain, LexElem, ProductAlgebra,
                     coradical_member, eval_formula, parse_algebra,
                     radical_ideal)
from .consequence import (DerivabilityResult, Quasiequation, ValidityResult,
                          bounded_counterexample, derivable, derivable_q1,
                          valid_on_finite_chain, valid_on_lex_chain,
                          valid_on_product)
from .errors import (CarrierError, FormulaSyntaxError, MVRulesError,
                     ResourceGuardError, UnboundVariableError,
                     VerificationError)
from .formulas import (Formula, Iff, Imp, Join, Meet, Mult, Neg, Odot, One,
                       Oplus, Pow, Rule, Var, Zero, depth, formula_to_text,
                       normalize, parse_formula, parse_rule, rule_to_text,
                       size, substitute, variables)
from .mcnaughton import (PLFunc, Spectrum, synthesize, term_to_pl,
                         valid_chains, valid_lex_chains)
from .pairs import (ReducedPair, all_reduced_pairs, contains_chain,
                    contains_lex_chain, critical_n, div_sets, leq,
                    reduce_pair)
from .tables import (TableAlgebra, chain_table, ideals, is_bipartite,
                     product_table, quotient, subalgebra_table)

__all__ = [name for name in dir() if not name.startswith("_")]
