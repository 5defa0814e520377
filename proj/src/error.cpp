#include "pbpo/error.hpp"

namespace pbpo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::unknown_label: return "unknown-label";
    case ErrorKind::duplicate_variable: return "duplicate-variable";
    case ErrorKind::not_a_lattice: return "not-a-lattice";
    case ErrorKind::invalid_graph: return "invalid-graph";
    case ErrorKind::invalid_morphism: return "invalid-morphism";
    case ErrorKind::domain_mismatch: return "domain-mismatch";
    case ErrorKind::invalid_span: return "invalid-span";
    case ErrorKind::invalid_cospan: return "invalid-cospan";
    case ErrorKind::not_injective: return "not-injective";
    case ErrorKind::non_commuting_square: return "non-commuting-square";
    case ErrorKind::typing_mismatch: return "typing-mismatch";
    case ErrorKind::invalid_rule: return "invalid-rule";
    case ErrorKind::r_spec_ill_formed: return "r-spec-ill-formed";
    case ErrorKind::strong_match_failure: return "strong-match-failure";
    case ErrorKind::internal_mediator_failure: return "internal-mediator-failure";
    case ErrorKind::too_many_variables: return "too-many-variables";
    case ErrorKind::invalid_bdd: return "invalid-bdd";
    case ErrorKind::unknown_variable: return "unknown-variable";
    case ErrorKind::bad_lattice: return "bad-lattice";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::dangling_reference: return "dangling-reference";
  }
  return "error";
}

}  // namespace pbpo
