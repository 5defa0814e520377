#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pbpo {

enum class ErrorKind {
  unknown_label,
  duplicate_variable,
  not_a_lattice,
  invalid_graph,
  invalid_morphism,
  domain_mismatch,
  invalid_span,
  invalid_cospan,
  not_injective,
  non_commuting_square,
  typing_mismatch,
  invalid_rule,
  r_spec_ill_formed,
  strong_match_failure,
  internal_mediator_failure,
  too_many_variables,
  invalid_bdd,
  unknown_variable,
  bad_lattice,
  parse_error,
  dangling_reference,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so
/// callers (and the CLI) can distinguish e.g. a non-commuting square from a
/// square that merely fails a universal property.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pbpo
