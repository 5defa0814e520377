#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pbpo/report.hpp"

namespace pbpo {

/// Index of an element in one particular LabelLattice.
struct Label {
  std::uint32_t index = 0;
  friend auto operator<=>(const Label&, const Label&) = default;
};

/// A finite lattice given explicitly by its element set and order relation.
///
/// The constructor takes the reflexive-transitive closure of the supplied
/// pairs but does not insist on the lattice axioms: an ill-formed poset can
/// be built so that validate_lattice() can report on it. join/meet throw
/// ErrorKind::not_a_lattice when the requested bound does not exist.
class LabelLattice {
 public:
  LabelLattice(std::string name, std::vector<std::string> elements,
               const std::vector<std::pair<std::string, std::string>>& order, std::string_view top,
               std::string_view bottom);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const std::string& element(Label l) const { return elements_.at(l.index); }

  std::optional<Label> find(std::string_view element) const;
  /// Throws ErrorKind::unknown_label.
  Label at(std::string_view element) const;
  bool contains(Label l) const noexcept { return l.index < elements_.size(); }

  Label top() const noexcept { return top_; }
  Label bottom() const noexcept { return bottom_; }

  bool leq(Label a, Label b) const;
  bool leq(std::string_view a, std::string_view b) const { return leq(at(a), at(b)); }

  Label join(Label a, Label b) const;
  Label meet(Label a, Label b) const;
  /// Least upper bound of a set; join({}) is bottom.
  Label join(std::span<const Label> s) const;
  /// Greatest lower bound of a set; meet({}) is top.
  Label meet(std::span<const Label> s) const;
  Label join(std::initializer_list<Label> s) const { return join(std::span(s.begin(), s.size())); }
  Label meet(std::initializer_list<Label> s) const { return meet(std::span(s.begin(), s.size())); }

  /// The (reflexive, transitively closed) order as pairs of element names.
  std::vector<std::pair<std::string, std::string>> order_pairs() const;
  /// Covering pairs only; this is what the interchange format writes.
  std::vector<std::pair<std::string, std::string>> covering_pairs() const;

  /// Set when the lattice was produced by bdd_lattice().
  const std::vector<std::string>& bdd_variables() const noexcept { return bdd_vars_; }
  bool is_bdd_lattice() const noexcept { return bdd_; }

  bool operator==(const LabelLattice& other) const;

 private:
  friend std::shared_ptr<const LabelLattice> make_bdd_lattice(const std::vector<std::string>& vars);

  std::optional<Label> least_upper_bound(std::span<const Label> s) const;
  std::optional<Label> greatest_lower_bound(std::span<const Label> s) const;

  std::string name_;
  std::vector<std::string> elements_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<char> leq_;  // row-major size x size
  Label top_;
  Label bottom_;
  // Binary join/meet tables; -1 where the bound does not exist.
  std::vector<std::int32_t> join_table_;
  std::vector<std::int32_t> meet_table_;
  std::vector<std::string> bdd_vars_;
  bool bdd_ = false;
};

using LatticePtr = std::shared_ptr<const LabelLattice>;

/// Element names used by bdd_lattice() for the non-variable labels.
namespace bdd_labels {
inline constexpr std::string_view zero = "0";
inline constexpr std::string_view one = "1";
inline constexpr std::string_view var_class = "VAR";    // the class of all variables
inline constexpr std::string_view bool_class = "BOOL";  // the class {0, 1}
inline constexpr std::string_view top = "TOP";
inline constexpr std::string_view bottom = "BOT";
}  // namespace bdd_labels

/// The BDD label lattice over the given variables:
/// BOT < x_i < VAR < TOP and BOT < b < BOOL < TOP, the two families
/// otherwise incomparable. Throws ErrorKind::duplicate_variable on repeated
/// or reserved names and ErrorKind::bad_lattice on an empty variable list.
LatticePtr bdd_lattice(const std::vector<std::string>& vars);

/// The BDD lattice with an empty variable family, for constant functions.
LatticePtr constant_bdd_lattice();

/// The one-point lattice; unlabeled graphs live over it.
LatticePtr unit_lattice();

/// Brute-force check of the partial-order and complete-lattice axioms.
/// Every subset is checked when size() <= full_check_limit; above that,
/// subsets up to subset_size_cap elements.
ValidationReport validate_lattice(const LabelLattice& lattice, std::size_t full_check_limit = 12,
                                  std::size_t subset_size_cap = 3);

}  // namespace pbpo
