#include "pbpo/lattice.hpp"

#include <algorithm>
#include <set>

#include "pbpo/error.hpp"

namespace pbpo {

LabelLattice::LabelLattice(std::string name, std::vector<std::string> elements,
                           const std::vector<std::pair<std::string, std::string>>& order,
                           std::string_view top, std::string_view bottom)
    : name_(std::move(name)), elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorKind::bad_lattice, "lattice '" + name_ + "' has no elements");
  for (std::uint32_t i = 0; i < elements_.size(); ++i) {
    if (!index_.emplace(elements_[i], i).second)
      throw Error(ErrorKind::bad_lattice, "duplicate element '" + elements_[i] + "' in lattice '" + name_ + "'");
  }
  const std::size_t n = elements_.size();
  leq_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = 1;
  for (const auto& [a, b] : order) leq_[at(a).index * n + at(b).index] = 1;
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k * n + j]) leq_[i * n + j] = 1;
  top_ = at(top);
  bottom_ = at(bottom);

  join_table_.assign(n * n, -1);
  meet_table_.assign(n * n, -1);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      const Label pair[2] = {Label{i}, Label{j}};
      if (auto lub = least_upper_bound(pair)) join_table_[i * n + j] = static_cast<std::int32_t>(lub->index);
      if (auto glb = greatest_lower_bound(pair)) meet_table_[i * n + j] = static_cast<std::int32_t>(glb->index);
    }
  }
}

std::optional<Label> LabelLattice::find(std::string_view element) const {
  auto it = index_.find(std::string(element));
  if (it == index_.end()) return std::nullopt;
  return Label{it->second};
}

Label LabelLattice::at(std::string_view element) const {
  if (auto l = find(element)) return *l;
  throw Error(ErrorKind::unknown_label, "'" + std::string(element) + "' is not an element of lattice '" + name_ + "'");
}

bool LabelLattice::leq(Label a, Label b) const {
  if (!contains(a) || !contains(b))
    throw Error(ErrorKind::unknown_label, "label index out of range for lattice '" + name_ + "'");
  return leq_[a.index * size() + b.index] != 0;
}

// Scans all candidates: collect the upper bounds of s, then pick the one
// below every other upper bound. Works for any finite poset.
std::optional<Label> LabelLattice::least_upper_bound(std::span<const Label> s) const {
  const std::size_t n = size();
  std::vector<std::uint32_t> upper;
  for (std::uint32_t u = 0; u < n; ++u) {
    bool bound = std::all_of(s.begin(), s.end(), [&](Label x) { return leq_[x.index * n + u] != 0; });
    if (bound) upper.push_back(u);
  }
  std::optional<Label> result;
  for (auto u : upper) {
    bool least = std::all_of(upper.begin(), upper.end(), [&](std::uint32_t v) { return leq_[u * n + v] != 0; });
    if (least) {
      if (result) return std::nullopt;  // not unique: antisymmetry is broken
      result = Label{u};
    }
  }
  return result;
}

std::optional<Label> LabelLattice::greatest_lower_bound(std::span<const Label> s) const {
  const std::size_t n = size();
  std::vector<std::uint32_t> lower;
  for (std::uint32_t u = 0; u < n; ++u) {
    bool bound = std::all_of(s.begin(), s.end(), [&](Label x) { return leq_[u * n + x.index] != 0; });
    if (bound) lower.push_back(u);
  }
  std::optional<Label> result;
  for (auto u : lower) {
    bool greatest = std::all_of(lower.begin(), lower.end(), [&](std::uint32_t v) { return leq_[v * n + u] != 0; });
    if (greatest) {
      if (result) return std::nullopt;
      result = Label{u};
    }
  }
  return result;
}

Label LabelLattice::join(Label a, Label b) const {
  if (!contains(a) || !contains(b)) throw Error(ErrorKind::unknown_label, "label index out of range");
  auto v = join_table_[a.index * size() + b.index];
  if (v < 0) throw Error(ErrorKind::not_a_lattice, "no join of '" + element(a) + "' and '" + element(b) + "'");
  return Label{static_cast<std::uint32_t>(v)};
}

Label LabelLattice::meet(Label a, Label b) const {
  if (!contains(a) || !contains(b)) throw Error(ErrorKind::unknown_label, "label index out of range");
  auto v = meet_table_[a.index * size() + b.index];
  if (v < 0) throw Error(ErrorKind::not_a_lattice, "no meet of '" + element(a) + "' and '" + element(b) + "'");
  return Label{static_cast<std::uint32_t>(v)};
}

Label LabelLattice::join(std::span<const Label> s) const {
  for (auto x : s)
    if (!contains(x)) throw Error(ErrorKind::unknown_label, "label index out of range");
  if (auto r = least_upper_bound(s)) return *r;
  throw Error(ErrorKind::not_a_lattice, "set has no join in lattice '" + name_ + "'");
}

Label LabelLattice::meet(std::span<const Label> s) const {
  for (auto x : s)
    if (!contains(x)) throw Error(ErrorKind::unknown_label, "label index out of range");
  if (auto r = greatest_lower_bound(s)) return *r;
  throw Error(ErrorKind::not_a_lattice, "set has no meet in lattice '" + name_ + "'");
}

std::vector<std::pair<std::string, std::string>> LabelLattice::order_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq_[i * n + j]) out.emplace_back(elements_[i], elements_[j]);
  return out;
}

std::vector<std::pair<std::string, std::string>> LabelLattice::covering_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq_[i * n + j] || leq_[j * n + i]) continue;
      bool covers = true;
      for (std::size_t k = 0; k < n && covers; ++k) {
        if (k == i || k == j) continue;
        if (leq_[i * n + k] && leq_[k * n + j] && !leq_[k * n + i] && !leq_[j * n + k]) covers = false;
      }
      if (covers) out.emplace_back(elements_[i], elements_[j]);
    }
  }
  return out;
}

bool LabelLattice::operator==(const LabelLattice& other) const {
  return this == &other || (name_ == other.name_ && elements_ == other.elements_ && leq_ == other.leq_ &&
                            top_ == other.top_ && bottom_ == other.bottom_);
}

std::shared_ptr<const LabelLattice> make_bdd_lattice(const std::vector<std::string>& vars) {
  using namespace bdd_labels;
  const std::set<std::string_view> reserved = {zero, one, var_class, bool_class, top, bottom};
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) throw Error(ErrorKind::duplicate_variable, "empty variable name");
    if (reserved.contains(v)) throw Error(ErrorKind::duplicate_variable, "variable '" + v + "' clashes with a reserved label");
    if (!seen.insert(v).second) throw Error(ErrorKind::duplicate_variable, "variable '" + v + "' listed twice");
  }
  std::vector<std::string> elements = vars;
  for (auto e : {zero, one, var_class, bool_class, top, bottom}) elements.emplace_back(e);
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& v : vars) {
    order.emplace_back(std::string(bottom), v);
    order.emplace_back(v, std::string(var_class));
  }
  for (auto b : {zero, one}) {
    order.emplace_back(std::string(bottom), std::string(b));
    order.emplace_back(std::string(b), std::string(bool_class));
  }
  // Needed when there are no variables to link BOT and VAR.
  order.emplace_back(std::string(bottom), std::string(var_class));
  order.emplace_back(std::string(var_class), std::string(top));
  order.emplace_back(std::string(bool_class), std::string(top));

  std::string name = "bdd(";
  for (std::size_t i = 0; i < vars.size(); ++i) name += (i ? "," : "") + vars[i];
  name += ")";
  auto lat = std::make_shared<LabelLattice>(name, std::move(elements), order, top, bottom);
  lat->bdd_vars_ = vars;
  lat->bdd_ = true;
  return lat;
}

LatticePtr bdd_lattice(const std::vector<std::string>& vars) {
  if (vars.empty()) throw Error(ErrorKind::bad_lattice, "BDD lattice needs at least one variable");
  return make_bdd_lattice(vars);
}

LatticePtr constant_bdd_lattice() { return make_bdd_lattice({}); }

LatticePtr unit_lattice() {
  static const LatticePtr unit = std::make_shared<LabelLattice>(
      "unit", std::vector<std::string>{"*"}, std::vector<std::pair<std::string, std::string>>{}, "*", "*");
  return unit;
}

namespace {

std::string describe(const LabelLattice& lat, std::span<const Label> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + lat.element(s[i]);
  return out + "}";
}

// Calls f on every subset of {0..n-1} with at most cap elements.
template <class F>
void for_each_subset(std::size_t n, std::size_t cap, F&& f) {
  std::vector<Label> current;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    f(std::span<const Label>(current));
    if (current.size() == cap) return;
    for (std::uint32_t i = start; i < n; ++i) {
      current.push_back(Label{i});
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

ValidationReport validate_lattice(const LabelLattice& lat, std::size_t full_check_limit, std::size_t subset_size_cap) {
  ValidationReport report;
  const auto n = static_cast<std::uint32_t>(lat.size());
  auto le = [&](std::uint32_t a, std::uint32_t b) { return lat.leq(Label{a}, Label{b}); };
  for (std::uint32_t a = 0; a < n; ++a) {
    if (!le(a, a)) report.add("reflexivity", lat.elements()[a], "element is not below itself");
    for (std::uint32_t b = 0; b < n; ++b) {
      if (a != b && le(a, b) && le(b, a))
        report.add("antisymmetry", lat.elements()[a] + "," + lat.elements()[b], "distinct elements below each other");
      for (std::uint32_t c = 0; c < n; ++c)
        if (le(a, b) && le(b, c) && !le(a, c))
          report.add("transitivity", lat.elements()[a] + "," + lat.elements()[b] + "," + lat.elements()[c],
                     "order is not transitive");
    }
    if (!le(lat.bottom().index, a)) report.add("bottom-not-least", lat.elements()[a], "designated bottom is not below it");
    if (!le(a, lat.top().index)) report.add("top-not-greatest", lat.elements()[a], "designated top is not above it");
  }

  const std::size_t cap = n <= full_check_limit ? n : subset_size_cap;
  for_each_subset(n, cap, [&](std::span<const Label> s) {
    // Count least upper bounds and greatest lower bounds by scanning.
    std::vector<std::uint32_t> upper, lower;
    for (std::uint32_t u = 0; u < n; ++u) {
      if (std::all_of(s.begin(), s.end(), [&](Label x) { return le(x.index, u); })) upper.push_back(u);
      if (std::all_of(s.begin(), s.end(), [&](Label x) { return le(u, x.index); })) lower.push_back(u);
    }
    std::size_t lubs = 0, glbs = 0;
    for (auto u : upper)
      if (std::all_of(upper.begin(), upper.end(), [&](std::uint32_t v) { return le(u, v); })) ++lubs;
    for (auto u : lower)
      if (std::all_of(lower.begin(), lower.end(), [&](std::uint32_t v) { return le(v, u); })) ++glbs;
    if (lubs == 0) report.add("missing-supremum", describe(lat, s), "no least upper bound");
    if (lubs > 1) report.add("non-unique-supremum", describe(lat, s), "several least upper bounds");
    if (glbs == 0) report.add("missing-infimum", describe(lat, s), "no greatest lower bound");
    if (glbs > 1) report.add("non-unique-infimum", describe(lat, s), "several greatest lower bounds");
  });
  return report;
}

}  // namespace pbpo
