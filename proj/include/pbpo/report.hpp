#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pbpo {

struct Violation {
  std::string kind;     // e.g. "dangling-endpoint", "missing-supremum"
  std::string subject;  // offending element, if any
  std::string message;
};

/// Validators never throw; they collect every violation they find.
class ValidationReport {
 public:
  void add(std::string kind, std::string subject, std::string message) {
    violations_.push_back({std::move(kind), std::move(subject), std::move(message)});
  }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations_)
      violations_.push_back({v.kind, prefix.empty() ? v.subject : prefix + v.subject, v.message});
  }

  bool ok() const noexcept { return violations_.empty(); }
  explicit operator bool() const noexcept { return ok(); }
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  bool has(const std::string& kind) const {
    for (const auto& v : violations_)
      if (v.kind == kind) return true;
    return false;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& v : violations_) {
      out += v.kind;
      if (!v.subject.empty()) out += " [" + v.subject + "]";
      out += ": " + v.message + "\n";
    }
    return out;
  }

 private:
  std::vector<Violation> violations_;
};

inline std::ostream& operator<<(std::ostream& os, const ValidationReport& r) {
  return os << (r.ok() ? std::string("ok\n") : r.to_string());
}

}  // namespace pbpo
