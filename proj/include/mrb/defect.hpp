#ifndef MRB_DEFECT_HPP
#define MRB_DEFECT_HPP

#include <mrb/matrix.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mrb {

/// One nonzero residual of a checked identity. `args` holds the 1-based basis
/// indices the identity was evaluated on; `residual` is a column (vectors) or a
/// full matrix (operator-valued identities such as representation axioms).
struct DefectEntry {
  std::string section;
  std::vector<std::size_t> args;
  Matrix residual;

  friend bool operator==(const DefectEntry&, const DefectEntry&) = default;
};

/// Collection of nonzero residuals. Empty means every checked identity holds
/// exactly.
class DefectReport {
 public:
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<DefectEntry>& entries() const { return entries_; }

  void add(std::string section, std::vector<std::size_t> args, const Vector& residual) {
    if (is_zero(residual)) return;
    entries_.push_back({std::move(section), std::move(args), Matrix::column_vector(residual)});
  }

  void add(std::string section, std::vector<std::size_t> args, Matrix residual) {
    if (residual.is_zero()) return;
    entries_.push_back({std::move(section), std::move(args), std::move(residual)});
  }

  void append(const DefectReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }

  /// Entries belonging to one labeled section.
  DefectReport section(const std::string& name) const {
    DefectReport r;
    for (const auto& e : entries_)
      if (e.section == name) r.entries_.push_back(e);
    return r;
  }

  friend bool operator==(const DefectReport&, const DefectReport&) = default;

 private:
  std::vector<DefectEntry> entries_;
};

enum class Errc {
  DimensionMismatch,
  NotSurjective,
  NotLeibniz,
  NotRotaBaxter,
  NotModifiedRotaBaxter,
  NotRBRepresentation,
  NotMRBRepresentation,
  NotRepresentation,
  BudgetExceeded,
  NotADeformation,
  OrderMismatch,
  NotACoboundaryWitness,
  NotAnExtension,
  NotASection,
  NotACocycle,
  NotCohomologous,
  ParseError,
  IndexOutOfRange,
  DuplicateKey,
  UnknownCommand,
  DigestMismatch,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotSurjective: return "NotSurjective";
    case Errc::NotLeibniz: return "NotLeibniz";
    case Errc::NotRotaBaxter: return "NotRotaBaxter";
    case Errc::NotModifiedRotaBaxter: return "NotModifiedRotaBaxter";
    case Errc::NotRBRepresentation: return "NotRBRepresentation";
    case Errc::NotMRBRepresentation: return "NotMRBRepresentation";
    case Errc::NotRepresentation: return "NotRepresentation";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotADeformation: return "NotADeformation";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::NotACoboundaryWitness: return "NotACoboundaryWitness";
    case Errc::NotAnExtension: return "NotAnExtension";
    case Errc::NotASection: return "NotASection";
    case Errc::NotACocycle: return "NotACocycle";
    case Errc::NotCohomologous: return "NotCohomologous";
    case Errc::ParseError: return "ParseError";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateKey: return "DuplicateKey";
    case Errc::UnknownCommand: return "UnknownCommand";
    case Errc::DigestMismatch: return "DigestMismatch";
  }
  return "Unknown";
}

/// Library error. Precondition failures that come from a defect check carry
/// the offending report.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, DefectReport report = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), report_(std::move(report)) {}

  Errc code() const { return code_; }
  const DefectReport& report() const { return report_; }

 private:
  Errc code_;
  DefectReport report_;
};

/// Internal postcondition guard: a failure here is a bug, not bad input.
inline void ensure(bool condition, const char* what) {
  if (!condition) throw std::logic_error(std::string("postcondition violated: ") + what);
}

}  // namespace mrb

#endif  // MRB_DEFECT_HPP
