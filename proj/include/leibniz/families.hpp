#pragma once

#include "leibniz/catalog.hpp"
#include "leibniz/operators.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leibniz {

// One parametric chart of operators on an algebra.
struct OperatorFamily {
  std::string algebra;
  OperatorKind kind;
  std::string label;
  OperatorMatrix chart;
  std::vector<std::string> free;
  // Polynomials that must be nonzero on the chart domain; always includes
  // every non-constant chart denominator.
  std::vector<Poly> constraints;
  // Transcriptions whose matrix is not n x n. They keep their raw rows and
  // are never verified.
  bool malformed = false;
  std::vector<std::vector<std::string>> raw_rows;
  std::string note;
};

// Family file: JSON array of
//   {"algebra": str, "kind": str, "weight": "expr" (rota-baxter only),
//    "chart": [["expr", ...], ...], "free": [str], "constraints": ["expr"],
//    "malformed": bool, "label": str (optional), "note": str (optional)}
std::vector<OperatorFamily> parse_families(std::string_view json_text,
                                           const std::string &source = "");
std::vector<OperatorFamily> load_families(const std::string &path);

// Number of free parameters that actually occur in the chart.
std::size_t family_dimension(const OperatorFamily &fam);

struct Verdict {
  struct Witness {
    std::size_t i, j, q; // 0-based, q < n (condition gives the block)
    std::size_t condition;
    Poly value;
  };

  bool holds = false;
  std::optional<Witness> witness;
  // Per condition (two for averaging).
  std::vector<bool> condition_holds;
};

// Substitutes the chart into the operator residual; holds iff every entry is
// identically zero in the free parameters (and any unbound algebra
// parameters). Throws DenominatorVanishes if a constraint is identically
// zero and DimensionMismatch on a size mismatch.
Verdict verify_family(const AlgebraTable &a, const OperatorFamily &fam);
Verdict verify_family(const AlgebraTable &a, const OperatorFamily &fam,
                      const OperatorKind &kind);

// Name of the symbolic weight used when re-running Rota-Baxter families.
inline constexpr const char *kSymbolicWeight = "lambda";

struct FamilyAudit {
  enum class Status { HoldsSymbolicWeight, HoldsAtWeight, Holds, Fails, Malformed };

  const OperatorFamily *family = nullptr;
  Status status = Status::Fails;
  std::size_t dimension = 0;
  // Verdict with the algebra parameters symbolic at the family's own weight.
  Verdict verdict;
  // Rota-Baxter only: verdict at symbolic weight.
  std::optional<Verdict> symbolic_weight;
  // When the symbolic verdict fails on a parameterized algebra: the sample
  // bindings at which the family holds.
  std::vector<Bindings> holds_at;
  std::vector<Bindings> fails_at;
  std::string error;

  bool passed() const {
    return status == Status::HoldsSymbolicWeight || status == Status::HoldsAtWeight ||
           status == Status::Holds;
  }
  // Whether the family solves the operator equations at this binding of the
  // algebra parameters.
  bool holds_for(const Bindings &algebra_binding) const;
};

const char *audit_status_name(FamilyAudit::Status s);

// Verifies against catalog.effective(fam.algebra). For parameterized
// algebras whose symbolic verdict fails the family is re-checked at each
// admissible sample; it passes when the parameters have finite admissible
// sets and every value passes.
FamilyAudit audit_family(const Catalog &catalog, const OperatorFamily &fam,
                         bool symbolic_weight);

struct DimensionReport {
  OperatorType kind;
  struct Row {
    std::string algebra;
    std::size_t max_dimension;
    std::string family; // label attaining the maximum
  };
  std::vector<Row> rows; // catalog order
  std::size_t claimed_min = 0, claimed_max = 0;
  std::optional<std::size_t> global_min, global_max;
  // Human-readable mismatch descriptions, each naming a family.
  std::vector<std::string> discrepancies;
  std::vector<std::string> algebras_without_families;
};

// Range stated for each kind: RB 3..10, Nijenhuis 5..10, Reynolds 2..9,
// averaging 2..9.
std::pair<std::size_t, std::size_t> claimed_dimension_range(OperatorType kind);

DimensionReport dimension_report(const Catalog &catalog,
                                 const std::vector<FamilyAudit> &audits, OperatorType kind);

} // namespace leibniz
