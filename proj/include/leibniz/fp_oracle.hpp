#pragma once

#include "leibniz/families.hpp"
#include "leibniz/mod_p.hpp"
#include "leibniz/operators.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace leibniz {

// n x n matrix over F_p, row-major, same (row, col) convention as
// OperatorMatrix.
struct FpMatrix {
  std::uint32_t p = 2;
  std::size_t n = 0;
  std::vector<std::uint32_t> entries;

  FpMatrix() = default;
  FpMatrix(std::uint32_t prime, std::size_t dim) : p(prime), n(dim), entries(dim * dim) {}

  std::uint32_t at(std::size_t row, std::size_t col) const { return entries[row * n + col]; }
  std::uint32_t &at(std::size_t row, std::size_t col) { return entries[row * n + col]; }
  // Integer lift with entries in [0, p).
  OperatorMatrix lift() const;
  // Rows joined by ';', e.g. "0 1;1 0".
  std::string to_string() const;

  friend bool operator==(const FpMatrix &, const FpMatrix &) = default;
};

// The matrix at position `index` of the enumeration: entry k (row-major)
// is digit k of index in base p, least significant first.
FpMatrix matrix_at_index(std::uint64_t index, std::uint32_t p, std::size_t n);

// Structure constants reduced mod p. Throws UnboundParameter, NonRealValue
// or NonInvertibleDenominator.
class FpTable {
public:
  FpTable(const AlgebraTable &a, std::uint32_t p);

  std::size_t dim() const { return n_; }
  const PrimeField &field() const { return f_; }
  std::uint32_t at(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }

private:
  PrimeField f_;
  std::size_t n_;
  std::vector<std::uint32_t> c_;
};

// Operator residual evaluated by direct bracket arithmetic over F_p; shares
// no code with the symbolic residual or the equation system.
class DirectEvaluator {
public:
  // The kind's weight must be parameter-free.
  DirectEvaluator(const AlgebraTable &a, const OperatorKind &kind, std::uint32_t p);
  bool solves(const FpMatrix &m) const;

private:
  FpTable table_;
  OperatorType type_;
  std::uint32_t weight_ = 0;
};

// An EquationSystem with coefficients reduced mod p and unknowns replaced by
// matrix positions, evaluated term by term.
class CompiledSystem {
public:
  // The system must only involve its unknowns (bind algebra parameters and
  // the weight before building it).
  CompiledSystem(const EquationSystem &sys, std::uint32_t p);
  bool solves(const FpMatrix &m) const;
  std::size_t equation_count() const { return equations_.size(); }

private:
  struct Term {
    std::uint32_t coeff;
    std::vector<std::uint16_t> factors; // positions, repeated per exponent
  };
  PrimeField f_;
  std::size_t n_;
  std::vector<std::vector<Term>> equations_;
};

enum class EvalPath { Compiled, Direct };

struct EnumerationOptions {
  std::uint64_t budget = std::uint64_t(1) << 20; // max matrices to scan
  unsigned workers = 1;
};

struct EnumerationResult {
  std::uint64_t scanned = 0;
  std::vector<FpMatrix> solutions; // enumeration order
};

// Scans every n x n matrix over F_p, sharded by the first row. Throws
// RefusedSize when p^(n^2) exceeds the budget.
EnumerationResult enumerate_solutions(const AlgebraTable &a, const OperatorKind &kind,
                                      std::uint32_t p, const EnumerationOptions &opts,
                                      EvalPath path = EvalPath::Compiled);

struct DualPathResult {
  std::uint64_t scanned = 0;
  std::uint64_t compiled_solutions = 0;
  std::uint64_t direct_solutions = 0;
  std::uint64_t disagreements = 0;
  std::optional<FpMatrix> first_disagreement;

  bool agree() const { return disagreements == 0 && compiled_solutions == direct_solutions; }
};

// Evaluates both paths on every matrix.
DualPathResult dual_path_check(const AlgebraTable &a, const OperatorKind &kind,
                               std::uint32_t p, const EnumerationOptions &opts);

// Lifts m to the rationals, evaluates the symbolic operator residual and
// reduces it mod p.
bool lifted_residual_vanishes(const AlgebraTable &a, const OperatorKind &kind,
                              const FpMatrix &m);

// A family chart reduced mod p.
class FpChart {
public:
  // Returns nullopt with `why` filled when the chart does not reduce mod p
  // (non-real or non-invertible coefficients). Algebra parameters in the
  // chart are bound first.
  static std::optional<FpChart> compile(const OperatorFamily &fam, std::uint32_t p,
                                        const Bindings &algebra_binding, std::string *why);

  const std::vector<std::string> &free() const { return free_; }
  // Chart value at an assignment of the free parameters, or nullopt when a
  // constraint or denominator vanishes there.
  std::optional<FpMatrix> evaluate(const std::vector<std::uint32_t> &assignment) const;
  // Whether some admissible assignment maps to m. Parameters that appear
  // alone in an entry are read off; the rest are searched exhaustively.
  // Throws RefusedSize when the search exceeds the budget.
  bool contains(const FpMatrix &m, std::uint64_t budget = std::uint64_t(1) << 20) const;
  // Rejection-samples an admissible assignment.
  std::optional<std::vector<std::uint32_t>> random_admissible(std::mt19937_64 &rng,
                                                              int attempts = 1000) const;

private:
  struct PolyP {
    std::vector<std::pair<std::uint32_t, std::vector<std::uint16_t>>> terms;
    std::uint32_t eval(const PrimeField &f, const std::vector<std::uint32_t> &x) const;
  };
  struct Entry {
    PolyP num, den;
  };
  bool matches(const FpMatrix &m, const std::vector<std::uint32_t> &x) const;

  PrimeField f_{2};
  std::size_t n_ = 0;
  std::vector<std::string> free_;
  std::vector<Entry> entries_;
  std::vector<PolyP> constraints_;
};

bool chart_membership(const OperatorFamily &fam, const FpMatrix &m,
                      const Bindings &algebra_binding = {},
                      std::uint64_t budget = std::uint64_t(1) << 20);

struct CoverageReport {
  std::string algebra;
  std::string kind;
  std::uint32_t p = 2;
  std::string binding; // "mu=2" or ""
  std::uint64_t total = 0;
  std::uint64_t covered = 0;
  std::vector<FpMatrix> uncovered; // capped
  std::size_t cap = 0;
  std::vector<std::string> families_used;
  std::vector<std::pair<std::string, std::string>> families_skipped; // label, reason
};

// Tests every solution against every usable family. `families` should hold
// only families verified for this algebra, kind and binding.
CoverageReport coverage(const AlgebraTable &bound, const OperatorKind &kind, std::uint32_t p,
                        const std::vector<const OperatorFamily *> &families,
                        const Bindings &binding, const EnumerationOptions &opts,
                        std::size_t cap = 64);

std::string bindings_to_string(const Bindings &b);

} // namespace leibniz
