#pragma once

#include "leibniz/catalog.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leibniz {

// Entry (i, j, k, q) is the e_q coefficient of
//   [e_i,[e_j,e_k]_a]_b + [e_i,[e_j,e_k]_b]_a - [[e_i,e_j]_a,e_k]_b
//   - [[e_i,e_j]_b,e_k]_a + [[e_i,e_k]_a,e_j]_b + [[e_i,e_k]_b,e_j]_a.
// Throws DimensionMismatch.
ResidualTensor mixed_residual(const AlgebraTable &a, const AlgebraTable &b);

struct CompatibilityCheck {
  bool a_leibniz = false;
  bool b_leibniz = false;
  bool mixed_zero = false;
  std::optional<ResidualTensor::Witness> witness; // first failing entry
  bool compatible() const { return a_leibniz && b_leibniz && mixed_zero; }
};

// Both Leibniz residuals and the mixed residual, symbolically in any unbound
// parameters.
CompatibilityCheck check_compatible(const AlgebraTable &a, const AlgebraTable &b);
bool is_compatible(const AlgebraTable &a, const AlgebraTable &b);

// Tables for a pair: distinct algebras get independent parameters (the
// second table's are suffixed "_b"); a diagonal pair shares them.
std::pair<AlgebraTable, AlgebraTable> pair_tables(const Catalog &catalog, const std::string &a,
                                                  const std::string &b);

using NamePair = std::pair<std::string, std::string>;

struct PairOutcome {
  std::string a, b;
  // Symbolic in parameters with infinite admissible sets; parameters with
  // finite sets are enumerated over every admissible value.
  bool compatible = false;
  CompatibilityCheck check; // first failing instance, or the symbolic check
  std::string failing_binding;
  // Outcome at each sample binding, in binding order.
  std::vector<std::pair<std::string, bool>> samples;
  bool symmetric = true;
  bool claimed = false;
  // Compatible pairs: random (lambda1, lambda2) combined brackets checked.
  std::size_t lambda_checks = 0;
  std::size_t lambda_failures = 0;
  // Incompatible pairs of Leibniz tables: a triple at which the combined
  // bracket with lambda1 = lambda2 = 1 violates the identity (1-based).
  std::optional<std::array<std::size_t, 3>> combined_witness;
};

struct PairReport {
  std::vector<PairOutcome> diagonal; // (L_i, L_i)
  std::vector<PairOutcome> pairs;    // unordered, catalog order
  std::vector<NamePair> compatible;
  std::vector<NamePair> claimed_but_failing;
  std::vector<NamePair> passing_but_unclaimed;
  std::vector<NamePair> unmatchable_claims; // name not in the catalog
  // Pairs whose sample outcomes disagree with the symbolic verdict.
  std::vector<NamePair> sample_exceptions;
  std::size_t claims_total = 0;
  std::size_t lambda_trials = 0;
};

struct ScanOptions {
  std::vector<Scalar> samples = default_param_samples();
  std::size_t lambda_trials = 50;
  std::uint64_t seed = 20240917;
  unsigned workers = 1;
};

std::vector<NamePair> parse_claims(std::string_view json_text);

// One pair, with `binding` applied to both tables before checking (names as
// in pair_tables).
PairOutcome compat_pair(const Catalog &catalog, const std::string &a, const std::string &b,
                        const Bindings &binding, const ScanOptions &opts);

PairReport compat_scan(const Catalog &catalog, const std::vector<NamePair> &claims,
                       const ScanOptions &opts);

} // namespace leibniz
