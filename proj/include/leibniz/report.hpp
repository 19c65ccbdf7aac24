#pragma once

#include "leibniz/compatibility.hpp"
#include "leibniz/families.hpp"
#include "leibniz/fp_oracle.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace leibniz {

// A command result: canonical JSON, a stable text rendering and whether the
// computed verdict passed.
struct Report {
  std::string command;
  nlohmann::json data;
  std::string text;
  bool passed = true;
};

// Sorted keys, two-space indent, trailing newline.
std::string render_json(const Report &r);
// Writes through a temporary file in the same directory and renames it into
// place. Throws Error(Io) naming the path.
void write_atomic(const std::string &path, const std::string &content);

// Everything under a data directory: catalog.json, errata.json,
// families/<kind>.json and compat-claims.json.
class Dataset {
public:
  static std::unique_ptr<Dataset> load(const std::string &dir);

  const std::string &dir() const { return dir_; }
  const Catalog &catalog() const { return catalog_; }
  const std::vector<OperatorFamily> &families(OperatorType kind) const;
  const std::vector<NamePair> &claims() const { return claims_; }
  // Audits of every shipped family of a kind, computed once.
  const std::vector<FamilyAudit> &audits(OperatorType kind, bool symbolic_weight);

private:
  std::string dir_;
  Catalog catalog_;
  std::map<OperatorType, std::vector<OperatorFamily>> families_;
  std::vector<NamePair> claims_;
  std::map<std::pair<OperatorType, bool>, std::vector<FamilyAudit>> audits_;
};

struct RunOptions {
  std::optional<Bindings> binding;     // --param
  std::optional<OperatorType> op;      // --op
  RatExpr weight;                      // Rota-Baxter weight
  std::uint32_t p = 2;                 // --field
  std::uint64_t budget = std::uint64_t(1) << 20;
  unsigned workers = 1;
  std::size_t cap = 64;                // uncovered list cap, 0 = unlimited
  bool symbolic_weight = false;
  std::vector<Scalar> samples = default_param_samples();
  std::size_t round_trips = 100;
  std::uint64_t seed = 20240917;
};

// "mu=2,nu=1/3" -> bindings; values must be parameter-free. Throws Usage.
Bindings parse_bindings(const std::string &text);
// "0,1,2" or "mu=0,1,2" -> sample values. Throws Usage.
std::vector<Scalar> parse_samples(const std::string &text);

Report catalog_list_report(const Dataset &ds);
Report catalog_show_report(const Dataset &ds, const std::string &name);
// Empty `names` checks the whole catalog.
Report check_leibniz_report(const Dataset &ds, std::vector<std::string> names,
                            const RunOptions &opts);
Report lcs_report(const Dataset &ds, std::vector<std::string> names, const RunOptions &opts);
Report equations_report(const Dataset &ds, const std::string &name, const RunOptions &opts);
Report verify_report(Dataset &ds, const std::vector<OperatorFamily> &families,
                     const RunOptions &opts);
Report dim_report(Dataset &ds, const RunOptions &opts);
Report enumerate_report(Dataset &ds, const std::string &name, const RunOptions &opts);
// Every algebra whose tables and families are real, every kind (or --op).
Report coverage_report(Dataset &ds, const RunOptions &opts);
// Empty `names` runs every real catalog table.
Report dual_path_report(const Dataset &ds, std::vector<std::string> names,
                        const RunOptions &opts);
Report compat_report(const Dataset &ds, const std::string &a, const std::string &b,
                     const RunOptions &opts);
Report compat_scan_report(const Dataset &ds, const RunOptions &opts);

} // namespace leibniz
