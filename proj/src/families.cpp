#include "leibniz/families.hpp"

#include "leibniz/error.hpp"
#include "leibniz/expr_parser.hpp"

#include <json.hpp>

#include <algorithm>

namespace leibniz {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string &source, const std::string &pointer,
                               const std::string &msg) {
  throw Error(ErrorCode::Schema, "schema violation" +
                                     (source.empty() ? std::string() : " in " + source) +
                                     " at " + pointer + ": " + msg);
}

RatExpr parse_at(const json &v, const std::string &source, const std::string &ptr) {
  if (!v.is_string())
    schema_error(source, ptr, "expected an expression string");
  try {
    return parse_expr(v.get<std::string>());
  } catch (const Error &e) {
    schema_error(source, ptr, e.what());
  }
}

} // namespace

std::vector<OperatorFamily> parse_families(std::string_view json_text,
                                           const std::string &source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::Schema, "malformed JSON in " + source + ": " + e.what());
  }
  if (!doc.is_array())
    schema_error(source, "/", "family file must be an array");
  std::vector<OperatorFamily> out;
  for (std::size_t n = 0; n < doc.size(); ++n) {
    const std::string p = "/" + std::to_string(n);
    const json &f = doc[n];
    if (!f.is_object())
      schema_error(source, p, "expected an object");
    for (const char *key : {"algebra", "kind", "chart", "free"})
      if (!f.contains(key))
        schema_error(source, p, std::string("missing \"") + key + "\"");
    OperatorFamily fam;
    fam.algebra = f["algebra"].get<std::string>();
    OperatorType type;
    try {
      type = parse_operator_type(f["kind"].get<std::string>());
    } catch (const Error &e) {
      schema_error(source, p + "/kind", e.what());
    }
    fam.kind.type = type;
    if (type == OperatorType::RotaBaxter)
      fam.kind.weight = f.contains("weight") ? parse_at(f["weight"], source, p + "/weight")
                                             : RatExpr(0);
    fam.label = f.value("label", fam.algebra + " " + operator_type_name(type) + " #" +
                                     std::to_string(n + 1));
    fam.note = f.value("note", "");
    fam.malformed = f.value("malformed", false);
    for (const auto &name : f["free"])
      fam.free.push_back(name.get<std::string>());

    const json &chart = f["chart"];
    if (!chart.is_array())
      schema_error(source, p + "/chart", "expected an array of rows");
    for (const auto &row : chart) {
      std::vector<std::string> cells;
      for (const auto &c : row)
        cells.push_back(c.get<std::string>());
      fam.raw_rows.push_back(std::move(cells));
    }
    const std::size_t dim = fam.raw_rows.size();
    bool square = std::all_of(fam.raw_rows.begin(), fam.raw_rows.end(),
                              [&](const auto &r) { return r.size() == dim; });
    if (!square && !fam.malformed)
      schema_error(source, p + "/chart", "chart is not square; mark it \"malformed\"");
    if (!fam.malformed) {
      fam.chart = OperatorMatrix(dim);
      std::set<std::string> free(fam.free.begin(), fam.free.end());
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
          std::string ptr = p + "/chart/" + std::to_string(r) + "/" + std::to_string(c);
          RatExpr e = parse_at(chart[r][c], source, ptr);
          if (!e.den().is_constant() &&
              std::find(fam.constraints.begin(), fam.constraints.end(), e.den()) ==
                  fam.constraints.end())
            fam.constraints.push_back(e.den());
          fam.chart.at(r, c) = std::move(e);
        }
    }
    if (f.contains("constraints"))
      for (std::size_t c = 0; c < f["constraints"].size(); ++c) {
        RatExpr e = parse_at(f["constraints"][c], source,
                             p + "/constraints/" + std::to_string(c));
        if (std::find(fam.constraints.begin(), fam.constraints.end(), e.num()) ==
            fam.constraints.end())
          fam.constraints.push_back(e.num());
      }
    out.push_back(std::move(fam));
  }
  return out;
}

std::vector<OperatorFamily> load_families(const std::string &path) {
  return parse_families(read_text_file(path), path);
}

std::size_t family_dimension(const OperatorFamily &fam) {
  std::set<std::string> occurring;
  if (fam.malformed) {
    for (const auto &row : fam.raw_rows)
      for (const auto &cell : row) {
        try {
          auto v = parse_expr(cell).variables();
          occurring.insert(v.begin(), v.end());
        } catch (const Error &) {
        }
      }
  } else {
    occurring = fam.chart.variables();
  }
  return std::count_if(fam.free.begin(), fam.free.end(),
                       [&](const std::string &n) { return occurring.count(n) > 0; });
}

Verdict verify_family(const AlgebraTable &a, const OperatorFamily &fam) {
  return verify_family(a, fam, fam.kind);
}

Verdict verify_family(const AlgebraTable &a, const OperatorFamily &fam,
                      const OperatorKind &kind) {
  if (fam.malformed)
    throw Error(ErrorCode::DimensionMismatch, fam.label + " is malformed");
  for (const auto &c : fam.constraints)
    if (c.is_zero())
      throw Error(ErrorCode::DenominatorVanishes,
                  fam.label + ": a chart constraint is identically zero");
  OperatorResidual r = operator_residual(a, kind, fam.chart);
  Verdict v;
  v.holds = true;
  const std::size_t n = a.dim();
  for (std::size_t c = 0; c < r.conditions(); ++c)
    v.condition_holds.push_back(r.condition_is_zero(c));
  for (std::size_t i = 0; i < n && v.holds; ++i)
    for (std::size_t j = 0; j < n && v.holds; ++j)
      for (std::size_t q = 0; q < r.outputs(); ++q)
        if (!r.at(i, j, q).is_zero()) {
          v.holds = false;
          v.witness = Verdict::Witness{i, j, q % n, q / n, r.at(i, j, q).num()};
          break;
        }
  return v;
}

const char *audit_status_name(FamilyAudit::Status s) {
  switch (s) {
  case FamilyAudit::Status::HoldsSymbolicWeight:
    return "holds-symbolic-weight";
  case FamilyAudit::Status::HoldsAtWeight:
    return "holds-at-weight";
  case FamilyAudit::Status::Holds:
    return "holds";
  case FamilyAudit::Status::Fails:
    return "fails";
  case FamilyAudit::Status::Malformed:
    return "malformed";
  }
  return "?";
}

bool FamilyAudit::holds_for(const Bindings &algebra_binding) const {
  if (!passed())
    return std::any_of(holds_at.begin(), holds_at.end(),
                       [&](const Bindings &b) { return b == algebra_binding; });
  if (verdict.holds)
    return true;
  return std::any_of(holds_at.begin(), holds_at.end(),
                     [&](const Bindings &b) { return b == algebra_binding; });
}

FamilyAudit audit_family(const Catalog &catalog, const OperatorFamily &fam,
                         bool symbolic_weight) {
  FamilyAudit audit;
  audit.family = &fam;
  audit.dimension = family_dimension(fam);
  if (fam.malformed) {
    audit.status = FamilyAudit::Status::Malformed;
    return audit;
  }
  const AlgebraTable &a = catalog.effective(fam.algebra);
  std::set<std::string> allowed(fam.free.begin(), fam.free.end());
  for (const auto &p : a.params())
    allowed.insert(p.name);
  for (const auto &v : fam.chart.variables())
    if (!allowed.count(v)) {
      audit.status = FamilyAudit::Status::Fails;
      audit.error = "chart parameter \"" + v + "\" is not declared free";
      return audit;
    }

  audit.verdict = verify_family(a, fam);
  bool holds = audit.verdict.holds;
  if (!holds && !a.params().empty()) {
    bool all_finite = true;
    for (const auto &p : a.params())
      all_finite = all_finite && p.admissible.is_finite();
    for (const auto &b : a.sample_bindings(default_param_samples())) {
      if (verify_family(a.bind(b), fam).holds)
        audit.holds_at.push_back(b);
      else
        audit.fails_at.push_back(b);
    }
    holds = all_finite && audit.fails_at.empty();
  }
  if (fam.kind.type == OperatorType::RotaBaxter && symbolic_weight) {
    audit.symbolic_weight = verify_family(
        a, fam, OperatorKind::rota_baxter(RatExpr::var(kSymbolicWeight)));
    if (audit.symbolic_weight->holds) {
      audit.status = FamilyAudit::Status::HoldsSymbolicWeight;
      return audit;
    }
  }
  if (!holds)
    audit.status = FamilyAudit::Status::Fails;
  else if (fam.kind.type == OperatorType::RotaBaxter)
    audit.status = FamilyAudit::Status::HoldsAtWeight;
  else
    audit.status = FamilyAudit::Status::Holds;
  return audit;
}

std::pair<std::size_t, std::size_t> claimed_dimension_range(OperatorType kind) {
  switch (kind) {
  case OperatorType::RotaBaxter:
    return {3, 10};
  case OperatorType::Nijenhuis:
    return {5, 10};
  case OperatorType::Reynolds:
  case OperatorType::Averaging:
    return {2, 9};
  }
  return {0, 0};
}

DimensionReport dimension_report(const Catalog &catalog,
                                 const std::vector<FamilyAudit> &audits, OperatorType kind) {
  DimensionReport rep;
  rep.kind = kind;
  std::tie(rep.claimed_min, rep.claimed_max) = claimed_dimension_range(kind);
  for (const auto &name : catalog.names()) {
    std::optional<DimensionReport::Row> best;
    for (const auto &a : audits) {
      if (!a.passed() || a.family->algebra != name || a.family->kind.type != kind)
        continue;
      if (!best || a.dimension > best->max_dimension)
        best = DimensionReport::Row{name, a.dimension, a.family->label};
    }
    if (!best) {
      rep.algebras_without_families.push_back(name);
      continue;
    }
    rep.rows.push_back(*best);
  }
  for (const auto &r : rep.rows) {
    if (!rep.global_min || r.max_dimension < *rep.global_min)
      rep.global_min = r.max_dimension;
    if (!rep.global_max || r.max_dimension > *rep.global_max)
      rep.global_max = r.max_dimension;
  }
  for (const auto &r : rep.rows)
    if (r.max_dimension < rep.claimed_min || r.max_dimension > rep.claimed_max)
      rep.discrepancies.push_back(r.algebra + ": largest verified family " + r.family +
                                  " has " + std::to_string(r.max_dimension) +
                                  " chart parameters, outside the claimed range " +
                                  std::to_string(rep.claimed_min) + ".." +
                                  std::to_string(rep.claimed_max));
  auto attaining = [&](std::size_t d) {
    std::string s;
    for (const auto &r : rep.rows)
      if (r.max_dimension == d)
        s += (s.empty() ? "" : ", ") + r.family;
    return s;
  };
  if (rep.global_min && *rep.global_min != rep.claimed_min)
    rep.discrepancies.push_back("global minimum " + std::to_string(*rep.global_min) +
                                " differs from claimed " + std::to_string(rep.claimed_min) +
                                " (attained by " + attaining(*rep.global_min) + ")");
  if (rep.global_max && *rep.global_max != rep.claimed_max)
    rep.discrepancies.push_back("global maximum " + std::to_string(*rep.global_max) +
                                " differs from claimed " + std::to_string(rep.claimed_max) +
                                " (attained by " + attaining(*rep.global_max) + ")");
  return rep;
}

} // namespace leibniz
