#include "leibniz/report.hpp"

#include "leibniz/error.hpp"
#include "leibniz/expr_parser.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unistd.h>

namespace leibniz {

using nlohmann::json;

std::string render_json(const Report &r) { return r.data.dump(2) + "\n"; }

void write_atomic(const std::string &path, const std::string &content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename onto " + path + ": " + ec.message());
  }
}

namespace {

const OperatorType kTypes[] = {OperatorType::RotaBaxter, OperatorType::Nijenhuis,
                               OperatorType::Reynolds, OperatorType::Averaging};

OperatorKind kind_of(OperatorType t, const RatExpr &weight) {
  switch (t) {
  case OperatorType::RotaBaxter:
    return OperatorKind::rota_baxter(weight);
  case OperatorType::Nijenhuis:
    return OperatorKind::nijenhuis();
  case OperatorType::Reynolds:
    return OperatorKind::reynolds();
  case OperatorType::Averaging:
    return OperatorKind::averaging();
  }
  return {};
}

std::string kind_label(const OperatorKind &k) {
  if (k.type == OperatorType::RotaBaxter)
    return std::string(k.name()) + "(" + k.weight.to_string() + ")";
  return k.name();
}

json witness_json(const ResidualTensor::Witness &w) {
  return {{"i", w.i + 1}, {"j", w.j + 1}, {"k", w.k + 1}, {"q", w.q + 1},
          {"value", w.value.to_string()}};
}

std::string witness_text(const ResidualTensor::Witness &w) {
  return "(" + std::to_string(w.i + 1) + "," + std::to_string(w.j + 1) + "," +
         std::to_string(w.k + 1) + ") e" + std::to_string(w.q + 1) + ": " +
         w.value.to_string();
}

json verdict_witness_json(const Verdict::Witness &w) {
  return {{"i", w.i + 1}, {"j", w.j + 1}, {"q", w.q + 1}, {"condition", w.condition + 1},
          {"value", w.value.to_string()}};
}

std::string verdict_witness_text(const Verdict::Witness &w) {
  return "(" + std::to_string(w.i + 1) + "," + std::to_string(w.j + 1) + ") e" +
         std::to_string(w.q + 1) + " condition " + std::to_string(w.condition + 1) + ": " +
         w.value.to_string();
}

json bindings_json(const std::vector<Bindings> &bs) {
  json out = json::array();
  for (const auto &b : bs)
    out.push_back(bindings_to_string(b));
  return out;
}

json pair_json(const NamePair &p) { return json::array({p.first, p.second}); }

json pairs_json(const std::vector<NamePair> &ps) {
  json out = json::array();
  for (const auto &p : ps)
    out.push_back(pair_json(p));
  return out;
}

std::string pairs_text(const std::vector<NamePair> &ps) {
  if (ps.empty())
    return " none";
  std::string s;
  for (const auto &p : ps)
    s += " (" + p.first + "," + p.second + ")";
  return s;
}

std::string ratio(std::uint64_t a, std::uint64_t b) {
  return std::to_string(a) + "/" + std::to_string(b);
}

// The part of `binding` naming parameters declared by `t`. Throws Usage when
// a value is outside the admissible set.
Bindings restrict_binding(const AlgebraTable &t, const Bindings &binding) {
  Bindings out;
  for (const auto &[name, v] : binding) {
    const ParamDecl *p = t.find_param(name);
    if (!p)
      continue;
    if (!p->admissible.contains(v.constant_value()))
      throw Error(ErrorCode::Usage, name + "=" + v.to_string() + " is not admissible for " +
                                        t.name() + " (" + p->admissible.to_string() + ")");
    out[name] = v;
  }
  return out;
}

std::vector<Bindings> bindings_for(const AlgebraTable &t, const RunOptions &opts) {
  if (opts.binding)
    return {restrict_binding(t, *opts.binding)};
  return t.sample_bindings(opts.samples);
}

std::vector<std::string> resolve_names(const Catalog &cat, std::vector<std::string> names) {
  if (names.empty())
    return cat.names();
  for (const auto &n : names)
    cat.literal(n);
  return names;
}

bool family_is_real(const OperatorFamily &fam) {
  if (fam.malformed)
    return true;
  for (std::size_t r = 0; r < fam.chart.dim(); ++r)
    for (std::size_t c = 0; c < fam.chart.dim(); ++c)
      if (!fam.chart.at(r, c).num().is_real() || !fam.chart.at(r, c).den().is_real())
        return false;
  return std::all_of(fam.constraints.begin(), fam.constraints.end(),
                     [](const Poly &p) { return p.is_real(); });
}

} // namespace

Bindings parse_bindings(const std::string &text) {
  Bindings out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorCode::Usage, "expected NAME=VALUE in \"" + item + "\"");
    std::string name = item.substr(0, eq);
    RatExpr v;
    try {
      v = parse_expr(item.substr(eq + 1));
    } catch (const Error &e) {
      throw Error(ErrorCode::Usage, "bad value for " + name + ": " + e.what());
    }
    if (!v.variables().empty())
      throw Error(ErrorCode::Usage, "value for " + name + " must be a number");
    out[name] = v;
  }
  if (out.empty())
    throw Error(ErrorCode::Usage, "empty parameter binding");
  return out;
}

std::vector<Scalar> parse_samples(const std::string &text) {
  std::string values = text;
  if (auto eq = text.find('='); eq != std::string::npos)
    values = text.substr(eq + 1);
  std::vector<Scalar> out;
  std::stringstream ss(values);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      RatExpr v = parse_expr(item);
      out.push_back(v.constant_value());
    } catch (const Error &e) {
      throw Error(ErrorCode::Usage, "bad sample value \"" + item + "\": " + e.what());
    }
  }
  if (out.empty())
    throw Error(ErrorCode::Usage, "empty sample list");
  return out;
}

std::unique_ptr<Dataset> Dataset::load(const std::string &dir) {
  namespace fs = std::filesystem;
  auto ds = std::make_unique<Dataset>();
  ds->dir_ = dir;
  std::vector<ErrataEntry> errata;
  if (fs::exists(fs::path(dir) / "errata.json"))
    errata = parse_errata(read_text_file((fs::path(dir) / "errata.json").string()));
  ds->catalog_ = Catalog(load_catalog((fs::path(dir) / "catalog.json").string()), errata);
  for (auto t : kTypes) {
    fs::path p = fs::path(dir) / "families" / (std::string(operator_type_name(t)) + ".json");
    if (fs::exists(p))
      ds->families_[t] = load_families(p.string());
    else
      ds->families_[t] = {};
  }
  if (fs::exists(fs::path(dir) / "compat-claims.json"))
    ds->claims_ = parse_claims(read_text_file((fs::path(dir) / "compat-claims.json").string()));
  return ds;
}

const std::vector<OperatorFamily> &Dataset::families(OperatorType kind) const {
  return families_.at(kind);
}

namespace {

FamilyAudit safe_audit(const Catalog &cat, const OperatorFamily &fam, bool symbolic_weight) {
  try {
    return audit_family(cat, fam, symbolic_weight);
  } catch (const Error &e) {
    FamilyAudit a;
    a.family = &fam;
    a.dimension = family_dimension(fam);
    a.status = FamilyAudit::Status::Fails;
    a.error = std::string(error_code_name(e.code())) + ": " + e.what();
    return a;
  }
}

} // namespace

const std::vector<FamilyAudit> &Dataset::audits(OperatorType kind, bool symbolic_weight) {
  auto key = std::make_pair(kind, symbolic_weight);
  auto it = audits_.find(key);
  if (it != audits_.end())
    return it->second;
  std::vector<FamilyAudit> out;
  for (const auto &fam : families_.at(kind)) {
    if (!catalog_.contains(fam.algebra))
      throw Error(ErrorCode::UnknownAlgebra,
                  "unknown algebra \"" + fam.algebra + "\" in " + fam.label);
    out.push_back(safe_audit(catalog_, fam, symbolic_weight));
  }
  return audits_.emplace(key, std::move(out)).first->second;
}

// ---------------------------------------------------------------- catalog

namespace {

json params_json(const AlgebraTable &t) {
  json out = json::array();
  for (const auto &p : t.params())
    out.push_back({{"name", p.name}, {"admissible", p.admissible.to_string()}});
  return out;
}

std::string params_text(const AlgebraTable &t) {
  std::string s;
  for (const auto &p : t.params())
    s += (s.empty() ? "" : ", ") + p.name + " in " + p.admissible.to_string();
  return s;
}

json entries_json(const AlgebraTable &t) {
  json out = json::array();
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      for (std::size_t k = 0; k < t.dim(); ++k)
        if (!t.at(i, j, k).is_zero())
          out.push_back(json::array({i + 1, j + 1, k + 1, t.at(i, j, k).to_string()}));
  return out;
}

std::string products_text(const AlgebraTable &t) {
  std::string s;
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < t.dim(); ++k) {
        const RatExpr &c = t.at(i, j, k);
        if (c.is_zero())
          continue;
        std::string coeff = c == RatExpr(1) ? "" : "(" + c.to_string() + ")*";
        rhs += (rhs.empty() ? "" : " + ") + coeff + "e" + std::to_string(k + 1);
      }
      if (!rhs.empty())
        s += "  [e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + "] = " + rhs +
             "\n";
    }
  return s;
}

} // namespace

Report catalog_list_report(const Dataset &ds) {
  Report r;
  r.command = "catalog list";
  std::ostringstream text;
  json algebras = json::array();
  for (const auto &t : ds.catalog().tables()) {
    bool errata = ds.catalog().errata_for(t.name()) != nullptr;
    algebras.push_back({{"name", t.name()},
                        {"dim", t.dim()},
                        {"params", params_json(t)},
                        {"errata", errata}});
    text << t.name();
    if (!t.params().empty())
      text << "  " << params_text(t);
    if (errata)
      text << "  [errata]";
    text << "\n";
  }
  r.data = {{"algebras", algebras}, {"count", algebras.size()}};
  r.text = text.str();
  return r;
}

Report catalog_show_report(const Dataset &ds, const std::string &name) {
  const AlgebraTable &t = ds.catalog().literal(name);
  Report r;
  r.command = "catalog show";
  std::ostringstream text;
  text << t.name() << " (dim " << t.dim() << ")";
  if (!t.params().empty())
    text << "  " << params_text(t);
  text << "\n" << products_text(t);
  r.data = {{"name", t.name()},
            {"dim", t.dim()},
            {"params", params_json(t)},
            {"entries", entries_json(t)},
            {"errata", nullptr}};
  if (const ErrataEntry *e = ds.catalog().errata_for(name)) {
    json alts = json::array();
    text << "errata: " << e->issue << "\n";
    for (const auto &a : e->alternatives) {
      alts.push_back({{"label", a.label}, {"entries", entries_json(a.table)}});
      text << "alternative \"" << a.label << "\""
           << (a.label == e->effective ? " (used downstream)" : "") << "\n"
           << products_text(a.table);
    }
    r.data["errata"] = {{"issue", e->issue},
                        {"failing", e->failing ? json(*e->failing) : json(nullptr)},
                        {"alternatives", alts},
                        {"effective", e->effective}};
  }
  r.text = text.str();
  return r;
}

// ---------------------------------------------------------- check-leibniz

namespace {

struct BindingCheck {
  json data;
  bool zero;
  std::optional<ResidualTensor::Witness> witness;
};

json check_table(const AlgebraTable &t, const RunOptions &opts, bool &all_zero,
                 std::optional<ResidualTensor::Witness> &first, std::ostringstream *text,
                 const std::string &indent) {
  json runs = json::array();
  all_zero = true;
  for (const auto &b : bindings_for(t, opts)) {
    auto w = leibniz_residual(t.bind(b)).first_nonzero();
    json run = {{"binding", bindings_to_string(b)}, {"zero", !w}, {"witness", nullptr}};
    if (w) {
      run["witness"] = witness_json(*w);
      if (all_zero)
        first = w;
      all_zero = false;
    }
    if (text)
      *text << indent << (b.empty() ? "(no parameters)" : bindings_to_string(b)) << ": "
            << (w ? "nonzero at " + witness_text(*w) : "zero residual") << "\n";
    runs.push_back(std::move(run));
  }
  return runs;
}

} // namespace

Report check_leibniz_report(const Dataset &ds, std::vector<std::string> names,
                            const RunOptions &opts) {
  const Catalog &cat = ds.catalog();
  names = resolve_names(cat, names);
  Report r;
  r.command = "check-leibniz";
  std::ostringstream text;
  json out = json::array();
  std::size_t leibniz = 0, via_errata = 0, failing = 0;
  for (const auto &name : names) {
    const AlgebraTable &t = cat.literal(name);
    text << name << "\n";
    bool zero = true;
    std::optional<ResidualTensor::Witness> first;
    json entry = {{"name", name}, {"bindings", check_table(t, opts, zero, first, &text, "  ")}};
    auto symbolic = leibniz_residual(t).first_nonzero();
    entry["symbolic"] = {{"zero", !symbolic},
                         {"witness", symbolic ? witness_json(*symbolic) : json(nullptr)}};
    entry["errata"] = nullptr;
    std::string status = zero && !symbolic ? "leibniz" : "fails";
    if (const ErrataEntry *e = cat.errata_for(name)) {
      json alts = json::array();
      bool some_passes = false;
      for (const auto &a : e->alternatives) {
        bool alt_zero = true;
        std::optional<ResidualTensor::Witness> alt_first;
        text << "  errata alternative \"" << a.label << "\"\n";
        json runs = check_table(a.table, opts, alt_zero, alt_first, &text, "    ");
        bool alt_symbolic = leibniz_residual(a.table).is_zero();
        alts.push_back({{"label", a.label},
                        {"bindings", runs},
                        {"passes", alt_zero && alt_symbolic},
                        {"effective", a.label == e->effective}});
        some_passes = some_passes || (alt_zero && alt_symbolic);
      }
      bool triple_matches = false;
      auto w = first ? first : symbolic;
      if (w && e->failing)
        triple_matches = (*e->failing)[0] == w->i + 1 && (*e->failing)[1] == w->j + 1 &&
                         (*e->failing)[2] == w->k + 1;
      entry["errata"] = {{"issue", e->issue},
                         {"failing", e->failing ? json(*e->failing) : json(nullptr)},
                         {"failing_matches", triple_matches},
                         {"alternatives", alts},
                         {"effective", e->effective}};
      if (status == "fails" && triple_matches && some_passes)
        status = "errata";
    }
    entry["status"] = status;
    text << "  status: " << status << "\n";
    (status == "leibniz" ? leibniz : status == "errata" ? via_errata : failing)++;
    out.push_back(std::move(entry));
  }
  r.passed = failing == 0;
  r.data = {{"algebras", out},
            {"summary", {{"checked", names.size()},
                         {"leibniz", leibniz},
                         {"errata", via_errata},
                         {"fails", failing}}}};
  text << "checked " << names.size() << ": " << leibniz << " leibniz, " << via_errata
       << " explained by errata, " << failing << " failing\n";
  r.text = text.str();
  return r;
}

// -------------------------------------------------------------------- lcs

Report lcs_report(const Dataset &ds, std::vector<std::string> names, const RunOptions &opts) {
  const Catalog &cat = ds.catalog();
  names = resolve_names(cat, names);
  Report r;
  r.command = "lcs";
  std::ostringstream text;
  json out = json::array();
  for (const auto &name : names) {
    const AlgebraTable &t = cat.effective(name);
    json runs = json::array();
    for (const auto &b : bindings_for(t, opts)) {
      auto series = lower_central_series(t, b);
      bool nil = is_nilpotent(series);
      r.passed = r.passed && nil;
      runs.push_back({{"binding", bindings_to_string(b)}, {"series", series}, {"nilpotent", nil}});
      text << name << (b.empty() ? "" : " " + bindings_to_string(b)) << ": [";
      for (std::size_t k = 0; k < series.size(); ++k)
        text << (k ? ", " : "") << series[k];
      text << "]" << (nil ? "" : " not nilpotent") << "\n";
    }
    out.push_back({{"name", name}, {"runs", runs}});
  }
  r.data = {{"algebras", out}, {"all_nilpotent", r.passed}};
  r.text = text.str();
  return r;
}

// -------------------------------------------------------------- equations

Report equations_report(const Dataset &ds, const std::string &name, const RunOptions &opts) {
  if (!opts.op)
    throw Error(ErrorCode::Usage, "equations needs --op");
  const AlgebraTable &base = ds.catalog().effective(name);
  AlgebraTable t = opts.binding ? base.bind(restrict_binding(base, *opts.binding)) : base;
  OperatorKind kind = kind_of(*opts.op, opts.weight);
  EquationSystem sys = build_system(t, kind);
  Report r;
  r.command = "equations";
  std::ostringstream text;
  text << "# " << name << " (" << t.name() << ") " << kind_label(kind) << ", "
       << sys.nonzero_count() << " nonzero of " << sys.equations.size()
       << " equations, max degree " << sys.max_degree_in_unknowns() << "\n";
  json eqs = json::array();
  for (const auto &eq : sys.equations) {
    if (eq.poly.is_zero())
      continue;
    json e = {{"i", eq.i + 1},
              {"j", eq.j + 1},
              {"q", eq.q % t.dim() + 1},
              {"condition", eq.q / t.dim() + 1},
              {"poly", eq.poly.to_string()},
              {"multiplier", eq.multiplier.to_string()}};
    eqs.push_back(e);
    text << "(" << eq.i + 1 << "," << eq.j + 1 << ") e" << eq.q % t.dim() + 1;
    if (kind.conditions() > 1)
      text << " condition " << eq.q / t.dim() + 1;
    text << ": " << eq.poly.to_string() << " = 0";
    if (!(eq.multiplier == Poly(1)))
      text << "  [cleared " << eq.multiplier.to_string() << "]";
    text << "\n";
  }
  r.data = {{"algebra", name},
            {"reading", t.name()},
            {"kind", kind.name()},
            {"weight", kind.type == OperatorType::RotaBaxter ? json(kind.weight.to_string())
                                                             : json(nullptr)},
            {"binding", opts.binding ? bindings_to_string(restrict_binding(base, *opts.binding))
                                     : ""},
            {"unknowns", sys.unknowns},
            {"equations", eqs},
            {"total", sys.equations.size()},
            {"nonzero", sys.nonzero_count()},
            {"max_degree", sys.max_degree_in_unknowns()}};
  r.text = text.str();
  return r;
}

// ----------------------------------------------------------------- verify

Report verify_report(Dataset &ds, const std::vector<OperatorFamily> &families,
                     const RunOptions &opts) {
  Report r;
  r.command = "verify";
  std::ostringstream text;
  json out = json::array();
  std::map<std::string, std::size_t> counts;
  std::size_t verified = 0, holding = 0;
  for (const auto &fam : families) {
    if (!ds.catalog().contains(fam.algebra))
      throw Error(ErrorCode::UnknownAlgebra,
                  "unknown algebra \"" + fam.algebra + "\" in " + fam.label);
    FamilyAudit a = safe_audit(ds.catalog(), fam, opts.symbolic_weight);
    std::string status = audit_status_name(a.status);
    ++counts[status];
    if (a.status != FamilyAudit::Status::Malformed) {
      ++verified;
      holding += a.passed();
    }
    json e = {{"label", fam.label},
              {"algebra", fam.algebra},
              {"kind", fam.kind.name()},
              {"status", status},
              {"dimension", a.dimension},
              {"free", fam.free},
              {"witness", nullptr},
              {"conditions", a.verdict.condition_holds},
              {"holds_at", bindings_json(a.holds_at)},
              {"fails_at", bindings_json(a.fails_at)},
              {"error", a.error},
              {"note", fam.note}};
    if (fam.kind.type == OperatorType::RotaBaxter)
      e["weight"] = fam.kind.weight.to_string();
    if (a.verdict.witness)
      e["witness"] = verdict_witness_json(*a.verdict.witness);
    if (a.symbolic_weight) {
      e["symbolic_weight"] = {{"holds", a.symbolic_weight->holds},
                              {"witness", a.symbolic_weight->witness
                                              ? verdict_witness_json(*a.symbolic_weight->witness)
                                              : json(nullptr)}};
    }
    text << fam.label << ": " << status;
    if (a.status != FamilyAudit::Status::Malformed)
      text << ", dimension " << a.dimension;
    if (!a.passed() && a.verdict.witness)
      text << ", witness " << verdict_witness_text(*a.verdict.witness);
    if (!a.holds_at.empty())
      text << ", holds at " << bindings_json(a.holds_at).dump();
    if (!a.error.empty())
      text << ", " << a.error;
    if (!fam.note.empty())
      text << " [" << fam.note << "]";
    text << "\n";
    out.push_back(std::move(e));
  }
  json summary = {{"families", families.size()},
                  {"verified", verified},
                  {"holds", holding},
                  {"fails", verified - holding},
                  {"pass_rate", ratio(holding, verified)},
                  {"by_status", counts}};
  r.data = {{"families", out}, {"summary", summary}, {"symbolic_weight", opts.symbolic_weight}};
  text << "pass rate " << ratio(holding, verified) << " (" << counts["malformed"]
       << " malformed not verified)";
  for (const auto &[s, n] : counts)
    text << ", " << s << " " << n;
  text << "\n";
  r.text = text.str();
  r.passed = holding == verified;
  return r;
}

// ------------------------------------------------------------- dim-report

Report dim_report(Dataset &ds, const RunOptions &opts) {
  if (!opts.op)
    throw Error(ErrorCode::Usage, "dim-report needs --op");
  const auto &audits = ds.audits(*opts.op, false);
  DimensionReport d = dimension_report(ds.catalog(), audits, *opts.op);
  Report r;
  r.command = "dim-report";
  std::ostringstream text;
  text << "# " << operator_type_name(*opts.op)
       << ": largest verified chart parameter count per algebra (claimed range "
       << d.claimed_min << ".." << d.claimed_max << ")\n";
  json rows = json::array();
  for (const auto &row : d.rows) {
    rows.push_back(
        {{"algebra", row.algebra}, {"max_dimension", row.max_dimension}, {"family", row.family}});
    text << row.algebra << ": " << row.max_dimension << " (" << row.family << ")\n";
  }
  auto opt = [](const std::optional<std::size_t> &v) { return v ? json(*v) : json(nullptr); };
  r.data = {{"kind", operator_type_name(*opts.op)},
            {"measure", "chart parameter count"},
            {"rows", rows},
            {"claimed", {d.claimed_min, d.claimed_max}},
            {"global_min", opt(d.global_min)},
            {"global_max", opt(d.global_max)},
            {"matches_claim", d.discrepancies.empty()},
            {"discrepancies", d.discrepancies},
            {"algebras_without_families", d.algebras_without_families}};
  if (d.global_min)
    text << "global range " << *d.global_min << ".." << *d.global_max << "\n";
  else
    text << "no verified families\n";
  for (const auto &s : d.discrepancies)
    text << "mismatch: " << s << "\n";
  if (!d.algebras_without_families.empty()) {
    text << "no verified family:";
    for (const auto &n : d.algebras_without_families)
      text << " " << n;
    text << "\n";
  }
  r.text = text.str();
  return r;
}

// ---------------------------------------------------- enumerate, coverage

namespace {

const char *kCoverageNote =
    "F_p coverage is evidence about exhaustiveness of the families, not a proof";

struct SweepTotals {
  std::uint64_t total = 0, covered = 0, listed = 0;
};

// Families of `kind` on `name` usable at `binding` for coverage.
std::vector<const OperatorFamily *> usable_families(Dataset &ds, const std::string &name,
                                                    const OperatorKind &kind,
                                                    const Bindings &binding) {
  std::vector<const OperatorFamily *> out;
  for (const auto &a : ds.audits(kind.type, false)) {
    if (a.family->algebra != name || !a.holds_for(binding))
      continue;
    if (kind.type == OperatorType::RotaBaxter && !(a.family->kind.weight == kind.weight))
      continue;
    out.push_back(a.family);
  }
  return out;
}

json coverage_runs(Dataset &ds, const std::string &name, const OperatorKind &kind,
                   const RunOptions &opts, SweepTotals &totals, std::ostringstream &text) {
  const AlgebraTable &t = ds.catalog().effective(name);
  std::size_t cap = opts.cap ? opts.cap : std::numeric_limits<std::size_t>::max();
  EnumerationOptions eo{opts.budget, opts.workers};
  json runs = json::array();
  for (const auto &b : bindings_for(t, opts)) {
    std::string bs = bindings_to_string(b);
    text << "coverage " << name << " " << kind_label(kind) << " p=" << opts.p
         << (bs.empty() ? "" : " " + bs) << "\n";
    AlgebraTable bound = t.bind(b);
    json run = {{"binding", bs}};
    try {
      FpTable check(bound, opts.p); // reduction errors surface here
      (void)check;
    } catch (const Error &e) {
      run["skipped"] = std::string(error_code_name(e.code())) + ": " + e.what();
      text << "  skipped: " << e.what() << "\n";
      runs.push_back(std::move(run));
      continue;
    }
    CoverageReport rep =
        coverage(bound, kind, opts.p, usable_families(ds, name, kind, b), b, eo, cap);
    json uncovered = json::array();
    for (const auto &m : rep.uncovered)
      uncovered.push_back(m.to_string());
    json skipped = json::array();
    for (const auto &[label, why] : rep.families_skipped)
      skipped.push_back({{"family", label}, {"reason", why}});
    run.update({{"total", rep.total},
                {"covered", rep.covered},
                {"uncovered", uncovered},
                {"uncovered_count", rep.total - rep.covered},
                {"families_used", rep.families_used},
                {"families_skipped", skipped}});
    totals.total += rep.total;
    totals.covered += rep.covered;
    totals.listed += rep.uncovered.size();
    text << "  solutions " << rep.total << ", covered " << rep.covered << ", uncovered "
         << rep.total - rep.covered << " (listed " << rep.uncovered.size() << ")\n";
    text << "  families used " << rep.families_used.size() << ", skipped "
         << rep.families_skipped.size() << "\n";
    for (const auto &[label, why] : rep.families_skipped)
      text << "    skipped " << label << ": " << why << "\n";
    for (const auto &m : rep.uncovered)
      text << "    uncovered " << m.to_string() << "\n";
    runs.push_back(std::move(run));
  }
  return runs;
}

} // namespace

Report enumerate_report(Dataset &ds, const std::string &name, const RunOptions &opts) {
  if (!opts.op)
    throw Error(ErrorCode::Usage, "enumerate needs --op");
  ds.catalog().literal(name);
  PrimeField check(opts.p);
  (void)check;
  OperatorKind kind = kind_of(*opts.op, opts.weight);
  Report r;
  r.command = "enumerate";
  std::ostringstream text;
  text << "# " << kCoverageNote << "\n";
  SweepTotals totals;
  json runs = coverage_runs(ds, name, kind, opts, totals, text);
  r.data = {{"algebra", name},
            {"kind", kind.name()},
            {"weight", kind.type == OperatorType::RotaBaxter ? json(kind.weight.to_string())
                                                             : json(nullptr)},
            {"p", opts.p},
            {"total", totals.total},
            {"covered", totals.covered},
            {"runs", runs},
            {"cap", opts.cap},
            {"note", kCoverageNote}};
  r.text = text.str();
  return r;
}

Report coverage_report(Dataset &ds, const RunOptions &opts) {
  PrimeField field(opts.p);
  Report r;
  r.command = "coverage";
  std::ostringstream text;
  text << "# " << kCoverageNote << "\n";
  const Catalog &cat = ds.catalog();

  std::set<std::string> excluded;
  for (auto t : kTypes)
    for (const auto &fam : ds.families(t))
      if (!family_is_real(fam))
        excluded.insert(fam.algebra);
  for (const auto &t : cat.tables())
    if (!cat.effective(t.name()).is_real())
      excluded.insert(t.name());

  std::vector<OperatorType> types;
  if (opts.op)
    types.push_back(*opts.op);
  else
    types.assign(std::begin(kTypes), std::end(kTypes));

  json sweeps = json::array();
  SweepTotals totals;
  for (const auto &name : cat.names()) {
    if (excluded.count(name))
      continue;
    for (auto type : types) {
      OperatorKind kind = kind_of(type, opts.weight);
      json runs = coverage_runs(ds, name, kind, opts, totals, text);
      sweeps.push_back({{"algebra", name}, {"kind", kind.name()}, {"runs", runs}});
    }
  }

  // Round trip: chart(assignment) must be a member of its own chart.
  json trips = json::array();
  std::size_t trip_failures = 0, trip_families = 0;
  for (auto type : types) {
    const auto &audits = ds.audits(type, false);
    for (std::size_t k = 0; k < audits.size(); ++k) {
      const FamilyAudit &a = audits[k];
      const OperatorFamily &fam = *a.family;
      if (excluded.count(fam.algebra) || fam.malformed || (!a.passed() && a.holds_at.empty()))
        continue;
      const AlgebraTable &t = cat.effective(fam.algebra);
      json entry = {{"family", fam.label}};
      std::optional<FpChart> chart;
      std::string why = "no binding at which the family holds";
      for (const auto &b : t.sample_bindings(opts.samples)) {
        if (!a.holds_for(b))
          continue;
        chart = FpChart::compile(fam, opts.p, b, &why);
        if (chart) {
          entry["binding"] = bindings_to_string(b);
          break;
        }
      }
      if (!chart) {
        entry["skipped"] = why;
        trips.push_back(std::move(entry));
        continue;
      }
      std::mt19937_64 rng(opts.seed + k);
      std::size_t trials = 0, failures = 0;
      std::string error;
      for (std::size_t n = 0; n < opts.round_trips; ++n) {
        auto x = chart->random_admissible(rng);
        if (!x) {
          error = "no admissible assignment found";
          break;
        }
        auto m = chart->evaluate(*x);
        ++trials;
        try {
          if (!m || !chart->contains(*m, opts.budget))
            ++failures;
        } catch (const Error &e) {
          ++failures;
          error = e.what();
        }
      }
      ++trip_families;
      trip_failures += failures;
      entry.update({{"trials", trials}, {"failures", failures}, {"error", error}});
      if (failures || !error.empty())
        text << "round trip " << fam.label << ": " << failures << " failures of " << trials
             << (error.empty() ? "" : ", " + error) << "\n";
      trips.push_back(std::move(entry));
    }
  }
  text << "round trips: " << trip_families << " families, " << trip_failures << " failures\n";
  text << "total solutions " << totals.total << ", covered " << totals.covered << ", listed "
       << totals.listed << "\n";

  r.data = {{"p", opts.p},
            {"sweeps", sweeps},
            {"excluded", std::vector<std::string>(excluded.begin(), excluded.end())},
            {"total", totals.total},
            {"covered", totals.covered},
            {"listed_uncovered", totals.listed},
            {"round_trips", trips},
            {"round_trip_failures", trip_failures},
            {"cap", opts.cap},
            {"note", kCoverageNote}};
  r.passed = trip_failures == 0;
  r.text = text.str();
  return r;
}

Report dual_path_report(const Dataset &ds, std::vector<std::string> names,
                        const RunOptions &opts) {
  const Catalog &cat = ds.catalog();
  names = resolve_names(cat, names);
  std::vector<OperatorType> types;
  if (opts.op)
    types.push_back(*opts.op);
  else
    types.assign(std::begin(kTypes), std::end(kTypes));
  Report r;
  r.command = "dual-path";
  std::ostringstream text;
  json runs = json::array();
  std::size_t systems = 0, disagreeing = 0;
  EnumerationOptions eo{opts.budget, opts.workers};
  for (const auto &name : names) {
    const AlgebraTable &t = cat.effective(name);
    if (!t.is_real())
      continue;
    for (const auto &b : bindings_for(t, opts))
      for (auto type : types) {
        OperatorKind kind = kind_of(type, opts.weight);
        json run = {{"algebra", name}, {"kind", kind.name()}, {"binding", bindings_to_string(b)}};
        text << name << " " << kind_label(kind)
             << (b.empty() ? "" : " " + bindings_to_string(b)) << ": ";
        DualPathResult d;
        try {
          d = dual_path_check(t.bind(b), kind, opts.p, eo);
        } catch (const Error &e) {
          if (e.code() == ErrorCode::RefusedSize)
            throw;
          run["skipped"] = std::string(error_code_name(e.code())) + ": " + e.what();
          text << "skipped, " << e.what() << "\n";
          runs.push_back(std::move(run));
          continue;
        }
        ++systems;
        disagreeing += !d.agree();
        run.update({{"scanned", d.scanned},
                    {"compiled", d.compiled_solutions},
                    {"direct", d.direct_solutions},
                    {"disagreements", d.disagreements},
                    {"agree", d.agree()},
                    {"first_disagreement", d.first_disagreement
                                               ? json(d.first_disagreement->to_string())
                                               : json(nullptr)}});
        text << "scanned " << d.scanned << ", compiled " << d.compiled_solutions << ", direct "
             << d.direct_solutions << (d.agree() ? ", agree" : ", DISAGREE") << "\n";
        runs.push_back(std::move(run));
      }
  }
  text << systems << " systems, " << disagreeing << " disagreeing\n";
  r.data = {{"p", opts.p}, {"runs", runs}, {"systems", systems}, {"disagreeing", disagreeing}};
  r.passed = disagreeing == 0;
  r.text = text.str();
  return r;
}

// ---------------------------------------------------------- compatibility

namespace {

const char *kBasisNote = "pairs are compared in the printed basis; no change of basis is searched";

json outcome_json(const PairOutcome &o) {
  json samples = json::object();
  for (const auto &[b, ok] : o.samples)
    samples[b.empty() ? "-" : b] = ok;
  return {{"a", o.a},
          {"b", o.b},
          {"compatible", o.compatible},
          {"claimed", o.claimed},
          {"a_leibniz", o.check.a_leibniz},
          {"b_leibniz", o.check.b_leibniz},
          {"mixed_zero", o.check.mixed_zero},
          {"failing_binding", o.failing_binding},
          {"witness", o.check.witness && !o.compatible ? witness_json(*o.check.witness)
                                                       : json(nullptr)},
          {"combined_witness",
           o.combined_witness ? json(*o.combined_witness) : json(nullptr)},
          {"samples", samples},
          {"symmetric", o.symmetric},
          {"lambda_checks", o.lambda_checks},
          {"lambda_failures", o.lambda_failures}};
}

std::string outcome_text(const PairOutcome &o) {
  std::string s = "(" + o.a + "," + o.b + "): " + (o.compatible ? "compatible" : "not compatible");
  if (!o.compatible && o.check.witness)
    s += (o.failing_binding.empty() ? "" : " at " + o.failing_binding) +
         ", witness " + witness_text(*o.check.witness);
  if (o.combined_witness)
    s += ", lambda1=lambda2=1 breaks the identity at (" +
         std::to_string((*o.combined_witness)[0]) + "," +
         std::to_string((*o.combined_witness)[1]) + "," +
         std::to_string((*o.combined_witness)[2]) + ")";
  if (o.lambda_checks)
    s += ", " + std::to_string(o.lambda_checks - o.lambda_failures) + "/" +
         std::to_string(o.lambda_checks) + " random combined brackets Leibniz";
  if (!o.symmetric)
    s += ", ASYMMETRIC";
  return s + "\n";
}

ScanOptions scan_options(const RunOptions &opts) {
  ScanOptions so;
  so.samples = opts.samples;
  so.seed = opts.seed;
  so.workers = opts.workers;
  return so;
}

} // namespace

Report compat_report(const Dataset &ds, const std::string &a, const std::string &b,
                     const RunOptions &opts) {
  const Catalog &cat = ds.catalog();
  cat.literal(a);
  cat.literal(b);
  Bindings binding;
  if (opts.binding) {
    auto [ta, tb] = pair_tables(cat, a, b);
    Bindings ra = restrict_binding(ta, *opts.binding), rb = restrict_binding(tb, *opts.binding);
    binding.insert(ra.begin(), ra.end());
    binding.insert(rb.begin(), rb.end());
  }
  PairOutcome o = compat_pair(cat, a, b, binding, scan_options(opts));
  Report r;
  r.command = "compat";
  r.data = outcome_json(o);
  r.data["binding"] = bindings_to_string(binding);
  r.data["note"] = kBasisNote;
  r.text = outcome_text(o);
  r.passed = o.compatible && o.lambda_failures == 0 && o.symmetric;
  return r;
}

Report compat_scan_report(const Dataset &ds, const RunOptions &opts) {
  PairReport rep = compat_scan(ds.catalog(), ds.claims(), scan_options(opts));
  Report r;
  r.command = "compat-scan";
  std::ostringstream text;
  text << "# " << kBasisNote << "\n";
  std::size_t diag_ok = 0, lambda_fail = 0, asym = 0;
  json diag = json::array(), pairs = json::array();
  for (const auto &o : rep.diagonal) {
    diag_ok += o.compatible;
    lambda_fail += o.lambda_failures;
    asym += !o.symmetric;
    diag.push_back(outcome_json(o));
  }
  for (const auto &o : rep.pairs) {
    lambda_fail += o.lambda_failures;
    asym += !o.symmetric;
    pairs.push_back(outcome_json(o));
  }
  std::string samples;
  for (const auto &s : opts.samples)
    samples += (samples.empty() ? "" : ",") + s.to_string();
  r.data = {{"compatible", pairs_json(rep.compatible)},
            {"claimed_but_failing", pairs_json(rep.claimed_but_failing)},
            {"passing_but_unclaimed", pairs_json(rep.passing_but_unclaimed)},
            {"unmatchable_claims", pairs_json(rep.unmatchable_claims)},
            {"sample_exceptions", pairs_json(rep.sample_exceptions)},
            {"claims_total", rep.claims_total},
            {"pairs_checked", rep.pairs.size()},
            {"diagonal_checked", rep.diagonal.size()},
            {"diagonal_compatible", diag_ok},
            {"lambda_trials", rep.lambda_trials},
            {"lambda_failures", lambda_fail},
            {"asymmetric", asym},
            {"samples", samples},
            {"diagonal", diag},
            {"pairs", pairs},
            {"note", kBasisNote}};
  text << "diagonal: " << diag_ok << "/" << rep.diagonal.size() << " self-compatible\n";
  text << "pairs checked: " << rep.pairs.size() << ", compatible " << rep.compatible.size()
       << "\n";
  text << "claimed pairs: " << rep.claims_total << "\n";
  text << "compatible:" << pairs_text(rep.compatible) << "\n";
  text << "claimed but failing:" << pairs_text(rep.claimed_but_failing) << "\n";
  text << "passing but unclaimed:" << pairs_text(rep.passing_but_unclaimed) << "\n";
  text << "unmatchable claims:" << pairs_text(rep.unmatchable_claims) << "\n";
  text << "sample exceptions:" << pairs_text(rep.sample_exceptions) << "\n";
  text << "random combined brackets: " << rep.lambda_trials << " per compatible pair, "
       << lambda_fail << " failures\n";
  for (const auto &o : rep.pairs)
    if (!o.compatible && o.claimed)
      text << outcome_text(o);
  r.passed = diag_ok == rep.diagonal.size() && lambda_fail == 0 && asym == 0;
  r.text = text.str();
  return r;
}

} // namespace leibniz
