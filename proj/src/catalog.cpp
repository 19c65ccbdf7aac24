#include "leibniz/catalog.hpp"

#include "leibniz/error.hpp"
#include "leibniz/expr_parser.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace leibniz {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string &pointer, const std::string &msg) {
  throw Error(ErrorCode::Schema, "schema violation at " + (pointer.empty() ? "/" : pointer) +
                                     ": " + msg);
}

const json &member(const json &obj, const std::string &key, const std::string &ptr) {
  if (!obj.is_object())
    schema_error(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    schema_error(ptr, "missing \"" + key + "\"");
  return *it;
}

std::string string_at(const json &v, const std::string &ptr) {
  if (!v.is_string())
    schema_error(ptr, "expected a string");
  return v.get<std::string>();
}

std::vector<ParamDecl> parse_params(const json &arr, const std::string &ptr) {
  if (!arr.is_array())
    schema_error(ptr, "expected an array");
  std::vector<ParamDecl> out;
  for (std::size_t n = 0; n < arr.size(); ++n) {
    std::string p = ptr + "/" + std::to_string(n);
    ParamDecl d;
    d.name = string_at(member(arr[n], "name", p), p + "/name");
    try {
      d.admissible = Admissible::parse(string_at(member(arr[n], "admissible", p),
                                                 p + "/admissible"));
    } catch (const Error &e) {
      schema_error(p + "/admissible", e.what());
    }
    out.push_back(std::move(d));
  }
  return out;
}

AlgebraTable parse_table(const std::string &name, std::size_t dim,
                         std::vector<ParamDecl> params, const json &entries,
                         const std::string &ptr) {
  if (!entries.is_array())
    schema_error(ptr, "expected an array");
  AlgebraTable t(name, dim, std::move(params));
  std::vector<bool> seen(dim * dim * dim);
  for (std::size_t n = 0; n < entries.size(); ++n) {
    std::string p = ptr + "/" + std::to_string(n);
    const json &e = entries[n];
    if (!e.is_array() || e.size() != 4)
      schema_error(p, "expected [i, j, k, \"expr\"]");
    std::size_t idx[3];
    for (int a = 0; a < 3; ++a) {
      if (!e[a].is_number_integer() || e[a].get<long>() < 1 ||
          e[a].get<long>() > static_cast<long>(dim))
        schema_error(p + "/" + std::to_string(a), "index out of range 1.." + std::to_string(dim));
      idx[a] = e[a].get<std::size_t>() - 1;
    }
    std::size_t flat = (idx[0] * dim + idx[1]) * dim + idx[2];
    if (seen[flat])
      schema_error(p, "duplicate entry");
    seen[flat] = true;
    RatExpr v;
    try {
      v = parse_expr(string_at(e[3], p + "/3"));
    } catch (const Error &err) {
      schema_error(p + "/3", err.what());
    }
    for (const auto &var : v.variables())
      if (!t.find_param(var))
        schema_error(p + "/3", "undeclared parameter \"" + var + "\"");
    t.set(idx[0], idx[1], idx[2], std::move(v));
  }
  return t;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::Schema, std::string("malformed JSON: ") + e.what());
  }
}

} // namespace

std::vector<AlgebraTable> parse_catalog(std::string_view json_text) {
  json doc = parse_json(json_text);
  if (!doc.is_array() || doc.empty())
    schema_error("", "catalog must be a non-empty array");
  std::vector<AlgebraTable> out;
  for (std::size_t n = 0; n < doc.size(); ++n) {
    std::string p = "/" + std::to_string(n);
    std::string name = string_at(member(doc[n], "name", p), p + "/name");
    const json &dim = member(doc[n], "dim", p);
    if (!dim.is_number_integer() || dim.get<long>() < 1)
      schema_error(p + "/dim", "expected a positive integer");
    for (const auto &t : out)
      if (t.name() == name)
        schema_error(p + "/name", "duplicate algebra name \"" + name + "\"");
    std::vector<ParamDecl> params;
    if (doc[n].contains("params"))
      params = parse_params(doc[n]["params"], p + "/params");
    out.push_back(parse_table(name, dim.get<std::size_t>(), std::move(params),
                              member(doc[n], "entries", p), p + "/entries"));
  }
  return out;
}

std::vector<AlgebraTable> load_catalog(const std::string &path) {
  return parse_catalog(read_text_file(path));
}

std::vector<ErrataEntry> parse_errata(std::string_view json_text) {
  json doc = parse_json(json_text);
  if (!doc.is_array())
    schema_error("", "errata must be an array");
  std::vector<ErrataEntry> out;
  for (std::size_t n = 0; n < doc.size(); ++n) {
    std::string p = "/" + std::to_string(n);
    ErrataEntry e;
    e.algebra = string_at(member(doc[n], "algebra", p), p + "/algebra");
    e.issue = string_at(member(doc[n], "issue", p), p + "/issue");
    const json &failing = member(doc[n], "failing", p);
    if (!failing.is_null()) {
      if (!failing.is_array() || failing.size() != 3)
        schema_error(p + "/failing", "expected [i, j, k] or null");
      e.failing = std::array<std::size_t, 3>{failing[0].get<std::size_t>(),
                                             failing[1].get<std::size_t>(),
                                             failing[2].get<std::size_t>()};
    }
    const json &alts = member(doc[n], "alternatives", p);
    if (!alts.is_array())
      schema_error(p + "/alternatives", "expected an array");
    for (std::size_t a = 0; a < alts.size(); ++a) {
      std::string ap = p + "/alternatives/" + std::to_string(a);
      std::string label = string_at(member(alts[a], "label", ap), ap + "/label");
      std::size_t dim = member(alts[a], "dim", ap).get<std::size_t>();
      std::vector<ParamDecl> params;
      if (alts[a].contains("params"))
        params = parse_params(alts[a]["params"], ap + "/params");
      e.alternatives.push_back(
          {label, parse_table(e.algebra, dim, std::move(params),
                              member(alts[a], "entries", ap), ap + "/entries")});
    }
    if (doc[n].contains("effective"))
      e.effective = string_at(doc[n]["effective"], p + "/effective");
    if (!e.effective.empty()) {
      bool found = false;
      for (const auto &r : e.alternatives)
        found = found || r.label == e.effective;
      if (!found)
        schema_error(p + "/effective", "no alternative labelled \"" + e.effective + "\"");
    }
    out.push_back(std::move(e));
  }
  return out;
}

Catalog::Catalog(std::vector<AlgebraTable> tables, std::vector<ErrataEntry> errata)
    : tables_(std::move(tables)), errata_(std::move(errata)) {
  for (const auto &e : errata_)
    if (!contains(e.algebra))
      throw Error(ErrorCode::Schema, "errata names unknown algebra \"" + e.algebra + "\"");
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto &t : tables_)
    out.push_back(t.name());
  return out;
}

bool Catalog::contains(const std::string &name) const {
  for (const auto &t : tables_)
    if (t.name() == name)
      return true;
  return false;
}

const AlgebraTable &Catalog::literal(const std::string &name) const {
  for (const auto &t : tables_)
    if (t.name() == name)
      return t;
  throw Error(ErrorCode::UnknownAlgebra, "unknown algebra \"" + name + "\"");
}

const ErrataEntry *Catalog::errata_for(const std::string &name) const {
  for (const auto &e : errata_)
    if (e.algebra == name)
      return &e;
  return nullptr;
}

const AlgebraTable &Catalog::effective(const std::string &name) const {
  const AlgebraTable &lit = literal(name);
  const ErrataEntry *e = errata_for(name);
  if (!e || e->effective.empty())
    return lit;
  for (const auto &r : e->alternatives)
    if (r.label == e->effective)
      return r.table;
  return lit;
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace leibniz
