#include "leibniz/algebra.hpp"

#include "leibniz/error.hpp"
#include "leibniz/expr_parser.hpp"

#include <algorithm>

namespace leibniz {

Admissible Admissible::parse(const std::string &text) {
  auto parse_set = [&](std::string body) {
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
      throw Error(ErrorCode::Schema, "bad admissible set: " + text);
    body = body.substr(1, body.size() - 2);
    std::vector<Scalar> values;
    std::size_t start = 0;
    while (start <= body.size()) {
      std::size_t comma = body.find(',', start);
      std::string item = body.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start);
      RatExpr v = parse_expr(item);
      if (!v.is_constant())
        throw Error(ErrorCode::Schema, "admissible value is not a constant: " + item);
      values.push_back(v.constant_value());
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
    return values;
  };
  if (text == "any")
    return Admissible(Kind::Any, {});
  const std::string except = "any except ";
  if (text.rfind(except, 0) == 0)
    return Admissible(Kind::AnyExcept, parse_set(text.substr(except.size())));
  if (!text.empty() && text.front() == '{')
    return Admissible(Kind::Finite, parse_set(text));
  throw Error(ErrorCode::Schema, "bad admissible set: " + text);
}

bool Admissible::contains(const Scalar &v) const {
  bool listed = std::find(values_.begin(), values_.end(), v) != values_.end();
  switch (kind_) {
  case Kind::Any:
    return true;
  case Kind::AnyExcept:
    return !listed;
  case Kind::Finite:
    return listed;
  }
  return false;
}

std::vector<Scalar> Admissible::samples(const std::vector<Scalar> &sample_set) const {
  std::vector<Scalar> out;
  for (const auto &v : sample_set)
    if (contains(v))
      out.push_back(v);
  return out;
}

std::string Admissible::to_string() const {
  auto set = [&] {
    std::string s = "{";
    for (std::size_t n = 0; n < values_.size(); ++n)
      s += (n ? "," : "") + values_[n].to_string();
    return s + "}";
  };
  switch (kind_) {
  case Kind::Any:
    return "any";
  case Kind::AnyExcept:
    return "any except " + set();
  case Kind::Finite:
    return set();
  }
  return "";
}

const std::vector<Scalar> &default_param_samples() {
  static const std::vector<Scalar> samples{Scalar(0), Scalar(1), Scalar(2), Scalar(5)};
  return samples;
}

AlgebraTable::AlgebraTable(std::string name, std::size_t dim, std::vector<ParamDecl> params)
    : name_(std::move(name)), dim_(dim), params_(std::move(params)),
      c_(dim * dim * dim) {}

const ParamDecl *AlgebraTable::find_param(const std::string &name) const {
  for (const auto &p : params_)
    if (p.name == name)
      return &p;
  return nullptr;
}

bool AlgebraTable::is_zero_product(std::size_t i, std::size_t j) const {
  for (std::size_t k = 0; k < dim_; ++k)
    if (!at(i, j, k).is_zero())
      return false;
  return true;
}

std::set<std::string> AlgebraTable::variables() const {
  std::set<std::string> out;
  for (const auto &e : c_) {
    auto v = e.variables();
    out.insert(v.begin(), v.end());
  }
  return out;
}

bool AlgebraTable::is_real() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const RatExpr &e) { return e.num().is_real() && e.den().is_real(); });
}

AlgebraTable AlgebraTable::bind(const Bindings &bindings) const {
  std::vector<ParamDecl> rest;
  for (const auto &p : params_)
    if (!bindings.count(p.name))
      rest.push_back(p);
  AlgebraTable out(name_, dim_, std::move(rest));
  for (std::size_t n = 0; n < c_.size(); ++n)
    out.c_[n] = c_[n].is_constant() ? c_[n] : c_[n].substitute(bindings);
  return out;
}

AlgebraTable
AlgebraTable::rename_params(const std::map<std::string, std::string> &renames) const {
  Bindings b;
  std::vector<ParamDecl> params = params_;
  for (auto &p : params) {
    auto it = renames.find(p.name);
    if (it != renames.end()) {
      b[p.name] = RatExpr::var(it->second);
      p.name = it->second;
    }
  }
  AlgebraTable out(name_, dim_, std::move(params));
  for (std::size_t n = 0; n < c_.size(); ++n)
    out.c_[n] = c_[n].is_constant() ? c_[n] : c_[n].substitute(b);
  return out;
}

std::vector<Bindings>
AlgebraTable::sample_bindings(const std::vector<Scalar> &sample_set) const {
  std::vector<Bindings> out{Bindings{}};
  for (const auto &p : params_) {
    std::vector<Bindings> next;
    for (const auto &b : out)
      for (const auto &v : p.admissible.samples(sample_set)) {
        Bindings nb = b;
        nb[p.name] = RatExpr(v);
        next.push_back(std::move(nb));
      }
    out = std::move(next);
  }
  return out;
}

AlgebraTable abelian_table(std::size_t dim, const std::string &name) {
  return AlgebraTable(name, dim);
}

Vector basis_vector(std::size_t dim, std::size_t i) {
  Vector v(dim);
  v.at(i) = RatExpr(1);
  return v;
}

Vector bracket(const AlgebraTable &a, const Vector &u, const Vector &v) {
  const std::size_t n = a.dim();
  if (u.size() != n || v.size() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "bracket of vectors of length " + std::to_string(u.size()) + " and " +
                    std::to_string(v.size()) + " in dimension " + std::to_string(n));
  Vector w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero())
      continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j].is_zero() || a.is_zero_product(i, j))
        continue;
      RatExpr uv = u[i] * v[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!a.at(i, j, k).is_zero())
          w[k] += uv * a.at(i, j, k);
    }
  }
  return w;
}

bool ResidualTensor::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const RatExpr &e) { return e.is_zero(); });
}

std::optional<ResidualTensor::Witness> ResidualTensor::first_nonzero() const {
  const std::size_t n = dim_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q)
          if (!at(i, j, k, q).is_zero())
            return Witness{i, j, k, q, at(i, j, k, q)};
  return std::nullopt;
}

ResidualTensor composed_residual(const AlgebraTable &in, const AlgebraTable &out) {
  const std::size_t n = in.dim();
  if (out.dim() != n)
    throw Error(ErrorCode::DimensionMismatch,
                in.name() + " and " + out.name() + " have different dimensions");
  ResidualTensor r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t p = 0; p < n; ++p) {
          // [e_i, [e_j, e_k]]
          const RatExpr &jk = in.at(j, k, p);
          if (!jk.is_zero())
            for (std::size_t q = 0; q < n; ++q)
              if (!out.at(i, p, q).is_zero())
                r.at(i, j, k, q) += jk * out.at(i, p, q);
          // -[[e_i, e_j], e_k]
          const RatExpr &ij = in.at(i, j, p);
          if (!ij.is_zero())
            for (std::size_t q = 0; q < n; ++q)
              if (!out.at(p, k, q).is_zero())
                r.at(i, j, k, q) -= ij * out.at(p, k, q);
          // +[[e_i, e_k], e_j]
          const RatExpr &ik = in.at(i, k, p);
          if (!ik.is_zero())
            for (std::size_t q = 0; q < n; ++q)
              if (!out.at(p, j, q).is_zero())
                r.at(i, j, k, q) += ik * out.at(p, j, q);
        }
  return r;
}

ResidualTensor leibniz_residual(const AlgebraTable &a) { return composed_residual(a, a); }

namespace {

// Row-reduces `rows` in place over Scalar and returns the nonzero rows.
std::vector<std::vector<Scalar>> echelon_basis(std::vector<std::vector<Scalar>> rows,
                                               std::size_t n) {
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t col = 0; col < n && !rows.empty(); ++col) {
    auto pivot = std::find_if(rows.begin(), rows.end(),
                              [&](const auto &r) { return !r[col].is_zero(); });
    if (pivot == rows.end())
      continue;
    std::vector<Scalar> pr = *pivot;
    rows.erase(pivot);
    Scalar inv = Scalar(1) / pr[col];
    for (auto &x : pr)
      x *= inv;
    for (auto &r : rows) {
      if (r[col].is_zero())
        continue;
      Scalar f = r[col];
      for (std::size_t c = col; c < n; ++c)
        r[c] -= f * pr[c];
    }
    basis.push_back(std::move(pr));
  }
  return basis;
}

} // namespace

std::vector<std::size_t> lower_central_series(const AlgebraTable &a,
                                              const Bindings &bindings) {
  AlgebraTable t = a.bind(bindings);
  const std::size_t n = t.dim();
  std::vector<Scalar> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const RatExpr &e = t.at(i, j, k);
        if (!e.is_constant())
          throw Error(ErrorCode::UnboundParameter,
                      a.name() + ": unbound parameter in " + e.to_string());
        c[(i * n + j) * n + k] = e.constant_value();
      }

  std::vector<std::vector<Scalar>> current;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Scalar> row(n);
    row[i] = Scalar(1);
    current.push_back(std::move(row));
  }
  std::vector<std::size_t> dims{n};
  while (!current.empty()) {
    std::vector<std::vector<Scalar>> products;
    for (const auto &u : current)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<Scalar> w(n);
        for (std::size_t i = 0; i < n; ++i) {
          if (u[i].is_zero())
            continue;
          for (std::size_t k = 0; k < n; ++k)
            w[k] += u[i] * c[(i * n + b) * n + k];
        }
        products.push_back(std::move(w));
      }
    auto next = echelon_basis(std::move(products), n);
    if (next.size() == current.size())
      break; // stabilized above zero
    dims.push_back(next.size());
    current = std::move(next);
  }
  return dims;
}

bool is_nilpotent(const std::vector<std::size_t> &series) {
  return !series.empty() && series.back() == 0;
}

AlgebraTable combined_bracket(const AlgebraTable &a, const AlgebraTable &b,
                              const RatExpr &lambda1, const RatExpr &lambda2) {
  const std::size_t n = a.dim();
  if (b.dim() != n)
    throw Error(ErrorCode::DimensionMismatch,
                a.name() + " and " + b.name() + " have different dimensions");
  std::vector<ParamDecl> params = a.params();
  for (const auto &p : b.params())
    if (!a.find_param(p.name))
      params.push_back(p);
  AlgebraTable out(a.name() + "+" + b.name(), n, std::move(params));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        out.set(i, j, k, lambda1 * a.at(i, j, k) + lambda2 * b.at(i, j, k));
  return out;
}

} // namespace leibniz
