#include "leibniz/operators.hpp"

#include "leibniz/error.hpp"

#include <algorithm>

namespace leibniz {

const char *operator_type_name(OperatorType t) {
  switch (t) {
  case OperatorType::RotaBaxter:
    return "rota-baxter";
  case OperatorType::Nijenhuis:
    return "nijenhuis";
  case OperatorType::Reynolds:
    return "reynolds";
  case OperatorType::Averaging:
    return "averaging";
  }
  return "?";
}

OperatorType parse_operator_type(const std::string &name) {
  for (auto t : {OperatorType::RotaBaxter, OperatorType::Nijenhuis, OperatorType::Reynolds,
                 OperatorType::Averaging})
    if (name == operator_type_name(t))
      return t;
  throw Error(ErrorCode::Usage, "unknown operator kind \"" + name +
                                    "\" (expected rota-baxter|nijenhuis|reynolds|averaging)");
}

std::string OperatorKind::unknown_prefix() const {
  switch (type) {
  case OperatorType::RotaBaxter:
    return "r";
  case OperatorType::Nijenhuis:
    return "k";
  case OperatorType::Reynolds:
    return "a";
  case OperatorType::Averaging:
    return "b";
  }
  return "u";
}

OperatorMatrix OperatorMatrix::identity(std::size_t dim) {
  OperatorMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    m.at(i, i) = RatExpr(1);
  return m;
}

OperatorMatrix OperatorMatrix::unknowns(std::size_t dim, const std::string &prefix) {
  OperatorMatrix m(dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      std::string name = dim < 10 ? prefix + std::to_string(j + 1) + std::to_string(i + 1)
                                  : prefix + std::to_string(j + 1) + "_" +
                                        std::to_string(i + 1);
      m.at(j, i) = RatExpr::var(name);
    }
  return m;
}

Vector OperatorMatrix::column(std::size_t col) const {
  Vector v(dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    v[j] = at(j, col);
  return v;
}

Vector OperatorMatrix::apply(const Vector &v) const {
  Vector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (v[i].is_zero())
      continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (!at(j, i).is_zero())
        out[j] += at(j, i) * v[i];
  }
  return out;
}

OperatorMatrix OperatorMatrix::scaled(const RatExpr &c) const {
  OperatorMatrix out(dim_);
  for (std::size_t n = 0; n < m_.size(); ++n)
    out.m_[n] = m_[n] * c;
  return out;
}

OperatorMatrix OperatorMatrix::substitute(const Bindings &b) const {
  OperatorMatrix out(dim_);
  for (std::size_t n = 0; n < m_.size(); ++n)
    out.m_[n] = m_[n].is_constant() ? m_[n] : m_[n].substitute(b);
  return out;
}

std::set<std::string> OperatorMatrix::variables() const {
  std::set<std::string> out;
  for (const auto &e : m_) {
    auto v = e.variables();
    out.insert(v.begin(), v.end());
  }
  return out;
}

bool OperatorResidual::is_zero() const {
  return std::all_of(r_.begin(), r_.end(), [](const RatExpr &e) { return e.is_zero(); });
}

bool OperatorResidual::condition_is_zero(std::size_t condition) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t q = 0; q < dim_; ++q)
        if (!at(i, j, condition * dim_ + q).is_zero())
          return false;
  return true;
}

namespace {

Vector add(Vector a, const Vector &b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] += b[k];
  return a;
}

Vector sub(Vector a, const Vector &b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] -= b[k];
  return a;
}

Vector scale(Vector a, const RatExpr &c) {
  for (auto &x : a)
    x *= c;
  return a;
}

} // namespace

OperatorResidual operator_residual(const AlgebraTable &a, const OperatorKind &kind,
                                   const OperatorMatrix &t) {
  const std::size_t n = a.dim();
  if (t.dim() != n)
    throw Error(ErrorCode::DimensionMismatch,
                "operator matrix of size " + std::to_string(t.dim()) + " on algebra " +
                    a.name() + " of dimension " + std::to_string(n));
  OperatorResidual res(n, kind.conditions());
  std::vector<Vector> images(n);
  for (std::size_t i = 0; i < n; ++i)
    images[i] = t.column(i);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector x = basis_vector(n, i), y = basis_vector(n, j);
      const Vector &tx = images[i], &ty = images[j];
      Vector txty = bracket(a, tx, ty);
      Vector txy = bracket(a, tx, y);
      Vector xty = bracket(a, x, ty);
      std::vector<Vector> out;
      switch (kind.type) {
      case OperatorType::RotaBaxter: {
        Vector inner = add(txy, xty);
        if (!kind.weight.is_zero())
          inner = add(inner, scale(bracket(a, x, y), kind.weight));
        out.push_back(sub(txty, t.apply(inner)));
        break;
      }
      case OperatorType::Nijenhuis:
        out.push_back(sub(txty, t.apply(sub(add(txy, xty), t.apply(bracket(a, x, y))))));
        break;
      case OperatorType::Reynolds:
        out.push_back(sub(txty, t.apply(sub(add(xty, txy), txty))));
        break;
      case OperatorType::Averaging:
        out.push_back(sub(txty, t.apply(txy)));
        out.push_back(sub(txty, t.apply(xty)));
        break;
      }
      for (std::size_t c = 0; c < out.size(); ++c)
        for (std::size_t q = 0; q < n; ++q)
          res.at(i, j, c * n + q) = std::move(out[c][q]);
    }
  return res;
}

std::size_t EquationSystem::nonzero_count() const {
  return std::count_if(equations.begin(), equations.end(),
                       [](const Equation &e) { return !e.poly.is_zero(); });
}

unsigned EquationSystem::max_degree_in_unknowns() const {
  std::set<std::string> names(unknowns.begin(), unknowns.end());
  unsigned d = 0;
  for (const auto &e : equations)
    d = std::max(d, e.poly.degree_in(names));
  return d;
}

EquationSystem build_system(const AlgebraTable &a, const OperatorKind &kind) {
  const std::size_t n = a.dim();
  OperatorMatrix t = OperatorMatrix::unknowns(n, kind.unknown_prefix());
  OperatorResidual r = operator_residual(a, kind, t);
  EquationSystem sys{a.name(), kind, {}, {}};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      sys.unknowns.push_back(*t.at(j, i).variables().begin());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t q = 0; q < r.outputs(); ++q) {
        const RatExpr &e = r.at(i, j, q);
        sys.equations.push_back({i, j, q, e.num(), e.den()});
      }
  return sys;
}

} // namespace leibniz
