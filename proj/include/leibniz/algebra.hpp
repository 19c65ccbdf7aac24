#pragma once

#include "leibniz/rat_expr.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace leibniz {

// Admissible values of an algebra parameter: every complex value, every
// value except a finite set, or a finite set.
class Admissible {
public:
  enum class Kind { Any, AnyExcept, Finite };

  Admissible() = default;
  Admissible(Kind kind, std::vector<Scalar> values)
      : kind_(kind), values_(std::move(values)) {}

  // "any", "any except {1}", "{0,1}".
  static Admissible parse(const std::string &text);

  Kind kind() const { return kind_; }
  const std::vector<Scalar> &values() const { return values_; }
  bool contains(const Scalar &v) const;
  bool is_finite() const { return kind_ == Kind::Finite; }
  // The sample set intersected with the admissible set.
  std::vector<Scalar> samples(const std::vector<Scalar> &sample_set) const;
  std::string to_string() const;

private:
  Kind kind_ = Kind::Any;
  std::vector<Scalar> values_;
};

struct ParamDecl {
  std::string name;
  Admissible admissible;
};

// Default sampling set for parameterized algebras.
const std::vector<Scalar> &default_param_samples();

// Structure constants c[i][j][k]: coefficient of e_k in [e_i, e_j]. Indices
// are 0-based in code and 1-based in files and reports.
class AlgebraTable {
public:
  AlgebraTable() = default;
  AlgebraTable(std::string name, std::size_t dim, std::vector<ParamDecl> params = {});

  const std::string &name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::vector<ParamDecl> &params() const { return params_; }
  const ParamDecl *find_param(const std::string &name) const;

  const RatExpr &at(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, RatExpr v) {
    c_[(i * dim_ + j) * dim_ + k] = std::move(v);
  }
  bool is_zero_product(std::size_t i, std::size_t j) const;

  std::set<std::string> variables() const;
  bool is_real() const;

  // Substitutes the bound parameters; their declarations are dropped.
  AlgebraTable bind(const Bindings &bindings) const;
  // Renames parameters, keeping declarations in step.
  AlgebraTable rename_params(const std::map<std::string, std::string> &renames) const;

  // All combinations of sample values for the declared parameters. A table
  // without parameters yields one empty binding.
  std::vector<Bindings> sample_bindings(const std::vector<Scalar> &sample_set) const;

private:
  std::string name_;
  std::size_t dim_ = 0;
  std::vector<ParamDecl> params_;
  std::vector<RatExpr> c_;
};

AlgebraTable abelian_table(std::size_t dim, const std::string &name = "abelian");

using Vector = std::vector<RatExpr>;

Vector basis_vector(std::size_t dim, std::size_t i);
// w_k = sum_{i,j} u_i v_j c[i][j][k]. Throws DimensionMismatch.
Vector bracket(const AlgebraTable &a, const Vector &u, const Vector &v);

// Rank-4 tensor indexed (x-basis, y-basis, z-basis, output-basis).
class ResidualTensor {
public:
  explicit ResidualTensor(std::size_t dim = 0)
      : dim_(dim), entries_(dim * dim * dim * dim) {}

  std::size_t dim() const { return dim_; }
  RatExpr &at(std::size_t i, std::size_t j, std::size_t k, std::size_t q) {
    return entries_[((i * dim_ + j) * dim_ + k) * dim_ + q];
  }
  const RatExpr &at(std::size_t i, std::size_t j, std::size_t k, std::size_t q) const {
    return entries_[((i * dim_ + j) * dim_ + k) * dim_ + q];
  }
  bool is_zero() const;

  struct Witness {
    std::size_t i, j, k, q;
    RatExpr value;
  };
  // First nonzero entry in (i, j, k, q) order.
  std::optional<Witness> first_nonzero() const;

private:
  std::size_t dim_;
  std::vector<RatExpr> entries_;
};

// Entry (i,j,k,q): the e_q coefficient of
//   [e_i, [e_j, e_k]_in]_out - [[e_i, e_j]_in, e_k]_out + [[e_i, e_k]_in, e_j]_out.
// The Leibniz residual is the case in == out; the mixed compatibility
// residual is the sum over both orders.
ResidualTensor composed_residual(const AlgebraTable &inner, const AlgebraTable &outer);

// [x,[y,z]] - [[x,y],z] + [[x,z],y] on basis triples. Zero iff the table is a
// right Leibniz algebra.
ResidualTensor leibniz_residual(const AlgebraTable &a);

// dims of L^1 = L, L^{k+1} = span [L^k, L], until it reaches 0 or stops
// shrinking. Throws UnboundParameter if a parameter is left after binding.
std::vector<std::size_t> lower_central_series(const AlgebraTable &a,
                                              const Bindings &bindings = {});
bool is_nilpotent(const std::vector<std::size_t> &series);

// lambda1 * c_A + lambda2 * c_B. Throws DimensionMismatch.
AlgebraTable combined_bracket(const AlgebraTable &a, const AlgebraTable &b,
                              const RatExpr &lambda1, const RatExpr &lambda2);

} // namespace leibniz
