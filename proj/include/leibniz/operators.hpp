#pragma once

#include "leibniz/algebra.hpp"

#include <string>
#include <vector>

namespace leibniz {

enum class OperatorType { RotaBaxter, Nijenhuis, Reynolds, Averaging };

// "rota-baxter", "nijenhuis", "reynolds", "averaging".
const char *operator_type_name(OperatorType t);
// Throws Usage on an unknown name.
OperatorType parse_operator_type(const std::string &name);

struct OperatorKind {
  OperatorType type = OperatorType::RotaBaxter;
  RatExpr weight; // Rota-Baxter only

  static OperatorKind rota_baxter(RatExpr weight) {
    return {OperatorType::RotaBaxter, std::move(weight)};
  }
  static OperatorKind nijenhuis() { return {OperatorType::Nijenhuis, {}}; }
  static OperatorKind reynolds() { return {OperatorType::Reynolds, {}}; }
  static OperatorKind averaging() { return {OperatorType::Averaging, {}}; }

  const char *name() const { return operator_type_name(type); }
  // Averaging is two independent one-sided conditions.
  std::size_t conditions() const { return type == OperatorType::Averaging ? 2 : 1; }
  // Letter used for unknown matrix entries: r, k, a, b.
  std::string unknown_prefix() const;
};

// Linear map in the basis: T(e_i) = sum_j at(j, i) e_j, so at(row, col) is
// the e_row coefficient of the image of e_col.
class OperatorMatrix {
public:
  explicit OperatorMatrix(std::size_t dim = 0) : dim_(dim), m_(dim * dim) {}

  static OperatorMatrix identity(std::size_t dim);
  // Entry (j, i) is the parameter <prefix><j><i> (1-based).
  static OperatorMatrix unknowns(std::size_t dim, const std::string &prefix);

  std::size_t dim() const { return dim_; }
  RatExpr &at(std::size_t row, std::size_t col) { return m_[row * dim_ + col]; }
  const RatExpr &at(std::size_t row, std::size_t col) const { return m_[row * dim_ + col]; }

  Vector column(std::size_t col) const;
  Vector apply(const Vector &v) const;
  OperatorMatrix scaled(const RatExpr &c) const;
  OperatorMatrix substitute(const Bindings &b) const;
  std::set<std::string> variables() const;

private:
  std::size_t dim_;
  std::vector<RatExpr> m_;
};

// Entry (i, j, q) is the e_q coefficient (q < n) of the residual at x = e_i,
// y = e_j:
//   Rota-Baxter  [Tx,Ty] - T([Tx,y] + [x,Ty] + w[x,y])
//   Nijenhuis    [Tx,Ty] - T([Tx,y] + [x,Ty] - T[x,y])
//   Reynolds     [Tx,Ty] - T([x,Ty] + [Tx,y] - [Tx,Ty])
// For averaging q runs over 2n: q < n is [Tx,Ty] - T[Tx,y] and q >= n is
// [Tx,Ty] - T[x,Ty].
class OperatorResidual {
public:
  OperatorResidual(std::size_t dim, std::size_t conditions)
      : dim_(dim), conditions_(conditions), r_(dim * dim * dim * conditions) {}

  std::size_t dim() const { return dim_; }
  std::size_t conditions() const { return conditions_; }
  std::size_t outputs() const { return dim_ * conditions_; }
  RatExpr &at(std::size_t i, std::size_t j, std::size_t q) {
    return r_[(i * dim_ + j) * outputs() + q];
  }
  const RatExpr &at(std::size_t i, std::size_t j, std::size_t q) const {
    return r_[(i * dim_ + j) * outputs() + q];
  }
  bool is_zero() const;
  bool condition_is_zero(std::size_t condition) const;

private:
  std::size_t dim_, conditions_;
  std::vector<RatExpr> r_;
};

// Throws DimensionMismatch.
OperatorResidual operator_residual(const AlgebraTable &a, const OperatorKind &kind,
                                   const OperatorMatrix &t);

struct Equation {
  std::size_t i, j, q; // 0-based; q as in OperatorResidual
  Poly poly;           // must vanish
  Poly multiplier;     // denominator cleared from the residual entry (1 if none)
};

struct EquationSystem {
  std::string algebra;
  OperatorKind kind;
  std::vector<std::string> unknowns;
  // One equation per residual entry, in (i, j, q) order, including entries
  // that are identically zero.
  std::vector<Equation> equations;

  std::size_t nonzero_count() const;
  unsigned max_degree_in_unknowns() const;
};

EquationSystem build_system(const AlgebraTable &a, const OperatorKind &kind);

} // namespace leibniz
