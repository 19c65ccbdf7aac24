#include "leibniz/fp_oracle.hpp"

#include "leibniz/error.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <thread>

namespace leibniz {

OperatorMatrix FpMatrix::lift() const {
  OperatorMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m.at(r, c) = RatExpr(static_cast<long>(at(r, c)));
  return m;
}

std::string FpMatrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < n; ++r) {
    if (r)
      s += ";";
    for (std::size_t c = 0; c < n; ++c)
      s += (c ? " " : "") + std::to_string(at(r, c));
  }
  return s;
}

FpMatrix matrix_at_index(std::uint64_t index, std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n);
  for (auto &e : m.entries) {
    e = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return m;
}

FpTable::FpTable(const AlgebraTable &a, std::uint32_t p)
    : f_(p), n_(a.dim()), c_(a.dim() * a.dim() * a.dim()) {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        const RatExpr &e = a.at(i, j, k);
        if (e.is_zero())
          continue;
        try {
          c_[(i * n_ + j) * n_ + k] = reduce_mod_p(e, p);
        } catch (const Error &err) {
          throw Error(err.code(), a.name() + " does not reduce mod " + std::to_string(p) +
                                      ": " + err.what());
        }
      }
}

namespace {

std::uint32_t reduce_weight(const OperatorKind &kind, std::uint32_t p) {
  if (kind.type != OperatorType::RotaBaxter || kind.weight.is_zero())
    return 0;
  return reduce_mod_p(kind.weight, p);
}

std::uint64_t checked_space(std::uint32_t p, std::size_t n, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (total > std::numeric_limits<std::uint64_t>::max() / p || total * p > budget)
      throw Error(ErrorCode::RefusedSize,
                  std::to_string(p) + "^" + std::to_string(n * n) +
                      " matrices exceed the budget of " + std::to_string(budget));
    total *= p;
  }
  return total;
}

} // namespace

DirectEvaluator::DirectEvaluator(const AlgebraTable &a, const OperatorKind &kind,
                                 std::uint32_t p)
    : table_(a, p), type_(kind.type), weight_(reduce_weight(kind, p)) {}

bool DirectEvaluator::solves(const FpMatrix &m) const {
  const std::size_t n = table_.dim();
  const std::uint64_t p = table_.field().p;
  auto br = [&](const std::vector<std::uint32_t> &u, const std::vector<std::uint32_t> &v) {
    std::vector<std::uint32_t> w(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t acc = 0;
      for (std::size_t a = 0; a < n; ++a) {
        if (!u[a])
          continue;
        for (std::size_t b = 0; b < n; ++b)
          if (v[b])
            acc += std::uint64_t(u[a]) * v[b] % p * table_.at(a, b, k);
      }
      w[k] = static_cast<std::uint32_t>(acc % p);
    }
    return w;
  };
  auto apply = [&](const std::vector<std::uint32_t> &v) {
    std::vector<std::uint32_t> w(n);
    for (std::size_t r = 0; r < n; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < n; ++c)
        acc += std::uint64_t(m.at(r, c)) * v[c];
      w[r] = static_cast<std::uint32_t>(acc % p);
    }
    return w;
  };
  auto combine = [&](std::vector<std::uint32_t> a, const std::vector<std::uint32_t> &b,
                     std::uint64_t coef) {
    for (std::size_t k = 0; k < n; ++k)
      a[k] = static_cast<std::uint32_t>((a[k] + coef % p * b[k]) % p);
    return a;
  };
  const std::uint64_t minus_one = p - 1;

  std::vector<std::vector<std::uint32_t>> cols(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < n; ++r)
      cols[i][r] = m.at(r, i);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint32_t> ei(n), ej(n);
      ei[i] = 1;
      ej[j] = 1;
      auto txty = br(cols[i], cols[j]);
      auto txy = br(cols[i], ej);
      auto xty = br(ei, cols[j]);
      auto xy = br(ei, ej);
      std::vector<std::vector<std::uint32_t>> rhs;
      switch (type_) {
      case OperatorType::RotaBaxter:
        rhs.push_back(apply(combine(combine(txy, xty, 1), xy, weight_)));
        break;
      case OperatorType::Nijenhuis:
        rhs.push_back(apply(combine(combine(txy, xty, 1), apply(xy), minus_one)));
        break;
      case OperatorType::Reynolds:
        rhs.push_back(apply(combine(combine(xty, txy, 1), txty, minus_one)));
        break;
      case OperatorType::Averaging:
        rhs.push_back(apply(txy));
        rhs.push_back(apply(xty));
        break;
      }
      for (const auto &r : rhs)
        if (r != txty)
          return false;
    }
  return true;
}

CompiledSystem::CompiledSystem(const EquationSystem &sys, std::uint32_t p) : f_(p) {
  n_ = 0;
  while (n_ * n_ < sys.unknowns.size())
    ++n_;
  std::map<std::string, std::uint16_t> position;
  for (std::size_t k = 0; k < sys.unknowns.size(); ++k)
    position[sys.unknowns[k]] = static_cast<std::uint16_t>(k);
  for (const auto &eq : sys.equations) {
    if (eq.poly.is_zero())
      continue;
    if (!eq.multiplier.is_constant())
      throw Error(ErrorCode::UnboundParameter,
                  "equation multiplier " + eq.multiplier.to_string() + " is not constant");
    if (f_.reduce(eq.multiplier.constant_term()) == 0)
      throw Error(ErrorCode::NonInvertibleDenominator,
                  "equation multiplier vanishes mod " + std::to_string(p));
    std::vector<Term> terms;
    for (const auto &[mono, coeff] : eq.poly.terms()) {
      Term t{f_.reduce(coeff), {}};
      if (t.coeff == 0)
        continue;
      for (const auto &[name, e] : mono.factors()) {
        auto it = position.find(name);
        if (it == position.end())
          throw Error(ErrorCode::UnboundParameter,
                      "parameter \"" + name + "\" is not an unknown of the system");
        t.factors.insert(t.factors.end(), e, it->second);
      }
      terms.push_back(std::move(t));
    }
    if (!terms.empty())
      equations_.push_back(std::move(terms));
  }
}

bool CompiledSystem::solves(const FpMatrix &m) const {
  for (const auto &eq : equations_) {
    std::uint32_t acc = 0;
    for (const auto &t : eq) {
      std::uint32_t v = t.coeff;
      for (auto pos : t.factors) {
        v = f_.mul(v, m.entries[pos]);
        if (!v)
          break;
      }
      acc = f_.add(acc, v);
    }
    if (acc)
      return false;
  }
  return true;
}

namespace {

// Runs visit(index) for every index, shard by shard (shard = first row),
// on `workers` threads. Each shard's results come back in index order and
// shards are merged in shard order; callers re-sort when they need global
// index order.
template <typename Result, typename Visit>
std::vector<Result> sharded_scan(std::uint32_t p, std::size_t n, unsigned workers,
                                 Visit visit) {
  std::uint64_t shards = 1;
  for (std::size_t k = 0; k < n; ++k)
    shards *= p;
  std::uint64_t per_shard = 1;
  for (std::size_t k = n; k < n * n; ++k)
    per_shard *= p;
  std::vector<Result> results(shards);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t s; (s = next.fetch_add(1)) < shards;)
      for (std::uint64_t high = 0; high < per_shard; ++high)
        visit(results[s], s + shards * high);
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }
  return results;
}

} // namespace

EnumerationResult enumerate_solutions(const AlgebraTable &a, const OperatorKind &kind,
                                      std::uint32_t p, const EnumerationOptions &opts,
                                      EvalPath path) {
  const std::size_t n = a.dim();
  PrimeField field(p);
  std::uint64_t total = checked_space(p, n, opts.budget);
  std::optional<CompiledSystem> compiled;
  std::optional<DirectEvaluator> direct;
  if (path == EvalPath::Compiled)
    compiled.emplace(build_system(a, kind), p);
  else
    direct.emplace(a, kind, p);

  using Found = std::vector<std::pair<std::uint64_t, FpMatrix>>;
  auto shards = sharded_scan<Found>(p, n, opts.workers, [&](Found &out, std::uint64_t idx) {
    FpMatrix m = matrix_at_index(idx, p, n);
    if (compiled ? compiled->solves(m) : direct->solves(m))
      out.emplace_back(idx, std::move(m));
  });
  Found all;
  for (auto &s : shards)
    all.insert(all.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  std::sort(all.begin(), all.end(),
            [](const auto &x, const auto &y) { return x.first < y.first; });
  EnumerationResult r;
  r.scanned = total;
  for (auto &f : all)
    r.solutions.push_back(std::move(f.second));
  return r;
}

DualPathResult dual_path_check(const AlgebraTable &a, const OperatorKind &kind,
                               std::uint32_t p, const EnumerationOptions &opts) {
  const std::size_t n = a.dim();
  PrimeField field(p);
  std::uint64_t total = checked_space(p, n, opts.budget);
  CompiledSystem compiled(build_system(a, kind), p);
  DirectEvaluator direct(a, kind, p);
  struct Tally {
    std::uint64_t compiled = 0, direct = 0, disagree = 0;
    std::optional<std::pair<std::uint64_t, FpMatrix>> first;
  };
  auto shards = sharded_scan<Tally>(p, n, opts.workers, [&](Tally &t, std::uint64_t idx) {
    FpMatrix m = matrix_at_index(idx, p, n);
    bool c = compiled.solves(m), d = direct.solves(m);
    t.compiled += c;
    t.direct += d;
    if (c != d) {
      ++t.disagree;
      if (!t.first)
        t.first.emplace(idx, m);
    }
  });
  DualPathResult r;
  r.scanned = total;
  std::optional<std::uint64_t> first_idx;
  for (auto &t : shards) {
    r.compiled_solutions += t.compiled;
    r.direct_solutions += t.direct;
    r.disagreements += t.disagree;
    if (t.first && (!first_idx || t.first->first < *first_idx)) {
      first_idx = t.first->first;
      r.first_disagreement = t.first->second;
    }
  }
  return r;
}

bool lifted_residual_vanishes(const AlgebraTable &a, const OperatorKind &kind,
                              const FpMatrix &m) {
  OperatorResidual r = operator_residual(a, kind, m.lift());
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = 0; j < r.dim(); ++j)
      for (std::size_t q = 0; q < r.outputs(); ++q)
        if (!r.at(i, j, q).is_zero() && reduce_mod_p(r.at(i, j, q), m.p) != 0)
          return false;
  return true;
}

std::uint32_t FpChart::PolyP::eval(const PrimeField &f,
                                   const std::vector<std::uint32_t> &x) const {
  std::uint32_t acc = 0;
  for (const auto &[c, factors] : terms) {
    std::uint32_t v = c;
    for (auto k : factors)
      v = f.mul(v, x[k]);
    acc = f.add(acc, v);
  }
  return acc;
}

std::optional<FpChart> FpChart::compile(const OperatorFamily &fam, std::uint32_t p,
                                        const Bindings &algebra_binding, std::string *why) {
  if (fam.malformed) {
    if (why)
      *why = "malformed chart";
    return std::nullopt;
  }
  FpChart chart;
  chart.f_ = PrimeField(p);
  chart.n_ = fam.chart.dim();
  chart.free_ = fam.free;
  std::map<std::string, std::uint16_t> index;
  for (std::size_t k = 0; k < fam.free.size(); ++k)
    index[fam.free[k]] = static_cast<std::uint16_t>(k);

  auto convert = [&](const Poly &poly) {
    PolyP out;
    for (const auto &[mono, coeff] : poly.terms()) {
      std::uint32_t c = chart.f_.reduce(coeff);
      if (!c)
        continue;
      std::vector<std::uint16_t> factors;
      for (const auto &[name, e] : mono.factors()) {
        auto it = index.find(name);
        if (it == index.end())
          throw Error(ErrorCode::UnboundParameter, "parameter \"" + name + "\" is not free");
        factors.insert(factors.end(), e, it->second);
      }
      out.terms.emplace_back(c, std::move(factors));
    }
    return out;
  };
  try {
    OperatorMatrix bound = fam.chart.substitute(algebra_binding);
    for (std::size_t r = 0; r < chart.n_; ++r)
      for (std::size_t c = 0; c < chart.n_; ++c)
        chart.entries_.push_back({convert(bound.at(r, c).num()), convert(bound.at(r, c).den())});
    for (const auto &con : fam.constraints) {
      RatExpr b = RatExpr(con).substitute(algebra_binding);
      chart.constraints_.push_back(convert(b.num()));
    }
  } catch (const Error &e) {
    if (why)
      *why = e.what();
    return std::nullopt;
  }
  return chart;
}

std::optional<FpMatrix> FpChart::evaluate(const std::vector<std::uint32_t> &x) const {
  for (const auto &c : constraints_)
    if (!c.eval(f_, x))
      return std::nullopt;
  FpMatrix m(f_.p, n_);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    std::uint32_t d = entries_[k].den.eval(f_, x);
    if (!d)
      return std::nullopt;
    m.entries[k] = f_.mul(entries_[k].num.eval(f_, x), f_.inv(d));
  }
  return m;
}

bool FpChart::matches(const FpMatrix &m, const std::vector<std::uint32_t> &x) const {
  for (const auto &c : constraints_)
    if (!c.eval(f_, x))
      return false;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    std::uint32_t d = entries_[k].den.eval(f_, x);
    if (!d || entries_[k].num.eval(f_, x) != f_.mul(m.entries[k], d))
      return false;
  }
  return true;
}

bool FpChart::contains(const FpMatrix &m, std::uint64_t budget) const {
  if (m.n != n_ || m.p != f_.p)
    throw Error(ErrorCode::DimensionMismatch, "matrix does not match the chart");
  const std::size_t k = free_.size();
  std::vector<std::optional<std::uint32_t>> fixed(k);
  std::vector<bool> occurs(k, false);
  auto mark = [&](const PolyP &poly) {
    for (const auto &t : poly.terms)
      for (auto v : t.second)
        occurs[v] = true;
  };
  for (const auto &e : entries_) {
    mark(e.num);
    mark(e.den);
  }
  for (const auto &c : constraints_)
    mark(c);

  // Read off parameters that appear alone (c*x over a constant) in an entry.
  for (std::size_t pos = 0; pos < entries_.size(); ++pos) {
    const Entry &e = entries_[pos];
    if (e.num.terms.size() != 1 || e.num.terms[0].second.size() != 1)
      continue;
    if (e.den.terms.size() != 1 || !e.den.terms[0].second.empty())
      continue;
    std::uint32_t c = e.num.terms[0].first, d = e.den.terms[0].first;
    auto var = e.num.terms[0].second[0];
    std::uint32_t value = f_.mul(f_.mul(m.entries[pos], d), f_.inv(c));
    if (fixed[var] && *fixed[var] != value)
      return false;
    fixed[var] = value;
  }

  std::vector<std::size_t> open;
  for (std::size_t v = 0; v < k; ++v)
    if (occurs[v] && !fixed[v])
      open.push_back(v);
  std::uint64_t space = 1;
  for (std::size_t s = 0; s < open.size(); ++s) {
    if (space > budget / f_.p)
      throw Error(ErrorCode::RefusedSize, "chart membership search over " +
                                              std::to_string(open.size()) +
                                              " parameters exceeds the budget");
    space *= f_.p;
  }
  std::vector<std::uint32_t> x(k, 0);
  for (std::size_t v = 0; v < k; ++v)
    if (fixed[v])
      x[v] = *fixed[v];
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    std::uint64_t rest = idx;
    for (auto v : open) {
      x[v] = static_cast<std::uint32_t>(rest % f_.p);
      rest /= f_.p;
    }
    if (matches(m, x))
      return true;
  }
  return false;
}

std::optional<std::vector<std::uint32_t>> FpChart::random_admissible(std::mt19937_64 &rng,
                                                                     int attempts) const {
  std::uniform_int_distribution<std::uint32_t> digit(0, f_.p - 1);
  std::vector<std::uint32_t> x(free_.size());
  for (int a = 0; a < attempts; ++a) {
    for (auto &v : x)
      v = digit(rng);
    if (evaluate(x))
      return x;
  }
  return std::nullopt;
}

bool chart_membership(const OperatorFamily &fam, const FpMatrix &m,
                      const Bindings &algebra_binding, std::uint64_t budget) {
  std::string why;
  auto chart = FpChart::compile(fam, m.p, algebra_binding, &why);
  if (!chart)
    throw Error(ErrorCode::NonInvertibleDenominator,
                fam.label + " does not reduce mod " + std::to_string(m.p) + ": " + why);
  return chart->contains(m, budget);
}

CoverageReport coverage(const AlgebraTable &bound, const OperatorKind &kind, std::uint32_t p,
                        const std::vector<const OperatorFamily *> &families,
                        const Bindings &binding, const EnumerationOptions &opts,
                        std::size_t cap) {
  CoverageReport rep;
  rep.algebra = bound.name();
  rep.kind = kind.name();
  rep.p = p;
  rep.binding = bindings_to_string(binding);
  rep.cap = cap;
  std::vector<FpChart> charts;
  for (const auto *fam : families) {
    std::string why;
    auto chart = FpChart::compile(*fam, p, binding, &why);
    if (!chart) {
      rep.families_skipped.emplace_back(fam->label, why);
      continue;
    }
    charts.push_back(std::move(*chart));
    rep.families_used.push_back(fam->label);
  }
  EnumerationResult sols = enumerate_solutions(bound, kind, p, opts);
  rep.total = sols.solutions.size();
  for (const auto &m : sols.solutions) {
    bool hit = std::any_of(charts.begin(), charts.end(),
                           [&](const FpChart &c) { return c.contains(m, opts.budget); });
    if (hit)
      ++rep.covered;
    else if (rep.uncovered.size() < cap)
      rep.uncovered.push_back(m);
  }
  return rep;
}

std::string bindings_to_string(const Bindings &b) {
  std::string s;
  for (const auto &[name, v] : b)
    s += (s.empty() ? "" : ",") + name + "=" + v.to_string();
  return s;
}

} // namespace leibniz
