#include "leibniz/compatibility.hpp"

#include "leibniz/error.hpp"
#include "leibniz/fp_oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <thread>

namespace leibniz {

ResidualTensor mixed_residual(const AlgebraTable &a, const AlgebraTable &b) {
  ResidualTensor ab = composed_residual(a, b), ba = composed_residual(b, a);
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q)
          ab.at(i, j, k, q) += ba.at(i, j, k, q);
  return ab;
}

CompatibilityCheck check_compatible(const AlgebraTable &a, const AlgebraTable &b) {
  CompatibilityCheck c;
  auto ra = leibniz_residual(a).first_nonzero();
  auto rb = leibniz_residual(b).first_nonzero();
  auto rm = mixed_residual(a, b).first_nonzero();
  c.a_leibniz = !ra;
  c.b_leibniz = !rb;
  c.mixed_zero = !rm;
  c.witness = rm ? rm : ra ? ra : rb;
  return c;
}

bool is_compatible(const AlgebraTable &a, const AlgebraTable &b) {
  return check_compatible(a, b).compatible();
}

std::pair<AlgebraTable, AlgebraTable> pair_tables(const Catalog &catalog, const std::string &a,
                                                  const std::string &b) {
  AlgebraTable ta = catalog.effective(a), tb = catalog.effective(b);
  if (a != b) {
    std::map<std::string, std::string> renames;
    for (const auto &p : tb.params())
      renames[p.name] = p.name + "_b";
    tb = tb.rename_params(renames);
  }
  return {std::move(ta), std::move(tb)};
}

std::vector<NamePair> parse_claims(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::Schema, std::string("claims: ") + e.what());
  }
  if (!j.is_array())
    throw Error(ErrorCode::Schema, "claims: expected an array at /");
  std::vector<NamePair> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto &p = j[k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw Error(ErrorCode::Schema,
                  "claims: expected [name, name] at /" + std::to_string(k));
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

namespace {

Scalar random_lambda(std::mt19937_64 &rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5), coin(0, 3);
  mpq_class re(num(rng), den(rng)), im = 0;
  re.canonicalize();
  if (coin(rng) == 0) {
    im = mpq_class(num(rng), den(rng));
    im.canonicalize();
  }
  return Scalar(re, im);
}

// Bindings enumerating every admissible value of the finite parameters of
// both tables; infinite ones stay symbolic.
std::vector<Bindings> finite_bindings(const AlgebraTable &a, const AlgebraTable &b) {
  std::vector<Bindings> out{{}};
  std::set<std::string> seen;
  for (const auto *t : {&a, &b})
    for (const auto &p : t->params()) {
      if (!p.admissible.is_finite() || !seen.insert(p.name).second)
        continue;
      std::vector<Bindings> next;
      for (const auto &b0 : out)
        for (const auto &v : p.admissible.values()) {
          Bindings b1 = b0;
          b1[p.name] = RatExpr(v);
          next.push_back(std::move(b1));
        }
      out = std::move(next);
    }
  return out;
}

std::vector<Bindings> sample_bindings(const AlgebraTable &a, const AlgebraTable &b,
                                      const std::vector<Scalar> &samples) {
  std::vector<Bindings> out{{}};
  std::set<std::string> seen;
  for (const auto *t : {&a, &b})
    for (const auto &p : t->params()) {
      if (!seen.insert(p.name).second)
        continue;
      std::vector<Bindings> next;
      for (const auto &b0 : out)
        for (const auto &v : p.admissible.samples(samples)) {
          Bindings b1 = b0;
          b1[p.name] = RatExpr(v);
          next.push_back(std::move(b1));
        }
      out = std::move(next);
    }
  return out;
}

} // namespace

PairOutcome compat_pair(const Catalog &catalog, const std::string &a, const std::string &b,
                        const Bindings &binding, const ScanOptions &opts) {
  auto [ta0, tb0] = pair_tables(catalog, a, b);
  AlgebraTable ta = ta0.bind(binding), tb = tb0.bind(binding);
  PairOutcome out;
  out.a = a;
  out.b = b;

  for (const auto &s : sample_bindings(ta, tb, opts.samples))
    out.samples.emplace_back(bindings_to_string(s), is_compatible(ta.bind(s), tb.bind(s)));

  out.compatible = true;
  bool have_check = false;
  for (const auto &f : finite_bindings(ta, tb)) {
    CompatibilityCheck c = check_compatible(ta.bind(f), tb.bind(f));
    bool swapped = is_compatible(tb.bind(f), ta.bind(f));
    if (swapped != c.compatible())
      out.symmetric = false;
    if (!have_check || (out.compatible && !c.compatible())) {
      out.check = c;
      out.failing_binding = c.compatible() ? "" : bindings_to_string(f);
      have_check = true;
    }
    out.compatible = out.compatible && c.compatible();
  }

  if (out.compatible) {
    std::mt19937_64 rng(opts.seed);
    for (std::size_t t = 0; t < opts.lambda_trials; ++t) {
      RatExpr l1(random_lambda(rng)), l2(random_lambda(rng));
      bool ok = true;
      for (const auto &f : finite_bindings(ta, tb))
        ok = ok && leibniz_residual(combined_bracket(ta.bind(f), tb.bind(f), l1, l2)).is_zero();
      ++out.lambda_checks;
      if (!ok)
        ++out.lambda_failures;
    }
  } else if (out.check.a_leibniz && out.check.b_leibniz) {
    Bindings f;
    for (const auto &part : finite_bindings(ta, tb))
      if (bindings_to_string(part) == out.failing_binding)
        f = part;
    auto w = leibniz_residual(combined_bracket(ta.bind(f), tb.bind(f), RatExpr(1), RatExpr(1)))
                 .first_nonzero();
    if (w)
      out.combined_witness = std::array<std::size_t, 3>{w->i + 1, w->j + 1, w->k + 1};
  }
  return out;
}

PairReport compat_scan(const Catalog &catalog, const std::vector<NamePair> &claims,
                       const ScanOptions &opts) {
  const auto names = catalog.names();
  auto index_of = [&](const std::string &n) {
    return std::find(names.begin(), names.end(), n) - names.begin();
  };
  auto ordered = [&](NamePair p) {
    if (index_of(p.first) > index_of(p.second))
      std::swap(p.first, p.second);
    return p;
  };

  PairReport rep;
  rep.claims_total = claims.size();
  rep.lambda_trials = opts.lambda_trials;
  std::set<NamePair> claimed;
  for (const auto &c : claims) {
    if (!catalog.contains(c.first) || !catalog.contains(c.second))
      rep.unmatchable_claims.push_back(c);
    else
      claimed.insert(ordered(c));
  }

  std::vector<NamePair> jobs;
  for (std::size_t i = 0; i < names.size(); ++i)
    jobs.emplace_back(names[i], names[i]);
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      jobs.emplace_back(names[i], names[j]);

  std::vector<PairOutcome> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      try {
        results[k] = compat_pair(catalog, jobs[k].first, jobs[k].second, {}, opts);
      } catch (const std::exception &e) {
        errors[k] = e.what();
      }
    }
  };
  unsigned workers = std::max(1u, opts.workers);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
  for (std::size_t k = 0; k < jobs.size(); ++k)
    if (!errors[k].empty())
      throw Error(ErrorCode::Schema, jobs[k].first + "/" + jobs[k].second + ": " + errors[k]);

  for (auto &r : results) {
    NamePair key{r.a, r.b};
    r.claimed = claimed.count(key) > 0;
    bool samples_pass = std::all_of(r.samples.begin(), r.samples.end(),
                                    [](const auto &s) { return s.second; });
    if (samples_pass != r.compatible)
      rep.sample_exceptions.push_back(key);
    if (r.a == r.b) {
      rep.diagonal.push_back(std::move(r));
      continue;
    }
    if (r.compatible)
      rep.compatible.push_back(key);
    if (r.claimed && !r.compatible)
      rep.claimed_but_failing.push_back(key);
    if (!r.claimed && r.compatible)
      rep.passing_but_unclaimed.push_back(key);
    rep.pairs.push_back(std::move(r));
  }
  return rep;
}

} // namespace leibniz
