#include "leibniz/leibniz.h"

#include "leibniz/error.hpp"
#include "leibniz/expr_parser.hpp"
#include "leibniz/mod_p.hpp"
#include "leibniz/report.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

using namespace leibniz;

struct lz_session {
  std::unique_ptr<Dataset> data;
};

struct lz_report {
  Report report;
};

struct lz_expr {
  RatExpr value;
};

namespace {

thread_local std::string last_error;

lz_status status_of(ErrorCode c) {
  switch (c) {
  case ErrorCode::Parse:
    return LZ_ERR_PARSE;
  case ErrorCode::DenominatorVanishes:
    return LZ_ERR_DENOMINATOR_VANISHES;
  case ErrorCode::NonInvertibleDenominator:
    return LZ_ERR_NON_INVERTIBLE_DENOMINATOR;
  case ErrorCode::NonRealValue:
    return LZ_ERR_NON_REAL_VALUE;
  case ErrorCode::DimensionMismatch:
    return LZ_ERR_DIMENSION_MISMATCH;
  case ErrorCode::Schema:
    return LZ_ERR_SCHEMA;
  case ErrorCode::UnknownAlgebra:
    return LZ_ERR_UNKNOWN_ALGEBRA;
  case ErrorCode::UnboundParameter:
    return LZ_ERR_UNBOUND_PARAMETER;
  case ErrorCode::RefusedSize:
    return LZ_ERR_REFUSED_SIZE;
  case ErrorCode::Io:
    return LZ_ERR_IO;
  case ErrorCode::Usage:
    return LZ_ERR_USAGE;
  }
  return LZ_ERR_INTERNAL;
}

template <typename F> lz_status guarded(F &&f) {
  last_error.clear();
  try {
    f();
    return LZ_OK;
  } catch (const Error &e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception &e) {
    last_error = e.what();
    return LZ_ERR_INTERNAL;
  }
}

char *dup_string(const std::string &s) {
  char *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (!p)
    throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(const void *p, const char *what) {
  if (!p)
    throw Error(ErrorCode::Usage, std::string(what) + " must not be NULL");
}

RunOptions run_options(const lz_options *o) {
  lz_options defaults;
  lz_options_init(&defaults);
  if (!o)
    o = &defaults;
  RunOptions r;
  if (o->bindings && *o->bindings)
    r.binding = parse_bindings(o->bindings);
  if (o->op && *o->op)
    r.op = parse_operator_type(o->op);
  r.weight = parse_expr(o->weight && *o->weight ? o->weight : "0");
  if (!r.weight.variables().empty())
    throw Error(ErrorCode::Usage, "the weight must be a number");
  if (o->samples && *o->samples)
    r.samples = parse_samples(o->samples);
  r.p = o->field ? o->field : 2;
  if (!is_prime(r.p))
    throw Error(ErrorCode::Usage, "field " + std::to_string(r.p) + " is not prime");
  r.budget = o->budget ? o->budget : std::uint64_t(1) << 20;
  r.workers = o->workers ? o->workers : 1;
  r.cap = o->cap;
  r.symbolic_weight = o->symbolic_weight != 0;
  r.round_trips = o->round_trips;
  r.seed = o->seed;
  return r;
}

template <typename F> lz_status make_report(lz_session *s, lz_report **out, F &&build) {
  return guarded([&] {
    require(s, "session");
    require(out, "out");
    *out = nullptr;
    auto r = std::make_unique<lz_report>();
    r->report = build(*s->data);
    *out = r.release();
  });
}

std::vector<std::string> optional_name(const char *name) {
  if (!name)
    return {};
  return {name};
}

} // namespace

extern "C" {

void lz_options_init(lz_options *opts) {
  if (!opts)
    return;
  *opts = lz_options{};
  opts->field = 2;
  opts->budget = std::uint64_t(1) << 20;
  opts->workers = 1;
  opts->cap = 64;
  opts->round_trips = 100;
  opts->seed = 20240917;
}

const char *lz_status_name(lz_status status) {
  switch (status) {
  case LZ_OK:
    return "OK";
  case LZ_ERR_PARSE:
    return "ParseError";
  case LZ_ERR_DENOMINATOR_VANISHES:
    return "DenominatorVanishes";
  case LZ_ERR_NON_INVERTIBLE_DENOMINATOR:
    return "NonInvertibleDenominator";
  case LZ_ERR_NON_REAL_VALUE:
    return "NonRealValue";
  case LZ_ERR_DIMENSION_MISMATCH:
    return "DimensionMismatch";
  case LZ_ERR_SCHEMA:
    return "SchemaViolation";
  case LZ_ERR_UNKNOWN_ALGEBRA:
    return "UnknownAlgebra";
  case LZ_ERR_UNBOUND_PARAMETER:
    return "UnboundParameter";
  case LZ_ERR_REFUSED_SIZE:
    return "RefusedSize";
  case LZ_ERR_IO:
    return "IoError";
  case LZ_ERR_USAGE:
    return "UsageError";
  case LZ_ERR_INTERNAL:
    return "InternalError";
  }
  return "UnknownStatus";
}

const char *lz_last_error(void) { return last_error.c_str(); }

lz_status lz_session_open(const char *data_dir, lz_session **out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    std::string dir;
    if (data_dir && *data_dir)
      dir = data_dir;
    else if (const char *env = std::getenv("LEIBNIZ_DATA_DIR"); env && *env)
      dir = env;
    else
      dir = LEIBNIZ_DEFAULT_DATA_DIR;
    auto s = std::make_unique<lz_session>();
    s->data = Dataset::load(dir);
    *out = s.release();
  });
}

void lz_session_close(lz_session *session) { delete session; }

const char *lz_session_data_dir(const lz_session *session) {
  return session ? session->data->dir().c_str() : "";
}

lz_status lz_expr_parse(const char *text, lz_expr **out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    *out = new lz_expr{parse_expr(text)};
  });
}

void lz_expr_free(lz_expr *expr) { delete expr; }

lz_status lz_expr_to_string(const lz_expr *expr, char **out) {
  return guarded([&] {
    require(expr, "expr");
    require(out, "out");
    *out = dup_string(expr->value.to_string());
  });
}

lz_status lz_expr_substitute(const lz_expr *expr, const char *bindings, lz_expr **out) {
  return guarded([&] {
    require(expr, "expr");
    require(bindings, "bindings");
    require(out, "out");
    *out = nullptr;
    *out = new lz_expr{expr->value.substitute(parse_bindings(bindings))};
  });
}

lz_status lz_expr_reduce_mod_p(const lz_expr *expr, uint32_t p, uint32_t *out) {
  return guarded([&] {
    require(expr, "expr");
    require(out, "out");
    *out = reduce_mod_p(expr->value, p);
  });
}

lz_status lz_expr_equal(const lz_expr *a, const lz_expr *b, int *out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = a->value == b->value;
  });
}

void lz_string_free(char *s) { std::free(s); }

lz_status lz_catalog_list(lz_session *s, lz_report **out) {
  return make_report(s, out, [&](Dataset &d) { return catalog_list_report(d); });
}

lz_status lz_catalog_show(lz_session *s, const char *name, lz_report **out) {
  return make_report(s, out, [&](Dataset &d) {
    require(name, "name");
    return catalog_show_report(d, name);
  });
}

lz_status lz_check_leibniz(lz_session *s, const char *name, const lz_options *opts,
                           lz_report **out) {
  return make_report(s, out, [&](Dataset &d) {
    return check_leibniz_report(d, optional_name(name), run_options(opts));
  });
}

lz_status lz_lcs(lz_session *s, const char *name, const lz_options *opts, lz_report **out) {
  return make_report(s, out, [&](Dataset &d) {
    return lcs_report(d, optional_name(name), run_options(opts));
  });
}

lz_status lz_equations(lz_session *s, const char *name, const lz_options *opts,
                       lz_report **out) {
  return make_report(s, out, [&](Dataset &d) {
    require(name, "name");
    return equations_report(d, name, run_options(opts));
  });
}

lz_status lz_verify(lz_session *s, const char *path, const lz_options *opts, lz_report **out) {
  return make_report(s, out, [&](Dataset &d) {
    RunOptions ro = run_options(opts);
    if (path)
      return verify_report(d, load_families(path), ro);
    std::vector<OperatorFamily> all;
    for (auto t : {OperatorType::RotaBaxter, OperatorType::Nijenhuis, OperatorType::Reynolds,
                   OperatorType::Averaging})
      if (!ro.op || *ro.op == t)
        all.insert(all.end(), d.families(t).begin(), d.families(t).end());
    return verify_report(d, all, ro);
  });
}

lz_status lz_dim_report(lz_session *s, const lz_options *opts, lz_report **out) {
  return make_report(s, out, [&](Dataset &d) { return dim_report(d, run_options(opts)); });
}

lz_status lz_enumerate(lz_session *s, const char *name, const lz_options *opts,
                       lz_report **out) {
  return make_report(s, out, [&](Dataset &d) {
    require(name, "name");
    return enumerate_report(d, name, run_options(opts));
  });
}

lz_status lz_coverage(lz_session *s, const lz_options *opts, lz_report **out) {
  return make_report(s, out, [&](Dataset &d) { return coverage_report(d, run_options(opts)); });
}

lz_status lz_dual_path(lz_session *s, const char *name, const lz_options *opts,
                       lz_report **out) {
  return make_report(s, out, [&](Dataset &d) {
    return dual_path_report(d, optional_name(name), run_options(opts));
  });
}

lz_status lz_compat(lz_session *s, const char *a, const char *b, const lz_options *opts,
                    lz_report **out) {
  return make_report(s, out, [&](Dataset &d) {
    require(a, "a");
    require(b, "b");
    return compat_report(d, a, b, run_options(opts));
  });
}

lz_status lz_compat_scan(lz_session *s, const lz_options *opts, lz_report **out) {
  return make_report(s, out, [&](Dataset &d) { return compat_scan_report(d, run_options(opts)); });
}

int lz_report_passed(const lz_report *r) { return r && r->report.passed ? 1 : 0; }

lz_status lz_report_render(const lz_report *r, lz_format format, char **out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup_string(format == LZ_FORMAT_TEXT ? r->report.text : render_json(r->report));
  });
}

lz_status lz_report_write(const lz_report *r, lz_format format, const char *path) {
  return guarded([&] {
    require(r, "report");
    require(path, "path");
    write_atomic(path, format == LZ_FORMAT_TEXT ? r->report.text : render_json(r->report));
  });
}

void lz_report_free(lz_report *r) { delete r; }

} // extern "C"
