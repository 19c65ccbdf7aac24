// Command-line front end; talks to the toolkit only through the C API.

#include "leibniz/leibniz.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

namespace {

struct Session {
  lz_session *s = nullptr;
  ~Session() { lz_session_close(s); }
};

struct ReportHandle {
  lz_report *r = nullptr;
  ~ReportHandle() { lz_report_free(r); }
};

int fail(lz_status st) {
  std::cerr << "error: " << lz_status_name(st) << ": " << lz_last_error() << "\n";
  return st == LZ_ERR_IO ? 1 : 2;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact toolkit for right Leibniz algebras and Rota-type operators"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every command");

  std::string format = "text", output, data_dir;
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--output,-o", output, "Write the report here (atomically) instead of stdout");
  app.add_option("--data-dir", data_dir,
                 "Data directory (default: $LEIBNIZ_DATA_DIR or the built-in one)");

  lz_options opts;
  lz_options_init(&opts);
  std::string bindings, op, weight, samples;
  std::string name, name_b, path;
  bool all = false;

  auto add_param = [&](CLI::App *c) {
    c->add_option("--param", bindings, "Bind parameters, e.g. mu=2 or mu=2,mu_b=0");
  };
  auto add_op = [&](CLI::App *c, bool required) {
    auto *o = c->add_option("--op", op, "Operator kind")
                  ->check(CLI::IsMember({"rota-baxter", "nijenhuis", "reynolds", "averaging"}));
    if (required)
      o->required();
  };
  auto add_weight = [&](CLI::App *c) {
    c->add_option("--weight", weight, "Rota-Baxter weight (default 0)");
  };
  auto add_field = [&](CLI::App *c) {
    c->add_option("--field", opts.field, "Prime field")->capture_default_str();
    c->add_option("--budget", opts.budget, "Maximum matrices per sweep")->capture_default_str();
    c->add_option("--shards", opts.workers, "Worker threads for the sharded sweep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_samples = [&](CLI::App *c, const char *flag) {
    c->add_option(flag, samples, "Parameter sample values, e.g. mu=0,1,2 (default 0,1,2,5)");
  };

  auto *catalog = app.add_subcommand("catalog", "Inspect the algebra catalog");
  catalog->require_subcommand(1);
  auto *catalog_list = catalog->add_subcommand("list", "List the algebras");
  auto *catalog_show = catalog->add_subcommand("show", "Show one algebra and its errata");
  catalog_show->add_option("name", name, "Algebra name")->required();

  auto *check = app.add_subcommand("check-leibniz", "Leibniz identity residual of the printed tables");
  auto *check_name = check->add_option("name", name, "Algebra name");
  check->add_flag("--all", all, "Check the whole catalog")->excludes(check_name);
  add_param(check);
  add_samples(check, "--samples");

  auto *lcs = app.add_subcommand("lcs", "Lower central series dimensions");
  auto *lcs_name = lcs->add_option("name", name, "Algebra name");
  lcs->add_flag("--all", all, "Whole catalog")->excludes(lcs_name);
  add_param(lcs);
  add_samples(lcs, "--samples");

  auto *equations = app.add_subcommand("equations", "Print the operator equation system");
  equations->add_option("algebra", name, "Algebra name")->required();
  add_op(equations, true);
  add_weight(equations);
  add_param(equations);

  auto *verify = app.add_subcommand("verify", "Verify operator families from a family file");
  auto *verify_path = verify->add_option("file", path, "Family JSON file");
  verify->add_flag("--all", all, "Verify every shipped family file")->excludes(verify_path);
  verify->add_flag("--symbolic-weight", opts.symbolic_weight,
                   "Also verify Rota-Baxter families at symbolic weight");
  add_op(verify, false);

  auto *dim = app.add_subcommand("dim-report", "Chart parameter counts against the claimed ranges");
  add_op(dim, true);

  auto *enumerate = app.add_subcommand("enumerate", "Sweep all matrices over F_p and test coverage");
  enumerate->add_option("algebra", name, "Algebra name")->required();
  add_op(enumerate, true);
  add_weight(enumerate);
  add_param(enumerate);
  add_field(enumerate);
  enumerate->add_option("--cap", opts.cap, "Uncovered matrices listed per run (0 = all)")
      ->capture_default_str();

  auto *coverage = app.add_subcommand("coverage", "Coverage sweep over the whole catalog");
  add_op(coverage, false);
  add_field(coverage);
  coverage->add_option("--cap", opts.cap, "Uncovered matrices listed per run (0 = all)")
      ->capture_default_str();
  coverage->add_option("--round-trips", opts.round_trips, "Chart round trips per family")
      ->capture_default_str();

  auto *dual = app.add_subcommand("dual-path", "Compare compiled and direct evaluation over F_p");
  auto *dual_name = dual->add_option("name", name, "Algebra name");
  dual->add_flag("--all", all, "Every real catalog table")->excludes(dual_name);
  add_op(dual, false);
  add_field(dual);

  auto *compat = app.add_subcommand("compat", "Compatibility of two algebras");
  compat->add_option("a", name, "First algebra")->required();
  compat->add_option("b", name_b, "Second algebra")->required();
  add_param(compat);

  auto *scan = app.add_subcommand("compat-scan", "Compatibility of every catalog pair");
  add_samples(scan, "--params");
  scan->add_option("--shards", opts.workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  auto needs_name = [&](CLI::App *c) {
    if (name.empty() && !all) {
      std::cerr << "error: " << c->get_name() << " needs an algebra name or --all\n"
                << c->help();
      return false;
    }
    return true;
  };

  opts.bindings = bindings.empty() ? nullptr : bindings.c_str();
  opts.op = op.empty() ? nullptr : op.c_str();
  opts.weight = weight.empty() ? nullptr : weight.c_str();
  opts.samples = samples.empty() ? nullptr : samples.c_str();

  Session session;
  if (lz_status st = lz_session_open(data_dir.empty() ? nullptr : data_dir.c_str(), &session.s))
    return fail(st);

  ReportHandle report;
  const char *one = name.empty() ? nullptr : name.c_str();
  lz_status st = LZ_OK;
  if (catalog_list->parsed()) {
    st = lz_catalog_list(session.s, &report.r);
  } else if (catalog_show->parsed()) {
    st = lz_catalog_show(session.s, one, &report.r);
  } else if (check->parsed()) {
    if (!needs_name(check))
      return 2;
    st = lz_check_leibniz(session.s, one, &opts, &report.r);
  } else if (lcs->parsed()) {
    if (!needs_name(lcs))
      return 2;
    st = lz_lcs(session.s, one, &opts, &report.r);
  } else if (equations->parsed()) {
    st = lz_equations(session.s, one, &opts, &report.r);
  } else if (verify->parsed()) {
    if (path.empty() && !all) {
      std::cerr << "error: verify needs a family file or --all\n" << verify->help();
      return 2;
    }
    st = lz_verify(session.s, path.empty() ? nullptr : path.c_str(), &opts, &report.r);
  } else if (dim->parsed()) {
    st = lz_dim_report(session.s, &opts, &report.r);
  } else if (enumerate->parsed()) {
    st = lz_enumerate(session.s, one, &opts, &report.r);
  } else if (coverage->parsed()) {
    st = lz_coverage(session.s, &opts, &report.r);
  } else if (dual->parsed()) {
    if (!needs_name(dual))
      return 2;
    st = lz_dual_path(session.s, one, &opts, &report.r);
  } else if (compat->parsed()) {
    st = lz_compat(session.s, name.c_str(), name_b.c_str(), &opts, &report.r);
  } else if (scan->parsed()) {
    st = lz_compat_scan(session.s, &opts, &report.r);
  }
  if (st != LZ_OK)
    return fail(st);

  lz_format fmt = format == "json" ? LZ_FORMAT_JSON : LZ_FORMAT_TEXT;
  if (!output.empty()) {
    if (lz_status ws = lz_report_write(report.r, fmt, output.c_str()))
      return fail(ws);
  } else {
    char *text = nullptr;
    if (lz_status rs = lz_report_render(report.r, fmt, &text))
      return fail(rs);
    std::fputs(text, stdout);
    lz_string_free(text);
  }
  return lz_report_passed(report.r) ? 0 : 1;
}
