#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symmin/errors.hpp"
#include "symmin/report.hpp"

using namespace symmin;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Sink {
  std::string out_path;
  std::string csv_path;

  void write(const std::vector<VerificationReport>& reports, bool echo_json) const {
    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::app);
      if (!f) throw PreconditionError("cannot open " + out_path);
      for (const auto& r : reports) f << to_json_line(r) << '\n';
    } else if (echo_json) {
      for (const auto& r : reports) std::cout << to_json_line(r) << '\n';
    }
    if (!csv_path.empty()) {
      std::ifstream probe(csv_path);
      const bool fresh = !probe.good() || probe.peek() == std::ifstream::traits_type::eof();
      probe.close();
      std::ofstream f(csv_path, std::ios::app);
      if (!f) throw PreconditionError("cannot open " + csv_path);
      if (fresh) f << csv_header() << '\n';
      for (const auto& r : reports) f << to_csv_row(r) << '\n';
    }
  }
};

int exit_for(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return kExitFail;
  return kExitPass;
}

void summarize(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    std::fprintf(stderr, "%-4s %-24s %-16s residual=%.3e tol=%.1e", r.pass ? "PASS" : "FAIL", r.check.c_str(),
                 r.space.c_str(), r.residual, r.tolerance);
    if (!r.detail.empty()) std::fprintf(stderr, " %s", r.detail.dump().c_str());
    std::fprintf(stderr, "\n");
  }
}

DerivativeEngine parse_engine(const std::string& name, double step) {
  DerivativeEngine e;
  if (name == "fd")
    e = DerivativeEngine::finite_difference(step);
  else if (name != "exact")
    throw PreconditionError("unknown engine " + name);
  e.fd_step = step;
  e.check();
  return e;
}

int default_n(SpaceKind kind) {
  for (const auto& s : default_table_sizes())
    if (s.kind == kind) return s.n;
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmin: eigenfunctions on compact symmetric spaces and their minimal fibres"};
  app.require_subcommand(1);

  // shared options
  std::string engine_name = "exact";
  double fd_step = 1e-3;
  int samples = -1;
  std::uint64_t seed = 1;
  int threads = 1;
  bool timing = false;
  Sink sink;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--engine", engine_name, "exact | fd")->check(CLI::IsMember({"exact", "fd"}));
    cmd->add_option("--fd-step", fd_step, "finite-difference step in [1e-8, 1e-2]");
    cmd->add_option("--samples", samples, "sample / restart / probe count");
    cmd->add_option("--seed", seed, "base seed");
    cmd->add_option("--threads", threads, "worker threads (0 = all cores); output does not depend on it");
    cmd->add_flag("--timing", timing, "record wall_time_ms (otherwise 0, keeping output byte-stable)");
    cmd->add_option("--out", sink.out_path, "append JSON-lines here instead of stdout");
    cmd->add_option("--csv", sink.csv_path, "append a CSV mirror here");
  };

  auto* table = app.add_subcommand("table", "reproduce the eigenvalue table at default sizes");
  add_common(table);

  auto* verify = app.add_subcommand("verify", "run one verification suite");
  std::string kind, space_name, params_json, gallery_id;
  int n = -1, m = -1;
  double level = 0.0;
  double tolerance = -1.0;
  verify->add_option("kind", kind, "eigen | invariance | regularity | minimality | product-rules")
      ->required()
      ->check(CLI::IsMember({"eigen", "invariance", "regularity", "minimality", "product-rules"}));
  verify->add_option("--space", space_name,
                     "so_n su_n sp_n su_so sp_u so2n_u su2n_sp grass_r grass_c grass_h");
  verify->add_option("--n", n, "size parameter n");
  verify->add_option("--m", m, "Grassmannian m");
  verify->add_option("--params", params_json, R"(JSON object, e.g. {"a": [[1,0],[0,1],[0,0]], "p": [1,0,0]})");
  verify->add_option("--gallery", gallery_id, "regularity: run a critical gallery case instead");
  auto* level_opt = verify->add_option("--level", level, "minimality: use the level set phi = c (control)");
  verify->add_option("--tol", tolerance, "override the main tolerance of the check");
  add_common(verify);

  auto* gallery = app.add_subcommand("gallery", "critical points from the non-regularity results");
  std::string action, case_id;
  gallery->add_option("action", action, "list | run")->required()->check(CLI::IsMember({"list", "run"}));
  gallery->add_option("id", case_id, "case id for run");
  gallery->add_option("--out", sink.out_path, "append JSON-lines here instead of stdout");
  gallery->footer("case ids: so3-isotropic-p grassR-2-2 grassR-generic so4-u2-old-family grassC-generic grassH-coordinate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (table->parsed()) {
      const auto engine = parse_engine(engine_name, fd_step);
      const int k = samples < 0 ? 50 : samples;
      const auto rows = run_table(default_table_sizes(), k, seed, engine, threads);
      std::vector<VerificationReport> reports;
      std::printf("%-16s %-10s %-8s %-12s %-12s %s\n", "space", "lambda", "mu", "tau_res", "kappa_res", "status");
      for (const auto& r : rows) {
        std::printf("%-16s %-10s %-8s %-12.3e %-12.3e %s\n", r.space.label().c_str(), to_string(r.space.lambda).c_str(),
                    to_string(r.space.mu).c_str(), r.tau_residual, r.kappa_residual, r.pass ? "pass" : "FAIL");
        reports.push_back(table_report(r, k, seed, engine.name()));
      }
      sink.write(reports, false);
      return exit_for(reports);
    }

    if (gallery->parsed()) {
      if (action == "list") {
        for (const auto& id : gallery_ids()) {
          const auto c = gallery_case(id);
          std::printf("%-20s %s\n", id.c_str(), c.description.c_str());
        }
        return kExitPass;
      }
      if (case_id.empty()) throw PreconditionError("gallery run needs a case id");
      const auto res = critical_gallery(case_id);
      const auto reports = verify_gallery(case_id);
      std::printf("case=%s space=%s |phi|=%.3e grad_norm=%.3e classification=%s\n", case_id.c_str(),
                  res.info.spec.space.label().c_str(), std::abs(res.phi), res.grad_norm,
                  exit_for(reports) == kExitPass ? "critical (confirmed)" : "NOT critical");
      sink.write(reports, false);
      return exit_for(reports);
    }

    // verify
    std::vector<VerificationReport> reports;
    if (!gallery_id.empty()) {
      if (kind != "regularity") throw PreconditionError("--gallery only applies to regularity");
      reports = verify_gallery(gallery_id);
    } else {
      if (space_name.empty()) throw PreconditionError("verify needs --space or --gallery");
      const auto sk = parse_space_id(space_name);
      if (!sk) throw PreconditionError("unknown space " + space_name);
      RunConfig cfg{make_space(*sk, n > 0 ? n : default_n(*sk), m > 0 ? m : 2)};
      if (!is_grassmannian(*sk) && m > 0) throw PreconditionError("--m only applies to Grassmannians");
      if (!params_json.empty()) cfg.params = parse_params(params_json);
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.timing = timing;
      cfg.engine = parse_engine(engine_name, fd_step);
      if (level_opt->count() > 0) {
        if (kind != "minimality") throw PreconditionError("--level only applies to minimality");
        cfg.level = level;
      }
      if (tolerance > 0) {
        cfg.tol.exact = cfg.tol.fd = cfg.tol.curvature = cfg.tol.invariance = tolerance;
        cfg.tol.product_rule = cfg.tol.engine_agreement = tolerance;
      }
      const int defaults[] = {50, 20, 20, 10, 50};
      const char* kinds[] = {"eigen", "invariance", "regularity", "minimality", "product-rules"};
      for (int i = 0; i < 5; ++i)
        if (kind == kinds[i]) cfg.samples = samples < 0 ? defaults[i] : samples;

      if (kind == "eigen")
        reports = verify_eigen(cfg);
      else if (kind == "invariance")
        reports = verify_invariance(cfg);
      else if (kind == "regularity")
        reports = verify_regularity(cfg);
      else if (kind == "minimality")
        reports = verify_minimality(cfg);
      else
        reports = verify_product_rules(cfg);
    }
    summarize(reports);
    sink.write(reports, true);
    return exit_for(reports);
  } catch (const Error& e) {
    std::fprintf(stderr, "symmin: %s\n", e.what());
    return kExitUsage;
  }
}
