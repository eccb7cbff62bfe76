// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "symmin/errors.hpp"
#include "symmin/report.hpp"

using namespace symmin;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    pass = false;
    detail << " [" << why << "]";
  }
};

int failures = 0;

void report(int id, const std::string& name, Outcome& o) {
  if (!o.pass) ++failures;
  std::printf("%s %d %s:%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.str().c_str());
  std::fflush(stdout);
}

// Frozen table values, written out independently of the descriptors.
std::pair<Rational, Rational> table_row(SpaceKind kind, int n, int m) {
  const long long N = n, M = m;
  switch (kind) {
    case SpaceKind::SO: return {Rational(-(N - 1), 2), Rational(-1, 2)};
    case SpaceKind::SU: return {Rational(-(N * N - 1), N), Rational(-(N - 1), N)};
    case SpaceKind::Sp: return {Rational(-(2 * N + 1), 2), Rational(-1, 2)};
    case SpaceKind::SU_SO: return {Rational(-2 * (N * N + N - 2), N), Rational(-4 * (N - 1), N)};
    case SpaceKind::Sp_U: return {Rational(-2 * (N + 1)), Rational(-2)};
    case SpaceKind::SO2n_U: return {Rational(-2 * (N - 1)), Rational(-1)};
    case SpaceKind::SU2n_Sp: return {Rational(-2 * (2 * N * N - N - 1), N), Rational(-2 * (N - 1), N)};
    case SpaceKind::GrR: return {Rational(-(M + N)), Rational(-2)};
    case SpaceKind::GrC: return {Rational(-2 * (M + N)), Rational(-2)};
    case SpaceKind::GrH: return {Rational(-2 * (M + N)), Rational(-1)};
  }
  return {};
}

std::vector<SpaceDescriptor> table_sizes() {
  std::vector<SpaceDescriptor> out;
  for (int n = 3; n <= 6; ++n) out.push_back(make_space(SpaceKind::SO, n));
  for (int n = 2; n <= 5; ++n) out.push_back(make_space(SpaceKind::SU, n));
  for (int n = 1; n <= 3; ++n) out.push_back(make_space(SpaceKind::Sp, n));
  for (int n = 2; n <= 4; ++n) out.push_back(make_space(SpaceKind::SU_SO, n));
  for (int n = 1; n <= 3; ++n) out.push_back(make_space(SpaceKind::Sp_U, n));
  for (int n = 2; n <= 3; ++n) out.push_back(make_space(SpaceKind::SO2n_U, n));
  for (int n = 1; n <= 2; ++n) out.push_back(make_space(SpaceKind::SU2n_Sp, n));
  for (auto kind : {SpaceKind::GrR, SpaceKind::GrC, SpaceKind::GrH})
    for (auto [m, n] : {std::pair{1, 2}, {2, 2}, {2, 3}}) out.push_back(make_space(kind, n, m));
  return out;
}

const int kThreads = std::max(2, default_threads());

void criterion_table() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto sizes = table_sizes();
  double worst_exact = 0.0, worst_fd = 0.0;
  for (const auto& s : sizes) {
    const auto [lam, mu] = table_row(s.kind, s.n, s.m);
    if (s.lambda != lam || s.mu != mu) o.fail(s.label() + " eigenvalues differ from the table");
  }
  for (const auto& row : run_table(sizes, 50, 2024, DerivativeEngine::exact(), kThreads)) {
    worst_exact = std::max({worst_exact, row.tau_residual, row.kappa_residual});
    if (!(row.tau_residual <= 1e-9 && row.kappa_residual <= 1e-9)) o.fail(row.space.label() + " exact");
  }
  for (const auto& row : run_table(sizes, 50, 2024, DerivativeEngine::finite_difference(), kThreads)) {
    worst_fd = std::max({worst_fd, row.tau_residual, row.kappa_residual});
    if (!(row.tau_residual <= 1e-6 && row.kappa_residual <= 1e-6)) o.fail(row.space.label() + " fd");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= 300.0) o.fail("runtime over 5 minutes");
  o.detail << " " << sizes.size() << " spaces x 50 samples, max exact " << worst_exact << ", max fd " << worst_fd
           << ", " << secs << " s";
  report(1, "table reproduction", o);
}

void criterion_ordering() {
  Outcome o;
  int entries = 0;
  for (auto kind : all_space_kinds()) {
    for (int n = 1; n <= 8; ++n) {
      for (int m = is_grassmannian(kind) ? 1 : 0; m <= (is_grassmannian(kind) ? 8 - n : 0); ++m) {
        SpaceDescriptor s;
        try {
          s = make_space(kind, n, m);
        } catch (const PreconditionError&) {
          continue;
        }
        ++entries;
        if (!(s.lambda <= s.mu && s.mu <= Rational(0)))
          o.fail(s.label() + " " + to_string(s.lambda) + " " + to_string(s.mu));
      }
    }
  }
  o.detail << " lambda <= mu <= 0 as rationals for " << entries << " catalog entries";
  report(2, "lambda-mu ordering", o);
}

void criterion_invariance() {
  Outcome o;
  double worst_inv = 0.0, worst_vert = 0.0;
  int spaces = 0;
  for (const auto& s : table_sizes()) {
    if (!s.is_quotient()) continue;
    ++spaces;
    RunConfig cfg;
    cfg.space = s;
    cfg.samples = 20;
    cfg.seed = 31;
    cfg.threads = kThreads;
    for (const auto& r : verify_invariance(cfg)) {
      if (r.check == "invariance") worst_inv = std::max(worst_inv, r.residual);
      if (r.check == "vertical-derivatives") worst_vert = std::max(worst_vert, r.residual);
      if (!r.pass) o.fail(s.label() + " " + r.check);
    }
  }
  if (worst_inv > 1e-12) o.fail("invariance above 1e-12");
  if (worst_vert > 1e-10) o.fail("vertical derivatives above 1e-10");
  o.detail << " " << spaces << " quotient spaces, max invariance " << worst_inv << ", max vertical " << worst_vert;
  report(3, "subgroup invariance", o);
}

void criterion_regularity() {
  Outcome o;
  std::vector<SpaceDescriptor> spaces;
  for (int n = 3; n <= 5; ++n) spaces.push_back(make_space(SpaceKind::SO, n));
  for (int n = 2; n <= 4; ++n) spaces.push_back(make_space(SpaceKind::SU, n));
  for (int n = 1; n <= 2; ++n) spaces.push_back(make_space(SpaceKind::Sp, n));
  for (int n = 2; n <= 3; ++n) spaces.push_back(make_space(SpaceKind::SU_SO, n));
  for (int n = 1; n <= 2; ++n) spaces.push_back(make_space(SpaceKind::Sp_U, n));
  for (int n = 1; n <= 2; ++n) spaces.push_back(make_space(SpaceKind::SU2n_Sp, n));
  for (int n = 2; n <= 3; ++n) spaces.push_back(make_space(SpaceKind::SO2n_U, n));

  const int restarts = 20;
  double overall_min = INFINITY;
  for (const auto& s : spaces) {
    const auto spec = build(s, default_params(s));
    if (s.kind == SpaceKind::SO && !spec.regularity_notes.empty()) o.fail(s.label() + " default p is isotropic");
    std::vector<double> grads(restarts, -1.0);
    std::string error;
    std::mutex mu;
    parallel_for(restarts, kThreads, [&](int i) {
      try {
        const auto fp = find_fiber_point(spec, derive_seed(404, 0, i));
        if (fp.converged) grads[i] = fp.grad_norm;
      } catch (const Error& e) {
        std::lock_guard lock(mu);
        error = e.what();
      }
    });
    if (!error.empty()) {
      o.fail(s.label() + ": " + error);
      continue;
    }
    int converged = 0;
    double min_grad = INFINITY;
    for (double g : grads)
      if (g >= 0.0) {
        ++converged;
        min_grad = std::min(min_grad, g);
      }
    overall_min = std::min(overall_min, min_grad);
    if (converged < (restarts * 4 + 4) / 5) o.fail(s.label() + " converged " + std::to_string(converged) + "/20");
    if (!(min_grad > 1e-3)) o.fail(s.label() + " min grad_norm " + std::to_string(min_grad));
  }
  o.detail << " " << spaces.size() << " spaces x 20 restarts, min grad_norm over converged points " << overall_min;
  report(4, "positive regularity", o);
}

void criterion_gallery() {
  Outcome o;
  const auto& ids = gallery_ids();
  if (ids.size() < 5) o.fail("fewer than 5 cases");
  double worst_phi = 0.0, worst_grad = 0.0;
  std::vector<std::string> labels;
  for (const auto& id : ids) {
    const auto g = critical_gallery(id);
    worst_phi = std::max(worst_phi, std::abs(g.phi));
    worst_grad = std::max(worst_grad, g.grad_norm);
    if (!(std::abs(g.phi) < 1e-12 && g.grad_norm < 1e-10)) o.fail(id);
    labels.push_back(g.info.spec.space.label());
  }
  auto covers = [&](const std::string& prefix) {
    return std::any_of(labels.begin(), labels.end(), [&](const auto& l) { return l.rfind(prefix, 0) == 0; });
  };
  for (const char* p : {"SO(3)", "SO(4)/U(2)", "Gr_R", "Gr_C", "Gr_H"})
    if (!covers(p)) o.fail(std::string("no case on ") + p);
  o.detail << " " << ids.size() << " cases, max |phi| " << worst_phi << ", max grad_norm " << worst_grad;
  report(5, "critical gallery", o);
}

void criterion_minimality() {
  Outcome o;
  for (const auto& s : {make_space(SpaceKind::SO, 3), make_space(SpaceKind::SU, 2), make_space(SpaceKind::SU, 3),
                        make_space(SpaceKind::SU_SO, 3)}) {
    RunConfig cfg;
    cfg.space = s;
    cfg.samples = 10;
    cfg.seed = 606;
    cfg.threads = kThreads;
    for (const auto& r : verify_minimality(cfg)) {
      if (!r.pass) o.fail(s.label() + " " + r.check);
      if (r.check == "mean-curvature") o.detail << " " << s.label() << " max|H| " << r.residual << ";";
      if (r.check == "jacobian-sigma3") o.detail << " sigma3 " << r.residual << ";";
    }
  }
  RunConfig control;
  control.space = make_space(SpaceKind::SO, 3);
  control.samples = 10;
  control.seed = 606;
  control.level = 0.3;
  control.threads = kThreads;
  for (const auto& r : verify_minimality(control)) {
    if (!r.pass) o.fail("control " + r.check);
    if (r.check == "control-curvature") o.detail << " control above 1e-2: " << r.detail["above_1e-2"].dump() << "/10";
  }
  report(6, "minimality witness", o);
}

void criterion_engines() {
  Outcome o;
  std::vector<EigenfunctionSpec> specs;
  for (const auto& s : table_sizes()) specs.push_back(build(s, default_params(s)));
  double worst = 0.0;
  const auto fd = DerivativeEngine::finite_difference();
  for (int probe = 0; probe < 100; ++probe) {
    const auto& spec = specs[probe % specs.size()];
    Rng rng(derive_seed(707, 0, probe));
    const CMat x = haar_sample(spec.space.total, rng);
    const auto basis = algebra_basis(spec.space.total);
    CMat X = CMat::Zero(x.rows(), x.cols());
    for (const auto& B : basis.elements) X += rng.normal() * B;
    X /= std::sqrt(trace_metric(X, X));
    for (int order : {1, 2}) {
      const cplx e = dir_derivative(spec, x, X, order, DerivativeEngine::exact());
      const cplx f = dir_derivative(spec, x, X, order, fd);
      worst = std::max(worst, std::abs(e - f) / (1.0 + std::abs(e)));
    }
  }
  if (worst > 1e-6) o.fail("derivative disagreement");
  double worst_product = 0.0;
  for (int probe = 0; probe < 50; ++probe) {
    const auto& spec = specs[probe % specs.size()];
    const auto other = probe % 2 ? spec : build(spec.space, default_params(spec.space, 1));
    const CMat x = haar_sample(spec.space.total, derive_seed(708, 0, probe));
    worst_product = std::max(worst_product, product_rule_residual(spec, other, x, DerivativeEngine::exact()));
  }
  if (worst_product > 1e-6) o.fail("product rule");
  o.detail << " 100 probes max relative gap " << worst << ", 50 product-rule probes max " << worst_product;
  report(7, "engine agreement", o);
}

std::string run_all(int threads) {
  std::string out;
  auto add = [&](const std::vector<VerificationReport>& rs) {
    for (const auto& r : rs) out += to_json_line(r) + "\n";
  };
  RunConfig cfg;
  cfg.space = make_space(SpaceKind::SU_SO, 3);
  cfg.samples = 16;
  cfg.seed = 808;
  cfg.threads = threads;
  add(verify_eigen(cfg));
  add(verify_invariance(cfg));
  add(verify_regularity(cfg));
  cfg.engine = DerivativeEngine::finite_difference();
  add(verify_eigen(cfg));
  cfg.engine = DerivativeEngine::exact();
  cfg.space = make_space(SpaceKind::SU, 2);
  cfg.samples = 4;
  add(verify_minimality(cfg));
  cfg.space = make_space(SpaceKind::SO, 4);
  cfg.samples = 8;
  add(verify_product_rules(cfg));
  for (const auto& row : run_table(default_table_sizes(), 8, 808, DerivativeEngine::exact(), threads))
    out += to_json_line(table_report(row, 8, 808, "exact")) + "\n";
  return out;
}

void criterion_determinism() {
  Outcome o;
  const std::string one = run_all(1);
  const std::string four = run_all(4);
  if (one != four) o.fail("outputs differ");
  o.detail << " " << std::count(one.begin(), one.end(), '\n') << " JSON lines, threads 1 vs 4 "
           << (one == four ? "byte-identical" : "differ");
  report(8, "determinism", o);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion_table,      criterion_ordering, criterion_invariance,
                                                    criterion_regularity, criterion_gallery,  criterion_minimality,
                                                    criterion_engines,    criterion_determinism};
  int id = 0;
  for (const auto& c : criteria) {
    ++id;
    try {
      c();
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL %d: uncaught error: %s\n", id, e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
