#include "symmin/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "symmin/errors.hpp"

namespace symmin {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kNoValue = 1e300;

class Stopwatch {
public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    if (!enabled_) return 0;
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

VerificationReport base_report(const RunConfig& cfg, const EigenfunctionSpec& spec, const std::string& check) {
  VerificationReport r;
  r.space = spec.space.label();
  r.params = params_to_json(spec.params);
  r.check = check;
  r.samples = cfg.samples;
  r.seed = cfg.seed;
  r.engine = cfg.engine.name();
  return r;
}

std::vector<VerificationReport> stamp(std::vector<VerificationReport> reports, const Stopwatch& sw) {
  const long long ms = sw.ms();
  for (auto& r : reports) {
    r.wall_time_ms = ms;
    r = finalize(std::move(r));
  }
  return reports;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  return v[static_cast<std::size_t>(q * static_cast<double>(v.size() - 1))];
}

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

cplx read_entry(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw PreconditionError("params: entries must be numbers or [re, im] pairs");
}

}  // namespace

VerificationReport finalize(VerificationReport r) {
  r.pass = std::isfinite(r.residual) && r.residual <= r.tolerance;
  return r;
}

std::string to_json_line(const VerificationReport& r) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["space"] = r.space;
  j["params"] = r.params;
  j["check"] = r.check;
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["engine"] = r.engine;
  j["wall_time_ms"] = r.wall_time_ms;
  j["detail"] = r.detail;
  return j.dump();
}

std::string csv_header() {
  return "schema_version,space,params,check,residual,tolerance,pass,samples,seed,engine,wall_time_ms";
}

std::string to_csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << kSchemaVersion << ',' << csv_escape(r.space) << ',' << csv_escape(r.params.dump()) << ','
     << csv_escape(r.check) << ',' << r.residual << ',' << r.tolerance << ',' << (r.pass ? "true" : "false") << ','
     << r.samples << ',' << r.seed << ',' << r.engine << ',' << r.wall_time_ms;
  return os.str();
}

Params params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw PreconditionError("params: expected a JSON object");
  Params p;
  for (const auto& [name, value] : j.items()) {
    if (name == "A") {
      if (!value.is_array() || value.empty()) throw PreconditionError("params: A must be a matrix");
      const auto rows = static_cast<Eigen::Index>(value.size());
      CMat A(rows, rows);
      for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = value[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
          throw PreconditionError("params: A must be square");
        for (Eigen::Index k = 0; k < rows; ++k) A(i, k) = read_entry(row[static_cast<std::size_t>(k)]);
      }
      p.matrix = A;
      continue;
    }
    if (!value.is_array()) throw PreconditionError("params: " + name + " must be an array");
    CVec v(static_cast<Eigen::Index>(value.size()));
    for (std::size_t i = 0; i < value.size(); ++i) v(static_cast<Eigen::Index>(i)) = read_entry(value[i]);
    p.vectors[name] = v;
  }
  return p;
}

Params parse_params(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(std::string("params: malformed JSON: ") + e.what());
  }
  return params_from_json(j);
}

ojson params_to_json(const Params& p) {
  ojson j = ojson::object();
  for (const auto& [name, v] : p.vectors) {
    ojson arr = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
    j[name] = arr;
  }
  return j;
}

EigenfunctionSpec spec_for(const RunConfig& cfg) {
  return build(cfg.space, cfg.params ? *cfg.params : default_params(cfg.space));
}

std::vector<VerificationReport> verify_eigen(const RunConfig& cfg) {
  Stopwatch sw(cfg.timing);
  const auto spec = spec_for(cfg);
  const auto rep = eigen_residuals(spec, cfg.samples, cfg.seed, cfg.engine, cfg.threads);
  const double tol = cfg.engine.mode == EngineMode::Exact ? cfg.tol.exact : cfg.tol.fd;
  auto tau = base_report(cfg, spec, "eigen-tau");
  tau.residual = rep.max_tau_residual;
  tau.tolerance = tol;
  tau.detail["lambda"] = to_string(spec.lambda);
  auto kappa = base_report(cfg, spec, "eigen-kappa");
  kappa.residual = rep.max_kappa_residual;
  kappa.tolerance = tol;
  kappa.detail["mu"] = to_string(spec.mu);
  if (rep.no_samples) {
    tau.detail["flag"] = "no samples";
    kappa.detail["flag"] = "no samples";
  }
  return stamp({tau, kappa}, sw);
}

std::vector<VerificationReport> verify_invariance(const RunConfig& cfg) {
  Stopwatch sw(cfg.timing);
  const auto spec = spec_for(cfg);
  if (!spec.space.is_quotient()) throw PreconditionError("verify invariance: " + spec.space.label() + " is not a quotient family");
  const TangentBasis kbasis = subgroup_basis(spec.space);
  std::vector<double> inv(cfg.samples), vert(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](int i) {
    const CMat x = haar_sample(spec.space.total, derive_seed(cfg.seed, 0x49, static_cast<std::uint64_t>(i)));
    inv[i] = invariance_residual(spec, x, 20, derive_seed(cfg.seed, 0x4b, static_cast<std::uint64_t>(i)));
    double v = 0.0;
    for (const cplx& c : gradient_components(spec, x, kbasis, cfg.engine)) v = std::max(v, std::abs(c));
    vert[i] = v;
  });
  auto a = base_report(cfg, spec, "invariance");
  a.residual = max_of(inv);
  a.tolerance = cfg.tol.invariance;
  a.detail["subgroup_samples"] = 20;
  auto b = base_report(cfg, spec, "vertical-derivatives");
  b.residual = max_of(vert);
  b.tolerance = cfg.tol.vertical;
  return stamp({a, b}, sw);
}

std::vector<VerificationReport> verify_regularity(const RunConfig& cfg) {
  Stopwatch sw(cfg.timing);
  const auto spec = spec_for(cfg);
  const int restarts = cfg.samples;
  std::vector<FiberPoint> points(restarts);
  std::string failure;
  try {
    parallel_for(restarts, cfg.threads, [&](int i) {
      points[i] = find_fiber_point(spec, derive_seed(cfg.seed, 0x52, static_cast<std::uint64_t>(i)));
    });
  } catch (const PreconditionError& e) {
    failure = e.what();
    points.assign(restarts, FiberPoint{});
  }
  std::vector<double> grads;
  int critical = 0, undecided = 0;
  for (const auto& fp : points) {
    if (!fp.converged) continue;
    grads.push_back(fp.grad_norm);
    if (fp.grad_norm < 1e-8)
      ++critical;
    else if (fp.grad_norm <= 1e-3)
      ++undecided;
  }
  const int converged = static_cast<int>(grads.size());
  const double min_grad = grads.empty() ? 0.0 : *std::min_element(grads.begin(), grads.end());

  if (spec.regularity != RegularityClaim::Regular) {
    // No assertion: these families are known critical or undecided.
    auto r = base_report(cfg, spec, "regularity-statistics");
    r.residual = 0.0;
    r.tolerance = 0.0;
    r.detail["claim"] = spec.regularity == RegularityClaim::NotRegular ? "not regular" : "open";
    r.detail["restarts"] = restarts;
    r.detail["converged"] = converged;
    r.detail["critical"] = critical;
    r.detail["undecided"] = undecided;
    r.detail["min_grad_norm"] = min_grad;
    r.detail["median_grad_norm"] = quantile(grads, 0.5);
    r.detail["max_grad_norm"] = max_of(grads);
    if (!failure.empty()) r.detail["error"] = failure;
    return stamp({r}, sw);
  }

  auto conv = base_report(cfg, spec, "fibre-convergence");
  conv.residual = restarts > 0 ? 1.0 - static_cast<double>(converged) / restarts : 1.0;
  conv.tolerance = 0.2;
  conv.detail["restarts"] = restarts;
  conv.detail["converged"] = converged;
  if (!failure.empty()) conv.detail["error"] = failure;
  auto floor = base_report(cfg, spec, "min-grad-norm");
  floor.residual = converged > 0 && min_grad > 0 ? 1e-3 / min_grad : kNoValue;
  floor.tolerance = 1.0;
  floor.detail["min_grad_norm"] = min_grad;
  floor.detail["threshold"] = 1e-3;
  return stamp({conv, floor}, sw);
}

std::vector<VerificationReport> verify_minimality(const RunConfig& cfg) {
  Stopwatch sw(cfg.timing);
  const auto base = spec_for(cfg);
  const EigenfunctionSpec spec = cfg.level ? shifted(base, *cfg.level) : base;
  const int wanted = cfg.samples;

  struct Probe {
    bool usable = false;
    FiberTangent tangent;
    CurvatureEstimate curvature;
  };
  std::vector<Probe> found;
  int attempted = 0, conformality_flags = 0;
  for (int batch = 0; batch < 4 && static_cast<int>(found.size()) < wanted; ++batch) {
    const int count = 2 * std::max(wanted, 1);
    std::vector<Probe> probes(count);
    parallel_for(count, cfg.threads, [&](int i) {
      const auto idx = static_cast<std::uint64_t>(attempted + i);
      const FiberPoint fp = find_fiber_point(spec, derive_seed(cfg.seed, 0x4d, idx));
      if (!fp.converged || regularity_check(spec, fp).classification != Regularity::Regular) return;
      probes[i].tangent = fiber_tangent_basis(spec, fp);
      probes[i].curvature = mean_curvature_estimate(spec, fp, 1e-3);
      probes[i].usable = true;
    });
    attempted += count;
    for (auto& p : probes)
      if (p.usable && static_cast<int>(found.size()) < wanted) found.push_back(std::move(p));
  }

  std::vector<double> sigma3, sigma2, annihilation, curvature;
  for (const auto& p : found) {
    sigma3.push_back(p.tangent.sigma3);
    sigma2.push_back(p.tangent.sigma2);
    annihilation.push_back(p.tangent.max_annihilation);
    curvature.push_back(p.curvature.norm);
    if (p.curvature.conformality_violation) ++conformality_flags;
  }
  const int got = static_cast<int>(found.size());

  auto points = base_report(cfg, base, "regular-fibre-points");
  points.residual = static_cast<double>(wanted - got);
  points.tolerance = 0.0;
  points.detail["found"] = got;
  points.detail["attempted"] = attempted;

  if (cfg.level) {
    auto control = base_report(cfg, base, "control-curvature");
    int above = 0;
    for (double hn : curvature) above += hn > 1e-2 ? 1 : 0;
    control.residual = got > 0 ? 1.0 - static_cast<double>(above) / got : 1.0;
    control.tolerance = 0.2;
    control.detail["level"] = *cfg.level;
    control.detail["above_1e-2"] = above;
    control.detail["min_curvature"] = curvature.empty() ? 0.0 : *std::min_element(curvature.begin(), curvature.end());
    return stamp({points, control}, sw);
  }

  auto s3 = base_report(cfg, base, "jacobian-sigma3");
  s3.residual = max_of(sigma3);
  s3.tolerance = 1e-8;
  auto s2 = base_report(cfg, base, "jacobian-sigma2-floor");
  s2.residual = sigma2.empty() ? kNoValue : 1e-3 / *std::min_element(sigma2.begin(), sigma2.end());
  s2.tolerance = 1.0;
  s2.detail["min_sigma2"] = sigma2.empty() ? 0.0 : *std::min_element(sigma2.begin(), sigma2.end());
  auto ann = base_report(cfg, base, "tangent-annihilation");
  ann.residual = max_of(annihilation);
  ann.tolerance = 1e-8;
  auto mc = base_report(cfg, base, "mean-curvature");
  mc.residual = got > 0 ? max_of(curvature) : kNoValue;
  mc.tolerance = cfg.tol.curvature;
  mc.detail["conformality_flags"] = conformality_flags;
  return stamp({points, s3, s2, ann, mc}, sw);
}

std::vector<VerificationReport> verify_product_rules(const RunConfig& cfg) {
  Stopwatch sw(cfg.timing);
  const auto a = spec_for(cfg);
  const auto b = build(cfg.space, default_params(cfg.space, 1));
  const TangentBasis basis = algebra_basis(cfg.space.total);
  DerivativeEngine fd = cfg.engine;
  fd.mode = EngineMode::FiniteDifference;
  std::vector<double> prod(cfg.samples), agree(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](int i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const CMat x = haar_sample(cfg.space.total, derive_seed(cfg.seed, 0x50, idx));
    prod[i] = std::max(product_rule_residual(a, b, x, cfg.engine), product_rule_residual(a, a, x, cfg.engine));

    Rng rng(derive_seed(cfg.seed, 0x41, idx));
    CMat X = CMat::Zero(x.rows(), x.cols());
    for (const CMat& B : basis.elements) X += rng.normal() * B;
    X /= std::sqrt(trace_metric(X, X));
    double worst = 0.0;
    for (int order = 1; order <= 2; ++order) {
      const auto cmp = compare_engines(a, x, X, order, fd);
      worst = std::max(worst, std::abs(cmp.exact - cmp.fd) / (1.0 + std::abs(cmp.exact)));
    }
    agree[i] = worst;
  });
  auto p = base_report(cfg, a, "product-rule");
  p.residual = max_of(prod);
  p.tolerance = cfg.tol.product_rule;
  p.detail["second_member"] = params_to_json(b.params);
  auto e = base_report(cfg, a, "engine-agreement");
  e.residual = max_of(agree);
  e.tolerance = cfg.tol.engine_agreement;
  return stamp({p, e}, sw);
}

std::vector<VerificationReport> verify_gallery(const std::string& case_id) {
  const auto res = critical_gallery(case_id);
  VerificationReport base;
  base.space = res.info.spec.space.label();
  base.params = params_to_json(res.info.spec.params);
  base.samples = 1;
  base.engine = "exact";
  base.detail["case"] = case_id;
  auto phi = base;
  phi.check = "gallery-phi";
  phi.residual = std::abs(res.phi);
  phi.tolerance = 1e-12;
  auto grad = base;
  grad.check = "gallery-grad-norm";
  grad.residual = res.grad_norm;
  grad.tolerance = 1e-10;
  grad.detail["expected"] = "critical";
  return {finalize(phi), finalize(grad)};
}

std::vector<SpaceDescriptor> default_table_sizes() {
  return {make_space(SpaceKind::SO, 4),     make_space(SpaceKind::SU, 3),      make_space(SpaceKind::Sp, 2),
          make_space(SpaceKind::SU_SO, 3),  make_space(SpaceKind::Sp_U, 2),    make_space(SpaceKind::SO2n_U, 2),
          make_space(SpaceKind::SU2n_Sp, 2), make_space(SpaceKind::GrR, 2, 2), make_space(SpaceKind::GrC, 2, 2),
          make_space(SpaceKind::GrH, 2, 2)};
}

std::vector<TableRow> run_table(const std::vector<SpaceDescriptor>& spaces, int samples, std::uint64_t seed,
                                const DerivativeEngine& engine, int threads, const Tolerances& tol) {
  std::vector<TableRow> rows;
  const double t = engine.mode == EngineMode::Exact ? tol.exact : tol.fd;
  for (const auto& s : spaces) {
    const auto spec = build(s, default_params(s));
    const auto rep = eigen_residuals(spec, samples, seed, engine, threads);
    rows.push_back({s, rep.max_tau_residual, rep.max_kappa_residual, t,
                    rep.max_tau_residual <= t && rep.max_kappa_residual <= t});
  }
  return rows;
}

VerificationReport table_report(const TableRow& row, int samples, std::uint64_t seed, const std::string& engine) {
  VerificationReport r;
  r.space = row.space.label();
  r.params = params_to_json(default_params(row.space));
  r.check = "table-row";
  r.residual = std::max(row.tau_residual, row.kappa_residual);
  r.tolerance = row.tolerance;
  r.samples = samples;
  r.seed = seed;
  r.engine = engine;
  r.detail["lambda"] = to_string(row.space.lambda);
  r.detail["mu"] = to_string(row.space.mu);
  r.detail["tau_residual"] = row.tau_residual;
  r.detail["kappa_residual"] = row.kappa_residual;
  return finalize(r);
}

}  // namespace symmin
