#include "symmin/operators.hpp"

#include <algorithm>
#include <cmath>

#include "symmin/errors.hpp"

namespace symmin {

namespace {

cplx exact_term(const Term& t, const CMat& x, const CMat& X, int order) {
  switch (t.shape) {
    case Shape::L: {
      const CMat xX = x * X;
      if (order == 1) return t.A.cwiseProduct(xX).sum();
      return t.A.cwiseProduct(xX * X).sum();
    }
    case Shape::Q:
    case Shape::S: {
      const bool sesqui = t.shape == Shape::S;
      const CMat Xd = sesqui ? CMat(X.adjoint()) : CMat(X.transpose());
      const CMat xd = sesqui ? CMat(x.adjoint()) : CMat(x.transpose());
      CMat middle;
      if (order == 1) {
        middle = X * t.B + t.B * Xd;
      } else {
        const CMat XB = X * t.B;
        middle = X * XB + 2.0 * XB * Xd + t.B * Xd * Xd;
      }
      return (t.A * x * middle * xd).trace();
    }
  }
  return 0.0;
}

cplx stencil(const std::function<cplx(double)>& f, double h, int order, int accuracy, cplx f0) {
  if (accuracy == 2) {
    const cplx fp = f(h), fm = f(-h);
    if (order == 1) return (fp - fm) / (2.0 * h);
    return (fp - 2.0 * f0 + fm) / (h * h);
  }
  const cplx fp = f(h), fm = f(-h), fp2 = f(2 * h), fm2 = f(-2 * h);
  if (order == 1) return (fm2 - 8.0 * fm + 8.0 * fp - fp2) / (12.0 * h);
  return (-fp2 + 16.0 * fp - 30.0 * f0 + 16.0 * fm - fm2) / (12.0 * h * h);
}

void check_order(int order) {
  if (order != 1 && order != 2) throw PreconditionError("dir_derivative: order must be 1 or 2");
}

}  // namespace

void DerivativeEngine::check() const {
  if (!(fd_step >= 1e-8 && fd_step <= 1e-2)) throw PreconditionError("engine: fd_step must lie in [1e-8, 1e-2]");
  if (fd_order != 2 && fd_order != 4) throw PreconditionError("engine: fd_order must be 2 or 4");
}

bool same_space(const SpaceDescriptor& a, const SpaceDescriptor& b) {
  return a.kind == b.kind && a.n == b.n && a.m == b.m;
}

cplx fd_derivative(const std::function<cplx(const CMat&)>& f, const GroupId& group, const CMat& x, const CMat& X,
                   int order, const DerivativeEngine& engine) {
  check_order(order);
  engine.check();
  auto along = [&](double s) { return f(retract(group, x, s * X)); };
  const cplx f0 = f(x);
  const double h = engine.fd_step;
  const cplx d1 = stencil(along, h, order, engine.fd_order, f0);
  if (!engine.richardson) return d1;
  const cplx d2 = stencil(along, 2 * h, order, engine.fd_order, f0);
  const double w = std::ldexp(1.0, engine.fd_order);
  return (w * d1 - d2) / (w - 1.0);
}

cplx dir_derivative(const EigenfunctionSpec& spec, const CMat& x, const CMat& X, int order,
                    const DerivativeEngine& engine) {
  check_order(order);
  if (engine.mode == EngineMode::FiniteDifference) {
    auto f = [&](const CMat& y) { return evaluate(spec, y); };
    return fd_derivative(f, spec.space.total, x, X, order, engine);
  }
  cplx value = 0.0;
  for (const Term& t : spec.terms) value += exact_term(t, x, X, order);
  return value;
}

EngineComparison compare_engines(const EigenfunctionSpec& spec, const CMat& x, const CMat& X, int order,
                                 const DerivativeEngine& fd_engine) {
  DerivativeEngine fd = fd_engine;
  fd.mode = EngineMode::FiniteDifference;
  const cplx e = dir_derivative(spec, x, X, order, DerivativeEngine::exact());
  const cplx d = dir_derivative(spec, x, X, order, fd);
  return {e, d, std::abs(e - d) > 1e-5 * (1.0 + std::abs(e))};
}

std::vector<cplx> gradient_components(const EigenfunctionSpec& spec, const CMat& x, const TangentBasis& basis,
                                      const DerivativeEngine& engine) {
  std::vector<cplx> out;
  out.reserve(basis.size());
  for (const CMat& B : basis.elements) out.push_back(dir_derivative(spec, x, B, 1, engine));
  return out;
}

double component_norm(const std::vector<cplx>& components) {
  double s = 0.0;
  for (const cplx& c : components) s += std::norm(c);
  return std::sqrt(s);
}

double gradient_norm(const EigenfunctionSpec& spec, const CMat& x, const DerivativeEngine& engine) {
  return component_norm(gradient_components(spec, x, algebra_basis(spec.space.total), engine));
}

cplx tension_field(const EigenfunctionSpec& spec, const CMat& x, const TangentBasis& basis,
                   const DerivativeEngine& engine) {
  cplx tau = 0.0;
  for (const CMat& B : basis.elements) tau += dir_derivative(spec, x, B, 2, engine);
  return tau;
}

cplx tension_field(const EigenfunctionSpec& spec, const CMat& x, const DerivativeEngine& engine) {
  return tension_field(spec, x, algebra_basis(spec.space.total), engine);
}

cplx conformality(const EigenfunctionSpec& a, const EigenfunctionSpec& b, const CMat& x,
                  const DerivativeEngine& engine) {
  if (!same_space(a.space, b.space)) throw PreconditionError("conformality: space mismatch");
  cplx kappa = 0.0;
  for (const CMat& B : algebra_basis(a.space.total).elements)
    kappa += dir_derivative(a, x, B, 1, engine) * dir_derivative(b, x, B, 1, engine);
  return kappa;
}

std::pair<double, double> eigen_residual_at(const EigenfunctionSpec& spec, const CMat& x,
                                            const DerivativeEngine& engine) {
  const TangentBasis basis = algebra_basis(spec.space.total);
  const cplx phi = evaluate(spec, x);
  cplx tau = 0.0, kappa = 0.0;
  for (const CMat& B : basis.elements) {
    const cplx d1 = dir_derivative(spec, x, B, 1, engine);
    tau += dir_derivative(spec, x, B, 2, engine);
    kappa += d1 * d1;
  }
  const double lambda = boost::rational_cast<double>(spec.lambda);
  const double mu = boost::rational_cast<double>(spec.mu);
  const double a = std::abs(phi);
  return {std::abs(tau - lambda * phi) / (1.0 + a), std::abs(kappa - mu * phi * phi) / (1.0 + a * a)};
}

EigenResidualReport eigen_residuals(const EigenfunctionSpec& spec, int samples, std::uint64_t seed,
                                    const DerivativeEngine& engine, int threads) {
  engine.check();
  EigenResidualReport report;
  report.engine = engine;
  report.samples = std::max(samples, 0);
  if (samples <= 0) {
    report.no_samples = true;
    return report;
  }
  std::vector<double> tau(samples), kappa(samples), absphi(samples);
  parallel_for(samples, threads, [&](int i) {
    const CMat x = haar_sample(spec.space.total, derive_seed(seed, 0x45, static_cast<std::uint64_t>(i)));
    const auto [t, k] = eigen_residual_at(spec, x, engine);
    tau[i] = t;
    kappa[i] = k;
    absphi[i] = std::abs(evaluate(spec, x));
  });
  report.max_tau_residual = *std::max_element(tau.begin(), tau.end());
  report.max_kappa_residual = *std::max_element(kappa.begin(), kappa.end());
  std::nth_element(absphi.begin(), absphi.begin() + samples / 2, absphi.end());
  report.median_abs_phi = absphi[samples / 2];
  return report;
}

double product_rule_residual(const EigenfunctionSpec& a, const EigenfunctionSpec& b, const CMat& x,
                             const DerivativeEngine& engine) {
  if (!same_space(a.space, b.space)) throw PreconditionError("product_rule_residual: space mismatch");
  DerivativeEngine fd = engine;
  fd.mode = EngineMode::FiniteDifference;
  const TangentBasis basis = algebra_basis(a.space.total);
  auto product = [&](const CMat& y) { return evaluate(a, y) * evaluate(b, y); };
  cplx lhs = 0.0;
  for (const CMat& B : basis.elements) lhs += fd_derivative(product, a.space.total, x, B, 2, fd);
  const cplx pa = evaluate(a, x), pb = evaluate(b, x);
  const cplx rhs = pa * tension_field(b, x, basis, engine) + 2.0 * conformality(a, b, x, engine) +
                   pb * tension_field(a, x, basis, engine);
  return std::abs(lhs - rhs);
}

}  // namespace symmin
