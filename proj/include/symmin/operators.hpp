#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "symmin/catalog.hpp"

namespace symmin {

enum class EngineMode { Exact, FiniteDifference };

struct DerivativeEngine {
  EngineMode mode = EngineMode::Exact;
  double fd_step = 1e-3;
  int fd_order = 4;
  bool richardson = true;

  void check() const;
  std::string name() const { return mode == EngineMode::Exact ? "exact" : "fd"; }
  static DerivativeEngine exact() { return {}; }
  static DerivativeEngine finite_difference(double step = 1e-3) {
    return {EngineMode::FiniteDifference, step, 4, true};
  }
};

struct EigenResidualReport {
  double max_tau_residual = 0.0;
  double max_kappa_residual = 0.0;
  int samples = 0;
  DerivativeEngine engine;
  bool no_samples = false;
  double median_abs_phi = 0.0;
};

// d/ds or d^2/ds^2 of phi(x exp(sX)) at s = 0.
cplx dir_derivative(const EigenfunctionSpec& spec, const CMat& x, const CMat& X, int order,
                    const DerivativeEngine& engine);

// Central differences of f along s -> x exp(sX) inside the given group.
cplx fd_derivative(const std::function<cplx(const CMat&)>& f, const GroupId& group, const CMat& x,
                   const CMat& X, int order, const DerivativeEngine& engine);

struct EngineComparison {
  cplx exact;
  cplx fd;
  bool disagreement;  // |exact - fd| > 1e-5 (1 + |exact|)
};

EngineComparison compare_engines(const EigenfunctionSpec& spec, const CMat& x, const CMat& X, int order,
                                 const DerivativeEngine& fd_engine = DerivativeEngine::finite_difference());

std::vector<cplx> gradient_components(const EigenfunctionSpec& spec, const CMat& x, const TangentBasis& basis,
                                      const DerivativeEngine& engine);
double component_norm(const std::vector<cplx>& components);
double gradient_norm(const EigenfunctionSpec& spec, const CMat& x,
                     const DerivativeEngine& engine = DerivativeEngine::exact());

cplx tension_field(const EigenfunctionSpec& spec, const CMat& x, const DerivativeEngine& engine);
cplx tension_field(const EigenfunctionSpec& spec, const CMat& x, const TangentBasis& basis,
                   const DerivativeEngine& engine);

cplx conformality(const EigenfunctionSpec& a, const EigenfunctionSpec& b, const CMat& x,
                  const DerivativeEngine& engine);

// (|tau - lambda phi| / (1 + |phi|), |kappa - mu phi^2| / (1 + |phi|^2)) at one point.
std::pair<double, double> eigen_residual_at(const EigenfunctionSpec& spec, const CMat& x,
                                            const DerivativeEngine& engine);

EigenResidualReport eigen_residuals(const EigenfunctionSpec& spec, int samples, std::uint64_t seed,
                                    const DerivativeEngine& engine, int threads = 1);

// |tau(phi psi) - (phi tau(psi) + 2 kappa(phi, psi) + psi tau(phi))|. The left
// side always uses finite differences of the pointwise product.
double product_rule_residual(const EigenfunctionSpec& a, const EigenfunctionSpec& b, const CMat& x,
                             const DerivativeEngine& engine);

bool same_space(const SpaceDescriptor& a, const SpaceDescriptor& b);

}  // namespace symmin
