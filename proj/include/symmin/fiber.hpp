#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symmin/operators.hpp"

namespace symmin {

struct FiberPoint {
  CMat x;
  double abs_phi = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct DescentOptions {
  int max_iter = 500;
  double step = 1.0;
  double shrink = 0.5;
  double slope = 1e-4;
  double stop_tol = 1e-12;
};

// Descent on |phi|^2 from a Haar start drawn from `seed`.
FiberPoint find_fiber_point(const EigenfunctionSpec& spec, std::uint64_t seed, int max_iter = 500,
                            double step = 1.0);
FiberPoint descend_from(const EigenfunctionSpec& spec, const CMat& start, const DescentOptions& options = {});

enum class Regularity { Regular, Critical, Undecided };

struct RegularityResult {
  Regularity classification;
  double grad_norm;
};

std::string to_string(Regularity r);

RegularityResult regularity_check(const EigenfunctionSpec& spec, const FiberPoint& fp);

struct CriticalCase {
  std::string id;
  std::string description;
  EigenfunctionSpec spec;
  CMat x;
};

struct GalleryResult {
  CriticalCase info;
  cplx phi;
  double grad_norm;
};

const std::vector<std::string>& gallery_ids();
CriticalCase gallery_case(const std::string& id);
GalleryResult critical_gallery(const std::string& id);

struct FiberTangent {
  std::vector<CMat> vectors;  // orthonormal in the trace metric
  RVec singular_values;       // of the real 2 x dim Jacobian, descending
  double sigma2 = 0.0;        // sigma_2 / sigma_1
  double sigma3 = 0.0;        // sigma_3 / sigma_1 (zero: the Jacobian has two rows)
  double max_annihilation = 0.0;  // max |du(E)|, |dv(E)| over the basis
};

FiberTangent fiber_tangent_basis(const EigenfunctionSpec& spec, const FiberPoint& fp);

struct CurvatureEstimate {
  double norm = 0.0;
  double grad_u = 0.0;
  double grad_v = 0.0;
  bool conformality_violation = false;
};

CurvatureEstimate mean_curvature_estimate(const EigenfunctionSpec& spec, const FiberPoint& fp, double h = 1e-3);

}  // namespace symmin
