#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symmin/groups.hpp"

namespace symmin {

// L(C): trace(C x^t); Q(A, B): trace(A x B x^t); S(A, B): trace(A x B x^*).
enum class Shape { L, Q, S };

struct Term {
  Shape shape;
  CMat A;  // C for L terms
  CMat B;  // unused for L terms
};

struct Params {
  std::map<std::string, CVec> vectors;
  std::optional<CMat> matrix;  // raw matrix input; rejected by every family
};

enum class ConstraintKind { Eigen, Regularity };

struct Violation {
  std::string constraint;
  ConstraintKind kind;
};

enum class RegularityClaim { Regular, NotRegular, Open };

struct EigenfunctionSpec {
  SpaceDescriptor space;
  std::string variant = "family";  // "family", "coordinate", "constant"
  Params params;
  std::vector<Term> terms;
  cplx offset{0.0, 0.0};
  Rational lambda;
  Rational mu;
  RegularityClaim regularity = RegularityClaim::Open;
  std::vector<std::string> regularity_notes;  // regularity-only constraints that fail
};

// Every violated constraint, eigen-level and regularity-level.
std::vector<Violation> validate(const SpaceDescriptor& space, const Params& params);

// Throws ConstraintError listing the violated eigen-level constraints.
// Regularity-level violations are recorded on the spec.
EigenfunctionSpec build(const SpaceDescriptor& space, const Params& params);

// Deterministic valid parameters; distinct variants give distinct members.
Params default_params(const SpaceDescriptor& space, int variant = 0);

// Single coordinate function phi_{j alpha} (1 <= j < alpha <= m + n) on the
// quaternionic Grassmannian.
EigenfunctionSpec grass_h_coordinate(const SpaceDescriptor& space, int j, int alpha);

// Zero-term spec with a constant value.
EigenfunctionSpec constant_spec(const SpaceDescriptor& space, cplx value);

// phi - c.
EigenfunctionSpec shifted(const EigenfunctionSpec& spec, cplx c);

cplx evaluate(const EigenfunctionSpec& spec, const CMat& x);
cplx evaluate_unchecked(const EigenfunctionSpec& spec, const CMat& x);

double invariance_residual(const EigenfunctionSpec& spec, const CMat& x, int k_samples,
                           std::uint64_t seed);

// (phi_{C a, D p}(x), C D phi_{a,p}(x)) for two-vector families; for the
// one-vector families a -> C a and the prediction is C^2 phi_a(x).
std::pair<cplx, cplx> scaling_identity(const EigenfunctionSpec& spec, cplx C, cplx D, const CMat& x);

// Names of the parameter vectors and their required length.
std::vector<std::pair<std::string, int>> parameter_layout(const SpaceDescriptor& space);

// Bilinear (a, b) = sum a_k b_k.
cplx bilinear(const CVec& a, const CVec& b);

}  // namespace symmin
