#include "symmin/catalog.hpp"

#include <cmath>

#include "symmin/errors.hpp"

namespace symmin {

namespace {

const double kTol = 1e-10;

bool is_zero(const CVec& v) { return v.norm() <= kTol; }

bool independent(const CVec& a, const CVec& b) {
  const double na = a.squaredNorm(), nb = b.squaredNorm();
  if (na <= kTol * kTol || nb <= kTol * kTol) return false;
  const double gram = na * nb - std::norm(a.dot(b));
  return gram > kTol * na * nb;
}

bool near_zero(cplx value, double scale) { return std::abs(value) <= kTol * (1.0 + scale); }

// b = z r with r real  <=>  |(b,b)| = |b|^2
bool complex_multiple_of_real(const CVec& b) {
  const double nb = b.squaredNorm();
  return std::abs(std::abs(bilinear(b, b)) - nb) <= kTol * (1.0 + nb);
}

CVec generic_vector(int len, int salt) {
  CVec v(len);
  for (int j = 0; j < len; ++j)
    v(j) = cplx(std::cos(1.3 * (j + 1) + 0.7 * salt), std::sin(0.9 * (j + 1) + 1.1 * salt + 0.3));
  return v;
}

RVec generic_real(int len, int salt) {
  RVec v(len);
  for (int j = 0; j < len; ++j) v(j) = std::cos(2.1 * (j + 1) + 0.37 * salt) + 0.1 * (j + 1);
  return v;
}

// Isotropic vector u + i w with u, w orthonormal.
CVec isotropic_vector(int len, int salt) {
  if (salt == 0 || len < 3) {
    CVec a = CVec::Zero(len);
    a(0) = 1.0;
    a(1) = I_UNIT;
    return a;
  }
  RVec u = generic_real(len, salt);
  u.normalize();
  RVec w = generic_real(len, salt + 17);
  w -= u.dot(w) * u;
  w.normalize();
  return u.cast<cplx>() + I_UNIT * w.cast<cplx>();
}

CMat outer(const CVec& a, const CVec& b) { return a * b.transpose(); }

const CVec& need(const Params& p, const std::string& name) { return p.vectors.at(name); }

int vector_length(const SpaceDescriptor& s) {
  switch (s.kind) {
    case SpaceKind::Sp_U:
    case SpaceKind::SO2n_U:
    case SpaceKind::SU2n_Sp:
      return 2 * s.n;
    case SpaceKind::GrR:
    case SpaceKind::GrC:
    case SpaceKind::GrH:
      return s.m + s.n;
    default:
      return s.n;
  }
}

CMat two_block_projector(int m, int n) {
  const int N = m + n;
  CMat P = CMat::Zero(2 * N, 2 * N);
  for (int t = 0; t < m; ++t) {
    P(t, t) = 1.0;
    P(N + t, N + t) = 1.0;
  }
  return P;
}

cplx term_value(const Term& t, const CMat& x) {
  switch (t.shape) {
    case Shape::L:
      return t.A.cwiseProduct(x).sum();
    case Shape::Q:
      return (t.A * x * t.B * x.transpose()).trace();
    case Shape::S:
      return (t.A * x * t.B * x.adjoint()).trace();
  }
  return 0.0;
}

}  // namespace

cplx bilinear(const CVec& a, const CVec& b) { return (a.array() * b.array()).sum(); }

std::vector<std::pair<std::string, int>> parameter_layout(const SpaceDescriptor& space) {
  const int len = vector_length(space);
  switch (space.kind) {
    case SpaceKind::SO:
      return {{"a", len}, {"p", len}};
    case SpaceKind::SU:
      return {{"a", len}, {"v", len}};
    case SpaceKind::Sp:
      return {{"a", len}, {"u", len}, {"v", len}};
    case SpaceKind::SO2n_U:
    case SpaceKind::SU2n_Sp:
    case SpaceKind::GrC:
      return {{"a", len}, {"b", len}};
    default:
      return {{"a", len}};
  }
}

std::vector<Violation> validate(const SpaceDescriptor& space, const Params& params) {
  std::vector<Violation> out;
  auto eigen = [&](const std::string& c) { out.push_back({c, ConstraintKind::Eigen}); };
  auto regular = [&](const std::string& c) { out.push_back({c, ConstraintKind::Regularity}); };

  if (params.matrix) {
    eigen("matrix input unsupported; give the vector a with A = a a^t");
    if (space.kind == SpaceKind::GrR) {
      const CMat& A = *params.matrix;
      Eigen::JacobiSVD<CMat> svd(A);
      const RVec sv = svd.singularValues();
      const double top = sv.size() ? sv(0) : 0.0;
      const bool rank_one = top > kTol && (sv.size() < 2 || sv(1) <= kTol * top);
      if (!rank_one) eigen("rank A = 1");
      if (std::abs(A.trace()) > kTol * (1.0 + top)) eigen("trace A = 0");
    }
  }

  bool shapes_ok = true;
  for (const auto& [name, len] : parameter_layout(space)) {
    auto it = params.vectors.find(name);
    if (it == params.vectors.end()) {
      eigen("missing parameter " + name);
      shapes_ok = false;
    } else if (it->second.size() != len) {
      eigen("parameter " + name + " must have length " + std::to_string(len));
      shapes_ok = false;
    } else if (!it->second.allFinite()) {
      eigen("parameter " + name + " must be finite");
      shapes_ok = false;
    }
  }
  for (const auto& [name, v] : params.vectors) {
    bool known = false;
    for (const auto& [n2, len] : parameter_layout(space)) known = known || (n2 == name);
    if (!known) eigen("unknown parameter " + name);
  }
  if (!shapes_ok) return out;

  const CVec& a = need(params, "a");
  switch (space.kind) {
    case SpaceKind::SO: {
      const CVec& p = need(params, "p");
      if (is_zero(a)) eigen("a != 0");
      if (!near_zero(bilinear(a, a), a.squaredNorm())) eigen("(a,a)=0");
      if (is_zero(p)) eigen("p != 0");
      if (near_zero(bilinear(p, p), p.squaredNorm())) regular("(p,p)!=0");
      break;
    }
    case SpaceKind::SU:
      if (is_zero(a)) eigen("a != 0");
      if (is_zero(need(params, "v"))) eigen("v != 0");
      break;
    case SpaceKind::Sp:
      if (is_zero(a)) eigen("a != 0");
      if (is_zero(need(params, "u")) && is_zero(need(params, "v"))) eigen("(u,v) not both 0");
      break;
    case SpaceKind::SU_SO:
    case SpaceKind::Sp_U:
      if (is_zero(a)) eigen("a != 0");
      break;
    case SpaceKind::SO2n_U: {
      const CVec& b = need(params, "b");
      const double scale = a.squaredNorm() * b.squaredNorm();
      if (!independent(a, b)) eigen("a, b linearly independent");
      const cplx gram = bilinear(a, a) * bilinear(b, b) - bilinear(a, b) * bilinear(a, b);
      if (!near_zero(gram, scale)) eigen("(a,a)(b,b)-(a,b)^2=0");
      if (!near_zero(bilinear(a, a), a.squaredNorm())) regular("(a,a)=0");
      if (!near_zero(bilinear(a, b), std::sqrt(scale))) regular("(a,b)=0");
      if (!complex_multiple_of_real(b)) regular("b complex multiple of a real vector");
      break;
    }
    case SpaceKind::SU2n_Sp:
      if (!independent(a, need(params, "b"))) eigen("a, b linearly independent");
      break;
    case SpaceKind::GrR:
    case SpaceKind::GrH:
      if (is_zero(a)) eigen("a != 0");
      if (!near_zero(bilinear(a, a), a.squaredNorm())) eigen("(a,a)=0");
      break;
    case SpaceKind::GrC: {
      const CVec& b = need(params, "b");
      if (is_zero(a)) eigen("a != 0");
      if (is_zero(b)) eigen("b != 0");
      // <a, conj b> = sum a_k b_k
      if (!near_zero(bilinear(a, b), a.norm() * b.norm())) eigen("<a,conj(b)>=0");
      break;
    }
  }
  return out;
}

EigenfunctionSpec build(const SpaceDescriptor& space, const Params& params) {
  const auto violations = validate(space, params);
  std::vector<std::string> eigen_violations;
  EigenfunctionSpec spec;
  spec.space = space;
  for (const auto& v : violations) {
    if (v.kind == ConstraintKind::Eigen)
      eigen_violations.push_back(v.constraint);
    else
      spec.regularity_notes.push_back(v.constraint);
  }
  if (!eigen_violations.empty()) {
    std::string msg = "invalid parameters for " + space.label() + ":";
    for (const auto& c : eigen_violations) msg += " [" + c + "]";
    throw ConstraintError(msg, eigen_violations);
  }
  spec.params = params;
  spec.lambda = space.lambda;
  spec.mu = space.mu;

  const int n = space.n, m = space.m, N = m + n;
  const CVec& a = need(params, "a");
  const double r2 = 1.0 / std::sqrt(2.0);
  switch (space.kind) {
    case SpaceKind::SO:
      spec.terms.push_back({Shape::L, outer(need(params, "p"), a), {}});
      break;
    case SpaceKind::SU:
      spec.terms.push_back({Shape::L, outer(a, need(params, "v")), {}});
      break;
    case SpaceKind::Sp: {
      CMat C = CMat::Zero(2 * n, 2 * n);
      C.topLeftCorner(n, n) = outer(a, need(params, "v"));
      C.topRightCorner(n, n) = outer(a, need(params, "u"));
      spec.terms.push_back({Shape::L, C, {}});
      break;
    }
    case SpaceKind::SU_SO:
      spec.terms.push_back({Shape::Q, outer(a, a), CMat::Identity(n, n)});
      break;
    case SpaceKind::Sp_U:
      spec.terms.push_back({Shape::Q, outer(a, a), CMat::Identity(2 * n, 2 * n)});
      break;
    case SpaceKind::SO2n_U:
    case SpaceKind::SU2n_Sp: {
      const CVec& b = need(params, "b");
      spec.terms.push_back({Shape::Q, r2 * (outer(a, b) - outer(b, a)), constant_matrix(ConstantName::J, n)});
      break;
    }
    case SpaceKind::GrR:
      spec.terms.push_back({Shape::Q, outer(a, a), constant_matrix(ConstantName::P, m, n)});
      break;
    case SpaceKind::GrC:
      spec.terms.push_back({Shape::S, outer(need(params, "b"), a), constant_matrix(ConstantName::P, m, n)});
      break;
    case SpaceKind::GrH: {
      CMat A = CMat::Zero(2 * N, 2 * N);
      A.topLeftCorner(N, N) = outer(a, a);
      spec.terms.push_back({Shape::S, A, two_block_projector(m, n)});
      break;
    }
  }

  switch (space.kind) {
    case SpaceKind::SO:
    case SpaceKind::SO2n_U:
      spec.regularity = spec.regularity_notes.empty() ? RegularityClaim::Regular : RegularityClaim::Open;
      break;
    case SpaceKind::GrR:
    case SpaceKind::GrC:
      spec.regularity = RegularityClaim::NotRegular;
      break;
    case SpaceKind::GrH:
      spec.regularity = RegularityClaim::Open;
      break;
    default:
      spec.regularity = space.lambda != space.mu ? RegularityClaim::Regular : RegularityClaim::Open;
      break;
  }
  if (space.kind == SpaceKind::SO && !spec.regularity_notes.empty())
    spec.regularity = RegularityClaim::NotRegular;
  return spec;
}

Params default_params(const SpaceDescriptor& space, int variant) {
  const int len = vector_length(space);
  const int salt = 5 * variant;
  Params p;
  switch (space.kind) {
    case SpaceKind::SO: {
      p.vectors["a"] = isotropic_vector(len, variant);
      CVec q = generic_vector(len, salt + 1);
      if (std::abs(bilinear(q, q)) < 0.1) q(0) += 1.0;
      p.vectors["p"] = q;
      break;
    }
    case SpaceKind::SU:
      p.vectors["a"] = generic_vector(len, salt);
      p.vectors["v"] = generic_vector(len, salt + 1);
      break;
    case SpaceKind::Sp:
      p.vectors["a"] = generic_vector(len, salt);
      p.vectors["u"] = generic_vector(len, salt + 1);
      p.vectors["v"] = generic_vector(len, salt + 2);
      break;
    case SpaceKind::SU_SO:
    case SpaceKind::Sp_U:
      p.vectors["a"] = generic_vector(len, salt);
      break;
    case SpaceKind::SO2n_U: {
      // restricted sub-family: a isotropic, b = z r with r real and orthogonal to Re a, Im a
      const CVec a = isotropic_vector(len, variant);
      RVec r = generic_real(len, salt + 3);
      const RVec u = a.real(), w = a.imag();
      r -= u.dot(r) / u.squaredNorm() * u;
      r -= w.dot(r) / w.squaredNorm() * w;
      r.normalize();
      p.vectors["a"] = a;
      p.vectors["b"] = cplx(1.0, 0.5 + 0.25 * variant) * r.cast<cplx>();
      break;
    }
    case SpaceKind::SU2n_Sp:
      p.vectors["a"] = generic_vector(len, salt);
      p.vectors["b"] = generic_vector(len, salt + 1);
      break;
    case SpaceKind::GrR:
    case SpaceKind::GrH:
      p.vectors["a"] = isotropic_vector(len, variant);
      break;
    case SpaceKind::GrC: {
      const CVec a = generic_vector(len, salt);
      const CVec c = generic_vector(len, salt + 2);
      p.vectors["a"] = a;
      p.vectors["b"] = c - (bilinear(a, c) / bilinear(a, a.conjugate())) * a.conjugate();
      break;
    }
  }
  return p;
}

EigenfunctionSpec grass_h_coordinate(const SpaceDescriptor& space, int j, int alpha) {
  if (space.kind != SpaceKind::GrH) throw PreconditionError("grass_h_coordinate: needs the quaternionic Grassmannian");
  const int N = space.m + space.n;
  if (j < 1 || alpha > N || j >= alpha) throw IndexError("grass_h_coordinate: need 1 <= j < alpha <= m + n");
  EigenfunctionSpec spec;
  spec.space = space;
  spec.variant = "coordinate";
  spec.params.vectors["a"] = CVec::Unit(N, j - 1);
  spec.params.vectors["b"] = CVec::Unit(N, alpha - 1);
  CMat A = CMat::Zero(2 * N, 2 * N);
  A(alpha - 1, j - 1) = 1.0;
  spec.terms.push_back({Shape::S, A, two_block_projector(space.m, space.n)});
  spec.lambda = space.lambda;
  spec.mu = space.mu;
  spec.regularity = RegularityClaim::NotRegular;
  return spec;
}

EigenfunctionSpec constant_spec(const SpaceDescriptor& space, cplx value) {
  EigenfunctionSpec spec;
  spec.space = space;
  spec.variant = "constant";
  spec.offset = value;
  spec.lambda = Rational(0);
  spec.mu = Rational(0);
  return spec;
}

EigenfunctionSpec shifted(const EigenfunctionSpec& spec, cplx c) {
  EigenfunctionSpec out = spec;
  out.offset -= c;
  return out;
}

cplx evaluate_unchecked(const EigenfunctionSpec& spec, const CMat& x) {
  cplx value = spec.offset;
  for (const Term& t : spec.terms) value += term_value(t, x);
  return value;
}

cplx evaluate(const EigenfunctionSpec& spec, const CMat& x) {
  if (membership_residual(spec.space.total, x) > 1e-9)
    throw PreconditionError("evaluate: point is not in " + spec.space.total.label());
  return evaluate_unchecked(spec, x);
}

double invariance_residual(const EigenfunctionSpec& spec, const CMat& x, int k_samples, std::uint64_t seed) {
  if (!spec.space.is_quotient()) throw PreconditionError("invariance_residual: not a quotient family");
  const cplx base = evaluate(spec, x);
  double worst = 0.0;
  for (int i = 0; i < k_samples; ++i) {
    Rng rng(derive_seed(seed, 0x6b, static_cast<std::uint64_t>(i)));
    const CMat k = subgroup_sample(spec.space, rng);
    worst = std::max(worst, std::abs(evaluate(spec, x * k) - base));
  }
  return worst;
}

std::pair<cplx, cplx> scaling_identity(const EigenfunctionSpec& spec, cplx C, cplx D, const CMat& x) {
  if (spec.variant != "family" || spec.offset != cplx(0.0))
    throw PreconditionError("scaling_identity: needs an unshifted catalog family member");
  const auto layout = parameter_layout(spec.space);
  Params scaled = spec.params;
  scaled.vectors["a"] *= C;
  cplx factor = C * C;
  if (layout.size() > 1) {
    for (std::size_t i = 1; i < layout.size(); ++i) scaled.vectors[layout[i].first] *= D;
    factor = C * D;
  }
  EigenfunctionSpec other;
  try {
    other = build(spec.space, scaled);
  } catch (const ConstraintError& e) {
    throw ConstraintError(std::string("scaling_identity: invalid scaled parameters: ") + e.what(), e.violated());
  }
  return {evaluate(other, x), factor * evaluate(spec, x)};
}

}  // namespace symmin
