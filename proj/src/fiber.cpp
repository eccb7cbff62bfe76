#include "symmin/fiber.hpp"

#include <cmath>

#include "symmin/errors.hpp"

namespace symmin {

namespace {

CMat combine(const TangentBasis& basis, const RVec& coeffs) {
  CMat V = CMat::Zero(basis.elements[0].rows(), basis.elements[0].cols());
  for (std::size_t i = 0; i < basis.size(); ++i) V += coeffs(static_cast<Eigen::Index>(i)) * basis.elements[i];
  return V;
}

// Rows: du, dv in the coordinates of the basis.
Eigen::Matrix<double, 2, Eigen::Dynamic> real_jacobian(const EigenfunctionSpec& spec, const CMat& x,
                                                       const TangentBasis& basis) {
  const auto c = gradient_components(spec, x, basis, DerivativeEngine::exact());
  Eigen::Matrix<double, 2, Eigen::Dynamic> J(2, static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    J(0, static_cast<Eigen::Index>(i)) = c[i].real();
    J(1, static_cast<Eigen::Index>(i)) = c[i].imag();
  }
  return J;
}

struct NormalFrame {
  RVec n1, n2;
  double grad_u, grad_v;
};

NormalFrame normal_frame(const EigenfunctionSpec& spec, const CMat& x, const TangentBasis& basis) {
  const auto J = real_jacobian(spec, x, basis);
  const RVec u = J.row(0).transpose(), v = J.row(1).transpose();
  NormalFrame f{u.normalized(), {}, u.norm(), v.norm()};
  RVec w = v - f.n1.dot(v) * f.n1;
  f.n2 = w.normalized();
  return f;
}

CMat rotation_about_third_axis(double theta) {
  CMat x = CMat::Identity(3, 3);
  x(0, 0) = std::cos(theta);
  x(0, 1) = std::sin(theta);
  x(1, 0) = -std::sin(theta);
  x(1, 1) = std::cos(theta);
  return x;
}

// Orthonormal completion of the given orthonormal columns by Gram-Schmidt over
// the standard basis; returns only the new vectors.
std::vector<CVec> completion(const std::vector<CVec>& given, int dim) {
  std::vector<CVec> all = given, extra;
  for (int k = 0; k < dim && static_cast<int>(all.size()) < dim; ++k) {
    CVec v = CVec::Unit(dim, k);
    for (int pass = 0; pass < 2; ++pass)
      for (const CVec& b : all) v -= b.dot(v) * b;
    if (v.norm() > 1e-8) {
      v.normalize();
      all.push_back(v);
      extra.push_back(v);
    }
  }
  return extra;
}

Params vectors(std::initializer_list<std::pair<const std::string, CVec>> list) {
  Params p;
  p.vectors = list;
  return p;
}

CVec cvec(std::initializer_list<cplx> list) {
  CVec v(static_cast<Eigen::Index>(list.size()));
  Eigen::Index i = 0;
  for (const cplx& c : list) v(i++) = c;
  return v;
}

CriticalCase make_case(const std::string& id) {
  const cplx i1 = I_UNIT;
  if (id == "so3-isotropic-p") {
    const CVec a = cvec({1.0, i1, 0.0});
    auto spec = build(make_space(SpaceKind::SO, 3), vectors({{"a", a}, {"p", a}}));
    return {id, "SO(3), a = p = (1, i, 0), rotation by 0.7 about the third axis", spec,
            rotation_about_third_axis(0.7)};
  }
  if (id == "grassR-2-2") {
    const double th = 0.3, al = 0.3;
    CMat x(4, 4);
    x << 0, 0, std::cos(th), std::sin(th), 0, 0, -std::sin(th), std::cos(th), std::cos(al), std::sin(al), 0, 0,
        std::sin(al), -std::cos(al), 0, 0;
    x.col(3) *= -1.0;  // the block matrix has determinant -1
    auto spec = build(make_space(SpaceKind::GrR, 2, 2), vectors({{"a", cvec({1.0, i1, 0.0, 0.0})}}));
    return {id, "Gr_R(2,2), a = (1, i, 0, 0), block point with theta = alpha = 0.3", spec, x};
  }
  if (id == "grassR-generic") {
    const auto space = make_space(SpaceKind::GrR, 3, 2);
    const int N = space.m + space.n;
    const Params p = default_params(space, 1);
    const CVec a = p.vectors.at("a");
    const CVec u = a.real().cast<cplx>().normalized(), v = a.imag().cast<cplx>().normalized();
    const auto rest = completion({u, v}, N);
    CMat x(N, N);
    int col = 0;
    for (const CVec& c : rest) x.col(col++) = c;
    x.col(col++) = u;
    x.col(col++) = v;
    if (x.determinant().real() < 0) x.col(N - 1) *= -1.0;
    return {id, "Gr_R(2,3), generic isotropic a, first columns orthogonal to Re a and Im a", build(space, p), x};
  }
  if (id == "so4-u2-old-family") {
    CMat x(4, 4);
    x << 0, 0, 0, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0;
    auto spec = build(make_space(SpaceKind::SO2n_U, 2),
                      vectors({{"a", cvec({1.0, i1, 0.0, 0.0})}, {"b", cvec({0.0, 0.0, 1.0, i1})}}));
    return {id, "SO(4)/U(2), a = (1, i, 0, 0), b = (0, 0, 1, i), permutation-type point", spec, x};
  }
  if (id == "grassC-generic") {
    const auto space = make_space(SpaceKind::GrC, 2, 2);
    const Params p = default_params(space, 1);
    const int N = space.m + space.n;
    const CVec abar = p.vectors.at("a").conjugate().normalized();
    const CVec b = p.vectors.at("b").normalized();
    const auto rest = completion({abar, b}, N);
    CMat z(N, N);
    int col = 0;
    for (const CVec& c : rest) z.col(col++) = c;
    z.col(col++) = abar;
    z.col(col++) = b;
    const cplx det = z.determinant();
    z.col(N - 1) *= std::conj(det) / std::abs(det);
    return {id, "Gr_C(2,2), columns (v_1, v_2, conj(a)/|a|, b/|b|) from Gram-Schmidt", build(space, p), z};
  }
  if (id == "grassH-coordinate") {
    const auto space = make_space(SpaceKind::GrH, 2, 2);
    const int N = 4, j = 1, alpha = 2;
    CMat z = CMat::Zero(N, N);
    z(2, 0) = 1.0;  // v_1 = e_3
    z(3, 1) = 1.0;  // v_2 = e_4
    z(j - 1, 2) = 1.0;
    z(alpha - 1, 3) = 1.0;
    const CMat q = block2(z, CMat::Zero(N, N), CMat::Zero(N, N), z.conjugate());
    return {id, "Gr_H(2,2), coordinate function phi_12 at z = (e_3, e_4, e_1, e_2), w = 0",
            grass_h_coordinate(space, j, alpha), q};
  }
  throw UnknownCaseError("unknown gallery case: " + id);
}

}  // namespace

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::Regular:
      return "regular";
    case Regularity::Critical:
      return "critical";
    case Regularity::Undecided:
      return "undecided";
  }
  return {};
}

FiberPoint descend_from(const EigenfunctionSpec& spec, const CMat& start, const DescentOptions& opt) {
  if (spec.lambda == spec.mu)
    throw PreconditionError("find_fiber_point: lambda = mu, a zero is not guaranteed");
  const GroupId& G = spec.space.total;
  const TangentBasis basis = algebra_basis(G);
  FiberPoint fp;
  fp.x = start;
  cplx phi = evaluate(spec, fp.x);
  int it = 0;
  for (; it < opt.max_iter && std::abs(phi) >= opt.stop_tol; ++it) {
    const auto J = real_jacobian(spec, fp.x, basis);
    const Eigen::Vector2d r(phi.real(), phi.imag());
    const double f = r.squaredNorm();
    const RVec grad = 2.0 * J.transpose() * r;  // gradient of |phi|^2

    // Gauss-Newton direction in the normal plane, steepest descent if the
    // Jacobian is nearly rank-deficient.
    const Eigen::Matrix2d G2 = J * J.transpose();
    RVec dir;
    if (G2.determinant() > 1e-12 * G2.trace() * G2.trace() && G2.trace() > 1e-24)
      dir = -J.transpose() * G2.ldlt().solve(r);
    else
      dir = -0.5 * grad / std::max(1e-12, J.squaredNorm());
    if (dir.norm() > 1.0) dir /= dir.norm();
    const double slope = grad.dot(dir);

    double t = opt.step;
    bool accepted = false;
    while (t > 1e-14) {
      const CMat y = retract(G, fp.x, t * combine(basis, dir));
      const cplx py = evaluate(spec, y);
      if (std::norm(py) <= f + opt.slope * t * slope) {
        fp.x = y;
        phi = py;
        accepted = true;
        break;
      }
      t *= opt.shrink;
    }
    if (!accepted) break;
  }
  fp.iterations = it;
  fp.abs_phi = std::abs(phi);
  fp.grad_norm = component_norm(gradient_components(spec, fp.x, basis, DerivativeEngine::exact()));
  fp.converged = fp.abs_phi < 1e-10 && membership_residual(G, fp.x) < 1e-9;
  return fp;
}

FiberPoint find_fiber_point(const EigenfunctionSpec& spec, std::uint64_t seed, int max_iter, double step) {
  DescentOptions opt;
  opt.max_iter = max_iter;
  opt.step = step;
  return descend_from(spec, haar_sample(spec.space.total, seed), opt);
}

RegularityResult regularity_check(const EigenfunctionSpec& spec, const FiberPoint& fp) {
  if (!fp.converged) throw PreconditionError("regularity_check: fibre point did not converge");
  const double g = gradient_norm(spec, fp.x);
  Regularity cls = Regularity::Undecided;
  if (g > 1e-3)
    cls = Regularity::Regular;
  else if (g < 1e-8)
    cls = Regularity::Critical;
  return {cls, g};
}

const std::vector<std::string>& gallery_ids() {
  static const std::vector<std::string> ids = {"so3-isotropic-p",   "grassR-2-2",     "grassR-generic",
                                               "so4-u2-old-family", "grassC-generic", "grassH-coordinate"};
  return ids;
}

CriticalCase gallery_case(const std::string& id) { return make_case(id); }

GalleryResult critical_gallery(const std::string& id) {
  CriticalCase c = make_case(id);
  const cplx phi = evaluate(c.spec, c.x);
  const double g = gradient_norm(c.spec, c.x);
  return {std::move(c), phi, g};
}

FiberTangent fiber_tangent_basis(const EigenfunctionSpec& spec, const FiberPoint& fp) {
  const auto reg = regularity_check(spec, fp);
  if (reg.classification != Regularity::Regular)
    throw PreconditionError("fiber_tangent_basis: point is " + to_string(reg.classification));
  const TangentBasis basis = algebra_basis(spec.space.total);
  const auto J = real_jacobian(spec, fp.x, basis);
  Eigen::JacobiSVD<RMat> svd(RMat(J), Eigen::ComputeFullV);
  FiberTangent out;
  out.singular_values = svd.singularValues();
  const double s1 = out.singular_values(0);
  out.sigma2 = out.singular_values(1) / s1;
  out.sigma3 = out.singular_values.size() > 2 ? out.singular_values(2) / s1 : 0.0;
  const RMat& V = svd.matrixV();
  for (Eigen::Index k = 2; k < V.cols(); ++k) {
    const RVec e = V.col(k);
    out.vectors.push_back(combine(basis, e));
    out.max_annihilation = std::max(out.max_annihilation, (J * e).cwiseAbs().maxCoeff());
  }
  return out;
}

CurvatureEstimate mean_curvature_estimate(const EigenfunctionSpec& spec, const FiberPoint& fp, double h) {
  if (!(h >= 1e-6 && h <= 1e-2)) throw PreconditionError("mean_curvature_estimate: h must lie in [1e-6, 1e-2]");
  const auto reg = regularity_check(spec, fp);
  if (reg.classification != Regularity::Regular)
    throw PreconditionError("mean_curvature_estimate: point is " + to_string(reg.classification));
  const GroupId& G = spec.space.total;
  const TangentBasis basis = algebra_basis(G);
  const auto J = real_jacobian(spec, fp.x, basis);
  Eigen::JacobiSVD<RMat> svd(RMat(J), Eigen::ComputeFullV);
  const RMat& V = svd.matrixV();
  const NormalFrame at = normal_frame(spec, fp.x, basis);

  // For left-invariant frames of a bi-invariant metric <nabla_E N, E> reduces
  // to the derivative of N's coefficients along E, paired with E.
  double h1 = 0.0, h2 = 0.0;
  for (Eigen::Index k = 2; k < V.cols(); ++k) {
    const RVec e = V.col(k);
    const CMat E = combine(basis, e);
    const NormalFrame fwd = normal_frame(spec, retract(G, fp.x, h * E), basis);
    const NormalFrame bwd = normal_frame(spec, retract(G, fp.x, -h * E), basis);
    h1 += (fwd.n1 - bwd.n1).dot(e) / (2 * h);
    h2 += (fwd.n2 - bwd.n2).dot(e) / (2 * h);
  }
  CurvatureEstimate est;
  est.norm = std::hypot(h1, h2);
  est.grad_u = at.grad_u;
  est.grad_v = at.grad_v;
  est.conformality_violation = std::abs(at.grad_u - at.grad_v) > 1e-3;
  return est;
}

}  // namespace symmin
