#include "symmin/matrix_core.hpp"

#include <cmath>
#include <string>

#include "symmin/errors.hpp"

namespace symmin {

namespace {

void check_index(int i, int n, const char* what) {
  if (i < 1 || i > n)
    throw IndexError(std::string(what) + " index " + std::to_string(i) + " outside 1.." +
                     std::to_string(n));
}

}  // namespace

CMat basis_matrix(const BasisKind& kind, int n) {
  if (n < 1) throw IndexError("basis_matrix: n must be positive");
  const double r2 = 1.0 / std::sqrt(2.0);
  CMat M = CMat::Zero(n, n);
  if (kind.tag == BasisTag::DSingle) {
    check_index(kind.r, n, "D_t");
    M(kind.r - 1, kind.r - 1) = 1.0;
    return M;
  }
  check_index(kind.r, n, "r");
  check_index(kind.s, n, "s");
  const int r = kind.r - 1, s = kind.s - 1;
  if (kind.tag == BasisTag::E) {
    M(r, s) = 1.0;
    return M;
  }
  if (kind.r >= kind.s) throw IndexError("basis_matrix: X, Y, D_pair need r < s");
  switch (kind.tag) {
    case BasisTag::X:
      M(r, s) = r2;
      M(s, r) = r2;
      break;
    case BasisTag::Y:
      M(r, s) = r2;
      M(s, r) = -r2;
      break;
    case BasisTag::DPair:
      M(r, r) = r2;
      M(s, s) = -r2;
      break;
    default:
      break;
  }
  return M;
}

double trace_metric(const CMat& Z, const CMat& W) {
  if (Z.rows() != W.rows() || Z.cols() != W.cols())
    throw DimensionError("trace_metric: dimension mismatch");
  // Re trace(Z^* W) = Re sum conj(Z_ij) W_ij
  return (Z.conjugate().cwiseProduct(W)).sum().real();
}

CMat matrix_exp(const CMat& X) {
  if (X.rows() != X.cols()) throw DimensionError("matrix_exp: matrix must be square");
  if (!all_finite(X)) throw NonFiniteError("matrix_exp: non-finite input");
  const Eigen::Index n = X.rows();
  const double norm = X.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const CMat A = X / std::ldexp(1.0, squarings);

  // Taylor series; with ||A|| <= 1/4 the tail after 20 terms is far below 1e-16.
  CMat result = CMat::Identity(n, n);
  CMat term = CMat::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = (term * A) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

CMat constant_matrix(ConstantName name, int a, int b) {
  if (a < 1 || b < 0) throw IndexError("constant_matrix: sizes must be positive");
  switch (name) {
    case ConstantName::J: {
      CMat J = CMat::Zero(2 * a, 2 * a);
      J.topRightCorner(a, a).setIdentity();
      J.bottomLeftCorner(a, a) = -CMat::Identity(a, a);
      return J;
    }
    case ConstantName::I_mn: {
      CMat M = CMat::Identity(a + b, a + b);
      for (int i = a; i < a + b; ++i) M(i, i) = -1.0;
      return M;
    }
    case ConstantName::P: {
      CMat M = CMat::Zero(a + b, a + b);
      for (int i = 0; i < a; ++i) M(i, i) = 1.0;
      return M;
    }
  }
  return {};
}

std::vector<CMat> gram_schmidt(const std::vector<CMat>& spanning, double tol) {
  std::vector<CMat> out;
  for (const CMat& v : spanning) {
    CMat w = v;
    // two passes keep orthogonality at round-off level
    for (int pass = 0; pass < 2; ++pass)
      for (const CMat& b : out) w -= trace_metric(b, w) * b;
    const double nrm = std::sqrt(trace_metric(w, w));
    if (nrm > tol) out.push_back(w / nrm);
  }
  return out;
}

CMat block2(const CMat& A, const CMat& B, const CMat& C, const CMat& D) {
  const Eigen::Index n = A.rows();
  CMat M(2 * n, 2 * n);
  M << A, B, C, D;
  return M;
}

double max_abs(const CMat& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

bool all_finite(const CMat& M) {
  for (Eigen::Index i = 0; i < M.size(); ++i)
    if (!std::isfinite(M.data()[i].real()) || !std::isfinite(M.data()[i].imag())) return false;
  return true;
}

}  // namespace symmin
