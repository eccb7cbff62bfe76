#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace symmin {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline const cplx I_UNIT{0.0, 1.0};

enum class BasisTag { E, X, Y, DPair, DSingle };

// Indices are 1-based. DSingle uses r as its single index t.
struct BasisKind {
  BasisTag tag;
  int r;
  int s = 0;
};

// E_rs, X_rs, Y_rs, D_rs or D_t as an n x n complex matrix.
// D_t is the diagonal unit E_tt, so it has the same unit norm as D_rs.
CMat basis_matrix(const BasisKind& kind, int n);

// g(Z, W) = Re trace(conj(Z)^t W)
double trace_metric(const CMat& Z, const CMat& W);

// Scaling-and-squaring with a Taylor core.
CMat matrix_exp(const CMat& X);

enum class ConstantName { J, I_mn, P };

// J: (0, I_a; -I_a, 0). I_mn: diag(1_a, -1_b). P: diag(1_a, 0_b).
CMat constant_matrix(ConstantName name, int a, int b = 0);

// Orthonormalizes in the trace metric, dropping vectors whose residual
// norm falls below tol.
std::vector<CMat> gram_schmidt(const std::vector<CMat>& spanning, double tol = 1e-10);

// Block matrix (A, B; C, D) with equal square blocks.
CMat block2(const CMat& A, const CMat& B, const CMat& C, const CMat& D);

double max_abs(const CMat& M);
bool all_finite(const CMat& M);

}  // namespace symmin
