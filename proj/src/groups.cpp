#include "symmin/groups.hpp"

#include <cmath>

#include "symmin/errors.hpp"

namespace symmin {

namespace {

CMat X(int n, int r, int s) { return basis_matrix({BasisTag::X, r, s}, n); }
CMat Y(int n, int r, int s) { return basis_matrix({BasisTag::Y, r, s}, n); }
CMat D(int n, int r, int s) { return basis_matrix({BasisTag::DPair, r, s}, n); }
CMat Dt(int n, int t) { return basis_matrix({BasisTag::DSingle, t}, n); }

CMat zero(int n) { return CMat::Zero(n, n); }

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// The seven sp(n) basis patterns of the (z, w; -conj w, conj z) representation.
CMat sp_Ya(int n, int r, int s) { return kInvSqrt2 * block2(Y(n, r, s), zero(n), zero(n), Y(n, r, s)); }
CMat sp_Xa(int n, int r, int s) {
  return kInvSqrt2 * block2(I_UNIT * X(n, r, s), zero(n), zero(n), -I_UNIT * X(n, r, s));
}
CMat sp_Xb(int n, int r, int s) {
  return kInvSqrt2 * block2(zero(n), I_UNIT * X(n, r, s), I_UNIT * X(n, r, s), zero(n));
}
CMat sp_Xc(int n, int r, int s) { return kInvSqrt2 * block2(zero(n), X(n, r, s), -X(n, r, s), zero(n)); }
CMat sp_Da(int n, int t) {
  return kInvSqrt2 * block2(I_UNIT * Dt(n, t), zero(n), zero(n), -I_UNIT * Dt(n, t));
}
CMat sp_Db(int n, int t) {
  return kInvSqrt2 * block2(zero(n), I_UNIT * Dt(n, t), I_UNIT * Dt(n, t), zero(n));
}
CMat sp_Dc(int n, int t) { return kInvSqrt2 * block2(zero(n), Dt(n, t), -Dt(n, t), zero(n)); }

double op_residual(const CMat& M) { return max_abs(M); }

CMat real_gaussian(int rows, int cols, Rng& rng) {
  CMat A(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) A(i, j) = rng.normal();
  return A;
}

CMat complex_gaussian(int rows, int cols, Rng& rng) {
  CMat A(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      A(i, j) = cplx(re, im);
    }
  return A;
}

// Q factor with the diagonal of R made positive (Haar on O(n) / U(n)).
CMat haar_q(const CMat& A) {
  Eigen::HouseholderQR<CMat> qr(A);
  CMat Q = qr.householderQ();
  const CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    const cplx d = R(j, j);
    const double mag = std::abs(d);
    if (mag > 0) Q.col(j) *= d / mag;
  }
  return Q;
}

CMat haar_so(int n, Rng& rng) {
  CMat Q = haar_q(real_gaussian(n, n, rng));
  // round-off imaginary parts are exactly zero for real input; keep it real
  Q = Q.real().cast<cplx>();
  if (Q.determinant().real() < 0) Q.col(n - 1) *= -1.0;
  return Q;
}

CMat haar_su(int n, Rng& rng) {
  CMat Q = haar_unitary(n, rng);
  const cplx det = Q.determinant();
  Q.col(n - 1) *= std::conj(det) / std::abs(det);
  return Q;
}

// v = (x; y) -> (-conj y; conj x): column n+t of an Sp(n) matrix from column t.
CVec quaternionic_partner(const CVec& v) {
  const Eigen::Index n = v.size() / 2;
  CVec out(v.size());
  out.head(n) = -v.tail(n).conjugate();
  out.tail(n) = v.head(n).conjugate();
  return out;
}

// Quaternionic Gram-Schmidt on Gaussian columns.
CMat haar_sp(int n, Rng& rng) {
  const int N = 2 * n;
  CMat q = CMat::Zero(N, N);
  for (int t = 0; t < n; ++t) {
    CVec v = complex_gaussian(N, 1, rng).col(0);
    for (int pass = 0; pass < 2; ++pass)
      for (int s = 0; s < t; ++s) {
        v -= q.col(s).dot(v) * q.col(s);
        v -= q.col(n + s).dot(v) * q.col(n + s);
      }
    v /= v.norm();
    q.col(t) = v;
    q.col(n + t) = quaternionic_partner(v);
  }
  return q;
}

CMat block_diag(const CMat& A, const CMat& B) {
  CMat M = CMat::Zero(A.rows() + B.rows(), A.cols() + B.cols());
  M.topLeftCorner(A.rows(), A.cols()) = A;
  M.bottomRightCorner(B.rows(), B.cols()) = B;
  return M;
}

// Places Sp(m) and Sp(n) (each in its own 2k representation) block-diagonally
// inside Sp(m+n).
CMat sp_block_diag(const CMat& q1, int m, const CMat& q2, int n) {
  const int N = m + n;
  CMat q = CMat::Zero(2 * N, 2 * N);
  auto place = [&](const CMat& src, int k, int offset) {
    q.block(offset, offset, k, k) = src.topLeftCorner(k, k);
    q.block(offset, N + offset, k, k) = src.topRightCorner(k, k);
    q.block(N + offset, offset, k, k) = src.bottomLeftCorner(k, k);
    q.block(N + offset, N + offset, k, k) = src.bottomRightCorner(k, k);
  };
  place(q1, m, 0);
  place(q2, n, m);
  return q;
}

}  // namespace

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

int GroupId::real_dim() const {
  switch (family) {
    case Family::SO:
      return n * (n - 1) / 2;
    case Family::SU:
      return n * n - 1;
    case Family::Sp:
      return n * (2 * n + 1);
  }
  return 0;
}

std::string GroupId::label() const {
  const std::string k = std::to_string(n);
  switch (family) {
    case Family::SO:
      return "SO(" + k + ")";
    case Family::SU:
      return "SU(" + k + ")";
    case Family::Sp:
      return "Sp(" + k + ")";
  }
  return {};
}

bool SpaceDescriptor::is_quotient() const {
  return kind != SpaceKind::SO && kind != SpaceKind::SU && kind != SpaceKind::Sp;
}

int SpaceDescriptor::dim_subgroup() const {
  switch (kind) {
    case SpaceKind::SO:
    case SpaceKind::SU:
    case SpaceKind::Sp:
      return 0;
    case SpaceKind::SU_SO:
      return n * (n - 1) / 2;
    case SpaceKind::Sp_U:
    case SpaceKind::SO2n_U:
      return n * n;
    case SpaceKind::SU2n_Sp:
      return n * (2 * n + 1);
    case SpaceKind::GrR:
      return m * (m - 1) / 2 + n * (n - 1) / 2;
    case SpaceKind::GrC:
      return m * m + n * n - 1;
    case SpaceKind::GrH:
      return m * (2 * m + 1) + n * (2 * n + 1);
  }
  return 0;
}

std::string SpaceDescriptor::id() const { return space_id(kind); }

std::string SpaceDescriptor::label() const {
  const std::string k = std::to_string(n);
  const std::string mn = std::to_string(m) + "," + k;
  switch (kind) {
    case SpaceKind::SO:
      return "SO(" + k + ")";
    case SpaceKind::SU:
      return "SU(" + k + ")";
    case SpaceKind::Sp:
      return "Sp(" + k + ")";
    case SpaceKind::SU_SO:
      return "SU(" + k + ")/SO(" + k + ")";
    case SpaceKind::Sp_U:
      return "Sp(" + k + ")/U(" + k + ")";
    case SpaceKind::SO2n_U:
      return "SO(" + std::to_string(2 * n) + ")/U(" + k + ")";
    case SpaceKind::SU2n_Sp:
      return "SU(" + std::to_string(2 * n) + ")/Sp(" + k + ")";
    case SpaceKind::GrR:
      return "Gr_R(" + mn + ")";
    case SpaceKind::GrC:
      return "Gr_C(" + mn + ")";
    case SpaceKind::GrH:
      return "Gr_H(" + mn + ")";
  }
  return {};
}

bool is_grassmannian(SpaceKind kind) {
  return kind == SpaceKind::GrR || kind == SpaceKind::GrC || kind == SpaceKind::GrH;
}

SpaceDescriptor make_space(SpaceKind kind, int n, int m) {
  const bool grass = is_grassmannian(kind);
  if (n < 1 || n > 8) throw PreconditionError("make_space: n must lie in 1..8");
  if (grass && (m < 1 || m + n > 8)) throw PreconditionError("make_space: need m >= 1 and m + n <= 8");
  if (!grass) m = 0;
  if ((kind == SpaceKind::SO || kind == SpaceKind::SU || kind == SpaceKind::SU_SO) && n < 2)
    throw PreconditionError("make_space: n must be at least 2");
  // SO(2)/U(1) is a point and no a, b in C^2 satisfy the family conditions
  if (kind == SpaceKind::SO2n_U && n < 2) throw PreconditionError("make_space: SO(2n)/U(n) needs n >= 2");
  if ((kind == SpaceKind::SO2n_U || kind == SpaceKind::SU2n_Sp || kind == SpaceKind::Sp_U ||
       kind == SpaceKind::GrH) &&
      (grass ? 2 * (m + n) : 2 * n) > 16)
    throw PreconditionError("make_space: size out of range");

  const long long N = n, M = m;
  SpaceDescriptor d{kind, n, m, {Family::SO, n}, Rational(0), Rational(0)};
  switch (kind) {
    case SpaceKind::SO:
      d.total = {Family::SO, n};
      d.lambda = Rational(-(N - 1), 2);
      d.mu = Rational(-1, 2);
      break;
    case SpaceKind::SU:
      d.total = {Family::SU, n};
      d.lambda = Rational(-(N * N - 1), N);
      d.mu = Rational(-(N - 1), N);
      break;
    case SpaceKind::Sp:
      d.total = {Family::Sp, n};
      d.lambda = Rational(-(2 * N + 1), 2);
      d.mu = Rational(-1, 2);
      break;
    case SpaceKind::SU_SO:
      d.total = {Family::SU, n};
      d.lambda = Rational(-2 * (N * N + N - 2), N);
      d.mu = Rational(-4 * (N - 1), N);
      break;
    case SpaceKind::Sp_U:
      d.total = {Family::Sp, n};
      d.lambda = Rational(-2 * (N + 1));
      d.mu = Rational(-2);
      break;
    case SpaceKind::SO2n_U:
      d.total = {Family::SO, 2 * n};
      d.lambda = Rational(-2 * (N - 1));
      d.mu = Rational(-1);
      break;
    case SpaceKind::SU2n_Sp:
      d.total = {Family::SU, 2 * n};
      d.lambda = Rational(-2 * (2 * N * N - N - 1), N);
      d.mu = Rational(-2 * (N - 1), N);
      break;
    case SpaceKind::GrR:
      d.total = {Family::SO, m + n};
      d.lambda = Rational(-(M + N));
      d.mu = Rational(-2);
      break;
    case SpaceKind::GrC:
      d.total = {Family::SU, m + n};
      d.lambda = Rational(-2 * (M + N));
      d.mu = Rational(-2);
      break;
    case SpaceKind::GrH:
      d.total = {Family::Sp, m + n};
      d.lambda = Rational(-2 * (M + N));
      d.mu = Rational(-1);
      break;
  }
  return d;
}

const std::vector<SpaceKind>& all_space_kinds() {
  static const std::vector<SpaceKind> kinds = {
      SpaceKind::SO,     SpaceKind::SU,      SpaceKind::Sp,  SpaceKind::SU_SO, SpaceKind::Sp_U,
      SpaceKind::SO2n_U, SpaceKind::SU2n_Sp, SpaceKind::GrR, SpaceKind::GrC,   SpaceKind::GrH};
  return kinds;
}

std::string space_id(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::SO:
      return "so_n";
    case SpaceKind::SU:
      return "su_n";
    case SpaceKind::Sp:
      return "sp_n";
    case SpaceKind::SU_SO:
      return "su_so";
    case SpaceKind::Sp_U:
      return "sp_u";
    case SpaceKind::SO2n_U:
      return "so2n_u";
    case SpaceKind::SU2n_Sp:
      return "su2n_sp";
    case SpaceKind::GrR:
      return "grass_r";
    case SpaceKind::GrC:
      return "grass_c";
    case SpaceKind::GrH:
      return "grass_h";
  }
  return {};
}

std::optional<SpaceKind> parse_space_id(const std::string& id) {
  for (SpaceKind k : all_space_kinds())
    if (space_id(k) == id) return k;
  return std::nullopt;
}

CMat haar_unitary(int n, Rng& rng) { return haar_q(complex_gaussian(n, n, rng)); }

CMat haar_sample(const GroupId& group, std::uint64_t seed) {
  Rng rng(seed);
  return haar_sample(group, rng);
}

CMat haar_sample(const GroupId& group, Rng& rng) {
  switch (group.family) {
    case Family::SO:
      return haar_so(group.n, rng);
    case Family::SU:
      return haar_su(group.n, rng);
    case Family::Sp:
      return haar_sp(group.n, rng);
  }
  return {};
}

double membership_residual(const GroupId& group, const CMat& x) {
  const int N = group.embedding_dim();
  if (x.rows() != N || x.cols() != N) throw DimensionError("membership_residual: dimension mismatch");
  double res = op_residual(x * x.adjoint() - CMat::Identity(N, N));
  switch (group.family) {
    case Family::SO:
      res = std::max(res, max_abs(x.imag().cast<cplx>()));
      res = std::max(res, std::abs(x.determinant() - 1.0));
      break;
    case Family::SU:
      res = std::max(res, std::abs(x.determinant() - 1.0));
      break;
    case Family::Sp: {
      const int n = group.n;
      res = std::max(res, op_residual(x.bottomRightCorner(n, n) - x.topLeftCorner(n, n).conjugate()));
      res = std::max(res, op_residual(x.bottomLeftCorner(n, n) + x.topRightCorner(n, n).conjugate()));
      break;
    }
  }
  return res;
}

double algebra_residual(const GroupId& group, const CMat& V) {
  const int N = group.embedding_dim();
  if (V.rows() != N || V.cols() != N) throw DimensionError("algebra_residual: dimension mismatch");
  double res = op_residual(V + V.adjoint());
  switch (group.family) {
    case Family::SO:
      res = std::max(res, max_abs(V.imag().cast<cplx>()));
      break;
    case Family::SU:
      res = std::max(res, std::abs(V.trace()));
      break;
    case Family::Sp: {
      const int n = group.n;
      res = std::max(res, op_residual(V.bottomRightCorner(n, n) - V.topLeftCorner(n, n).conjugate()));
      res = std::max(res, op_residual(V.bottomLeftCorner(n, n) + V.topRightCorner(n, n).conjugate()));
      break;
    }
  }
  return res;
}

TangentBasis algebra_basis(const GroupId& group) {
  const int n = group.n;
  std::vector<CMat> span;
  switch (group.family) {
    case Family::SO:
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) span.push_back(Y(n, r, s));
      break;
    case Family::SU:
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) span.push_back(Y(n, r, s));
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) span.push_back(I_UNIT * X(n, r, s));
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) span.push_back(I_UNIT * D(n, r, s));
      break;
    case Family::Sp:
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) {
          span.push_back(sp_Ya(n, r, s));
          span.push_back(sp_Xa(n, r, s));
          span.push_back(sp_Xb(n, r, s));
          span.push_back(sp_Xc(n, r, s));
        }
      for (int t = 1; t <= n; ++t) {
        span.push_back(sp_Da(n, t));
        span.push_back(sp_Db(n, t));
        span.push_back(sp_Dc(n, t));
      }
      break;
  }
  return {gram_schmidt(span), BasisRole::FullAlgebra};
}

TangentBasis horizontal_basis(const SpaceDescriptor& space) {
  if (!space.is_quotient()) throw PreconditionError("horizontal_basis: not a quotient family");
  const int n = space.n, m = space.m, N = m + n;
  std::vector<CMat> span;
  switch (space.kind) {
    case SpaceKind::SU_SO:
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) span.push_back(I_UNIT * X(n, r, s));
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) span.push_back(I_UNIT * D(n, r, s));
      break;
    case SpaceKind::Sp_U:
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) {
          span.push_back(block2(I_UNIT * X(n, r, s), zero(n), zero(n), -I_UNIT * X(n, r, s)));
          span.push_back(block2(zero(n), I_UNIT * X(n, r, s), I_UNIT * X(n, r, s), zero(n)));
        }
      for (int t = 1; t <= n; ++t) {
        span.push_back(block2(I_UNIT * Dt(n, t), zero(n), zero(n), -I_UNIT * Dt(n, t)));
        span.push_back(block2(zero(n), I_UNIT * Dt(n, t), I_UNIT * Dt(n, t), zero(n)));
      }
      break;
    case SpaceKind::SO2n_U:
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) {
          span.push_back(block2(Y(n, r, s), zero(n), zero(n), -Y(n, r, s)));
          span.push_back(block2(zero(n), Y(n, r, s), Y(n, r, s), zero(n)));
        }
      break;
    case SpaceKind::SU2n_Sp:
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) {
          span.push_back(block2(Y(n, r, s), zero(n), zero(n), -Y(n, r, s)));
          span.push_back(block2(I_UNIT * X(n, r, s), zero(n), zero(n), I_UNIT * X(n, r, s)));
          span.push_back(block2(zero(n), Y(n, r, s), Y(n, r, s), zero(n)));
          span.push_back(block2(zero(n), I_UNIT * Y(n, r, s), -I_UNIT * Y(n, r, s), zero(n)));
        }
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s)
          span.push_back(block2(I_UNIT * D(n, r, s), zero(n), zero(n), I_UNIT * D(n, r, s)));
      break;
    case SpaceKind::GrR:
      for (int r = 1; r <= m; ++r)
        for (int s = m + 1; s <= N; ++s) span.push_back(Y(N, r, s));
      break;
    case SpaceKind::GrC:
      for (int r = 1; r <= m; ++r)
        for (int s = m + 1; s <= N; ++s) {
          span.push_back(Y(N, r, s));
          span.push_back(I_UNIT * X(N, r, s));
        }
      break;
    case SpaceKind::GrH:
      for (int r = 1; r <= m; ++r)
        for (int s = m + 1; s <= N; ++s) {
          span.push_back(sp_Ya(N, r, s));
          span.push_back(sp_Xa(N, r, s));
          span.push_back(sp_Xb(N, r, s));
          span.push_back(sp_Xc(N, r, s));
        }
      break;
    default:
      break;
  }
  return {gram_schmidt(span), BasisRole::Horizontal};
}

TangentBasis subgroup_basis(const SpaceDescriptor& space) {
  if (!space.is_quotient()) throw PreconditionError("subgroup_basis: not a quotient family");
  const int n = space.n, m = space.m, N = m + n;
  auto same_block = [m](int r, int s) { return (r <= m) == (s <= m); };
  std::vector<CMat> span;
  switch (space.kind) {
    case SpaceKind::SU_SO:
      return {algebra_basis({Family::SO, n}).elements, BasisRole::Subgroup};
    case SpaceKind::Sp_U:
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) {
          span.push_back(block2(Y(n, r, s), zero(n), zero(n), Y(n, r, s)));
          span.push_back(block2(zero(n), X(n, r, s), -X(n, r, s), zero(n)));
        }
      for (int t = 1; t <= n; ++t) span.push_back(block2(zero(n), Dt(n, t), -Dt(n, t), zero(n)));
      break;
    case SpaceKind::SO2n_U:
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) {
          span.push_back(block2(Y(n, r, s), zero(n), zero(n), Y(n, r, s)));
          span.push_back(block2(zero(n), -X(n, r, s), X(n, r, s), zero(n)));
        }
      for (int t = 1; t <= n; ++t) span.push_back(block2(zero(n), -Dt(n, t), Dt(n, t), zero(n)));
      break;
    case SpaceKind::SU2n_Sp:
      // same subspace of su(2n) in either Sp(n) convention
      return {algebra_basis({Family::Sp, n}).elements, BasisRole::Subgroup};
    case SpaceKind::GrR:
      for (int r = 1; r <= N; ++r)
        for (int s = r + 1; s <= N; ++s)
          if (same_block(r, s)) span.push_back(Y(N, r, s));
      break;
    case SpaceKind::GrC:
      for (int r = 1; r <= N; ++r)
        for (int s = r + 1; s <= N; ++s)
          if (same_block(r, s)) {
            span.push_back(Y(N, r, s));
            span.push_back(I_UNIT * X(N, r, s));
          }
      for (int r = 1; r <= N; ++r)
        for (int s = r + 1; s <= N; ++s) span.push_back(I_UNIT * D(N, r, s));
      break;
    case SpaceKind::GrH:
      for (int r = 1; r <= N; ++r)
        for (int s = r + 1; s <= N; ++s)
          if (same_block(r, s)) {
            span.push_back(sp_Ya(N, r, s));
            span.push_back(sp_Xa(N, r, s));
            span.push_back(sp_Xb(N, r, s));
            span.push_back(sp_Xc(N, r, s));
          }
      for (int t = 1; t <= N; ++t) {
        span.push_back(sp_Da(N, t));
        span.push_back(sp_Db(N, t));
        span.push_back(sp_Dc(N, t));
      }
      break;
    default:
      break;
  }
  return {gram_schmidt(span), BasisRole::Subgroup};
}

CMat embed_unitary_in_sp(const CMat& u) {
  const CMat x = u.real().cast<cplx>(), y = u.imag().cast<cplx>();
  return block2(x, y, -y, x);
}

CMat embed_unitary_in_so2n(const CMat& u) {
  const CMat x = u.real().cast<cplx>(), y = u.imag().cast<cplx>();
  return block2(x, -y, y, x);
}

std::pair<CMat, CMat> sp_second_convention_blocks(const CMat& q) {
  const Eigen::Index n = q.rows() / 2;
  return {q.topLeftCorner(n, n), q.bottomLeftCorner(n, n)};
}

CMat sp_from_second_convention(const CMat& z, const CMat& w) {
  return block2(z, -w.conjugate(), w, z.conjugate());
}

CMat subgroup_sample(const SpaceDescriptor& space, Rng& rng) {
  if (!space.is_quotient()) throw PreconditionError("subgroup_sample: not a quotient family");
  const int n = space.n, m = space.m;
  switch (space.kind) {
    case SpaceKind::SU_SO:
      return haar_so(n, rng);
    case SpaceKind::Sp_U:
      return embed_unitary_in_sp(haar_unitary(n, rng));
    case SpaceKind::SO2n_U:
      return embed_unitary_in_so2n(haar_unitary(n, rng));
    case SpaceKind::SU2n_Sp: {
      const auto [z, w] = sp_second_convention_blocks(haar_sp(n, rng));
      return sp_from_second_convention(z, w);
    }
    case SpaceKind::GrR: {
      const CMat a = haar_so(m, rng);
      const CMat b = haar_so(n, rng);
      return block_diag(a, b);
    }
    case SpaceKind::GrC: {
      const CMat a = haar_unitary(m, rng);
      const CMat b = haar_unitary(n, rng);
      CMat k = block_diag(a, b);
      const cplx det = k.determinant();
      k.col(m + n - 1) *= std::conj(det) / std::abs(det);
      return k;
    }
    case SpaceKind::GrH: {
      const CMat a = haar_sp(m, rng);
      const CMat b = haar_sp(n, rng);
      return sp_block_diag(a, m, b, n);
    }
    default:
      break;
  }
  return {};
}

CMat retract(const GroupId& group, const CMat& x, const CMat& V) {
  const double mx = membership_residual(group, x);
  if (mx > 1e-9) throw PreconditionError("retract: point is not in the group");
  if (algebra_residual(group, V) > 1e-9) throw PreconditionError("retract: direction is not in the algebra");
  CMat y = x * matrix_exp(V);
  if (group.family == Family::SO) y = y.real().cast<cplx>();
  return y;
}

}  // namespace symmin
