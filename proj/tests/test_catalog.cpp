#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "symmin/catalog.hpp"
#include "symmin/errors.hpp"

using namespace symmin;

namespace {

CVec vec(std::initializer_list<cplx> v) {
  CVec out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (auto c : v) out(i++) = c;
  return out;
}

CVec unit(int len, int k) {
  CVec e = CVec::Zero(len);
  e(k - 1) = 1.0;
  return e;
}

bool has(const std::vector<Violation>& vs, const std::string& name) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.constraint == name; });
}

// Entry-level coordinate expansion, written independently of the term shapes.
cplx coordinate_oracle(const EigenfunctionSpec& s, const CMat& x) {
  const auto& P = s.params.vectors;
  const int n = s.space.n, m = s.space.m, N = m + n;
  cplx sum = 0.0;
  switch (s.space.kind) {
    case SpaceKind::SO:
      for (int j = 0; j < n; ++j)
        for (int al = 0; al < n; ++al) sum += P.at("p")(j) * P.at("a")(al) * x(j, al);
      return sum;
    case SpaceKind::SU:
      for (int j = 0; j < n; ++j)
        for (int al = 0; al < n; ++al) sum += P.at("a")(j) * P.at("v")(al) * x(j, al);
      return sum;
    case SpaceKind::Sp:
      for (int j = 0; j < n; ++j)
        for (int al = 0; al < n; ++al)
          sum += P.at("a")(j) * (P.at("v")(al) * x(j, al) + P.at("u")(al) * x(j, n + al));
      return sum;
    case SpaceKind::SU_SO:
    case SpaceKind::Sp_U:
    case SpaceKind::GrR: {
      const int cols = s.space.kind == SpaceKind::GrR ? m : static_cast<int>(x.cols());
      for (int l = 0; l < cols; ++l) {
        cplx c = 0.0;
        for (int j = 0; j < x.rows(); ++j) c += P.at("a")(j) * x(j, l);
        sum += c * c;
      }
      return sum;
    }
    case SpaceKind::SO2n_U:
    case SpaceKind::SU2n_Sp: {
      // sum_{j,k} (a_j b_k - b_j a_k)/sqrt2 * sum_{t<n} (x_{k,t} x_{j,n+t} - x_{k,n+t} x_{j,t})
      const CVec& a = P.at("a");
      const CVec& b = P.at("b");
      for (int j = 0; j < 2 * n; ++j)
        for (int k = 0; k < 2 * n; ++k) {
          cplx inner = 0.0;
          for (int t = 0; t < n; ++t) inner += x(k, t) * x(j, n + t) - x(k, n + t) * x(j, t);
          sum += (a(j) * b(k) - b(j) * a(k)) / std::sqrt(2.0) * inner;
        }
      return sum;
    }
    case SpaceKind::GrC:
      for (int l = 0; l < m; ++l) {
        cplx ca = 0.0, cb = 0.0;
        for (int j = 0; j < N; ++j) {
          ca += P.at("a")(j) * x(j, l);
          cb += P.at("b")(j) * std::conj(x(j, l));
        }
        sum += ca * cb;
      }
      return sum;
    case SpaceKind::GrH:
      for (int l = 0; l < 2 * N; ++l) {
        if (!(l < m || (l >= N && l < N + m))) continue;
        cplx ca = 0.0, cb = 0.0;
        for (int j = 0; j < N; ++j) {
          ca += P.at("a")(j) * x(j, l);
          cb += P.at("a")(j) * std::conj(x(j, l));
        }
        sum += ca * cb;
      }
      return sum;
  }
  return sum;
}

std::vector<SpaceDescriptor> catalog_sizes() {
  std::vector<SpaceDescriptor> out;
  for (int n = 3; n <= 5; ++n) out.push_back(make_space(SpaceKind::SO, n));
  for (int n = 2; n <= 4; ++n) out.push_back(make_space(SpaceKind::SU, n));
  for (int n = 1; n <= 3; ++n) out.push_back(make_space(SpaceKind::Sp, n));
  for (int n = 2; n <= 4; ++n) out.push_back(make_space(SpaceKind::SU_SO, n));
  for (int n = 1; n <= 3; ++n) out.push_back(make_space(SpaceKind::Sp_U, n));
  for (int n = 2; n <= 3; ++n) out.push_back(make_space(SpaceKind::SO2n_U, n));
  for (int n = 1; n <= 2; ++n) out.push_back(make_space(SpaceKind::SU2n_Sp, n));
  for (auto kind : {SpaceKind::GrR, SpaceKind::GrC, SpaceKind::GrH})
    for (auto [m, n] : {std::pair{1, 2}, {2, 2}, {2, 3}}) out.push_back(make_space(kind, n, m));
  return out;
}

}  // namespace

TEST_CASE("build examples") {
  const auto so5 = build(make_space(SpaceKind::SO, 5), {{{"a", vec({1, I_UNIT, 0, 0, 0})}, {"p", unit(5, 1)}}, {}});
  CHECK(so5.lambda == Rational(-2));
  CHECK(so5.mu == Rational(-1, 2));
  CHECK(so5.regularity == RegularityClaim::Regular);

  const auto su3 = build(make_space(SpaceKind::SU, 3), {{{"a", unit(3, 1)}, {"v", unit(3, 2)}}, {}});
  CHECK(su3.lambda == Rational(-8, 3));
  CHECK(su3.mu == Rational(-2, 3));

  Params grr;
  grr.vectors["a"] = vec({1, I_UNIT, 0});
  grr.matrix = CMat::Identity(3, 3);
  try {
    build(make_space(SpaceKind::GrR, 2, 1), grr);
    FAIL("expected a constraint error");
  } catch (const ConstraintError& e) {
    const auto& v = e.violated();
    CHECK(std::find(v.begin(), v.end(), "rank A = 1") != v.end());
  }
}

TEST_CASE("validate examples") {
  CHECK(validate(make_space(SpaceKind::SO, 4), {{{"a", vec({1, I_UNIT, 0, 0})}, {"p", unit(4, 1)}}, {}}).empty());

  const auto so3 = validate(make_space(SpaceKind::SO, 3), {{{"a", vec({1, I_UNIT, 0})}, {"p", vec({1, I_UNIT, 0})}}, {}});
  REQUIRE(so3.size() == 1);
  CHECK(so3[0].constraint == "(p,p)!=0");
  CHECK(so3[0].kind == ConstraintKind::Regularity);

  const auto grc = validate(make_space(SpaceKind::GrC, 2, 2), {{{"a", unit(4, 1)}, {"b", unit(4, 1)}}, {}});
  CHECK(has(grc, "<a,conj(b)>=0"));
  CHECK_THROWS_AS(build(make_space(SpaceKind::GrC, 2, 2), {{{"a", unit(4, 1)}, {"b", unit(4, 1)}}, {}}),
                  ConstraintError);
}

TEST_CASE("validate reports every violation") {
  const auto vs = validate(make_space(SpaceKind::SO, 3), {{{"a", vec({1, 0, 0})}, {"p", CVec::Zero(3)}}, {}});
  CHECK(has(vs, "(a,a)=0"));
  CHECK(has(vs, "p != 0"));
  CHECK(has(vs, "(p,p)!=0"));

  const auto shape = validate(make_space(SpaceKind::SU, 3), {{{"a", unit(2, 1)}, {"w", unit(3, 1)}}, {}});
  CHECK(has(shape, "parameter a must have length 3"));
  CHECK(has(shape, "missing parameter v"));
  CHECK(has(shape, "unknown parameter w"));

  // SO(4)/U(2): dependent a, b break the eigen condition
  const auto so4 = validate(make_space(SpaceKind::SO2n_U, 2), {{{"a", unit(4, 1)}, {"b", 2.0 * unit(4, 1)}}, {}});
  CHECK_FALSE(so4.empty());

  CHECK_FALSE(validate(make_space(SpaceKind::GrH, 2, 1), {{{"a", vec({1, 0, 0})}}, {}}).empty());
  CHECK_FALSE(validate(make_space(SpaceKind::SU2n_Sp, 1), {{{"a", unit(2, 1)}, {"b", unit(2, 1)}}, {}}).empty());
}

TEST_CASE("regularity claims") {
  // old SO(4)/U(2) family: a=(1,i,0,0), b=(0,0,1,i) is an eigenfunction but outside the restricted sub-family
  const auto old = build(make_space(SpaceKind::SO2n_U, 2), {{{"a", vec({1, I_UNIT, 0, 0})}, {"b", vec({0, 0, 1, I_UNIT})}}, {}});
  CHECK(old.regularity == RegularityClaim::Open);
  CHECK_FALSE(old.regularity_notes.empty());

  const auto so4u2 = make_space(SpaceKind::SO2n_U, 2);
  CHECK(build(so4u2, default_params(so4u2)).regularity == RegularityClaim::Regular);

  const auto so3 = build(make_space(SpaceKind::SO, 3), {{{"a", vec({1, I_UNIT, 0})}, {"p", vec({1, I_UNIT, 0})}}, {}});
  CHECK(so3.regularity == RegularityClaim::NotRegular);

  const auto grh = make_space(SpaceKind::GrH, 2, 2);
  CHECK(build(grh, default_params(grh)).regularity == RegularityClaim::Open);
  const auto grr = make_space(SpaceKind::GrR, 2, 2);
  CHECK(build(grr, default_params(grr)).regularity == RegularityClaim::NotRegular);
}

TEST_CASE("default parameters build for every family and size") {
  for (const auto& s : catalog_sizes())
    for (int variant = 0; variant < 3; ++variant) {
      CAPTURE(s.label());
      CAPTURE(variant);
      const auto p = default_params(s, variant);
      CHECK(validate(s, p).empty());
      CHECK_NOTHROW(build(s, p));
    }
}

TEST_CASE("evaluate examples") {
  const CVec a = vec({1, I_UNIT, 0, 0});
  const CVec p = vec({1, 2, -1, 0.5 * I_UNIT});
  const auto spec = build(make_space(SpaceKind::SO, 4), {{{"a", a}, {"p", p}}, {}});
  CHECK(std::abs(evaluate(spec, CMat::Identity(4, 4)) - bilinear(p, a)) < 1e-15);

  // p = e_j, a = e_alpha + i e_beta picks out x_{j alpha} + i x_{j beta}
  const auto coord = build(make_space(SpaceKind::SO, 4), {{{"a", unit(4, 2) + I_UNIT * unit(4, 4)}, {"p", unit(4, 3)}}, {}});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CMat x = haar_sample({Family::SO, 4}, seed);
    CHECK(std::abs(evaluate(coord, x) - (x(2, 1) + I_UNIT * x(2, 3))) < 1e-15);
  }

  // real Grassmannian at the identity: sum_{t <= m} a_t^2
  const auto grs = make_space(SpaceKind::GrR, 3, 2);
  const auto gr = build(grs, default_params(grs, 1));
  const CVec& ga = gr.params.vectors.at("a");
  CHECK(std::abs(evaluate(gr, CMat::Identity(5, 5)) - (ga(0) * ga(0) + ga(1) * ga(1))) < 1e-14);

  CHECK_THROWS_AS(evaluate(spec, 2.0 * CMat::Identity(4, 4)), PreconditionError);
}

TEST_CASE("evaluate matches the coordinate expansion") {
  for (const auto& s : catalog_sizes()) {
    CAPTURE(s.label());
    const auto spec = build(s, default_params(s, 1));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const CMat x = haar_sample(s.total, seed + 1000);
      CHECK(std::abs(evaluate(spec, x) - coordinate_oracle(spec, x)) < 1e-13);
    }
  }
}

TEST_CASE("quaternionic coordinate functions") {
  const auto s = make_space(SpaceKind::GrH, 2, 2);
  const auto phi = grass_h_coordinate(s, 1, 3);
  const int N = 4;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CMat x = haar_sample(s.total, seed);
    cplx expect = 0.0;
    for (int l : {0, 1, N, N + 1}) expect += x(0, l) * std::conj(x(2, l));
    CHECK(std::abs(evaluate(phi, x) - expect) < 1e-14);
  }
  CHECK_THROWS_AS(grass_h_coordinate(s, 3, 1), IndexError);
  CHECK_THROWS_AS(grass_h_coordinate(make_space(SpaceKind::GrC, 2, 2), 1, 2), PreconditionError);
}

TEST_CASE("constant and shifted specs") {
  const auto s = make_space(SpaceKind::SU, 3);
  const auto one = constant_spec(s, 1.0);
  const auto spec = build(s, default_params(s));
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const CMat x = haar_sample(s.total, seed);
    CHECK(evaluate(one, x) == cplx(1.0));
    CHECK(std::abs(evaluate(shifted(spec, 0.3), x) - (evaluate(spec, x) - 0.3)) < 1e-15);
  }
}

TEST_CASE("invariance examples") {
  for (auto s : {make_space(SpaceKind::SU_SO, 3), make_space(SpaceKind::Sp_U, 2), make_space(SpaceKind::SU2n_Sp, 2),
                 make_space(SpaceKind::SO2n_U, 3), make_space(SpaceKind::GrC, 3, 2), make_space(SpaceKind::GrH, 3, 2),
                 make_space(SpaceKind::GrR, 3, 2)}) {
    CAPTURE(s.label());
    const auto spec = build(s, default_params(s));
    for (std::uint64_t seed = 0; seed < 3; ++seed)
      CHECK(invariance_residual(spec, haar_sample(s.total, seed), 20, seed) < 1e-12);
  }
  const auto so = make_space(SpaceKind::SO, 4);
  CHECK_THROWS_AS(invariance_residual(build(so, default_params(so)), CMat::Identity(4, 4), 20, 1), PreconditionError);
}

TEST_CASE("scaling identity") {
  const auto so4 = make_space(SpaceKind::SO, 4);
  const auto su3 = make_space(SpaceKind::SU, 3);
  const auto so = build(so4, default_params(so4));
  const auto su = build(su3, default_params(su3));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMat x = haar_sample(so4.total, seed);
    auto [l, r] = scaling_identity(so, 1.0, 1.0, x);
    CHECK(l == r);
    std::tie(l, r) = scaling_identity(so, 2.0, 3.0 * I_UNIT, x);
    CHECK(std::abs(l - r) < 1e-13);
    const CMat z = haar_sample(su3.total, seed);
    std::tie(l, r) = scaling_identity(su, -1.0, 1.0, z);
    CHECK(std::abs(l - r) < 1e-13);
  }
  const auto grs = make_space(SpaceKind::GrC, 2, 2);
  const auto gr = build(grs, default_params(grs));
  const CMat x = haar_sample(grs.total, 4);
  const auto [l, r] = scaling_identity(gr, 0.5 - I_UNIT, 2.0, x);
  CHECK(std::abs(l - r) < 1e-13);
  CHECK_THROWS_AS(scaling_identity(so, 0.0, 1.0, CMat::Identity(4, 4)), ConstraintError);
  CHECK_THROWS_AS(scaling_identity(shifted(so, 1.0), 1.0, 1.0, CMat::Identity(4, 4)), PreconditionError);
}

TEST_CASE("lambda <= mu <= 0 holds exactly") {
  for (const auto& s : catalog_sizes()) {
    CAPTURE(s.label());
    CHECK(s.lambda <= s.mu);
    CHECK(s.mu <= Rational(0));
  }
}
