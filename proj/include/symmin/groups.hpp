#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "symmin/matrix_core.hpp"
#include "symmin/sampling.hpp"

namespace symmin {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& q);

enum class Family { SO, SU, Sp };

struct GroupId {
  Family family;
  int n;

  int embedding_dim() const { return family == Family::Sp ? 2 * n : n; }
  int real_dim() const;
  std::string label() const;
};

enum class SpaceKind { SO, SU, Sp, SU_SO, Sp_U, SO2n_U, SU2n_Sp, GrR, GrC, GrH };

struct SpaceDescriptor {
  SpaceKind kind;
  int n;
  int m;  // only used by the Grassmannians
  GroupId total;
  Rational lambda;
  Rational mu;

  bool is_quotient() const;
  int dim_total() const { return total.real_dim(); }
  int dim_subgroup() const;
  int dim_horizontal() const { return dim_total() - dim_subgroup(); }
  std::string id() const;     // CLI id, e.g. "su_so"
  std::string label() const;  // e.g. "SU(3)/SO(3)"
};

// Supported sizes: n <= 8, m + n <= 8, and n >= 1 (n >= 2 for SO, SU).
SpaceDescriptor make_space(SpaceKind kind, int n, int m = 0);

std::optional<SpaceKind> parse_space_id(const std::string& id);
std::string space_id(SpaceKind kind);
const std::vector<SpaceKind>& all_space_kinds();
bool is_grassmannian(SpaceKind kind);

enum class BasisRole { FullAlgebra, Horizontal, Subgroup };

struct TangentBasis {
  std::vector<CMat> elements;
  BasisRole kind = BasisRole::FullAlgebra;
  std::size_t size() const { return elements.size(); }
};

CMat haar_sample(const GroupId& group, std::uint64_t seed);
CMat haar_sample(const GroupId& group, Rng& rng);
CMat haar_unitary(int n, Rng& rng);  // Haar on U(n)

double membership_residual(const GroupId& group, const CMat& x);
// Distance of V from the Lie algebra of the group.
double algebra_residual(const GroupId& group, const CMat& V);

TangentBasis algebra_basis(const GroupId& group);
TangentBasis horizontal_basis(const SpaceDescriptor& space);
TangentBasis subgroup_basis(const SpaceDescriptor& space);

// Haar sample of the isotropy subgroup K, embedded in the total group.
CMat subgroup_sample(const SpaceDescriptor& space, Rng& rng);

// Embeddings of U(n) and Sp(n) used by the quotient families.
CMat embed_unitary_in_sp(const CMat& u);       // x + iy -> (x, y; -y, x)
CMat embed_unitary_in_so2n(const CMat& u);     // x + iy -> (x, -y; y, x)
// Second Sp(n) convention q = (z, -conj w; w, conj z). Both conventions
// have the same image in U(2n); only the labelling of the blocks differs.
std::pair<CMat, CMat> sp_second_convention_blocks(const CMat& q);  // (z, w)
CMat sp_from_second_convention(const CMat& z, const CMat& w);

// x * exp(V); checks that x is in the group and V in its algebra.
CMat retract(const GroupId& group, const CMat& x, const CMat& V);

}  // namespace symmin
