#pragma once

// Hadamard graph and directed Hadamard graph as association schemes: the
// seven relation matrices, Bose-Mesner axiom checking with intersection
// numbers, the two-fiber coherent configuration refining the scheme, its
// algebraic automorphism rho, and the fusion of rho-orbits.

#include <array>
#include <vector>

#include "spinkit/hadamard.hpp"
#include "spinkit/matrix.hpp"
#include "spinkit/report.hpp"

namespace spinkit {

// One class of a scheme or configuration: a named 0/1 relation on the
// vertex set X x (Z/2Z)^2, stored densely.  Names are metadata.
struct Relation {
  std::string name;
  IntMatrix mat;

  int side() const { return mat.side(); }
  bool operator==(const Relation& o) const { return mat == o.mat; }
};

// Indices into the seven-matrix family returned by build_distance_matrices
// and build_relations.
inline constexpr int kA0 = 0, kA1 = 1, kA2 = 2, kA3 = 3, kA4 = 4;
inline constexpr int kA1p = 5, kA3p = 6;

// Adjacency matrices A0..A4 of the Hadamard graph (indexed by distance) and
// the directed variant A1p (with A3p = transpose(A1p)), assembled from the
// 4x4 block displays over half-sum blocks (J+H)/2 and (J-H)/2.
std::array<IntMatrix, 7> build_distance_matrices(const HadamardMatrix& h);

// The same seven relations built independently from their membership
// predicates on pairs ((a,alpha),(b,beta)); entry-checked against
// build_distance_matrices.  Throws DefinitionMismatch on any disagreement.
std::array<Relation, 7> build_relations(const HadamardMatrix& h);

struct IntersectionTensor {
  int classes = 0;
  std::vector<long long> p;  // p[(i*classes + j)*classes + l]

  IntersectionTensor() = default;
  explicit IntersectionTensor(int d)
      : classes(d),
        p(static_cast<size_t>(d) * static_cast<size_t>(d) * static_cast<size_t>(d), 0) {}

  long long& at(int i, int j, int l) {
    return p[(static_cast<size_t>(i) * classes + j) * classes + l];
  }
  long long at(int i, int j, int l) const {
    return p[(static_cast<size_t>(i) * classes + j) * classes + l];
  }
};

// A verified (or to-be-verified) family of relations forming a scheme.
struct SchemeSpec {
  std::vector<Relation> rels;
  int identity_index = 0;
  std::vector<int> transpose_map;  // rels[i]^T == rels[transpose_map[i]]
};

struct SchemeCheckResult {
  VerificationReport report;
  IntersectionTensor tensor;
  int identity_index = -1;
  std::vector<int> transpose_map;

  bool ok() const { return report.ok(); }
};

// Bose-Mesner axioms for a relation family: partition of the square,
// identity class, transpose closure, and product closure with nonnegative
// integer coefficients (the intersection numbers).  Violations are Fail
// verdicts with witnesses ("NotClosed: ..." for a product leaving the
// span); the check stops at the first failing product.
SchemeCheckResult scheme_check(const std::vector<Relation>& rels);

// {A0..A4} and {A0, A1p, A2, A3p, A4} as ready-made families.
SchemeSpec hadamard_scheme(const HadamardMatrix& h);
SchemeSpec directed_hadamard_scheme(const HadamardMatrix& h);

// The ten fiber-restricted relations R_i^lambda = R_i with rows limited to
// fiber alpha_1 = lambda, indexed 2*i + lambda.
std::vector<Relation> fiber_relations(const HadamardMatrix& h);

// Product rule of the two-fiber configuration, checked entry-exactly for
// all 100 (i,lambda,j,mu) combinations:
//   A(R_i^lambda) A(R_j^mu)
//     = [ (i+lambda) mod 2 == mu ] * sum over l == i+j (mod 2) of
//       p_ij^l A(R_l^lambda)
// with p the intersection numbers of {A0..A4}.  Failures are Fail verdicts
// with "RuleViolation: ..." witnesses.
VerificationReport coherent_config_check(const HadamardMatrix& h);

// rho on configuration indices: swaps classes 1 and 3 while flipping the
// fiber, and only flips the fiber otherwise.  An involution.
int rho_image(int c);

// Checks rho preserves every structure constant of the ten-relation
// configuration: q_{rho(S) rho(T)}^{rho(U)} = q_{ST}^U for all 1000
// triples.  Failures are Fail verdicts with "NotAutomorphism: ..."
// witnesses.
VerificationReport rho_automorphism_check(const HadamardMatrix& h);

// Unions each rho-orbit of the ten relations into one class and checks the
// result is exactly {R0, R1p, R2, R3p, R4} and passes scheme_check; throws
// FusionMismatch otherwise.
SchemeSpec fuse_rho_orbits(const HadamardMatrix& h);

// Group scheme of Z/n: class i is the i-th power of the n-cycle.
SchemeSpec cyclic_scheme(int n);

}  // namespace spinkit
