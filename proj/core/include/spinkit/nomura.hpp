#pragma once

#include <string>
#include <vector>

#include <spinkit/hadamard.hpp>
#include <spinkit/matrix.hpp>
#include <spinkit/report.hpp>

namespace spinkit {

// Table of the column-ratio vectors Y_ab with Y_ab(x) = M(x,a)/M(x,b),
// stored as exact monomials (requires every entry of M to be one).
class YTable {
 public:
  YTable() = default;
  YTable(int n, UMode mode)
      : n_(n),
        mode_(mode),
        e_(static_cast<size_t>(n) * n * n) {}

  int side() const { return n_; }
  UMode mode() const { return mode_; }
  Monomial& at(int a, int b, int x) {
    return e_[(static_cast<size_t>(a) * n_ + b) * n_ + x];
  }
  const Monomial& at(int a, int b, int x) const {
    return e_[(static_cast<size_t>(a) * n_ + b) * n_ + x];
  }

 private:
  int n_ = 0;
  UMode mode_ = UMode::Unit;
  std::vector<Monomial> e_;
};

// Errors: NonInvertibleEntry if some entry of m is not a nonzero monomial.
YTable y_table(const SpinMatrix& m, const ScalarContext& ctx);

// Hermitian inner product <Y_pq, Y_rs> = sum_x Y_pq(x) * conj(Y_rs(x)),
// accumulated exactly.
Scalar y_inner(const YTable& t, int pa, int pb, int qa, int qb,
               const ScalarContext& ctx);

// Partition of the n^2 ordered pairs (a,b), linearized as a*n + b, into the
// connected components of the pair graph.  Labels are canonical: each pair
// carries the minimum linearized index of its component.
struct PairPartition {
  int n = 0;
  std::vector<int> label;

  std::vector<int> class_labels() const;         // sorted distinct labels
  std::vector<long long> class_sizes() const;    // aligned with class_labels()
  int classes() const;
  bool operator==(const PairPartition& o) const = default;
};

struct NomuraOptions {
  // Skip the inner product when both pairs already share a component; extra
  // edges inside a component never change the final partition.
  bool skip_connected = true;
};

// Connected components of the graph on ordered pairs with (a,b) ~ (c,d) iff
// <Y_ab, Y_cd> != 0.  Errors: AmbiguousEdge when a zero test is undecidable.
PairPartition nomura_graph(const SpinMatrix& m, const ScalarContext& ctx,
                           const NomuraOptions& opt = {});

struct NomuraResult {
  PairPartition partition;
  std::vector<IntMatrix> basis;  // 0/1 indicators, canonical label order
  int ambiguous = 0;             // undecided zero tests (checks abort, so 0)
  std::string orientation;       // which matrix the pair graph was built on
};

// Basis of the algebra of matrices for which every Y_ab of m is an
// eigenvector.  Computed as the components of the pair graph of m^T: the
// indicator matrices of those components span exactly that algebra.
NomuraResult nomura_algebra(const SpinMatrix& m, const ScalarContext& ctx,
                            const NomuraOptions& opt = {});

// Independent check that candidate * Y_ab is a scalar multiple of Y_ab for
// every pair, without using the component construction.
// Errors: AmbiguousZero.
VerificationReport membership_test(const IntMatrix& candidate,
                                   const SpinMatrix& m,
                                   const ScalarContext& ctx);

struct LemmaOptions {
  int sample = 0;  // 0 = exhaustive; otherwise check this many random items
  unsigned long long seed = 20240816ULL;
};

// Structure lemmas tying the normalized models together (which in 2..5):
//   2: Y' equals Y, DY or D^-1 Y according to the block rows of the pair;
//   3: the index shuffle sigma maps R1 onto R1' and R3 onto R3';
//   4: Y at a tau-shifted first index equals (-D^2)^alpha1 times Y;
//   5: the inner-product sign identity on pairs from R1 u R3.
VerificationReport lemma_check(int which, const HadamardMatrix& h,
                               const ScalarContext& ctx,
                               const LemmaOptions& opt = {});

std::vector<VerificationReport> lemma_checks(const HadamardMatrix& h,
                                             const ScalarContext& ctx,
                                             const LemmaOptions& opt = {});

}  // namespace spinkit
