#pragma once

// The Potts block and the four Hadamard model matrices, the type II
// (row-ratio) and type III (star-triangle) condition checks, and the gauge
// identities relating each model to its normalized form.

#include "spinkit/hadamard.hpp"
#include "spinkit/matrix.hpp"
#include "spinkit/report.hpp"

namespace spinkit {

enum class ModelKind { W, Wprime, Wtilde, WtildePrime, Potts };
const char* to_string(ModelKind kind);

// u^3 I - u^-1 (J - I): the k x k diagonal block shared by all four models.
SpinMatrix potts(const ScalarContext& ctx);

// Assemble a 4k x 4k model from its block display.  W and Wprime are also
// re-derived as scheme-matrix expansions
//   W  = u^3 A0 + w A1  - u^-1 A2 - w A3  + u^3 A4
//   W' = u^3 A0 + xi A1p - u^-1 A2 - xi A3p + u^3 A4
// and the two presentations compared entry-exactly (DefinitionMismatch on
// any difference).  Throws OrderMismatch unless h.order() == ctx.k.
SpinMatrix build_model(ModelKind kind, const HadamardMatrix& h,
                       const ScalarContext& ctx);

// Diagonal gauge with scalar g0 on the alpha_1 = 0 half and g1 on the
// alpha_1 = 1 half of the 4k vertices.
SpinMatrix block_gauge(const Scalar& g0, const Scalar& g1, int k);

// D: identity above, i = -xi^2 below.  The case split of the Y-vector
// comparison is phrased with this gauge.
SpinMatrix gauge_d(const ScalarContext& ctx);

// sum_x M(a,x)/M(b,x) = n delta_ab, n the side of M.  Throws AmbiguousZero
// if any sum is undecidable and NonInvertibleEntry if an entry has no
// inverse.
VerificationReport type2_check(const SpinMatrix& m, const ScalarContext& ctx);

struct Type3Options {
  bool exhaustive = false;         // force all n^3 triples regardless of side
  int sample = 10000;              // triples drawn when n > 16 and not exhaustive
  unsigned long long seed = 20240816;
};

// Star-triangle condition sum_x M(a,x)M(b,x)/M(c,x) = d M(a,b)/(M(a,c)M(c,b))
// with loop parameter d, d^2 = side.  Both exact candidates
// d = +/- 2(u^2+u^-2) (side 4k) or +/- (u^2+u^-2) (side k) are tried in one
// sweep; the report records which signs survive and fails if none does.
VerificationReport type3_check(const SpinMatrix& m, const ScalarContext& ctx,
                               const Type3Options& opt = {});

enum class GaugeKind {
  WtildeFromW,                  // Wt = diag(I,I,wI,wI) W R, R split on w^2 = +/-1
  WtildePrimeFromWprime,        // Wtp = diag(I,I,xi I,xi I) Wp diag(I,I,xi^-1 I,xi^-1 I)
  WtildePrimeTransposeFromWprime,  // Wtp^T = diag(I,-xi^-1 I) Wp diag(I,-xi I)
};
const char* to_string(GaugeKind kind);

// Entry-exact verification of the selected gauge display; mismatches are
// Fail verdicts with an "IdentityFailed: ..." witness naming the first
// differing entry.
VerificationReport gauge_identity_check(GaugeKind kind, const HadamardMatrix& h,
                                        const ScalarContext& ctx);

}  // namespace spinkit
