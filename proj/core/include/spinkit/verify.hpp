#pragma once

// End-to-end verification drivers.  verify_theorem identifies the two
// Nomura algebras with the Bose-Mesner algebras of the Hadamard graph and
// its directed variant; verify_degenerate classifies the degenerate orders
// k = 1, 2 as group schemes; verify_all chains every check in the library
// over a manifest and never throws - failures and undecidable zero tests
// come back as reports.

#include <map>
#include <string>
#include <vector>

#include "spinkit/hadamard.hpp"
#include "spinkit/models.hpp"
#include "spinkit/nomura.hpp"
#include "spinkit/report.hpp"
#include "spinkit/scalar.hpp"
#include "spinkit/schemes.hpp"

namespace spinkit {

// Pass iff
//   (i)   the component basis of N(W) is exactly the relation family
//         {A0..A4} of the Hadamard graph of h,
//   (ii)  the component basis of N(W') is exactly {A0, A1p, A2, A3p, A4}
//         of the directed variant,
//   (iii) every basis matrix of either algebra passes membership_test
//         (the eigenvector definition, independent of the component
//         construction), and
//   (iv)  the block coefficients {xi, -u^-1, -xi, u^3} are pairwise
//         distinct nonzero scalars.
// Requires h.order() == ctx.k >= 4 (ConstraintViolation otherwise).
// Propagates AmbiguousEdge / AmbiguousZero from undecidable zero tests.
VerificationReport verify_theorem(const HadamardMatrix& h,
                                  const ScalarContext& ctx);

// Classification of the two algebras at the degenerate orders, over the
// exact cyclotomic contexts (k = 1: u = zeta_24^2; k = 2: u = zeta_16).
//
// k = 1: both algebras are 4-dimensional and thin.  N(W') matches the
// group scheme of Z/4 after a vertex relabeling; N(W) matches the group
// scheme of the Klein four-group (Z/2)^2.  The two algebras are therefore
// NOT equal (nor isomorphic): their partitions differ in how the four
// antipodal 2-subsets pair up, and the check asserts that difference.
//
// k = 2: both algebras are 8-dimensional Bose-Mesner algebras whose
// intersection tensors match the group scheme of Z/8 up to class
// relabeling, so the two algebras are isomorphic (but again distinct as
// matrix algebras; the report records both facts).
VerificationReport verify_degenerate(int k, int omega_exp = 0, int xi_exp = 1);

// ---------------------------------------------------------------------------
// Manifest runner

struct RunManifest {
  std::vector<int> ks = {1, 2, 4, 8};
  // Optional Hadamard text file per order; orders without an entry use the
  // built-in constructions (Sylvester for powers of two, Paley for q + 1).
  std::map<int, std::string> hadamard_files;
  int omega_exp = 0;
  int xi_exp = 1;
  // "" = per-order default backend; otherwise "cyclotomic",
  // "laurent_hybrid" or "numeric".
  std::string backend;
  double tolerance = 1e-8;
  int precision = 30;
  // When nonempty, one canonical JSON file per report is written here.
  std::string out_dir;
};

// The context verify_all uses for a given order: the default exact context
// specialized to the manifest's omega, xi, tolerance and precision, or the
// requested backend override.  Throws on unsatisfiable combinations.
ScalarContext context_for(int k, const RunManifest& m);

// The Hadamard matrix verify_all uses for an order: the manifest's file
// when one is given (its order must match), otherwise Sylvester for powers
// of two and Paley for prime-plus-one orders.
HadamardMatrix hadamard_for(int k, const RunManifest& m);

// Runs, for every order in the manifest: Hadamard validation; type II and
// type III checks for W and W'; the three gauge identities; scheme axioms
// for both relation families; the two-fiber product rule; the algebraic
// automorphism and its orbit fusion; the four structure lemmas (exhaustive
// for k <= 4, 1000 samples otherwise); then the main identification
// (k >= 4) or the degenerate classification (k = 1, 2).  Appends a summary
// report.  Never throws: exceptions become Fail or Ambiguous reports, and
// a failed Hadamard validation skips the dependent checks for that order.
std::vector<VerificationReport> verify_all(const RunManifest& m);

// 0 = all pass, 1 = any fail, 2 = ambiguous but no fail.
int exit_code_for(const std::vector<VerificationReport>& reports);

}  // namespace spinkit
