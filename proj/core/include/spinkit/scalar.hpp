#pragma once

// Exact scalar arithmetic for spin-model entries.
//
// Model entries live in the ring Q(z8)[u, u^-1] subject to the relation
//   u^8 - (k-2) u^4 + 1 = 0,
// which encodes (u^2 + u^-2)^2 = k for the loop parameter of a model of
// order 4k.  z8 denotes a fixed primitive 8th root of unity.
//
// Three interchangeable representations are provided:
//   * CycScalar     - element of a cyclotomic field Q(zeta_N), N in {8,16,24},
//                     as a rational vector over the power basis mod Phi_N.
//                     Zero tests are exact.  Used when u itself is a root of
//                     unity (u = 1, or u = zeta_16 / zeta_24 powers).
//   * LaurentScalar - sum of terms c * z8^a * u^m reduced to the canonical
//                     window m in [-4,3] via the defining relation.  Exact
//                     ring arithmetic.  In the formal mode (u is the image of
//                     the indeterminate in the quotient ring itself) the
//                     canonical form decides zero tests outright; under a
//                     numeric root, zero tests fall back to high-precision
//                     evaluation at the dominant real root when the canonical
//                     form is nonzero (it could still vanish at the root if
//                     the minimal polynomial of u divides properly).
//   * NumericScalar - complex<double>, tolerance-based comparisons only.
//
// The formal mode matters at k = 4, where the relation degenerates to
// (u^4 - 1)^2: every numeric u has u^4 = 1, but in the quotient ring
// u^4 - 1 is a nonzero nilpotent.  The five-class component structure of
// the order-16 models exists exactly in the ring; any evaluation collapses
// it.  k = 4 therefore defaults to the formal mode.
//
// A ScalarContext fixes k, the interpretation of u, the model parameters
// omega (4th root of unity) and xi (primitive 8th root), the backend, and
// the numeric tolerance/precision used by undecided zero tests.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spinkit/error.hpp"

namespace spinkit {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ZeroStatus { Zero, NonZero, Ambiguous };
enum class UMode { Unit, Cyclotomic, RealDominant, Formal, Numeric };
enum class BackendKind { Cyclotomic, LaurentHybrid, Numeric };

const char* to_string(ZeroStatus s);
const char* to_string(UMode m);
const char* to_string(BackendKind b);

// ---------------------------------------------------------------------------
// Monomial: c * z8^a * u^m with c a nonzero rational, a in 0..3.
// The u exponent is kept unreduced; contexts fold it into their
// representation on embedding.
struct Monomial {
  Rational coeff = 1;
  int z8 = 0;
  int upow = 0;

  Monomial() = default;
  Monomial(Rational c, int a, int m);

  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  // Complex conjugate.  |u| = 1 modes send u to u^-1; the real dominant
  // root is fixed by conjugation.
  Monomial conj(UMode mode) const;
  Monomial negated() const;
  bool operator==(const Monomial& o) const = default;
};

// ---------------------------------------------------------------------------
// CycScalar: element of Q(zeta_N) over the power basis 1, zeta, ..,
// zeta^(phi(N)-1) reduced mod the cyclotomic polynomial Phi_N.
class CycScalar {
 public:
  CycScalar() : CycScalar(8) {}
  explicit CycScalar(int modulus);                       // zero
  CycScalar(int modulus, std::vector<Rational> coeffs);  // size = phi(N)

  static CycScalar from_rational(int modulus, const Rational& c);
  // c * zeta_N^t, any integer t.
  static CycScalar root_power(int modulus, long t, const Rational& c = 1);
  static int degree_of(int modulus);  // phi(N); throws on unsupported N

  int modulus() const { return modulus_; }
  int degree() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  CycScalar operator+(const CycScalar& o) const;
  CycScalar operator-(const CycScalar& o) const;
  CycScalar operator*(const CycScalar& o) const;
  CycScalar operator-() const;
  CycScalar conj() const;
  CycScalar inverse() const;  // extended Euclid against Phi_N

  bool is_zero_exact() const;
  bool operator==(const CycScalar& o) const;
  std::complex<double> to_complex() const;

  // If the value equals c * zeta_N^t for a single power, return (c, t).
  std::optional<std::pair<Rational, int>> as_root_multiple() const;

 private:
  int modulus_;
  std::vector<Rational> coeffs_;
  void check_same(const CycScalar& o) const;
};

// ---------------------------------------------------------------------------
// LaurentScalar: canonical-window Laurent polynomial in u over Q(z8).
// Terms are keyed by (m, a); the key order doubles as the serialization
// order.  The canonical window is m in [-4, 3]; higher or lower powers are
// rewritten with u^(+-8) = (k-2) u^(+-4) - 1.
class LaurentScalar {
 public:
  using TermMap = std::map<std::pair<int, int>, Rational>;

  explicit LaurentScalar(int k) : k_(k) {}
  static LaurentScalar from_monomial(int k, const Monomial& m);

  int kparam() const { return k_; }
  const TermMap& terms() const { return terms_; }

  LaurentScalar operator+(const LaurentScalar& o) const;
  LaurentScalar operator-(const LaurentScalar& o) const;
  LaurentScalar operator*(const LaurentScalar& o) const;
  LaurentScalar operator-() const;
  // z8 -> z8^-1; u -> u^-1 when k <= 4 (every embedding of u lies on the
  // unit circle), u fixed when k >= 5 (the root in use is real).
  LaurentScalar conj() const;
  LaurentScalar inverse() const;  // single-term values only

  bool is_zero_exact() const { return terms_.empty(); }
  bool operator==(const LaurentScalar& o) const;

  // Add c * z8^a * u^m (a, m unrestricted) and restore the canonical window.
  void add_term(const Rational& c, int a, int m);

 private:
  int k_;
  TermMap terms_;
  void check_same(const LaurentScalar& o) const;
  void reduce_window();
};

struct NumericScalar {
  std::complex<double> value{0.0, 0.0};
  bool operator==(const NumericScalar& o) const = default;
};

// ---------------------------------------------------------------------------
// Scalar: tagged union over the three representations plus an untyped exact
// zero (the additive identity of every backend; also the default value of
// matrix entries).
class Scalar {
 public:
  Scalar() = default;  // untyped zero
  Scalar(CycScalar v) : rep_(std::move(v)) {}
  Scalar(LaurentScalar v) : rep_(std::move(v)) {}
  Scalar(NumericScalar v) : rep_(v) {}

  bool is_untyped_zero() const { return rep_.index() == 0; }
  bool is_cyc() const { return rep_.index() == 1; }
  bool is_laurent() const { return rep_.index() == 2; }
  bool is_numeric() const { return rep_.index() == 3; }

  const CycScalar& as_cyc() const;
  const LaurentScalar& as_laurent() const;
  const NumericScalar& as_numeric() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);

  // Structural equality of canonical forms (untyped zero compares equal to a
  // representation whose canonical form is zero).
  bool operator==(const Scalar& o) const;

  friend Scalar conj(const Scalar& x);        // uses representation's own mode
  friend Scalar inverse(const Scalar& x);

 private:
  std::variant<std::monostate, CycScalar, LaurentScalar, NumericScalar> rep_;
};

Scalar conj(const Scalar& x);
Scalar inverse(const Scalar& x);

// ---------------------------------------------------------------------------
// ScalarContext
struct ScalarContext {
  int k = 4;
  UMode u_mode = UMode::Unit;
  BackendKind backend = BackendKind::Cyclotomic;

  // UMode::Cyclotomic: u = zeta_N^e.
  int cyc_modulus = 8;
  int cyc_exponent = 0;
  // UMode::Numeric: explicit value of u.
  std::complex<double> u_value{1.0, 0.0};

  int omega_exp = 0;  // omega = i^o   (i = z8^2), o in 0..3
  int xi_exp = 1;     // xi = z8^e, e odd => xi^4 = -1

  double tolerance = 1e-8;
  int precision = 30;  // decimal digits for undecided zero tests (max 95)

  // Cyclotomic-backend parameters: modulus N and the exponent e_u with
  // u = zeta_N^(e_u).  Unit mode maps to N = 8, e_u = 0.
  int modulus() const;
  int u_root_exponent() const;

  Monomial omega() const;  // omega as a monomial (z8 power)
  Monomial xi() const;
  Monomial loop_i() const;  // the 4th root -xi^2 used by normalized models

  Scalar zero() const;
  Scalar one() const;
  Scalar from_rational(const Rational& c) const;
  Scalar from_int(long v) const { return from_rational(Rational(v)); }
  Scalar embed(const Monomial& m) const;

  std::string backend_name() const;
};

// Validates parameters: (u^2 + u^-2)^2 = k must hold exactly (within
// tolerance for numeric u), xi must be a primitive 8th root, the backend
// must be able to represent the chosen u mode.
ScalarContext make_context(int k, UMode mode, BackendKind backend,
                           int cyc_modulus = 8, int cyc_exponent = 0,
                           std::complex<double> u_value = {1.0, 0.0},
                           int omega_exp = 0, int xi_exp = 1,
                           double tolerance = 1e-8, int precision = 30);

// Preferred exact context for a given k: k = 1 -> u = zeta_24^2;
// k = 2 -> u = zeta_16; k = 3 -> u = zeta_24; k = 4 -> formal quotient
// ring (the relation factors as (u^4 - 1)^2 there, so no evaluation is
// faithful); k >= 5 -> dominant real root with the hybrid Laurent backend.
ScalarContext default_context(int k);

// Three-valued zero test.  Exact backends never return Ambiguous; the
// hybrid backend decides by the canonical form alone in the formal mode,
// and otherwise returns Ambiguous when the canonical form is nonzero but
// numeric evaluation at the dominant root is below tolerance.
ZeroStatus is_zero(const Scalar& x, const ScalarContext& ctx);

std::complex<double> to_complex(const Scalar& x, const ScalarContext& ctx);

// Largest real root of u^8 - (k-2) u^4 + 1 (k >= 4), in double precision.
double dominant_root_value(int k);

// If x equals a single monomial c * z8^a * u^m in the context's
// representation, produce it (used to build ratio tables).
std::optional<Monomial> extract_monomial(const Scalar& x,
                                         const ScalarContext& ctx);

// ---------------------------------------------------------------------------
// Serialization.  Canonical text form: '+'-joined terms "c*z8^a*u^m" sorted
// by (m, a), with exact rational c ("p" or "p/q"); the zero scalar is "0".
// parse_scalar accepts unreduced exponents; format_scalar always emits the
// canonical form, so format(parse(s)) == s for canonical s.
struct ScalarTerm {
  Rational coeff;
  int z8 = 0;
  int upow = 0;
  bool operator==(const ScalarTerm& o) const = default;
};

std::vector<ScalarTerm> to_terms(const Scalar& x, const ScalarContext& ctx);
std::string format_scalar(const Scalar& x, const ScalarContext& ctx);
Scalar parse_scalar(const std::string& text, const ScalarContext& ctx);

}  // namespace spinkit
