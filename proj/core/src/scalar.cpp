#include "spinkit/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace spinkit {

namespace mp = boost::multiprecision;
using Float50 = mp::cpp_bin_float_50;
using Float100 = mp::cpp_bin_float_100;

const char* to_string(ErrKind kind) {
  switch (kind) {
    case ErrKind::ConstraintViolation: return "constraint violation";
    case ErrKind::IncompatibleMode: return "incompatible mode";
    case ErrKind::DivisionByZero: return "division by zero";
    case ErrKind::NonInvertible: return "non-invertible";
    case ErrKind::ShapeMismatch: return "shape mismatch";
    case ErrKind::SizeLimit: return "size limit";
    case ErrKind::BadPrime: return "bad prime";
    case ErrKind::ParseError: return "parse error";
    case ErrKind::OrderMismatch: return "order mismatch";
    case ErrKind::NonInvertibleEntry: return "non-invertible entry";
    case ErrKind::AmbiguousZero: return "ambiguous zero";
    case ErrKind::AmbiguousEdge: return "ambiguous edge";
    case ErrKind::DefinitionMismatch: return "definition mismatch";
    case ErrKind::FusionMismatch: return "fusion mismatch";
    case ErrKind::IoError: return "io error";
    case ErrKind::Internal: return "internal error";
  }
  return "unknown error";
}

const char* to_string(ZeroStatus s) {
  switch (s) {
    case ZeroStatus::Zero: return "ZERO";
    case ZeroStatus::NonZero: return "NONZERO";
    case ZeroStatus::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

const char* to_string(UMode m) {
  switch (m) {
    case UMode::Unit: return "unit";
    case UMode::Cyclotomic: return "cyclotomic";
    case UMode::RealDominant: return "real_dominant";
    case UMode::Formal: return "formal";
    case UMode::Numeric: return "numeric";
  }
  return "?";
}

const char* to_string(BackendKind b) {
  switch (b) {
    case BackendKind::Cyclotomic: return "cyclotomic";
    case BackendKind::LaurentHybrid: return "laurent_hybrid";
    case BackendKind::Numeric: return "numeric";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Monomial

namespace {
// Fold a z8 exponent into 0..3, flipping the coefficient sign when the
// folded power crosses z8^4 = -1.
void fold_z8(int& a, Rational& c) {
  a = ((a % 8) + 8) % 8;
  if (a >= 4) {
    a -= 4;
    c = -c;
  }
}
}  // namespace

Monomial::Monomial(Rational c, int a, int m) : coeff(std::move(c)), z8(a), upow(m) {
  if (coeff == 0) throw Error(ErrKind::Internal, "monomial with zero coefficient");
  fold_z8(z8, coeff);
}

Monomial Monomial::operator*(const Monomial& o) const {
  return Monomial(coeff * o.coeff, z8 + o.z8, upow + o.upow);
}

Monomial Monomial::inverse() const {
  return Monomial(Rational(1) / coeff, -z8, -upow);
}

Monomial Monomial::conj(UMode mode) const {
  if (mode == UMode::Numeric)
    throw Error(ErrKind::IncompatibleMode, "monomial conjugation needs a symbolic u mode");
  int m = (mode == UMode::RealDominant) ? upow : -upow;
  return Monomial(coeff, -z8, m);
}

Monomial Monomial::negated() const { return Monomial(-coeff, z8, upow); }

// ---------------------------------------------------------------------------
// Cyclotomic machinery.  Power tables reduce zeta_N^t (t = 0..N-1) to the
// power basis; coefficients stay in {-1, 0, 1} for N in {8, 16, 24}.

namespace {

struct CycTables {
  int degree = 0;
  // powers[t][i]: coefficient of zeta^i in the reduction of zeta^t.
  std::vector<std::vector<int>> powers;
};

CycTables build_tables(int modulus) {
  int deg;
  std::vector<int> top;  // reduction of x^deg mod Phi_N
  switch (modulus) {
    case 8:  deg = 4; top = {-1, 0, 0, 0}; break;                    // x^4 = -1
    case 16: deg = 8; top = {-1, 0, 0, 0, 0, 0, 0, 0}; break;        // x^8 = -1
    case 24: deg = 8; top = {-1, 0, 0, 0, 1, 0, 0, 0}; break;        // x^8 = x^4 - 1
    default:
      throw Error(ErrKind::ConstraintViolation,
                  "cyclotomic modulus must be 8, 16, or 24");
  }
  CycTables t;
  t.degree = deg;
  t.powers.assign(modulus, std::vector<int>(deg, 0));
  t.powers[0][0] = 1;
  for (int p = 1; p < modulus; ++p) {
    const auto& prev = t.powers[p - 1];
    auto& cur = t.powers[p];
    int carry = prev[deg - 1];
    for (int i = deg - 1; i >= 1; --i) cur[i] = prev[i - 1];
    cur[0] = 0;
    if (carry != 0)
      for (int i = 0; i < deg; ++i) cur[i] += carry * top[i];
  }
  return t;
}

const CycTables& tables_for(int modulus) {
  static const CycTables t8 = build_tables(8);
  static const CycTables t16 = build_tables(16);
  static const CycTables t24 = build_tables(24);
  switch (modulus) {
    case 8: return t8;
    case 16: return t16;
    case 24: return t24;
    default:
      throw Error(ErrKind::ConstraintViolation,
                  "cyclotomic modulus must be 8, 16, or 24");
  }
}

}  // namespace

int CycScalar::degree_of(int modulus) { return tables_for(modulus).degree; }

CycScalar::CycScalar(int modulus) : modulus_(modulus) {
  coeffs_.assign(degree_of(modulus), Rational(0));
}

CycScalar::CycScalar(int modulus, std::vector<Rational> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != degree_of(modulus))
    throw Error(ErrKind::ShapeMismatch, "cyclotomic coefficient vector has wrong length");
}

CycScalar CycScalar::from_rational(int modulus, const Rational& c) {
  CycScalar r(modulus);
  r.coeffs_[0] = c;
  return r;
}

CycScalar CycScalar::root_power(int modulus, long t, const Rational& c) {
  const auto& tab = tables_for(modulus);
  long tm = ((t % modulus) + modulus) % modulus;
  CycScalar r(modulus);
  const auto& pat = tab.powers[static_cast<size_t>(tm)];
  for (int i = 0; i < tab.degree; ++i)
    if (pat[i] != 0) r.coeffs_[i] = c * pat[i];
  return r;
}

void CycScalar::check_same(const CycScalar& o) const {
  if (modulus_ != o.modulus_)
    throw Error(ErrKind::Internal, "mixed cyclotomic moduli");
}

CycScalar CycScalar::operator+(const CycScalar& o) const {
  check_same(o);
  CycScalar r(modulus_);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
  return r;
}

CycScalar CycScalar::operator-(const CycScalar& o) const {
  check_same(o);
  CycScalar r(modulus_);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
  return r;
}

CycScalar CycScalar::operator-() const {
  CycScalar r(modulus_);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
  return r;
}

CycScalar CycScalar::operator*(const CycScalar& o) const {
  check_same(o);
  const auto& tab = tables_for(modulus_);
  int deg = tab.degree;
  std::vector<Rational> conv(2 * deg - 1, Rational(0));
  for (int i = 0; i < deg; ++i) {
    if (coeffs_[i] == 0) continue;
    for (int j = 0; j < deg; ++j) {
      if (o.coeffs_[j] == 0) continue;
      conv[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  CycScalar r(modulus_);
  for (int i = 0; i < deg; ++i) r.coeffs_[i] = conv[i];
  for (int i = deg; i < 2 * deg - 1; ++i) {
    if (conv[i] == 0) continue;
    const auto& pat = tab.powers[i];  // i < 2*deg-1 <= N-1 for supported moduli
    for (int j = 0; j < deg; ++j)
      if (pat[j] != 0) r.coeffs_[j] += conv[i] * pat[j];
  }
  return r;
}

CycScalar CycScalar::conj() const {
  const auto& tab = tables_for(modulus_);
  CycScalar r(modulus_);
  for (int t = 0; t < tab.degree; ++t) {
    if (coeffs_[t] == 0) continue;
    int tc = (modulus_ - t) % modulus_;
    const auto& pat = tab.powers[tc];
    for (int j = 0; j < tab.degree; ++j)
      if (pat[j] != 0) r.coeffs_[j] += coeffs_[t] * pat[j];
  }
  return r;
}

namespace {

using Poly = std::vector<Rational>;  // coefficients, low degree first

int poly_deg(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

// a = q*b + r with deg r < deg b.
void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
  int db = poly_deg(b);
  if (db < 0) throw Error(ErrKind::DivisionByZero, "polynomial division by zero");
  q.assign(a.size(), Rational(0));
  for (int da = poly_deg(a); da >= db; da = poly_deg(a)) {
    Rational f = a[da] / b[db];
    q[da - db] = f;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    a[da] = 0;  // guard against residual round-off (exact here, but explicit)
  }
  r = std::move(a);
}

Poly poly_mul(const Poly& a, const Poly& b) {
  int da = poly_deg(a), db = poly_deg(b);
  if (da < 0 || db < 0) return Poly{Rational(0)};
  Poly c(da + db + 1, Rational(0));
  for (int i = 0; i <= da; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j <= db; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

Poly phi_poly(int modulus) {
  switch (modulus) {
    case 8:  return Poly{1, 0, 0, 0, 1};                       // x^4 + 1
    case 16: return Poly{1, 0, 0, 0, 0, 0, 0, 0, 1};           // x^8 + 1
    case 24: return Poly{1, 0, 0, 0, -1, 0, 0, 0, 1};          // x^8 - x^4 + 1
    default:
      throw Error(ErrKind::ConstraintViolation, "unsupported cyclotomic modulus");
  }
}

}  // namespace

CycScalar CycScalar::inverse() const {
  if (is_zero_exact()) throw Error(ErrKind::DivisionByZero, "inverse of zero");
  // Extended Euclid for s with s*x = gcd(x, Phi_N) mod Phi_N; Phi_N is
  // irreducible so the gcd is a nonzero constant.
  Poly r0(coeffs_.begin(), coeffs_.end());
  Poly r1 = phi_poly(modulus_);
  Poly s0{Rational(1)}, s1{Rational(0)};
  while (poly_deg(r1) >= 0) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  int dg = poly_deg(r0);
  if (dg != 0)
    throw Error(ErrKind::Internal, "cyclotomic gcd is not a unit");
  Rational g = r0[0];
  CycScalar out(modulus_);
  for (int i = 0; i < degree() && i < static_cast<int>(s0.size()); ++i)
    out.coeffs_[i] = s0[i] / g;
  return out;
}

bool CycScalar::is_zero_exact() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycScalar::operator==(const CycScalar& o) const {
  return modulus_ == o.modulus_ && coeffs_ == o.coeffs_;
}

std::complex<double> CycScalar::to_complex() const {
  std::complex<double> acc{0.0, 0.0};
  const double tau = 2.0 * 3.14159265358979323846;
  for (int t = 0; t < degree(); ++t) {
    if (coeffs_[t] == 0) continue;
    double c = coeffs_[t].convert_to<double>();
    double ang = tau * t / modulus_;
    acc += c * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return acc;
}

std::optional<std::pair<Rational, int>> CycScalar::as_root_multiple() const {
  if (is_zero_exact()) return std::nullopt;
  const auto& tab = tables_for(modulus_);
  for (int t = 0; t < modulus_; ++t) {
    const auto& pat = tab.powers[t];
    int lead = -1;
    for (int i = 0; i < tab.degree; ++i)
      if (pat[i] != 0) { lead = i; break; }
    if (lead < 0) continue;
    Rational c = coeffs_[lead] / pat[lead];
    if (c == 0) continue;
    bool match = true;
    for (int i = 0; i < tab.degree; ++i) {
      if (coeffs_[i] != c * pat[i]) { match = false; break; }
    }
    if (match) return std::make_pair(c, t);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// LaurentScalar

LaurentScalar LaurentScalar::from_monomial(int k, const Monomial& m) {
  LaurentScalar r(k);
  r.add_term(m.coeff, m.z8, m.upow);
  return r;
}

void LaurentScalar::check_same(const LaurentScalar& o) const {
  if (k_ != o.k_) throw Error(ErrKind::Internal, "mixed laurent k parameters");
}

namespace {
// Canonical u-exponent window [-4, 3]; u^(+-8) = (k-2) u^(+-4) - 1.
void laurent_insert(LaurentScalar::TermMap& terms, int k, Rational c, int a, int m) {
  if (c == 0) return;
  if (m > 3) {
    laurent_insert(terms, k, c * (k - 2), a, m - 4);
    laurent_insert(terms, k, -c, a, m - 8);
    return;
  }
  if (m < -4) {
    laurent_insert(terms, k, c * (k - 2), a, m + 4);
    laurent_insert(terms, k, -c, a, m + 8);
    return;
  }
  auto key = std::make_pair(m, a);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}
}  // namespace

void LaurentScalar::add_term(const Rational& c, int a, int m) {
  Rational cc = c;
  int aa = a;
  fold_z8(aa, cc);
  laurent_insert(terms_, k_, std::move(cc), aa, m);
}

LaurentScalar LaurentScalar::operator+(const LaurentScalar& o) const {
  check_same(o);
  LaurentScalar r = *this;
  for (const auto& [key, c] : o.terms_) laurent_insert(r.terms_, k_, c, key.second, key.first);
  return r;
}

LaurentScalar LaurentScalar::operator-(const LaurentScalar& o) const {
  check_same(o);
  LaurentScalar r = *this;
  for (const auto& [key, c] : o.terms_) laurent_insert(r.terms_, k_, -c, key.second, key.first);
  return r;
}

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar r(k_);
  for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
  return r;
}

LaurentScalar LaurentScalar::operator*(const LaurentScalar& o) const {
  check_same(o);
  LaurentScalar r(k_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      Rational c = c1 * c2;
      int a = k1.second + k2.second;
      fold_z8(a, c);
      laurent_insert(r.terms_, k_, std::move(c), a, k1.first + k2.first);
    }
  return r;
}

LaurentScalar LaurentScalar::conj() const {
  // For k <= 4 every embedding of u is a root of unity, so conjugation
  // inverts u; for k >= 5 the root in use is real and u stays fixed.
  LaurentScalar r(k_);
  const int s = (k_ <= 4) ? -1 : 1;
  for (const auto& [key, c] : terms_) r.add_term(c, -key.second, s * key.first);
  return r;
}

LaurentScalar LaurentScalar::inverse() const {
  if (terms_.empty()) throw Error(ErrKind::DivisionByZero, "inverse of zero");
  if (terms_.size() != 1)
    throw Error(ErrKind::NonInvertible,
                "laurent inversion is only defined for single-term values");
  const auto& [key, c] = *terms_.begin();
  LaurentScalar r(k_);
  r.add_term(Rational(1) / c, -key.second, -key.first);
  return r;
}

bool LaurentScalar::operator==(const LaurentScalar& o) const {
  return k_ == o.k_ && terms_ == o.terms_;
}

// ---------------------------------------------------------------------------
// Scalar

const CycScalar& Scalar::as_cyc() const {
  if (!is_cyc()) throw Error(ErrKind::Internal, "scalar is not cyclotomic");
  return std::get<CycScalar>(rep_);
}
const LaurentScalar& Scalar::as_laurent() const {
  if (!is_laurent()) throw Error(ErrKind::Internal, "scalar is not laurent");
  return std::get<LaurentScalar>(rep_);
}
const NumericScalar& Scalar::as_numeric() const {
  if (!is_numeric()) throw Error(ErrKind::Internal, "scalar is not numeric");
  return std::get<NumericScalar>(rep_);
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_untyped_zero()) return o;
  if (o.is_untyped_zero()) return *this;
  if (rep_.index() != o.rep_.index())
    throw Error(ErrKind::Internal, "mixed scalar representations");
  if (is_cyc()) return Scalar(as_cyc() + o.as_cyc());
  if (is_laurent()) return Scalar(as_laurent() + o.as_laurent());
  return Scalar(NumericScalar{as_numeric().value + o.as_numeric().value});
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  if (is_untyped_zero()) return Scalar();
  if (is_cyc()) return Scalar(-as_cyc());
  if (is_laurent()) return Scalar(-as_laurent());
  return Scalar(NumericScalar{-as_numeric().value});
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_untyped_zero() || o.is_untyped_zero()) return Scalar();
  if (rep_.index() != o.rep_.index())
    throw Error(ErrKind::Internal, "mixed scalar representations");
  if (is_cyc()) return Scalar(as_cyc() * o.as_cyc());
  if (is_laurent()) return Scalar(as_laurent() * o.as_laurent());
  return Scalar(NumericScalar{as_numeric().value * o.as_numeric().value});
}

Scalar& Scalar::operator+=(const Scalar& o) {
  *this = *this + o;
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  if (is_untyped_zero() || o.is_untyped_zero()) {
    const Scalar& other = is_untyped_zero() ? o : *this;
    if (other.is_untyped_zero()) return true;
    if (other.is_cyc()) return other.as_cyc().is_zero_exact();
    if (other.is_laurent()) return other.as_laurent().is_zero_exact();
    return other.as_numeric().value == std::complex<double>(0.0, 0.0);
  }
  if (rep_.index() != o.rep_.index())
    throw Error(ErrKind::Internal, "comparing mixed scalar representations");
  if (is_cyc()) return as_cyc() == o.as_cyc();
  if (is_laurent()) return as_laurent() == o.as_laurent();
  return as_numeric() == o.as_numeric();
}

Scalar conj(const Scalar& x) {
  if (x.is_untyped_zero()) return Scalar();
  if (x.is_cyc()) return Scalar(x.as_cyc().conj());
  if (x.is_laurent()) return Scalar(x.as_laurent().conj());
  return Scalar(NumericScalar{std::conj(x.as_numeric().value)});
}

Scalar inverse(const Scalar& x) {
  if (x.is_untyped_zero()) throw Error(ErrKind::DivisionByZero, "inverse of zero");
  if (x.is_cyc()) return Scalar(x.as_cyc().inverse());
  if (x.is_laurent()) return Scalar(x.as_laurent().inverse());
  auto v = x.as_numeric().value;
  if (v == std::complex<double>(0.0, 0.0))
    throw Error(ErrKind::DivisionByZero, "inverse of zero");
  return Scalar(NumericScalar{1.0 / v});
}

// ---------------------------------------------------------------------------
// Dominant-root evaluation

namespace {

template <class F>
F root_poly(const F& u, int k) {
  F u2 = u * u;
  F u4 = u2 * u2;
  return u4 * u4 - F(k - 2) * u4 + F(1);
}

// Largest real root of u^8 - (k-2) u^4 + 1, k >= 4, by bisection.
template <class F>
F dominant_root(int k) {
  static std::map<int, F> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  F root;
  if (k == 4) {
    root = F(1);  // relation degenerates to (u^4 - 1)^2
  } else {
    F lo(1), hi(2);
    while (root_poly(hi, k) <= 0) hi *= 2;
    const F eps = std::numeric_limits<F>::epsilon() * 8;
    while (hi - lo > eps * hi) {
      F mid = (lo + hi) / 2;
      if (root_poly(mid, k) < 0)
        lo = mid;
      else
        hi = mid;
    }
    root = (lo + hi) / 2;
  }
  cache.emplace(k, root);
  return root;
}

template <class F>
F rational_to(const Rational& r) {
  return numerator(r).convert_to<F>() / denominator(r).convert_to<F>();
}

// |value at dominant root| <= tol * #terms  => Ambiguous, else NonZero.
template <class F>
ZeroStatus laurent_numeric_status(const LaurentScalar& x, double tol) {
  const F u = dominant_root<F>(x.kparam());
  const F r2 = sqrt(F(2)) / 2;
  F re(0), im(0);
  for (const auto& [key, c] : x.terms()) {
    int m = key.first, a = key.second;
    F t = rational_to<F>(c) * pow(u, m);
    switch (a) {
      case 0: re += t; break;
      case 1: re += t * r2; im += t * r2; break;
      case 2: im += t; break;
      case 3: re -= t * r2; im += t * r2; break;
      default: throw Error(ErrKind::Internal, "non-canonical z8 exponent");
    }
  }
  F mag2 = re * re + im * im;
  F thr = F(tol) * F(static_cast<double>(x.terms().size()));
  return mag2 > thr * thr ? ZeroStatus::NonZero : ZeroStatus::Ambiguous;
}

}  // namespace

double dominant_root_value(int k) {
  if (k < 4)
    throw Error(ErrKind::ConstraintViolation,
                "u^8 - (k-2)u^4 + 1 has no real root >= 1 unless k >= 4");
  return dominant_root<Float50>(k).convert_to<double>();
}

// ---------------------------------------------------------------------------
// ScalarContext

int ScalarContext::modulus() const {
  switch (u_mode) {
    case UMode::Unit: return 8;
    case UMode::Cyclotomic: return cyc_modulus;
    default:
      throw Error(ErrKind::IncompatibleMode, "u is not a root of unity in this context");
  }
}

int ScalarContext::u_root_exponent() const {
  switch (u_mode) {
    case UMode::Unit: return 0;
    case UMode::Cyclotomic: return cyc_exponent;
    default:
      throw Error(ErrKind::IncompatibleMode, "u is not a root of unity in this context");
  }
}

Monomial ScalarContext::omega() const { return Monomial(1, 2 * omega_exp, 0); }
Monomial ScalarContext::xi() const { return Monomial(1, xi_exp, 0); }
Monomial ScalarContext::loop_i() const { return Monomial(-1, 2 * xi_exp, 0); }

Scalar ScalarContext::zero() const {
  switch (backend) {
    case BackendKind::Cyclotomic: return Scalar(CycScalar(modulus()));
    case BackendKind::LaurentHybrid: return Scalar(LaurentScalar(k));
    case BackendKind::Numeric: return Scalar(NumericScalar{});
  }
  throw Error(ErrKind::Internal, "unknown backend");
}

Scalar ScalarContext::from_rational(const Rational& c) const {
  switch (backend) {
    case BackendKind::Cyclotomic: return Scalar(CycScalar::from_rational(modulus(), c));
    case BackendKind::LaurentHybrid: {
      LaurentScalar r(k);
      r.add_term(c, 0, 0);
      return Scalar(r);
    }
    case BackendKind::Numeric:
      return Scalar(NumericScalar{std::complex<double>(c.convert_to<double>(), 0.0)});
  }
  throw Error(ErrKind::Internal, "unknown backend");
}

Scalar ScalarContext::one() const { return from_rational(1); }

namespace {
std::complex<double> numeric_u(const ScalarContext& ctx) {
  const double tau = 2.0 * 3.14159265358979323846;
  switch (ctx.u_mode) {
    case UMode::Unit: return {1.0, 0.0};
    case UMode::Cyclotomic: {
      double ang = tau * ctx.cyc_exponent / ctx.cyc_modulus;
      return {std::cos(ang), std::sin(ang)};
    }
    case UMode::RealDominant: return {dominant_root_value(ctx.k), 0.0};
    case UMode::Formal:
      throw Error(ErrKind::IncompatibleMode, "formal u has no numeric value");
    case UMode::Numeric: return ctx.u_value;
  }
  throw Error(ErrKind::Internal, "unknown u mode");
}

std::complex<double> monomial_to_complex(const Monomial& m, const ScalarContext& ctx) {
  const double tau = 2.0 * 3.14159265358979323846;
  double ang = tau * m.z8 / 8.0;
  std::complex<double> z8{std::cos(ang), std::sin(ang)};
  std::complex<double> u = numeric_u(ctx);
  return m.coeff.convert_to<double>() * z8 * std::pow(u, m.upow);
}
}  // namespace

Scalar ScalarContext::embed(const Monomial& m) const {
  switch (backend) {
    case BackendKind::Cyclotomic: {
      int n = modulus();
      long t = static_cast<long>(n / 8) * m.z8 +
               static_cast<long>(u_root_exponent()) * m.upow;
      return Scalar(CycScalar::root_power(n, t, m.coeff));
    }
    case BackendKind::LaurentHybrid:
      return Scalar(LaurentScalar::from_monomial(k, m));
    case BackendKind::Numeric:
      return Scalar(NumericScalar{monomial_to_complex(m, *this)});
  }
  throw Error(ErrKind::Internal, "unknown backend");
}

std::string ScalarContext::backend_name() const { return to_string(backend); }

ScalarContext make_context(int k, UMode mode, BackendKind backend,
                           int cyc_modulus, int cyc_exponent,
                           std::complex<double> u_value, int omega_exp,
                           int xi_exp, double tolerance, int precision) {
  if (k < 1) throw Error(ErrKind::ConstraintViolation, "k must be >= 1");
  if (omega_exp < 0 || omega_exp > 3)
    throw Error(ErrKind::ConstraintViolation, "omega must be i^o with o in 0..3");
  xi_exp = ((xi_exp % 8) + 8) % 8;
  if (xi_exp % 2 == 0)
    throw Error(ErrKind::ConstraintViolation,
                "xi^4 = -1 requires an odd power of z8 (xi is a primitive 8th root)");
  if (!(tolerance > 0))
    throw Error(ErrKind::ConstraintViolation, "tolerance must be positive");
  if (precision < 1 || precision > 95)
    throw Error(ErrKind::ConstraintViolation, "precision must be in 1..95 digits");

  switch (backend) {
    case BackendKind::Cyclotomic:
      if (mode != UMode::Unit && mode != UMode::Cyclotomic)
        throw Error(ErrKind::IncompatibleMode,
                    "cyclotomic backend requires u = 1 or u a root of unity");
      break;
    case BackendKind::LaurentHybrid:
      if (mode != UMode::RealDominant && mode != UMode::Formal)
        throw Error(ErrKind::IncompatibleMode,
                    "laurent_hybrid backend requires the dominant real root "
                    "or the formal quotient-ring mode");
      break;
    case BackendKind::Numeric:
      break;
  }

  ScalarContext ctx;
  ctx.k = k;
  ctx.u_mode = mode;
  ctx.backend = backend;
  ctx.omega_exp = omega_exp;
  ctx.xi_exp = xi_exp;
  ctx.tolerance = tolerance;
  ctx.precision = precision;

  switch (mode) {
    case UMode::Unit:
      if (k != 4)
        throw Error(ErrKind::ConstraintViolation,
                    "u = 1 gives (u^2+u^-2)^2 = 4, so k must be 4");
      ctx.cyc_modulus = 8;
      ctx.cyc_exponent = 0;
      ctx.u_value = {1.0, 0.0};
      break;
    case UMode::Cyclotomic: {
      if (cyc_modulus != 8 && cyc_modulus != 16 && cyc_modulus != 24)
        throw Error(ErrKind::ConstraintViolation,
                    "cyclotomic modulus must be 8, 16, or 24");
      cyc_exponent = ((cyc_exponent % cyc_modulus) + cyc_modulus) % cyc_modulus;
      ctx.cyc_modulus = cyc_modulus;
      ctx.cyc_exponent = cyc_exponent;
      // Exact check of (u^2 + u^-2)^2 = k.
      CycScalar s = CycScalar::root_power(cyc_modulus, 2L * cyc_exponent) +
                    CycScalar::root_power(cyc_modulus, -2L * cyc_exponent);
      CycScalar lhs = s * s - CycScalar::from_rational(cyc_modulus, k);
      if (!lhs.is_zero_exact())
        throw Error(ErrKind::ConstraintViolation,
                    "(u^2 + u^-2)^2 != k for the chosen root of unity");
      ctx.u_value = numeric_u(ctx);
      break;
    }
    case UMode::RealDominant:
      if (k < 4)
        throw Error(ErrKind::ConstraintViolation,
                    "dominant real root requires k >= 4");
      ctx.u_value = {dominant_root_value(k), 0.0};
      break;
    case UMode::Formal:
      // u is the image of the indeterminate in
      // Q(z8)[u, u^-1] / (u^8 - (k-2) u^4 + 1).  Only k = 4 needs this: the
      // relation degenerates to (u^4 - 1)^2 there, u^4 - 1 is a nonzero
      // nilpotent, and no evaluation of u is faithful.  For other k the
      // relation is squarefree and a numeric or cyclotomic root suffices.
      if (k != 4)
        throw Error(ErrKind::ConstraintViolation,
                    "the formal quotient-ring mode is for k = 4 only");
      if (backend != BackendKind::LaurentHybrid)
        throw Error(ErrKind::IncompatibleMode,
                    "formal u requires the laurent_hybrid backend");
      ctx.u_value = {1.0, 0.0};  // specialization u -> 1, diagnostics only
      break;
    case UMode::Numeric: {
      if (u_value == std::complex<double>(0.0, 0.0))
        throw Error(ErrKind::ConstraintViolation, "u must be nonzero");
      ctx.u_value = u_value;
      std::complex<double> s = u_value * u_value + 1.0 / (u_value * u_value);
      if (std::abs(s * s - std::complex<double>(k, 0.0)) > tolerance)
        throw Error(ErrKind::ConstraintViolation,
                    "(u^2 + u^-2)^2 != k within tolerance");
      break;
    }
  }
  return ctx;
}

ScalarContext default_context(int k) {
  switch (k) {
    case 1: return make_context(1, UMode::Cyclotomic, BackendKind::Cyclotomic, 24, 2);
    case 2: return make_context(2, UMode::Cyclotomic, BackendKind::Cyclotomic, 16, 1);
    case 3: return make_context(3, UMode::Cyclotomic, BackendKind::Cyclotomic, 24, 1);
    case 4: return make_context(4, UMode::Formal, BackendKind::LaurentHybrid);
    default:
      return make_context(k, UMode::RealDominant, BackendKind::LaurentHybrid);
  }
}

ZeroStatus is_zero(const Scalar& x, const ScalarContext& ctx) {
  if (x.is_untyped_zero()) return ZeroStatus::Zero;
  if (x.is_cyc())
    return x.as_cyc().is_zero_exact() ? ZeroStatus::Zero : ZeroStatus::NonZero;
  if (x.is_laurent()) {
    const auto& l = x.as_laurent();
    if (l.is_zero_exact()) return ZeroStatus::Zero;
    // In the formal mode the canonical window form is the ring element
    // itself, so a nonzero form is the final answer.
    if (ctx.u_mode == UMode::Formal) return ZeroStatus::NonZero;
    // Under a numeric root the reduction relation can be reducible, so a
    // canonically nonzero form may still vanish at the root in use; confirm
    // at the dominant root numerically.
    if (ctx.precision <= 45) return laurent_numeric_status<Float50>(l, ctx.tolerance);
    return laurent_numeric_status<Float100>(l, ctx.tolerance);
  }
  const auto v = x.as_numeric().value;
  if (v == std::complex<double>(0.0, 0.0)) return ZeroStatus::Zero;
  return std::abs(v) > ctx.tolerance ? ZeroStatus::NonZero : ZeroStatus::Ambiguous;
}

std::complex<double> to_complex(const Scalar& x, const ScalarContext& ctx) {
  if (x.is_untyped_zero()) return {0.0, 0.0};
  if (x.is_cyc()) return x.as_cyc().to_complex();
  if (x.is_numeric()) return x.as_numeric().value;
  const auto& l = x.as_laurent();
  double u = dominant_root_value(l.kparam());
  const double tau = 2.0 * 3.14159265358979323846;
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [key, c] : l.terms()) {
    double ang = tau * key.second / 8.0;
    acc += c.convert_to<double>() * std::pow(u, key.first) *
           std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Monomial extraction and serialization

namespace {

// Solve (N/8)*a + e*m = t (mod N) for a in 0..7 and small |m|; deterministic
// preference m = 0, 1, -1, 2, -2, ...
std::optional<std::pair<int, int>> solve_z8_u(int modulus, int e, int t) {
  int step = modulus / 8;
  for (int i = 0; i <= 2 * modulus; ++i) {
    int m = (i % 2 == 0) ? i / 2 : -(i + 1) / 2;
    int r = ((t - e * m) % modulus + modulus) % modulus;
    if (r % step == 0) {
      int a = r / step;  // 0..7
      return std::make_pair(a, m);
    }
  }
  return std::nullopt;
}

ScalarTerm term_from_root(const Rational& c, int araw, int m) {
  Rational cc = c;
  int a = araw;
  fold_z8(a, cc);
  return ScalarTerm{cc, a, m};
}

}  // namespace

std::optional<Monomial> extract_monomial(const Scalar& x, const ScalarContext& ctx) {
  if (x.is_untyped_zero()) return std::nullopt;
  if (x.is_laurent()) {
    const auto& l = x.as_laurent();
    if (l.terms().size() != 1) return std::nullopt;
    const auto& [key, c] = *l.terms().begin();
    return Monomial(c, key.second, key.first);
  }
  if (x.is_cyc()) {
    auto rm = x.as_cyc().as_root_multiple();
    if (!rm) return std::nullopt;
    auto am = solve_z8_u(x.as_cyc().modulus(), ctx.u_root_exponent(), rm->second);
    if (!am) return std::nullopt;
    ScalarTerm t = term_from_root(rm->first, am->first, am->second);
    return Monomial(t.coeff, t.z8, t.upow);
  }
  return std::nullopt;
}

std::vector<ScalarTerm> to_terms(const Scalar& x, const ScalarContext& ctx) {
  std::vector<ScalarTerm> out;
  if (x.is_untyped_zero()) return out;
  if (x.is_numeric())
    throw Error(ErrKind::IncompatibleMode, "numeric scalars have no exact term form");
  if (x.is_laurent()) {
    for (const auto& [key, c] : x.as_laurent().terms())
      out.push_back(ScalarTerm{c, key.second, key.first});
    return out;  // map order is already (m, a)
  }
  const auto& cy = x.as_cyc();
  int n = cy.modulus();
  int e = ctx.u_root_exponent();
  if (n != ctx.modulus())
    throw Error(ErrKind::Internal, "scalar modulus disagrees with context");
  for (int t = 0; t < cy.degree(); ++t) {
    if (cy.coeffs()[t] == 0) continue;
    auto am = solve_z8_u(n, e, t);
    if (!am)
      throw Error(ErrKind::Internal, "cyclotomic value not representable in z8/u terms");
    out.push_back(term_from_root(cy.coeffs()[t], am->first, am->second));
  }
  std::sort(out.begin(), out.end(), [](const ScalarTerm& p, const ScalarTerm& q) {
    return std::tie(p.upow, p.z8) < std::tie(q.upow, q.z8);
  });
  return out;
}

namespace {

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rational parse_rational(const std::string& s, const std::string& where) {
  auto bad = [&]() -> Error {
    return Error(ErrKind::ParseError, "bad rational '" + s + "' in " + where);
  };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num, den);
  } catch (const std::exception&) {
    throw bad();
  }
}

long parse_int(const std::string& s, const std::string& where) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrKind::ParseError, "bad integer '" + s + "' in " + where);
  }
}

}  // namespace

std::string format_scalar(const Scalar& x, const ScalarContext& ctx) {
  auto terms = to_terms(x, ctx);
  if (terms.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) out += "+";
    out += rational_str(terms[i].coeff);
    out += "*z8^" + std::to_string(terms[i].z8);
    out += "*u^" + std::to_string(terms[i].upow);
  }
  return out;
}

Scalar parse_scalar(const std::string& text, const ScalarContext& ctx) {
  if (text == "0") return ctx.zero();
  if (text.empty()) throw Error(ErrKind::ParseError, "empty scalar string");
  Scalar acc = ctx.zero();
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find('+', pos);
    std::string term = text.substr(pos, next == std::string::npos ? std::string::npos
                                                                  : next - pos);
    // split on '*': coeff * z8^a * u^m
    size_t s1 = term.find('*');
    size_t s2 = s1 == std::string::npos ? std::string::npos : term.find('*', s1 + 1);
    if (s1 == std::string::npos || s2 == std::string::npos)
      throw Error(ErrKind::ParseError, "term '" + term + "' is not c*z8^a*u^m");
    std::string cs = term.substr(0, s1);
    std::string zs = term.substr(s1 + 1, s2 - s1 - 1);
    std::string us = term.substr(s2 + 1);
    if (zs.rfind("z8^", 0) != 0 || us.rfind("u^", 0) != 0)
      throw Error(ErrKind::ParseError, "term '" + term + "' is not c*z8^a*u^m");
    Rational c = parse_rational(cs, "term '" + term + "'");
    long a = parse_int(zs.substr(3), "term '" + term + "'");
    long m = parse_int(us.substr(2), "term '" + term + "'");
    if (c != 0)
      acc += ctx.embed(Monomial(c, static_cast<int>(a), static_cast<int>(m)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return acc;
}

}  // namespace spinkit
