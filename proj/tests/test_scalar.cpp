#include <doctest.h>

#include <complex>
#include <random>

#include "spinkit/scalar.hpp"

using namespace spinkit;

namespace {

Monomial random_monomial(std::mt19937& rng, int max_upow = 6) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> apow(0, 3);
  std::uniform_int_distribution<int> mpow(-max_upow, max_upow);
  int c = 0;
  while (c == 0) c = coeff(rng);
  return Monomial(Rational(c), apow(rng), mpow(rng));
}

Scalar random_sum(std::mt19937& rng, const ScalarContext& ctx, int nterms) {
  Scalar acc = ctx.zero();
  for (int i = 0; i < nterms; ++i) acc += ctx.embed(random_monomial(rng));
  return acc;
}

}  // namespace

TEST_CASE("context validation accepts the exact roots and rejects mismatches") {
  CHECK_NOTHROW(make_context(4, UMode::Unit, BackendKind::Cyclotomic));
  CHECK_NOTHROW(make_context(1, UMode::Cyclotomic, BackendKind::Cyclotomic, 24, 2));
  CHECK_NOTHROW(make_context(2, UMode::Cyclotomic, BackendKind::Cyclotomic, 16, 1));
  CHECK_NOTHROW(make_context(3, UMode::Cyclotomic, BackendKind::Cyclotomic, 24, 1));
  CHECK_NOTHROW(make_context(8, UMode::RealDominant, BackendKind::LaurentHybrid));

  // u = 1 forces k = 4.
  CHECK_THROWS_AS(make_context(8, UMode::Unit, BackendKind::Cyclotomic), Error);
  // u = zeta_8 gives u^2 + u^-2 = 0.
  CHECK_THROWS_AS(make_context(1, UMode::Cyclotomic, BackendKind::Cyclotomic, 8, 1), Error);
  // wrong k for the chosen root
  CHECK_THROWS_AS(make_context(2, UMode::Cyclotomic, BackendKind::Cyclotomic, 24, 2), Error);
  // no real dominant root below k = 4
  CHECK_THROWS_AS(make_context(3, UMode::RealDominant, BackendKind::LaurentHybrid), Error);

  try {
    make_context(8, UMode::Unit, BackendKind::Cyclotomic);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::ConstraintViolation);
  }
}

TEST_CASE("xi must be a primitive 8th root") {
  // xi = i (an even power of z8) has xi^4 = +1.
  try {
    make_context(4, UMode::Unit, BackendKind::Cyclotomic, 8, 0, {1.0, 0.0},
                 /*omega_exp=*/0, /*xi_exp=*/2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::ConstraintViolation);
  }
  for (int e = 1; e < 8; e += 2)
    CHECK_NOTHROW(make_context(4, UMode::Unit, BackendKind::Cyclotomic, 8, 0,
                               {1.0, 0.0}, 0, e));
}

TEST_CASE("backend / u-mode compatibility") {
  try {
    make_context(8, UMode::RealDominant, BackendKind::Cyclotomic);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::IncompatibleMode);
  }
  try {
    make_context(4, UMode::Unit, BackendKind::LaurentHybrid);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::IncompatibleMode);
  }
  // the numeric backend accepts every mode
  CHECK_NOTHROW(make_context(4, UMode::Unit, BackendKind::Numeric));
  CHECK_NOTHROW(make_context(8, UMode::RealDominant, BackendKind::Numeric));
  CHECK_NOTHROW(make_context(4, UMode::Numeric, BackendKind::Numeric, 8, 0, {1.0, 0.0}));
  CHECK_THROWS_AS(
      make_context(5, UMode::Numeric, BackendKind::Numeric, 8, 0, {1.0, 0.0}), Error);
}

TEST_CASE("numeric u constraint is checked within tolerance") {
  double u8 = dominant_root_value(8);
  CHECK_NOTHROW(make_context(8, UMode::Numeric, BackendKind::Numeric, 8, 0, {u8, 0.0}));
  CHECK_THROWS_AS(
      make_context(8, UMode::Numeric, BackendKind::Numeric, 8, 0, {u8 + 0.01, 0.0}),
      Error);
}

TEST_CASE("conjugation of z8 and involution") {
  CycScalar z = CycScalar::root_power(8, 1);
  CHECK(z.conj() == -CycScalar::root_power(8, 3));
  std::mt19937 rng(42);
  auto ctx = default_context(2);
  for (int i = 0; i < 50; ++i) {
    Scalar x = random_sum(rng, ctx, 4);
    CHECK(conj(conj(x)) == x);
  }
}

TEST_CASE("the defining relation vanishes in every backend") {
  auto relation = [](const ScalarContext& ctx) {
    return ctx.embed(Monomial(1, 0, 8)) -
           ctx.from_int(ctx.k - 2) * ctx.embed(Monomial(1, 0, 4)) + ctx.one();
  };
  for (int k : {4, 5, 8, 12, 37}) {
    auto ctx = make_context(k, UMode::RealDominant, BackendKind::LaurentHybrid);
    CHECK(is_zero(relation(ctx), ctx) == ZeroStatus::Zero);
  }
  for (int k : {1, 2, 3, 4}) {
    auto ctx = default_context(k);
    CHECK(is_zero(relation(ctx), ctx) == ZeroStatus::Zero);
  }
}

TEST_CASE("hybrid zero test is three-valued at k = 4") {
  // At k = 4 the relation factors as (u^4 - 1)^2, so u^4 - 1 is canonically
  // nonzero yet vanishes at the dominant root: the sound answer is Ambiguous.
  auto ctx = make_context(4, UMode::RealDominant, BackendKind::LaurentHybrid);
  Scalar x = ctx.embed(Monomial(1, 0, 4)) - ctx.one();
  CHECK(is_zero(x, ctx) == ZeroStatus::Ambiguous);
  CHECK(is_zero(ctx.embed(Monomial(1, 0, 1)) - ctx.one(), ctx) == ZeroStatus::Ambiguous);
  CHECK(is_zero(ctx.from_int(2), ctx) == ZeroStatus::NonZero);
  CHECK(is_zero(ctx.embed(Monomial(1, 0, 3)), ctx) == ZeroStatus::NonZero);
  CHECK(is_zero(ctx.zero(), ctx) == ZeroStatus::Zero);
}

TEST_CASE("exact backends never report Ambiguous") {
  std::mt19937 rng(7);
  for (int k : {1, 2, 3, 4}) {
    auto ctx = default_context(k);
    for (int i = 0; i < 200; ++i) {
      Scalar x = random_sum(rng, ctx, 5);
      CHECK(is_zero(x, ctx) != ZeroStatus::Ambiguous);
    }
  }
}

TEST_CASE("hybrid and exact verdicts never contradict at k = 4") {
  std::mt19937 rng(20240816);
  auto exact = make_context(4, UMode::Unit, BackendKind::Cyclotomic);
  auto hybrid = make_context(4, UMode::RealDominant, BackendKind::LaurentHybrid);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Monomial> ms;
    Scalar xe = exact.zero(), xh = hybrid.zero();
    int n = 1 + (i % 6);
    for (int j = 0; j < n; ++j) {
      Monomial m = random_monomial(rng);
      xe += exact.embed(m);
      xh += hybrid.embed(m);
    }
    ZeroStatus se = is_zero(xe, exact);
    ZeroStatus sh = is_zero(xh, hybrid);
    // hybrid canonical zero is zero in the quotient ring, hence zero at u = 1
    if (sh == ZeroStatus::Zero) CHECK(se == ZeroStatus::Zero);
    // exact zero at u = 1 can only be Zero or Ambiguous for the hybrid
    if (se == ZeroStatus::Zero) CHECK(sh != ZeroStatus::NonZero);
    if (se == ZeroStatus::NonZero) CHECK(sh != ZeroStatus::Zero);
  }
}

TEST_CASE("formal quotient ring at k = 4") {
  auto fm = default_context(4);
  CHECK(fm.u_mode == UMode::Formal);
  CHECK(fm.backend == BackendKind::LaurentHybrid);

  // The relation factors as (u^4 - 1)^2, so u^4 - 1 is a nonzero nilpotent:
  // no evaluation of u distinguishes it from zero, but the ring does.
  Scalar nil = fm.embed(Monomial(1, 0, 4)) - fm.one();
  CHECK(is_zero(nil, fm) == ZeroStatus::NonZero);
  CHECK(is_zero(nil * nil, fm) == ZeroStatus::Zero);
  CHECK_THROWS_AS(inverse(nil), Error);

  // conjugation inverts u and z8 and is an involution
  Scalar u = fm.embed(Monomial(1, 0, 1));
  CHECK(conj(u) * u == fm.one());
  Scalar zu = fm.embed(Monomial(3, 1, -2));
  CHECK(conj(conj(zu)) == zu);
  CHECK(conj(zu) == fm.embed(Monomial(3, -1, 2)));

  // two-valued zero test; soundness against the specialization u -> 1
  std::mt19937 rng(4096);
  auto unit = make_context(4, UMode::Unit, BackendKind::Cyclotomic);
  for (int i = 0; i < 1000; ++i) {
    std::vector<Monomial> ms;
    int n = 1 + (i % 6);
    Scalar xf = fm.zero(), xu = unit.zero();
    for (int j = 0; j < n; ++j) {
      Monomial m = random_monomial(rng);
      xf += fm.embed(m);
      xu += unit.embed(m);
    }
    ZeroStatus sf = is_zero(xf, fm);
    CHECK(sf != ZeroStatus::Ambiguous);
    ZeroStatus su = is_zero(xu, unit);
    // ring zero specializes to zero; a nonzero value at u = 1 lifts to a
    // nonzero ring element
    if (sf == ZeroStatus::Zero) CHECK(su == ZeroStatus::Zero);
    if (su == ZeroStatus::NonZero) CHECK(sf == ZeroStatus::NonZero);
  }

  // the formal mode exists exactly where no numeric root is faithful
  CHECK_THROWS_AS(make_context(5, UMode::Formal, BackendKind::LaurentHybrid), Error);
  CHECK_THROWS_AS(make_context(2, UMode::Formal, BackendKind::LaurentHybrid), Error);
  CHECK_THROWS_AS(make_context(4, UMode::Formal, BackendKind::Cyclotomic), Error);
  CHECK_THROWS_AS(make_context(4, UMode::Formal, BackendKind::Numeric), Error);
}

TEST_CASE("inverses") {
  std::mt19937 rng(99);
  // cyclotomic backends are fields: every nonzero element inverts
  std::vector<ScalarContext> fields = {
      default_context(1), default_context(2),
      make_context(4, UMode::Unit, BackendKind::Cyclotomic)};
  for (const auto& ctx : fields) {
    for (int i = 0; i < 50; ++i) {
      Scalar x = random_sum(rng, ctx, 3);
      if (is_zero(x, ctx) == ZeroStatus::Zero) continue;
      CHECK(inverse(x) * x == ctx.one());
    }
  }
  auto hy = make_context(5, UMode::RealDominant, BackendKind::LaurentHybrid);
  Scalar u3 = hy.embed(Monomial(1, 0, 3));
  CHECK(inverse(u3) * u3 == hy.one());
  Scalar multi = hy.embed(Monomial(1, 0, 3)) + hy.one();
  CHECK_THROWS_AS(inverse(multi), Error);
  CHECK_THROWS_AS(inverse(hy.zero()), Error);
  try {
    inverse(multi);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::NonInvertible);
  }
  try {
    inverse(hy.zero());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::DivisionByZero);
  }
}

TEST_CASE("canonical laurent window") {
  auto ctx = make_context(5, UMode::RealDominant, BackendKind::LaurentHybrid);
  // u^7 = (k-2) u^3 - u^-1
  Scalar lhs = ctx.embed(Monomial(1, 0, 7));
  Scalar rhs = ctx.embed(Monomial(3, 0, 3)) - ctx.embed(Monomial(1, 0, -1));
  CHECK(lhs == rhs);
  const auto& terms = lhs.as_laurent().terms();
  for (const auto& [key, c] : terms) {
    CHECK(key.first >= -4);
    CHECK(key.first <= 3);
    CHECK(key.second >= 0);
    CHECK(key.second <= 3);
    CHECK(c != 0);
  }
}

TEST_CASE("embedding is multiplicative") {
  std::mt19937 rng(5);
  for (int k : {2, 5}) {
    auto ctx = k == 2 ? default_context(2)
                      : make_context(5, UMode::RealDominant, BackendKind::LaurentHybrid);
    for (int i = 0; i < 100; ++i) {
      Monomial m1 = random_monomial(rng), m2 = random_monomial(rng);
      CHECK(ctx.embed(m1) * ctx.embed(m2) == ctx.embed(m1 * m2));
    }
  }
}

TEST_CASE("omega, xi and the derived 4th root") {
  auto ctx = make_context(4, UMode::Unit, BackendKind::Cyclotomic, 8, 0, {1, 0},
                          /*omega_exp=*/2, /*xi_exp=*/3);
  CHECK(ctx.omega() == Monomial(-1, 0, 0));
  CHECK(ctx.xi() == Monomial(1, 3, 0));
  // omega^4 = 1, xi^4 = -1, (loop i)^2 = -1
  Scalar om = ctx.embed(ctx.omega());
  Scalar xi = ctx.embed(ctx.xi());
  Scalar ii = ctx.embed(ctx.loop_i());
  Scalar one = ctx.one();
  CHECK(om * om * om * om == one);
  CHECK(xi * xi * xi * xi == -one);
  CHECK(ii * ii == -one);
  // loop i = -xi^2 by definition
  CHECK(ii == -(xi * xi));
}

TEST_CASE("serialization round trips") {
  auto hy = make_context(5, UMode::RealDominant, BackendKind::LaurentHybrid);
  SUBCASE("canonical strings are reproduced byte for byte") {
    for (const char* s : {"0", "-1/2*z8^3*u^-1", "1*z8^0*u^0",
                          "-1*z8^2*u^-2+1*z8^0*u^0+1/3*z8^1*u^0+5*z8^3*u^2"}) {
      CHECK(format_scalar(parse_scalar(s, hy), hy) == s);
    }
  }
  SUBCASE("values survive format/parse in every exact backend") {
    std::mt19937 rng(31);
    for (int k : {1, 2, 3, 4, 5, 8}) {
      auto ctx = k <= 4 ? default_context(k)
                        : make_context(k, UMode::RealDominant, BackendKind::LaurentHybrid);
      for (int i = 0; i < 60; ++i) {
        Scalar x = random_sum(rng, ctx, 4);
        CHECK(parse_scalar(format_scalar(x, ctx), ctx) == x);
      }
    }
  }
  SUBCASE("terms are sorted by (m, a)") {
    Scalar x = hy.embed(Monomial(1, 1, 3)) + hy.embed(Monomial(1, 0, -1)) +
               hy.embed(Monomial(1, 2, 0)) + hy.embed(Monomial(1, 0, 0));
    CHECK(format_scalar(x, hy) ==
          "1*z8^0*u^-1+1*z8^0*u^0+1*z8^2*u^0+1*z8^1*u^3");
  }
  SUBCASE("unreduced exponents are accepted and canonicalized") {
    // z8^5 folds to -z8; u^9 is rewritten into the canonical window
    Scalar a = parse_scalar("1*z8^5*u^9", hy);
    Scalar b = -(hy.embed(Monomial(1, 1, 9)));
    CHECK(a == b);
  }
  SUBCASE("malformed input is rejected") {
    for (const char* s : {"", "1*z8^a*u^0", "1*z8^1", "x*z8^0*u^0", "1*w^1*u^0",
                          "1*z8^0*u^0+", "1/0*z8^0*u^0"}) {
      CHECK_THROWS_AS(parse_scalar(s, hy), Error);
    }
  }
  SUBCASE("numeric scalars refuse to serialize") {
    auto nu = make_context(4, UMode::Unit, BackendKind::Numeric);
    CHECK_THROWS_AS(format_scalar(nu.one(), nu), Error);
  }
}

TEST_CASE("to_complex agrees across backends") {
  auto expr = [](const ScalarContext& ctx) {
    return ctx.embed(Monomial(1, 0, 3)) + ctx.embed(Monomial(-1, 1, -1)) +
           ctx.from_int(2);
  };
  // k = 7: hybrid vs numeric backend at the same root
  auto hy = make_context(7, UMode::RealDominant, BackendKind::LaurentHybrid);
  auto nu = make_context(7, UMode::RealDominant, BackendKind::Numeric);
  auto a = to_complex(expr(hy), hy);
  auto b = to_complex(expr(nu), nu);
  CHECK(std::abs(a - b) < 1e-9);
  // k = 4: unit cyclotomic vs hybrid (dominant root is exactly 1)
  auto cy = make_context(4, UMode::Unit, BackendKind::Cyclotomic);
  auto hy4 = make_context(4, UMode::RealDominant, BackendKind::LaurentHybrid);
  CHECK(std::abs(to_complex(expr(cy), cy) - to_complex(expr(hy4), hy4)) < 1e-12);
  // k = 2: cyclotomic vs numeric at u = zeta_16
  auto c2 = default_context(2);
  auto n2 = make_context(2, UMode::Cyclotomic, BackendKind::Numeric, 16, 1);
  CHECK(std::abs(to_complex(expr(c2), c2) - to_complex(expr(n2), n2)) < 1e-9);
}

TEST_CASE("dominant root values") {
  CHECK(dominant_root_value(4) == 1.0);
  double r8 = dominant_root_value(8);
  CHECK(std::abs(r8 * r8 - (1.0 + std::sqrt(2.0))) < 1e-12);  // u^4 = 3 + 2 sqrt 2
  double r12 = dominant_root_value(12);
  CHECK(std::abs(std::pow(r12, 8) - 10.0 * std::pow(r12, 4) + 1.0) < 1e-10);
  CHECK_THROWS_AS(dominant_root_value(3), Error);
}

TEST_CASE("monomial extraction") {
  auto hy = make_context(8, UMode::RealDominant, BackendKind::LaurentHybrid);
  auto cy = default_context(1);
  std::mt19937 rng(77);
  for (int i = 0; i < 100; ++i) {
    Monomial m = random_monomial(rng, 3);
    auto back_h = extract_monomial(hy.embed(m), hy);
    REQUIRE(back_h.has_value());
    CHECK(hy.embed(*back_h) == hy.embed(m));
    auto back_c = extract_monomial(cy.embed(m), cy);
    REQUIRE(back_c.has_value());
    CHECK(cy.embed(*back_c) == cy.embed(m));
  }
  // sums of unrelated monomials are not monomials
  CHECK_FALSE(extract_monomial(hy.one() + hy.embed(Monomial(1, 1, 1)), hy).has_value());
  CHECK_FALSE(extract_monomial(cy.one() + cy.embed(Monomial(1, 1, 1)), cy).has_value());
  CHECK_FALSE(extract_monomial(hy.zero(), hy).has_value());
}

TEST_CASE("untyped zero interacts with every backend") {
  Scalar z;
  CHECK(z.is_untyped_zero());
  for (int k : {1, 2, 4}) {
    auto ctx = default_context(k);
    Scalar x = ctx.embed(Monomial(2, 1, 0));
    CHECK(z + x == x);
    CHECK(x + z == x);
    CHECK(z * x == z);
    CHECK(is_zero(z, ctx) == ZeroStatus::Zero);
    CHECK(z == ctx.zero());
    CHECK(ctx.zero() == z);
  }
}
