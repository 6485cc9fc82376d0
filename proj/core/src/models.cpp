#include "spinkit/models.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spinkit/schemes.hpp"

namespace spinkit {

namespace {

std::string scalar_text(const Scalar& s, const ScalarContext& ctx) {
  if (ctx.backend == BackendKind::Numeric) {
    auto z = to_complex(s, ctx);
    return "~(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
  }
  return format_scalar(s, ctx);
}

SpinMatrix scaled_hadamard(const HadamardMatrix& h, const Scalar& coeff,
                           const ScalarContext& ctx, bool transposed) {
  int k = h.order();
  SpinMatrix m(k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      int s = transposed ? h.sign(c, r) : h.sign(r, c);
      m.at(r, c) = coeff * ctx.from_int(s);
    }
  return m;
}

Grid<Scalar> entry_inverses(const SpinMatrix& m) {
  int n = m.side();
  Grid<Scalar> inv(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      try {
        inv.at(r, c) = inverse(m.at(r, c));
      } catch (const Error&) {
        throw Error(ErrKind::NonInvertibleEntry,
                    "entry (" + std::to_string(r) + "," + std::to_string(c) +
                        ") of " + (m.label().empty() ? "matrix" : m.label()) +
                        " has no inverse");
      }
    }
  return inv;
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::W: return "W";
    case ModelKind::Wprime: return "Wp";
    case ModelKind::Wtilde: return "Wt";
    case ModelKind::WtildePrime: return "Wtp";
    case ModelKind::Potts: return "potts";
  }
  return "?";
}

const char* to_string(GaugeKind kind) {
  switch (kind) {
    case GaugeKind::WtildeFromW: return "gauge_wt_from_w";
    case GaugeKind::WtildePrimeFromWprime: return "gauge_wtp_from_wp";
    case GaugeKind::WtildePrimeTransposeFromWprime: return "gauge_wtpT_from_wp";
  }
  return "?";
}

SpinMatrix potts(const ScalarContext& ctx) {
  int k = ctx.k;
  Scalar diag = ctx.embed(Monomial(1, 0, 3));
  Scalar off = ctx.embed(Monomial(-1, 0, -1));
  SpinMatrix a(k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) a.at(r, c) = r == c ? diag : off;
  a.set_label("potts");
  return a;
}

SpinMatrix build_model(ModelKind kind, const HadamardMatrix& h,
                       const ScalarContext& ctx) {
  if (h.order() != ctx.k)
    throw Error(ErrKind::OrderMismatch,
                "Hadamard order " + std::to_string(h.order()) +
                    " does not match context k = " + std::to_string(ctx.k));
  if (kind == ModelKind::Potts) return potts(ctx);

  int k = ctx.k;
  SpinMatrix A = potts(ctx);

  // upper crossing blocks carry su*H, lower ones sl*H^T, both in the
  // checkerboard pattern [s, -s; -s, s]
  Scalar su, sl;
  switch (kind) {
    case ModelKind::W:
      su = ctx.embed(ctx.omega());
      sl = su;
      break;
    case ModelKind::Wtilde:
      su = ctx.one();
      sl = su;
      break;
    case ModelKind::Wprime:
      su = ctx.embed(ctx.xi());
      sl = -su;
      break;
    case ModelKind::WtildePrime:
      su = ctx.one();
      sl = ctx.embed(ctx.loop_i());
      break;
    case ModelKind::Potts:
      break;
  }

  SpinMatrix uh = scaled_hadamard(h, su, ctx, false);
  SpinMatrix um = scaled_hadamard(h, -su, ctx, false);
  SpinMatrix lh = scaled_hadamard(h, sl, ctx, true);
  SpinMatrix lm = scaled_hadamard(h, -sl, ctx, true);
  SpinMatrix m = block4<Scalar>(
      {A, A, uh, um, A, A, um, uh, lh, lm, A, A, lm, lh, A, A});
  m.set_label(to_string(kind));

  // W and Wprime have a second presentation as scheme-matrix expansions;
  // cross-check the two entry-exactly
  if (kind == ModelKind::W || kind == ModelKind::Wprime) {
    auto dist = build_distance_matrices(h);
    bool primed = kind == ModelKind::Wprime;
    int order[5] = {kA0, primed ? kA1p : kA1, kA2, primed ? kA3p : kA3, kA4};
    std::vector<SpinMatrix> em;
    em.reserve(5);
    for (int i = 0; i < 5; ++i) em.push_back(embed_int_matrix(dist[order[i]], ctx));
    Scalar u3 = ctx.embed(Monomial(1, 0, 3));
    Scalar mu = ctx.embed(Monomial(-1, 0, -1));
    Scalar c1 = primed ? ctx.embed(ctx.xi()) : ctx.embed(ctx.omega());
    SpinMatrix span = lincomb({u3, c1, mu, -c1, u3},
                              {&em[0], &em[1], &em[2], &em[3], &em[4]});
    MatrixCompare cmp = compare_matrices(m, span, ctx);
    if (cmp.status == ZeroStatus::NonZero)
      throw Error(ErrKind::DefinitionMismatch,
                  std::string(to_string(kind)) +
                      ": block display and scheme expansion differ at (" +
                      std::to_string(cmp.row) + "," + std::to_string(cmp.col) + ")");
    if (cmp.status == ZeroStatus::Ambiguous)
      throw Error(ErrKind::AmbiguousZero,
                  std::string(to_string(kind)) +
                      ": expansion identity undecidable at (" +
                      std::to_string(cmp.row) + "," + std::to_string(cmp.col) +
                      "); raise precision");
  }
  return m;
}

SpinMatrix block_gauge(const Scalar& g0, const Scalar& g1, int k) {
  SpinMatrix m(4 * k);
  for (int idx = 0; idx < 4 * k; ++idx)
    m.at(idx, idx) = Index4k::from_linear(idx, k).a1 ? g1 : g0;
  return m;
}

SpinMatrix gauge_d(const ScalarContext& ctx) {
  return block_gauge(ctx.one(), ctx.embed(ctx.loop_i()), ctx.k);
}

VerificationReport type2_check(const SpinMatrix& m, const ScalarContext& ctx) {
  VerificationReport rep = make_report("type2", ctx.k, ctx.backend_name());
  if (!m.label().empty()) rep.params["matrix"] = m.label();
  rep.params["omega_exp"] = std::to_string(ctx.omega_exp);
  rep.params["xi_exp"] = std::to_string(ctx.xi_exp);

  int n = m.side();
  detail_int(rep, "side", n);
  detail_int(rep, "constant", n);
  Grid<Scalar> inv = entry_inverses(m);
  Scalar nn = ctx.from_int(n);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Scalar s = ctx.zero();
      for (int x = 0; x < n; ++x) s += m.at(a, x) * inv.at(b, x);
      if (a == b) s = s - nn;
      switch (is_zero(s, ctx)) {
        case ZeroStatus::Zero:
          break;
        case ZeroStatus::NonZero:
          rep.fail("pair (" + std::to_string(a) + "," + std::to_string(b) +
                   "): row-ratio sum off by " + scalar_text(s, ctx));
          return rep;
        case ZeroStatus::Ambiguous:
          throw Error(ErrKind::AmbiguousZero,
                      "type2 sum at pair (" + std::to_string(a) + "," +
                          std::to_string(b) + ") is undecidable; raise precision");
      }
    }
  detail_int(rep, "pairs_checked", static_cast<long long>(n) * n);
  return rep;
}

VerificationReport type3_check(const SpinMatrix& m, const ScalarContext& ctx,
                               const Type3Options& opt) {
  VerificationReport rep = make_report("type3", ctx.k, ctx.backend_name());
  if (!m.label().empty()) rep.params["matrix"] = m.label();
  rep.params["omega_exp"] = std::to_string(ctx.omega_exp);
  rep.params["xi_exp"] = std::to_string(ctx.xi_exp);

  int n = m.side();
  detail_int(rep, "side", n);
  detail_int(rep, "d_squared", n);

  // d = +/- 2(u^2+u^-2) has d^2 = 4k; d = +/- (u^2+u^-2) has d^2 = k
  Rational half_coeff;
  if (n == 4 * ctx.k)
    half_coeff = 2;
  else if (n == ctx.k)
    half_coeff = 1;
  else
    throw Error(ErrKind::ConstraintViolation,
                "no exact loop parameter for side " + std::to_string(n) +
                    " with k = " + std::to_string(ctx.k));
  Scalar d = ctx.embed(Monomial(half_coeff, 0, 2)) +
             ctx.embed(Monomial(half_coeff, 0, -2));

  Grid<Scalar> inv = entry_inverses(m);

  bool exhaustive = opt.exhaustive || n <= 16;
  long long count =
      exhaustive ? static_cast<long long>(n) * n * n : opt.sample;
  rep.params["triples"] = exhaustive ? "exhaustive" : "sampled";

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> pick(0, n - 1);

  bool alive[2] = {true, true};  // +d, -d
  std::string last_kill[2];
  for (long long t = 0; t < count; ++t) {
    int a, b, c;
    if (exhaustive) {
      a = static_cast<int>(t / (n * n));
      b = static_cast<int>((t / n) % n);
      c = static_cast<int>(t % n);
    } else {
      a = pick(rng);
      b = pick(rng);
      c = pick(rng);
    }
    Scalar lhs = ctx.zero();
    for (int x = 0; x < n; ++x) lhs += m.at(a, x) * m.at(b, x) * inv.at(c, x);
    Scalar rhs = m.at(a, b) * inv.at(a, c) * inv.at(c, b);
    std::string triple = "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(c) + ")";
    for (int s = 0; s < 2; ++s) {
      if (!alive[s]) continue;
      Scalar diff = s == 0 ? lhs - d * rhs : lhs + d * rhs;
      switch (is_zero(diff, ctx)) {
        case ZeroStatus::Zero:
          break;
        case ZeroStatus::NonZero:
          alive[s] = false;
          last_kill[s] = triple;
          break;
        case ZeroStatus::Ambiguous:
          throw Error(ErrKind::AmbiguousZero,
                      "type3 sum at triple " + triple +
                          " is undecidable; raise precision");
      }
    }
    if (!alive[0] && !alive[1]) {
      rep.fail("no sign of the loop parameter works; +d failed at " +
               last_kill[0] + ", -d failed at " + last_kill[1]);
      return rep;
    }
  }
  detail_int(rep, "triples_checked", count);
  std::string signs;
  if (alive[0]) signs += "+";
  if (alive[1]) signs += "-";
  detail_str(rep, "d_sign", signs);
  return rep;
}

VerificationReport gauge_identity_check(GaugeKind kind, const HadamardMatrix& h,
                                        const ScalarContext& ctx) {
  VerificationReport rep = make_report(to_string(kind), ctx.k, ctx.backend_name());
  rep.params["omega_exp"] = std::to_string(ctx.omega_exp);
  rep.params["xi_exp"] = std::to_string(ctx.xi_exp);

  int k = ctx.k;
  Scalar one = ctx.one();
  SpinMatrix lhs, rhs;
  switch (kind) {
    case GaugeKind::WtildeFromW: {
      SpinMatrix w = build_model(ModelKind::W, h, ctx);
      lhs = build_model(ModelKind::Wtilde, h, ctx);
      Scalar o = ctx.embed(ctx.omega());
      Scalar oinv = inverse(o);
      SpinMatrix left = block_gauge(one, o, k);
      bool osq_one = ctx.omega_exp % 2 == 0;
      rep.params["omega_squared"] = osq_one ? "1" : "-1";
      SpinMatrix right;
      if (osq_one) {
        right = block_gauge(one, oinv, k);
      } else {
        // swap the first two blocks, scale the lower half by omega^-1
        right = SpinMatrix(4 * k);
        for (int x = 0; x < k; ++x) {
          right.at(Index4k{0, 0, x}.linear(k), Index4k{0, 1, x}.linear(k)) = one;
          right.at(Index4k{0, 1, x}.linear(k), Index4k{0, 0, x}.linear(k)) = one;
          right.at(Index4k{1, 0, x}.linear(k), Index4k{1, 0, x}.linear(k)) = oinv;
          right.at(Index4k{1, 1, x}.linear(k), Index4k{1, 1, x}.linear(k)) = oinv;
        }
      }
      rhs = matmul(matmul(left, w), right);
      break;
    }
    case GaugeKind::WtildePrimeFromWprime: {
      SpinMatrix wp = build_model(ModelKind::Wprime, h, ctx);
      lhs = build_model(ModelKind::WtildePrime, h, ctx);
      Scalar x = ctx.embed(ctx.xi());
      rhs = matmul(matmul(block_gauge(one, x, k), wp),
                   block_gauge(one, inverse(x), k));
      break;
    }
    case GaugeKind::WtildePrimeTransposeFromWprime: {
      SpinMatrix wp = build_model(ModelKind::Wprime, h, ctx);
      lhs = transpose(build_model(ModelKind::WtildePrime, h, ctx));
      Scalar x = ctx.embed(ctx.xi());
      rhs = matmul(matmul(block_gauge(one, -inverse(x), k), wp),
                   block_gauge(one, -x, k));
      break;
    }
  }

  MatrixCompare cmp = compare_matrices(lhs, rhs, ctx);
  if (cmp.status == ZeroStatus::NonZero)
    rep.fail("IdentityFailed: sides differ at entry (" + std::to_string(cmp.row) +
             "," + std::to_string(cmp.col) + "): " +
             scalar_text(lhs.at(cmp.row, cmp.col), ctx) + " vs " +
             scalar_text(rhs.at(cmp.row, cmp.col), ctx));
  else if (cmp.status == ZeroStatus::Ambiguous)
    throw Error(ErrKind::AmbiguousZero,
                "gauge comparison at entry (" + std::to_string(cmp.row) + "," +
                    std::to_string(cmp.col) +
                    ") is undecidable; raise precision");
  return rep;
}

}  // namespace spinkit
