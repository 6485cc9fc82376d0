#include <spinkit/nomura.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <utility>

#include <spinkit/models.hpp>
#include <spinkit/schemes.hpp>

namespace spinkit {

namespace {

std::string pair_text(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string vertex_text(int p, int k) {
  Index4k u = Index4k::from_linear(p, k);
  return "(" + std::to_string(u.x) + ";" + std::to_string(u.a1) +
         std::to_string(u.a2) + ")";
}

// Union-to-minimum with path compression: find() of a settled structure
// returns the smallest member, which doubles as the canonical class label.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
  }
};

// tau flips alpha_2 on the lower fiber and fixes the upper one.
int tau_vertex(int p, int k) {
  Index4k u = Index4k::from_linear(p, k);
  if (u.a1 == 1) u.a2 ^= 1;
  return u.linear(k);
}

// Ordered vertex pairs to sweep: all n^2 of them, or a seeded sample.
std::vector<std::pair<int, int>> vertex_pair_sweep(int n,
                                                   const LemmaOptions& opt) {
  std::vector<std::pair<int, int>> out;
  long long total = static_cast<long long>(n) * n;
  if (opt.sample <= 0 || opt.sample >= total) {
    out.reserve(total);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) out.emplace_back(p, q);
    return out;
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  out.reserve(opt.sample);
  for (int i = 0; i < opt.sample; ++i) out.emplace_back(pick(rng), pick(rng));
  return out;
}

}  // namespace

YTable y_table(const SpinMatrix& m, const ScalarContext& ctx) {
  int n = m.side();
  std::vector<Monomial> mono(static_cast<size_t>(n) * n);
  std::vector<Monomial> inv(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a) {
      auto e = extract_monomial(m.at(x, a), ctx);
      if (!e)
        throw Error(ErrKind::NonInvertibleEntry,
                    "entry (" + std::to_string(x) + "," + std::to_string(a) +
                        ") is not a nonzero monomial; ratio vectors need "
                        "exact inverses");
      mono[static_cast<size_t>(x) * n + a] = *e;
      inv[static_cast<size_t>(x) * n + a] = e->inverse();
    }
  YTable t(n, ctx.u_mode);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int x = 0; x < n; ++x)
        t.at(a, b, x) = mono[static_cast<size_t>(x) * n + a] *
                        inv[static_cast<size_t>(x) * n + b];
  return t;
}

Scalar y_inner(const YTable& t, int pa, int pb, int qa, int qb,
               const ScalarContext& ctx) {
  int n = t.side();
  // Model-entry monomials have coefficient +-1 and u exponents in a small
  // window, so the sum collapses to integer counts per (z8, u^m) cell.
  constexpr int kUMin = -12, kUMax = 12, kW = kUMax - kUMin + 1;
  std::array<long long, 4 * kW> cells{};
  bool fast = true;
  for (int x = 0; x < n; ++x) {
    Monomial term = t.at(pa, pb, x) * t.at(qa, qb, x).conj(t.mode());
    int sgn;
    if (term.coeff == 1)
      sgn = 1;
    else if (term.coeff == -1)
      sgn = -1;
    else {
      fast = false;
      break;
    }
    if (term.upow < kUMin || term.upow > kUMax) {
      fast = false;
      break;
    }
    cells[term.z8 * kW + (term.upow - kUMin)] += sgn;
  }
  Scalar acc = ctx.zero();
  if (fast) {
    for (int z = 0; z < 4; ++z)
      for (int w = 0; w < kW; ++w)
        if (long long c = cells[z * kW + w]; c != 0)
          acc += ctx.embed(Monomial(Rational(c), z, kUMin + w));
    return acc;
  }
  for (int x = 0; x < n; ++x)
    acc += ctx.embed(t.at(pa, pb, x) * t.at(qa, qb, x).conj(t.mode()));
  return acc;
}

std::vector<int> PairPartition::class_labels() const {
  std::vector<int> out;
  for (int p = 0; p < static_cast<int>(label.size()); ++p)
    if (label[p] == p) out.push_back(p);
  return out;
}

std::vector<long long> PairPartition::class_sizes() const {
  std::vector<int> labs = class_labels();
  std::map<int, int> pos;
  for (int i = 0; i < static_cast<int>(labs.size()); ++i) pos[labs[i]] = i;
  std::vector<long long> out(labs.size(), 0);
  for (int l : label) ++out[pos.at(l)];
  return out;
}

int PairPartition::classes() const {
  return static_cast<int>(class_labels().size());
}

PairPartition nomura_graph(const SpinMatrix& m, const ScalarContext& ctx,
                           const NomuraOptions& opt) {
  YTable t = y_table(m, ctx);
  int n = m.side();
  int np = n * n;
  Dsu dsu(np);
  for (int p = 0; p < np; ++p)
    for (int q = p + 1; q < np; ++q) {
      if (opt.skip_connected && dsu.find(p) == dsu.find(q)) continue;
      Scalar ip = y_inner(t, p / n, p % n, q / n, q % n, ctx);
      switch (is_zero(ip, ctx)) {
        case ZeroStatus::Zero:
          break;
        case ZeroStatus::NonZero:
          dsu.unite(p, q);
          break;
        case ZeroStatus::Ambiguous:
          throw Error(ErrKind::AmbiguousEdge,
                      "adjacency of pairs " + pair_text(p / n, p % n) +
                          " and " + pair_text(q / n, q % n) +
                          " is undecidable; raise precision");
      }
    }
  PairPartition part;
  part.n = n;
  part.label.resize(np);
  for (int p = 0; p < np; ++p) part.label[p] = dsu.find(p);
  return part;
}

NomuraResult nomura_algebra(const SpinMatrix& m, const ScalarContext& ctx,
                            const NomuraOptions& opt) {
  NomuraResult out;
  // components of the pair graph of M^T give a basis of the algebra of M
  out.partition = nomura_graph(transpose(m), ctx, opt);
  out.orientation = "pair graph of the transpose";
  int n = out.partition.n;
  std::vector<int> labs = out.partition.class_labels();
  std::map<int, int> pos;
  for (int i = 0; i < static_cast<int>(labs.size()); ++i) pos[labs[i]] = i;
  out.basis.assign(labs.size(), IntMatrix(n));
  for (int p = 0; p < n * n; ++p)
    out.basis[pos.at(out.partition.label[p])].at(p / n, p % n) = 1;
  for (int i = 0; i < static_cast<int>(out.basis.size()); ++i)
    out.basis[i].set_label("N" + std::to_string(i));
  return out;
}

VerificationReport membership_test(const IntMatrix& candidate,
                                   const SpinMatrix& m,
                                   const ScalarContext& ctx) {
  VerificationReport rep = make_report("membership", ctx.k, ctx.backend_name());
  rep.params["candidate"] =
      candidate.label().empty() ? "unlabeled" : candidate.label();
  rep.params["matrix"] = m.label().empty() ? "unlabeled" : m.label();
  if (candidate.side() != m.side())
    throw Error(ErrKind::ShapeMismatch, "candidate and model sides differ");
  int n = m.side();
  detail_int(rep, "side", n);
  YTable t = y_table(m, ctx);
  std::vector<std::vector<int>> sup(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (candidate.at(x, y) != 0) sup[x].push_back(y);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<Scalar> v(n, ctx.zero());
      for (int x = 0; x < n; ++x)
        for (int y : sup[x]) {
          Scalar term = ctx.embed(t.at(a, b, y));
          if (long long c = candidate.at(x, y); c != 1)
            term = ctx.from_int(static_cast<long>(c)) * term;
          v[x] += term;
        }
      // every Y entry is invertible, so the eigenvalue candidate sits at
      // index 0
      Scalar theta = v[0] * ctx.embed(t.at(a, b, 0).inverse());
      for (int x = 0; x < n; ++x) {
        Scalar diff = v[x] - theta * ctx.embed(t.at(a, b, x));
        switch (is_zero(diff, ctx)) {
          case ZeroStatus::Zero:
            break;
          case ZeroStatus::NonZero:
            rep.fail("pair " + pair_text(a, b) +
                     ": candidate*Y is not a scalar multiple of Y (index " +
                     std::to_string(x) + ")");
            return rep;
          case ZeroStatus::Ambiguous:
            throw Error(ErrKind::AmbiguousZero,
                        "membership residue at pair " + pair_text(a, b) +
                            ", index " + std::to_string(x) +
                            " is undecidable; raise precision");
        }
      }
    }
  detail_int(rep, "pairs_checked", static_cast<long long>(n) * n);
  return rep;
}

namespace {

VerificationReport lemma2(const HadamardMatrix& h, const ScalarContext& ctx,
                          const LemmaOptions& opt) {
  VerificationReport rep = make_report("lemma2", h.order(), ctx.backend_name());
  int k = h.order();
  int n = 4 * k;
  YTable y = y_table(build_model(ModelKind::Wtilde, h, ctx), ctx);
  YTable yp = y_table(build_model(ModelKind::WtildePrime, h, ctx), ctx);
  Monomial iu = ctx.loop_i();
  Monomial iinv = iu.inverse();
  auto sweep = vertex_pair_sweep(n, opt);
  rep.params["sweep"] = opt.sample > 0 ? "sampled" : "exhaustive";
  for (auto [p, q] : sweep) {
    int pa1 = Index4k::from_linear(p, k).a1;
    int qa1 = Index4k::from_linear(q, k).a1;
    for (int x = 0; x < n; ++x) {
      Monomial rhs = y.at(p, q, x);
      if (pa1 != qa1 && Index4k::from_linear(x, k).a1 == 1)
        rhs = rhs * (pa1 == 0 ? iu : iinv);
      if (!(ctx.embed(yp.at(p, q, x)) == ctx.embed(rhs))) {
        rep.fail("LemmaFailed: lemma 2 at pair (" + vertex_text(p, k) + "," +
                 vertex_text(q, k) + "), index " + std::to_string(x));
        return rep;
      }
    }
  }
  detail_int(rep, "pairs_checked", static_cast<long long>(sweep.size()));
  return rep;
}

VerificationReport lemma3(const HadamardMatrix& h, const ScalarContext& ctx) {
  VerificationReport rep = make_report("lemma3", h.order(), ctx.backend_name());
  int k = h.order();
  int n = 4 * k;
  auto rels = build_relations(h);
  for (int idx : {kA1, kA3}) {
    const IntMatrix& src = rels[idx].mat;
    IntMatrix img(n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (src.at(u, v)) img.at(tau_vertex(u, k), v) = 1;
    int want = idx == kA1 ? kA1p : kA3p;
    if (!(img == rels[want].mat)) {
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (img.at(u, v) != rels[want].mat.at(u, v)) {
            rep.fail("LemmaFailed: lemma 3: sigma image of " +
                     rels[idx].name + " differs from " + rels[want].name +
                     " at (" + vertex_text(u, k) + "," + vertex_text(v, k) +
                     ")");
            return rep;
          }
    }
  }
  // sanity: tau is an involution, so sigma permutes the pairs
  for (int p = 0; p < n; ++p)
    if (tau_vertex(tau_vertex(p, k), k) != p) {
      rep.fail("LemmaFailed: lemma 3: tau is not an involution at vertex " +
               vertex_text(p, k));
      return rep;
    }
  detail_int(rep, "pairs_mapped", 2LL * n * n);
  return rep;
}

VerificationReport lemma4(const HadamardMatrix& h, const ScalarContext& ctx,
                          const LemmaOptions& opt) {
  VerificationReport rep = make_report("lemma4", h.order(), ctx.backend_name());
  int k = h.order();
  int n = 4 * k;
  YTable y = y_table(build_model(ModelKind::Wtilde, h, ctx), ctx);
  auto sweep = vertex_pair_sweep(n, opt);
  rep.params["sweep"] = opt.sample > 0 ? "sampled" : "exhaustive";
  for (auto [p, q] : sweep) {
    int a1 = Index4k::from_linear(p, k).a1;
    int pt = tau_vertex(p, k);
    for (int x = 0; x < n; ++x) {
      Monomial rhs = y.at(p, q, x);
      // (-D^2)(x,x) = (-1)^(gamma_1 + 1)
      if (a1 == 1 && Index4k::from_linear(x, k).a1 == 0) rhs = rhs.negated();
      if (!(ctx.embed(y.at(pt, q, x)) == ctx.embed(rhs))) {
        rep.fail("LemmaFailed: lemma 4 at pair (" + vertex_text(p, k) + "," +
                 vertex_text(q, k) + "), index " + std::to_string(x));
        return rep;
      }
    }
  }
  detail_int(rep, "pairs_checked", static_cast<long long>(sweep.size()));
  return rep;
}

VerificationReport lemma5(const HadamardMatrix& h, const ScalarContext& ctx,
                          const LemmaOptions& opt) {
  VerificationReport rep = make_report("lemma5", h.order(), ctx.backend_name());
  int k = h.order();
  int n = 4 * k;
  auto rels = build_relations(h);
  std::vector<std::pair<int, int>> rpairs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (rels[kA1].mat.at(u, v) || rels[kA3].mat.at(u, v))
        rpairs.emplace_back(u, v);
  YTable y = y_table(build_model(ModelKind::Wtilde, h, ctx), ctx);
  YTable yp = y_table(build_model(ModelKind::WtildePrime, h, ctx), ctx);

  int r = static_cast<int>(rpairs.size());
  std::vector<std::pair<int, int>> picks;  // indices into rpairs
  long long total = static_cast<long long>(r) * r;
  if (opt.sample <= 0 || opt.sample >= total) {
    picks.reserve(total);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) picks.emplace_back(i, j);
    rep.params["sweep"] = "exhaustive";
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> pick(0, r - 1);
    picks.reserve(opt.sample);
    for (int i = 0; i < opt.sample; ++i)
      picks.emplace_back(pick(rng), pick(rng));
    rep.params["sweep"] = "sampled";
  }

  for (auto [i, j] : picks) {
    auto [p, q] = rpairs[i];
    auto [pp, qq] = rpairs[j];
    int a1 = Index4k::from_linear(p, k).a1;
    int a1p = Index4k::from_linear(pp, k).a1;
    Scalar lhs =
        y_inner(yp, tau_vertex(p, k), q, tau_vertex(pp, k), qq, ctx);
    Scalar rhs = y_inner(y, p, q, pp, qq, ctx);
    if ((a1 + a1p) % 2 == 1) rhs = -rhs;
    switch (is_zero(lhs - rhs, ctx)) {
      case ZeroStatus::Zero:
        break;
      case ZeroStatus::NonZero:
        rep.fail("LemmaFailed: lemma 5 at pairs (" + vertex_text(p, k) + "," +
                 vertex_text(q, k) + ") and (" + vertex_text(pp, k) + "," +
                 vertex_text(qq, k) + ")");
        return rep;
      case ZeroStatus::Ambiguous:
        throw Error(ErrKind::AmbiguousZero,
                    "lemma 5 inner-product identity undecidable; raise "
                    "precision");
    }
  }
  detail_int(rep, "pair_pairs_checked", static_cast<long long>(picks.size()));
  detail_int(rep, "relation_pairs", r);
  return rep;
}

}  // namespace

VerificationReport lemma_check(int which, const HadamardMatrix& h,
                               const ScalarContext& ctx,
                               const LemmaOptions& opt) {
  switch (which) {
    case 2:
      return lemma2(h, ctx, opt);
    case 3:
      return lemma3(h, ctx);
    case 4:
      return lemma4(h, ctx, opt);
    case 5:
      return lemma5(h, ctx, opt);
    default:
      throw Error(ErrKind::ConstraintViolation, "lemma id must be 2..5");
  }
}

std::vector<VerificationReport> lemma_checks(const HadamardMatrix& h,
                                             const ScalarContext& ctx,
                                             const LemmaOptions& opt) {
  std::vector<VerificationReport> out;
  out.reserve(4);
  for (int which = 2; which <= 5; ++which)
    out.push_back(lemma_check(which, h, ctx, opt));
  return out;
}

}  // namespace spinkit
