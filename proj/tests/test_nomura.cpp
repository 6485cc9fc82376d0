#include <doctest.h>

#include <algorithm>
#include <map>

#include <spinkit/models.hpp>
#include <spinkit/nomura.hpp>
#include <spinkit/schemes.hpp>

using namespace spinkit;

namespace {

bool same_support(const IntMatrix& a, const IntMatrix& b) {
  if (a.side() != b.side()) return false;
  for (int r = 0; r < a.side(); ++r)
    for (int c = 0; c < a.side(); ++c)
      if ((a.at(r, c) != 0) != (b.at(r, c) != 0)) return false;
  return true;
}

int match_relation(const IntMatrix& m, const std::vector<Relation>& rels) {
  for (int i = 0; i < static_cast<int>(rels.size()); ++i)
    if (same_support(m, rels[i].mat)) return i;
  return -1;
}

// the partition classes must be exactly the supports of the given relations
void require_partition_is(const PairPartition& part,
                          const std::vector<Relation>& rels) {
  int n = part.n;
  std::vector<int> rel_of(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < static_cast<int>(rels.size()); ++i)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (rels[i].mat.at(u, v)) rel_of[u * n + v] = i;
  std::map<int, int> label_to_rel, rel_to_label;
  for (int p = 0; p < n * n; ++p) {
    REQUIRE(rel_of[p] >= 0);
    auto [it1, new1] = label_to_rel.emplace(part.label[p], rel_of[p]);
    REQUIRE(it1->second == rel_of[p]);
    auto [it2, new2] = rel_to_label.emplace(rel_of[p], part.label[p]);
    REQUIRE(it2->second == part.label[p]);
  }
}

IntMatrix indicator(const PairPartition& part, int lab) {
  IntMatrix m(part.n);
  for (int p = 0; p < part.n * part.n; ++p)
    if (part.label[p] == lab) m.at(p / part.n, p % part.n) = 1;
  return m;
}

}  // namespace

TEST_CASE("ratio vector tables") {
  ScalarContext ctx = default_context(4);
  HadamardMatrix h = sylvester(2);
  SpinMatrix wt = build_model(ModelKind::Wtilde, h, ctx);
  YTable t = y_table(wt, ctx);
  REQUIRE(t.side() == 16);

  Monomial one(1, 0, 0);
  for (int a = 0; a < 16; ++a)
    for (int x = 0; x < 16; ++x) CHECK(t.at(a, a, x) == one);

  // Y_ba is the entrywise inverse of Y_ab
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      for (int x = 0; x < 16; ++x)
        CHECK(t.at(b, a, x) == t.at(a, b, x).inverse());

  // all entries have unit modulus, so <Y_ab, Y_ab> = 16
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      Scalar ip = y_inner(t, a, b, a, b, ctx);
      CHECK(ip == ctx.from_int(16));
    }

  // 1x1 matrix [c]: the single ratio vector is [1]
  ScalarContext c1 = default_context(1);
  SpinMatrix m1(1);
  m1.at(0, 0) = c1.embed(Monomial(1, 0, 3));
  YTable t1 = y_table(m1, c1);
  CHECK(t1.at(0, 0, 0) == one);

  // a zero entry is rejected
  SpinMatrix holed = wt;
  holed.at(3, 7) = ctx.zero();
  CHECK_THROWS_AS(y_table(holed, ctx), Error);
}

TEST_CASE("pair graph of the symmetric model") {
  ScalarContext ctx = default_context(4);
  HadamardMatrix h = sylvester(2);
  PairPartition part =
      nomura_graph(build_model(ModelKind::Wtilde, h, ctx), ctx);
  REQUIRE(part.classes() == 5);

  std::vector<long long> sizes = part.class_sizes();
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<long long>{16, 16, 64, 64, 96});

  // diagonal pairs always land in one component
  for (int a = 0; a < 16; ++a) CHECK(part.label[a * 16 + a] == 0);

  require_partition_is(part, hadamard_scheme(h).rels);
}

TEST_CASE("pair graph of the nonsymmetric model") {
  ScalarContext ctx = default_context(4);
  HadamardMatrix h = sylvester(2);
  PairPartition part =
      nomura_graph(build_model(ModelKind::WtildePrime, h, ctx), ctx);
  REQUIRE(part.classes() == 5);
  require_partition_is(part, directed_hadamard_scheme(h).rels);
}

TEST_CASE("nomura algebra bases and membership") {
  ScalarContext ctx = default_context(4);
  HadamardMatrix h = sylvester(2);
  SpinMatrix w = build_model(ModelKind::W, h, ctx);
  SpinMatrix wp = build_model(ModelKind::Wprime, h, ctx);

  NomuraResult nw = nomura_algebra(w, ctx);
  REQUIRE(nw.basis.size() == 5);
  CHECK(nw.ambiguous == 0);
  CHECK(nw.orientation == "pair graph of the transpose");
  CHECK(nw.basis[0].label() == "N0");

  auto undirected = hadamard_scheme(h).rels;
  std::vector<bool> hit(5, false);
  IntMatrix sum(16);
  for (const IntMatrix& b : nw.basis) {
    int i = match_relation(b, undirected);
    REQUIRE(i >= 0);
    CHECK(!hit[i]);
    hit[i] = true;
    for (int r = 0; r < 16; ++r)
      for (int c = 0; c < 16; ++c) {
        CHECK(sum.at(r, c) * b.at(r, c) == 0);  // disjoint supports
        sum.at(r, c) += b.at(r, c);
      }
  }
  CHECK(sum == int_ones(16));

  NomuraResult nwp = nomura_algebra(wp, ctx);
  REQUIRE(nwp.basis.size() == 5);
  auto directed = directed_hadamard_scheme(h).rels;
  for (const IntMatrix& b : nwp.basis) CHECK(match_relation(b, directed) >= 0);

  // every basis matrix is certified by the independent eigenvector test
  for (const IntMatrix& b : nw.basis) CHECK(membership_test(b, w, ctx).ok());
  for (const IntMatrix& b : nwp.basis) CHECK(membership_test(b, wp, ctx).ok());

  // identity and all-ones always belong
  CHECK(membership_test(int_identity(16), w, ctx).ok());
  CHECK(membership_test(int_ones(16), w, ctx).ok());
  CHECK(membership_test(int_ones(16), wp, ctx).ok());

  // a matrix whose support is not a union of classes is rejected
  IntMatrix e01(16);
  e01.at(0, 1) = 1;
  VerificationReport neg = membership_test(e01, w, ctx);
  CHECK(neg.verdict == Verdict::Fail);
  CHECK(!neg.witnesses.empty());

  // half of a class (one fiber piece) is not a member either
  IntMatrix half = fiber_relations(h)[2].mat;  // rows of A1 in the top fiber
  CHECK(membership_test(half, w, ctx).verdict == Verdict::Fail);
}

TEST_CASE("gauge changes leave the partition alone") {
  ScalarContext ctx = make_context(4, UMode::Unit, BackendKind::Cyclotomic, 8,
                                   0, {1.0, 0.0}, 1, 3);
  HadamardMatrix h = sylvester(2);
  NomuraResult a = nomura_algebra(build_model(ModelKind::W, h, ctx), ctx);
  NomuraResult b = nomura_algebra(build_model(ModelKind::Wtilde, h, ctx), ctx);
  CHECK(a.partition == b.partition);

  NomuraResult c = nomura_algebra(build_model(ModelKind::Wprime, h, ctx), ctx);
  NomuraResult d = nomura_algebra(
      transpose(build_model(ModelKind::WtildePrime, h, ctx)), ctx);
  CHECK(c.partition == d.partition);
}

TEST_CASE("edge skipping does not change components") {
  ScalarContext ctx = default_context(4);
  HadamardMatrix h = sylvester(2);
  for (ModelKind kind : {ModelKind::Wtilde, ModelKind::WtildePrime}) {
    SpinMatrix m = build_model(kind, h, ctx);
    PairPartition on = nomura_graph(m, ctx, {.skip_connected = true});
    PairPartition off = nomura_graph(m, ctx, {.skip_connected = false});
    CHECK(on == off);
  }
}

TEST_CASE("direct-orientation components match the transposed algebra") {
  ScalarContext ctx = default_context(4);
  HadamardMatrix h = sylvester(2);
  SpinMatrix wp = build_model(ModelKind::Wprime, h, ctx);
  PairPartition direct = nomura_graph(wp, ctx);
  SpinMatrix wpt = transpose(wp);
  for (int lab : direct.class_labels())
    CHECK(membership_test(indicator(direct, lab), wpt, ctx).ok());
}

TEST_CASE("structure lemmas hold exhaustively at order 4") {
  ScalarContext ctx = default_context(4);
  HadamardMatrix h = sylvester(2);
  std::vector<VerificationReport> reps = lemma_checks(h, ctx);
  REQUIRE(reps.size() == 4);
  for (const auto& r : reps) CHECK(r.ok());
  CHECK(reps[0].check_id == "lemma2");
  CHECK(reps[0].details.at("pairs_checked") == "256");
  CHECK(reps[1].check_id == "lemma3");
  CHECK(reps[2].details.at("pairs_checked") == "256");
  CHECK(reps[3].check_id == "lemma5");
  CHECK(reps[3].details.at("pair_pairs_checked") == "16384");
  CHECK(reps[3].details.at("relation_pairs") == "128");

  CHECK_THROWS_AS(lemma_check(6, h, ctx), Error);
  CHECK_THROWS_AS(lemma_check(1, h, ctx), Error);
}

TEST_CASE("order-1 degenerate cases") {
  ScalarContext ctx = default_context(1);
  HadamardMatrix h = sylvester(0);

  // no distance-2 class: both algebras are 4-dimensional and thin (every
  // basis element is a permutation matrix)
  NomuraResult nw = nomura_algebra(build_model(ModelKind::W, h, ctx), ctx);
  NomuraResult nwp =
      nomura_algebra(build_model(ModelKind::Wprime, h, ctx), ctx);
  REQUIRE(nw.basis.size() == 4);
  REQUIRE(nwp.basis.size() == 4);
  IntMatrix id = int_identity(4);
  auto perm_order = [&](const IntMatrix& p) {
    for (int r = 0; r < 4; ++r) {
      long long row = 0;
      for (int c = 0; c < 4; ++c) row += p.at(r, c);
      REQUIRE(row == 1);
    }
    IntMatrix q = p;
    for (int t = 1; t <= 4; ++t) {
      if (q == id) return t;
      q = matmul(q, p);
    }
    return 0;
  };
  // the symmetric model generates the Klein four-group: every class is
  // symmetric and squares to the identity ...
  CHECK(nw.basis[0] == id);
  for (int i = 1; i < 4; ++i) {
    CHECK(nw.basis[i] == transpose(nw.basis[i]));
    CHECK(perm_order(nw.basis[i]) == 2);
  }
  // ... while the nonsymmetric model generates the cyclic group of order 4:
  // a transposed pair of 4-cycles plus one symmetric involution
  CHECK(nwp.basis[0] == id);
  std::vector<int> orders;
  for (int i = 1; i < 4; ++i) orders.push_back(perm_order(nwp.basis[i]));
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<int>{2, 4, 4});
  for (int i = 1; i < 4; ++i) {
    const IntMatrix& b = nwp.basis[i];
    if (perm_order(b) == 4) {
      CHECK(matmul(b, b) != id);
      bool paired = false;
      for (int j = 1; j < 4; ++j) paired = paired || nwp.basis[j] == transpose(b);
      CHECK(paired);
    }
  }
  // so the two algebras have equal dimension but are genuinely different
  CHECK(nw.partition != nwp.partition);

  for (const auto& r : lemma_checks(h, ctx)) CHECK(r.ok());
}

TEST_CASE("order-8 hybrid backend sweep") {
  ScalarContext ctx = default_context(8);
  HadamardMatrix h = sylvester(3);
  PairPartition part =
      nomura_graph(build_model(ModelKind::Wtilde, h, ctx), ctx);
  REQUIRE(part.classes() == 5);
  std::vector<long long> sizes = part.class_sizes();
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<long long>{32, 32, 256, 256, 448});
  require_partition_is(part, hadamard_scheme(h).rels);

  LemmaOptions opt;
  opt.sample = 1000;
  for (const auto& r : lemma_checks(h, ctx, opt)) CHECK(r.ok());
}
