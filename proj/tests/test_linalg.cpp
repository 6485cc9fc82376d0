#include <doctest.h>

#include <random>

#include "spinkit/matrix.hpp"

using namespace spinkit;

namespace {

SpinMatrix random_matrix(std::mt19937& rng, int n, const ScalarContext& ctx) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<int> apow(0, 3);
  std::uniform_int_distribution<int> mpow(-3, 3);
  SpinMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int c = coeff(rng);
      if (c != 0) m.at(i, j) = ctx.embed(Monomial(Rational(c), apow(rng), mpow(rng)));
    }
  return m;
}

}  // namespace

TEST_CASE("vertex index round trip") {
  for (int k : {1, 2, 4, 8}) {
    for (int idx = 0; idx < 4 * k; ++idx) {
      Index4k v = Index4k::from_linear(idx, k);
      CHECK(v.linear(k) == idx);
      CHECK(v.a1 >= 0);
      CHECK(v.a1 <= 1);
      CHECK(v.a2 >= 0);
      CHECK(v.a2 <= 1);
      CHECK(v.x >= 0);
      CHECK(v.x < k);
    }
  }
  CHECK(Index4k{1, 0, 2}.linear(4) == 10);
}

TEST_CASE("integer matrix algebra") {
  IntMatrix id = int_identity(3);
  IntMatrix j = int_ones(3);
  CHECK(matmul(id, j) == j);
  CHECK(matmul(j, j) == [] {
    IntMatrix m(3);
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 3; ++c) m.at(i, c) = 3;
    return m;
  }());
  CHECK(transpose(transpose(j)) == j);
  IntMatrix a(2);
  CHECK_THROWS_AS(matmul(a, j), Error);
}

TEST_CASE("spin matrix products and conjugate transpose") {
  std::mt19937 rng(11);
  auto ctx = default_context(2);
  SpinMatrix a = random_matrix(rng, 5, ctx);
  SpinMatrix b = random_matrix(rng, 5, ctx);
  SpinMatrix c = random_matrix(rng, 5, ctx);
  CHECK(matmul(matmul(a, b), c) == matmul(a, matmul(b, c)));
  CHECK(transpose(transpose(a)) == a);
  CHECK(conj_transpose(conj_transpose(a)) == a);
  // (AB)^* = B^* A^*
  CHECK(conj_transpose(matmul(a, b)) == matmul(conj_transpose(b), conj_transpose(a)));
}

TEST_CASE("lincomb matches manual expansion") {
  auto ctx = default_context(4);
  SpinMatrix a(2), b(2);
  a.at(0, 0) = ctx.one();
  a.at(1, 1) = ctx.one();
  b.at(0, 1) = ctx.one();
  b.at(1, 0) = ctx.one();
  Scalar two = ctx.from_int(2), z = ctx.embed(Monomial(1, 1, 0));
  SpinMatrix got = lincomb({two, z}, {&a, &b});
  CHECK(got.at(0, 0) == two);
  CHECK(got.at(0, 1) == z);
  CHECK(got.at(1, 0) == z);
  CHECK(got.at(1, 1) == two);
  CHECK_THROWS_AS(lincomb({two}, {&a, &b}), Error);
}

TEST_CASE("block assembly") {
  IntMatrix z(1), o(1);
  o.at(0, 0) = 1;
  std::array<IntMatrix, 16> blocks{o, z, z, z, z, o, z, z, z, z, o, z, z, z, z, o};
  CHECK(block4(blocks) == int_identity(4));
  std::array<IntMatrix, 16> bad = blocks;
  bad[3] = IntMatrix(2);
  CHECK_THROWS_AS(block4(bad), Error);
}

TEST_CASE("hermitian inner product") {
  auto ctx = default_context(1);
  std::mt19937 rng(13);
  SpinMatrix a = random_matrix(rng, 4, ctx);
  ColumnVector u = matrix_row(a, 0), v = matrix_row(a, 1);
  CHECK(hermitian_ip(u, v) == conj(hermitian_ip(v, u)));
  // <e_i, e_j> = delta
  ColumnVector e0{ctx.one(), ctx.zero()}, e1{ctx.zero(), ctx.one()};
  CHECK(hermitian_ip(e0, e1) == ctx.zero());
  CHECK(hermitian_ip(e0, e0) == ctx.one());
  CHECK_THROWS_AS(hermitian_ip(e0, ColumnVector{ctx.one()}), Error);
}

TEST_CASE("semantic matrix comparison") {
  auto ctx = make_context(4, UMode::RealDominant, BackendKind::LaurentHybrid);
  SpinMatrix a(2), b(2);
  a.at(0, 0) = ctx.one();
  b.at(0, 0) = ctx.one();
  CHECK(compare_matrices(a, b, ctx).status == ZeroStatus::Zero);
  b.at(1, 1) = ctx.from_int(3);
  auto diff = compare_matrices(a, b, ctx);
  CHECK(diff.status == ZeroStatus::NonZero);
  CHECK(diff.row == 1);
  CHECK(diff.col == 1);
  // u^4 - 1 is canonically nonzero but vanishes at the k=4 root: ambiguous
  b.at(1, 1) = ctx.embed(Monomial(1, 0, 4)) - ctx.one();
  CHECK(compare_matrices(a, b, ctx).status == ZeroStatus::Ambiguous);
}

TEST_CASE("matrix json round trips") {
  std::mt19937 rng(17);
  for (int k : {2, 5}) {
    auto ctx = k == 2 ? default_context(2)
                      : make_context(5, UMode::RealDominant, BackendKind::LaurentHybrid);
    SpinMatrix m = random_matrix(rng, 6, ctx);
    m.set_label("test");
    std::string text = dump_matrix(m, ctx);
    SpinMatrix back = parse_matrix(text, ctx);
    CHECK(back == m);
    CHECK(back.label() == "test");
    CHECK(dump_matrix(back, ctx) == text);
  }
  auto ctx = default_context(4);
  CHECK_THROWS_AS(parse_matrix("{", ctx), Error);
  CHECK_THROWS_AS(parse_matrix("{\"n\": 2, \"rows\": [[\"0\"]]}", ctx), Error);
  CHECK_THROWS_AS(parse_matrix("{\"n\": 1, \"rows\": [[\"garbage\"]]}", ctx), Error);
}
