#include <doctest.h>

#include <fstream>
#include <sstream>

#include "spinkit/hadamard.hpp"

using namespace spinkit;

namespace {

// fraction-free integer determinant (Bareiss)
long long int_det(const IntMatrix& m0) {
  IntMatrix m = m0;
  int n = m.side();
  long long prev = 1;
  long long sign = 1;
  for (int p = 0; p < n - 1; ++p) {
    if (m.at(p, p) == 0) {
      int swap = -1;
      for (int r = p + 1; r < n; ++r)
        if (m.at(r, p) != 0) { swap = r; break; }
      if (swap < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(m.at(p, c), m.at(swap, c));
      sign = -sign;
    }
    for (int i = p + 1; i < n; ++i)
      for (int j = p + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(p, p) - m.at(i, p) * m.at(p, j)) / prev;
    prev = m.at(p, p);
  }
  return sign * m.at(n - 1, n - 1);
}

}  // namespace

TEST_CASE("sylvester construction") {
  HadamardMatrix h1 = sylvester(0);
  CHECK(h1.order() == 1);
  CHECK(h1.sign(0, 0) == 1);

  HadamardMatrix h2 = sylvester(1);
  CHECK(h2.order() == 2);
  CHECK(h2.sign(0, 0) == 1);
  CHECK(h2.sign(0, 1) == 1);
  CHECK(h2.sign(1, 0) == 1);
  CHECK(h2.sign(1, 1) == -1);

  for (int m = 2; m <= 8; ++m) {
    HadamardMatrix h = sylvester(m);
    CHECK(h.order() == (1 << m));
    CHECK(validate_hadamard(h).ok());
  }

  CHECK_THROWS_AS(sylvester(-1), Error);
  CHECK_THROWS_AS(sylvester(9), Error);
  try {
    sylvester(9);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::SizeLimit);
  }
}

TEST_CASE("determinant magnitudes at small orders") {
  CHECK(std::abs(int_det(sylvester(0).to_int())) == 1);
  CHECK(std::abs(int_det(sylvester(1).to_int())) == 2);        // 2^(2/2)
  CHECK(std::abs(int_det(sylvester(2).to_int())) == 16);       // 4^(4/2)
  CHECK(std::abs(int_det(paley1(3).to_int())) == 16);
}

TEST_CASE("paley construction") {
  HadamardMatrix h4 = paley1(3);
  CHECK(h4.order() == 4);
  CHECK(validate_hadamard(h4).ok());

  for (long q : {3L, 7L, 11L, 19L, 23L, 31L, 47L})
    CHECK(validate_hadamard(paley1(q)).ok());

  // skew part: H + H^T = 2I
  HadamardMatrix h12 = paley1(11);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      CHECK(h12.sign(i, j) + h12.sign(j, i) == (i == j ? 2 : 0));

  for (long q : {2L, 4L, 5L, 9L, 13L, 15L}) {
    CHECK_THROWS_AS(paley1(q), Error);
    try {
      paley1(q);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrKind::BadPrime);
    }
  }
}

TEST_CASE("validation catches corruption") {
  HadamardMatrix h = sylvester(3);
  CHECK(validate_hadamard(h).ok());
  h.set_sign(3, 5, -h.sign(3, 5));
  auto r = validate_hadamard(h);
  CHECK(r.verdict == Verdict::Fail);
  CHECK(!r.witnesses.empty());
  CHECK_THROWS_AS(h.set_sign(0, 0, 2), Error);
  CHECK_THROWS_AS(h.set_sign(8, 0, 1), Error);
}

TEST_CASE("text round trip and parse errors") {
  for (auto make : {+[] { return sylvester(4); }, +[] { return paley1(11); }}) {
    HadamardMatrix h = make();
    CHECK(parse_hadamard(serialize_hadamard(h)) == h);
  }
  CHECK(parse_hadamard("# comment\n\n++\n+-\n").order() == 2);
  CHECK_THROWS_AS(parse_hadamard(""), Error);
  CHECK_THROWS_AS(parse_hadamard("# only comments\n"), Error);
  // wrong width reports the offending line
  try {
    parse_hadamard("++\n+\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  // bad character reports line and column
  try {
    parse_hadamard("++\n+x\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2, column 2") != std::string::npos);
  }
}

TEST_CASE("bundled order-12 matrix matches the paley construction") {
  HadamardMatrix disk = load_hadamard(std::string(SPINKIT_SOURCE_DIR) +
                                      "/data/hadamard/h12.txt");
  CHECK(disk == paley1(11));
  CHECK(validate_hadamard(disk).ok());
}
