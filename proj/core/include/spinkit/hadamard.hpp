#pragma once

// Hadamard matrices: +-1 square matrices with H H^T = n I.  Constructions:
// Sylvester doubling (orders 2^m) and the Paley quadratic-residue matrix
// (orders q + 1 for primes q = 3 mod 4).

#include <cstdint>
#include <string>
#include <vector>

#include "spinkit/matrix.hpp"
#include "spinkit/report.hpp"

namespace spinkit {

class HadamardMatrix {
 public:
  HadamardMatrix() = default;
  explicit HadamardMatrix(int order, int fill = 1);

  int order() const { return n_; }
  int sign(int r, int c) const { return s_[index(r, c)]; }
  void set_sign(int r, int c, int v);

  IntMatrix to_int() const;
  bool operator==(const HadamardMatrix& o) const = default;

 private:
  int n_ = 0;
  std::vector<int8_t> s_;
  size_t index(int r, int c) const;
};

// Doubling construction; returns the matrix of order 2^m (m <= 8).
HadamardMatrix sylvester(int m);

// q an odd prime with q = 3 mod 4; returns the skew matrix of order q + 1
// built from the quadratic character.
HadamardMatrix paley1(long q);

// Checks entries and H H^T = n I; failures carry a witness entry.
VerificationReport validate_hadamard(const HadamardMatrix& h);

// Text format: one row per line, characters '+' and '-'; blank lines and
// lines starting with '#' are ignored.
std::string serialize_hadamard(const HadamardMatrix& h);
HadamardMatrix parse_hadamard(const std::string& text);

HadamardMatrix load_hadamard(const std::string& path);
void save_hadamard(const HadamardMatrix& h, const std::string& path);

}  // namespace spinkit
