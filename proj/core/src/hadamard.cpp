#include "spinkit/hadamard.hpp"

#include <fstream>
#include <sstream>

namespace spinkit {

HadamardMatrix::HadamardMatrix(int order, int fill) : n_(order) {
  if (order < 1) throw Error(ErrKind::ShapeMismatch, "order must be >= 1");
  if (fill != 1 && fill != -1)
    throw Error(ErrKind::ConstraintViolation, "entries must be +1 or -1");
  s_.assign(static_cast<size_t>(order) * order, static_cast<int8_t>(fill));
}

size_t HadamardMatrix::index(int r, int c) const {
  if (r < 0 || r >= n_ || c < 0 || c >= n_)
    throw Error(ErrKind::ShapeMismatch, "entry index out of range");
  return static_cast<size_t>(r) * n_ + c;
}

void HadamardMatrix::set_sign(int r, int c, int v) {
  if (v != 1 && v != -1)
    throw Error(ErrKind::ConstraintViolation, "entries must be +1 or -1");
  s_[index(r, c)] = static_cast<int8_t>(v);
}

IntMatrix HadamardMatrix::to_int() const {
  IntMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = sign(i, j);
  return m;
}

HadamardMatrix sylvester(int m) {
  if (m < 0)
    throw Error(ErrKind::ConstraintViolation,
                "sylvester exponent must be nonnegative, got " + std::to_string(m));
  if (m > 8)
    throw Error(ErrKind::SizeLimit, "sylvester orders above 256 (m > 8) are refused");
  int order = 1 << m;
  HadamardMatrix h(1);
  while (h.order() < order) {
    int n = h.order();
    HadamardMatrix d(2 * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int v = h.sign(i, j);
        d.set_sign(i, j, v);
        d.set_sign(i, j + n, v);
        d.set_sign(i + n, j, v);
        d.set_sign(i + n, j + n, -v);
      }
    h = d;
  }
  return h;
}

namespace {

bool is_odd_prime(long q) {
  if (q < 3 || q % 2 == 0) return false;
  for (long d = 3; d * d <= q; d += 2)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

HadamardMatrix paley1(long q) {
  if (!is_odd_prime(q) || q % 4 != 3)
    throw Error(ErrKind::BadPrime,
                "paley construction needs an odd prime q = 3 mod 4, got " +
                    std::to_string(q));
  if (q + 1 > 1024)
    throw Error(ErrKind::SizeLimit, "paley orders above 1024 are refused");
  // quadratic character chi over GF(q): chi(0) = 0, chi(square) = 1
  std::vector<int> chi(static_cast<size_t>(q), -1);
  chi[0] = 0;
  for (long i = 1; i < q; ++i) chi[static_cast<size_t>((i * i) % q)] = 1;

  int n = static_cast<int>(q + 1);
  HadamardMatrix h(n);
  for (int j = 0; j < n; ++j) h.set_sign(0, j, 1);
  for (int i = 1; i < n; ++i) h.set_sign(i, 0, -1);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      if (i == j) {
        h.set_sign(i, j, 1);
      } else {
        long d = ((i - j) % q + q) % q;
        h.set_sign(i, j, chi[static_cast<size_t>(d)]);
      }
    }
  return h;
}

VerificationReport validate_hadamard(const HadamardMatrix& h) {
  auto r = make_report("hadamard_validate", h.order());
  detail_int(r, "order", h.order());
  int n = h.order();
  IntMatrix g = matmul(h.to_int(), transpose(h.to_int()));
  for (int i = 0; i < n && r.ok(); ++i)
    for (int j = 0; j < n; ++j) {
      long long want = i == j ? n : 0;
      if (g.at(i, j) != want) {
        r.fail("(H H^T)[" + std::to_string(i) + "," + std::to_string(j) +
               "] = " + std::to_string(g.at(i, j)) + ", expected " +
               std::to_string(want));
        break;
      }
    }
  return r;
}

std::string serialize_hadamard(const HadamardMatrix& h) {
  std::string out;
  out.reserve(static_cast<size_t>(h.order()) * (h.order() + 1));
  for (int i = 0; i < h.order(); ++i) {
    for (int j = 0; j < h.order(); ++j) out += h.sign(i, j) > 0 ? '+' : '-';
    out += '\n';
  }
  return out;
}

HadamardMatrix parse_hadamard(const std::string& text) {
  std::vector<std::string> rows;
  std::vector<int> row_lines;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    for (size_t c = 0; c < line.size(); ++c)
      if (line[c] != '+' && line[c] != '-')
        throw Error(ErrKind::ParseError,
                    "line " + std::to_string(lineno) + ", column " +
                        std::to_string(c + 1) + ": expected '+' or '-', got '" +
                        std::string(1, line[c]) + "'");
    rows.push_back(line);
    row_lines.push_back(lineno);
  }
  if (rows.empty()) throw Error(ErrKind::ParseError, "no matrix rows found");
  size_t n = rows.size();
  for (size_t i = 0; i < n; ++i)
    if (rows[i].size() != n)
      throw Error(ErrKind::ParseError,
                  "line " + std::to_string(row_lines[i]) + ": row has " +
                      std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(n) + " (matrix must be square)");
  HadamardMatrix h(static_cast<int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      h.set_sign(static_cast<int>(i), static_cast<int>(j), rows[i][j] == '+' ? 1 : -1);
  return h;
}

HadamardMatrix load_hadamard(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrKind::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_hadamard(buf.str());
}

void save_hadamard(const HadamardMatrix& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrKind::IoError, "cannot open " + path);
  out << serialize_hadamard(h);
  if (!out) throw Error(ErrKind::IoError, "write failed for " + path);
}

}  // namespace spinkit
