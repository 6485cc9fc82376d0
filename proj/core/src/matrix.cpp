#include "spinkit/matrix.hpp"

#include <json.hpp>

namespace spinkit {

SpinMatrix conj_transpose(const SpinMatrix& a) {
  int n = a.side();
  SpinMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(j, i) = conj(a.at(i, j));
  return r;
}

SpinMatrix scalar_mul(const Scalar& c, const SpinMatrix& a) {
  int n = a.side();
  SpinMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = c * a.at(i, j);
  return r;
}

SpinMatrix lincomb(const std::vector<Scalar>& coeffs,
                   const std::vector<const SpinMatrix*>& mats) {
  if (coeffs.size() != mats.size() || mats.empty())
    throw Error(ErrKind::ShapeMismatch, "lincomb needs matching nonempty lists");
  int n = mats[0]->side();
  SpinMatrix r(n);
  for (size_t t = 0; t < mats.size(); ++t) {
    if (mats[t]->side() != n)
      throw Error(ErrKind::ShapeMismatch, "lincomb matrices differ in side");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.at(i, j) += coeffs[t] * mats[t]->at(i, j);
  }
  return r;
}

SpinMatrix embed_int_matrix(const IntMatrix& a, const ScalarContext& ctx) {
  int n = a.side();
  SpinMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a.at(i, j) != 0) r.at(i, j) = ctx.from_int(a.at(i, j));
  r.set_label(a.label());
  return r;
}

IntMatrix int_identity(int n) {
  IntMatrix r(n);
  for (int i = 0; i < n; ++i) r.at(i, i) = 1;
  return r;
}

IntMatrix int_ones(int n) {
  IntMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = 1;
  return r;
}

ColumnVector matrix_row(const SpinMatrix& a, int r) {
  ColumnVector v(a.side());
  for (int j = 0; j < a.side(); ++j) v[j] = a.at(r, j);
  return v;
}

ColumnVector matrix_col(const SpinMatrix& a, int c) {
  ColumnVector v(a.side());
  for (int i = 0; i < a.side(); ++i) v[i] = a.at(i, c);
  return v;
}

Scalar hermitian_ip(const ColumnVector& a, const ColumnVector& b) {
  if (a.size() != b.size())
    throw Error(ErrKind::ShapeMismatch, "hermitian_ip of different lengths");
  Scalar acc;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * conj(b[i]);
  return acc;
}

MatrixCompare compare_matrices(const SpinMatrix& a, const SpinMatrix& b,
                               const ScalarContext& ctx) {
  if (a.side() != b.side())
    throw Error(ErrKind::ShapeMismatch, "comparing matrices of different sides");
  MatrixCompare ambiguous;
  bool saw_ambiguous = false;
  for (int i = 0; i < a.side(); ++i)
    for (int j = 0; j < a.side(); ++j) {
      switch (is_zero(a.at(i, j) - b.at(i, j), ctx)) {
        case ZeroStatus::Zero:
          break;
        case ZeroStatus::NonZero:
          return MatrixCompare{ZeroStatus::NonZero, i, j};
        case ZeroStatus::Ambiguous:
          if (!saw_ambiguous) ambiguous = MatrixCompare{ZeroStatus::Ambiguous, i, j};
          saw_ambiguous = true;
          break;
      }
    }
  return saw_ambiguous ? ambiguous : MatrixCompare{};
}

std::string dump_matrix(const SpinMatrix& a, const ScalarContext& ctx) {
  nlohmann::json j;
  if (!a.label().empty()) j["label"] = a.label();
  j["n"] = a.side();
  auto rows = nlohmann::json::array();
  for (int i = 0; i < a.side(); ++i) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < a.side(); ++c) row.push_back(format_scalar(a.at(i, c), ctx));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

SpinMatrix parse_matrix(const std::string& text, const ScalarContext& ctx) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrKind::ParseError, std::string("matrix json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("rows") ||
      !j["n"].is_number_integer() || !j["rows"].is_array())
    throw Error(ErrKind::ParseError, "matrix json must be {n, rows}");
  int n = j["n"].get<int>();
  const auto& rows = j["rows"];
  if (n < 0 || static_cast<int>(rows.size()) != n)
    throw Error(ErrKind::ParseError, "matrix json: row count != n");
  SpinMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error(ErrKind::ParseError,
                  "matrix json: row " + std::to_string(i) + " has wrong length");
    for (int c = 0; c < n; ++c) {
      if (!row[c].is_string())
        throw Error(ErrKind::ParseError, "matrix json: entries must be strings");
      m.at(i, c) = parse_scalar(row[c].get<std::string>(), ctx);
    }
  }
  if (j.contains("label") && j["label"].is_string())
    m.set_label(j["label"].get<std::string>());
  return m;
}

}  // namespace spinkit
