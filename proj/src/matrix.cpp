#include "nomic/matrix.hpp"

#include <sstream>

namespace nomic {

namespace {
void check_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vector sizes differ");
}
}  // namespace

Vec operator+(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec operator*(const Scalar& c, const Vec& v) {
  Vec r(v);
  for (auto& x : r) x *= c;
  return r;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Scalar dot(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  if (a.empty()) throw DimensionError("dot of empty vectors has no field");
  Scalar s(a[0].field(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, Scalar(f, 0)); }

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

bool vec_less(const Vec& a, const Vec& b) {
  check_same_dim(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i].less(b[i]);
  }
  return false;
}

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), field_(f), a_(rows * cols, Scalar(f, 0)) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(f, 1);
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<std::vector<long long>>& rows,
                         std::size_t cols_if_empty) {
  std::size_t nc = rows.empty() ? cols_if_empty : rows[0].size();
  Matrix m(f, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw DimensionError("ragged matrix literal");
    for (std::size_t c = 0; c < nc; ++c) m.at(r, c) = Scalar(f, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_vec_rows(const Field& f, const std::vector<Vec>& rows,
                             std::size_t cols_if_empty) {
  std::size_t nc = rows.empty() ? cols_if_empty : rows[0].size();
  Matrix m(f, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw DimensionError("ragged row list");
    for (std::size_t c = 0; c < nc; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Scalar& Matrix::at(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
  return a_[r * cols_ + c];
}

const Scalar& Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
  return a_[r * cols_ + c];
}

Vec Matrix::row(std::size_t r) const {
  Vec v;
  v.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v.push_back(at(r, c));
  return v;
}

Vec Matrix::col(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::operator-() const {
  Matrix t(*this);
  for (auto& x : t.a_) x = -x;
  return t;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  Vec r = zero_vec(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t c = 0; c < cols_; ++c) r[i] += at(i, c) * v[c];
  return r;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("submatrix out of range");
  Matrix s(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) s.at(r, c) = at(r0 + r, c0 + c);
  return s;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sizes differ");
  Matrix r(a);
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sizes differ");
  Matrix r(a);
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product size mismatch");
  Matrix r(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

Matrix operator*(const Scalar& c, const Matrix& m) {
  Matrix r(m);
  for (auto& x : r.a_) x *= c;
  return r;
}

bool Matrix::operator==(const Matrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_ || !(field_ == b.field_)) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != b.a_[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << " ";
      os << at(r, c).str();
    }
  }
  os << "]";
  return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack row mismatch");
  Matrix r(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t c = 0; c < a.cols(); ++c) r.at(i, c) = a.at(i, c);
    for (std::size_t c = 0; c < b.cols(); ++c) r.at(i, a.cols() + c) = b.at(i, c);
  }
  return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack column mismatch");
  Matrix r(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t c = 0; c < a.cols(); ++c) r.at(i, c) = a.at(i, c);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t c = 0; c < a.cols(); ++c) r.at(a.rows() + i, c) = b.at(i, c);
  return r;
}

RrefResult rref(const Matrix& m) {
  Matrix a(m);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a.at(piv, c).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(r, j));
    Scalar inv = a.at(r, c).inverse();
    for (std::size_t j = 0; j < a.cols(); ++j) a.at(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      Scalar factor = a.at(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) -= factor * a.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult{a, pivots, r};
}

Matrix kernel_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec v = zero_vec(m.field(), m.cols());
    v[c] = Scalar(m.field(), 1);
    for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = -rr.m.at(i, c);
    basis.push_back(v);
  }
  // The free-column vectors need not be echelon-ordered by leading entry;
  // normalize so callers can rely on a canonical form.
  Matrix b = Matrix::from_vec_rows(m.field(), basis, m.cols());
  RrefResult rb = rref(b);
  return rb.m.submatrix(0, 0, rb.rank, m.cols());
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw DimensionError("solve size mismatch");
  Matrix col(m.field(), m.rows(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) col.at(i, 0) = b[i];
  RrefResult rr = rref(hstack(m, col));
  // Inconsistent iff some pivot lands in the appended column.
  for (std::size_t c : rr.pivots)
    if (c == m.cols()) return std::nullopt;
  Vec x = zero_vec(m.field(), m.cols());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.m.at(i, m.cols());
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of non-square matrix");
  Matrix aug = hstack(m, Matrix::identity(m.field(), m.rows()));
  RrefResult rr = rref(aug);
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (i >= rr.pivots.size() || rr.pivots[i] != i) throw ValueError("matrix is singular");
  return rr.m.submatrix(0, m.cols(), m.rows(), m.cols());
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

}  // namespace nomic
