#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "nomic/field.hpp"

namespace nomic {

using Vec = std::vector<Scalar>;

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& c, const Vec& v);
bool is_zero(const Vec& v);
Scalar dot(const Vec& a, const Vec& b);
Vec zero_vec(const Field& f, std::size_t n);
std::string vec_str(const Vec& v);
// Lexicographic order on coordinates; used for canonical sorting of outputs.
bool vec_less(const Vec& a, const Vec& b);

// Dense matrix over one field. Zero rows or columns are allowed (empty
// generator lists and value spaces of trivial variables need them).
class Matrix {
 public:
  Matrix(const Field& f, std::size_t rows, std::size_t cols);  // zeros
  static Matrix identity(const Field& f, std::size_t n);
  // Convenience for literals; entries embed via Scalar(f, value).
  static Matrix from_rows(const Field& f,
                          const std::vector<std::vector<long long>>& rows,
                          std::size_t cols_if_empty = 0);
  static Matrix from_vec_rows(const Field& f, const std::vector<Vec>& rows,
                              std::size_t cols_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& at(std::size_t r, std::size_t c);
  const Scalar& at(std::size_t r, std::size_t c) const;
  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;

  Matrix transpose() const;
  Matrix operator-() const;
  Vec apply(const Vec& v) const;  // M v
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& c, const Matrix& m);
  bool operator==(const Matrix& b) const;
  bool operator!=(const Matrix& b) const { return !(*this == b); }
  bool is_zero() const;

  std::string str() const;

 private:
  std::size_t rows_, cols_;
  Field field_;
  std::vector<Scalar> a_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix m;
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank;
};

RrefResult rref(const Matrix& m);

// Row basis of {x : M x = 0}, already in reduced echelon form.
Matrix kernel_basis(const Matrix& m);

// One solution of M x = b with all free coordinates zero, or nullopt.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

Matrix inverse(const Matrix& m);  // throws ValueError if singular
std::size_t rank(const Matrix& m);

}  // namespace nomic
