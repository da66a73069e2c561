#pragma once

#include <vector>

#include "nomic/matrix.hpp"

namespace nomic {

// Linear subspace of F^n stored as a reduced-echelon row basis, so equality
// of subspaces is equality of representations.
class Subspace {
 public:
  static Subspace from_span(const Field& f, std::size_t ambient, const Matrix& generators);
  static Subspace from_span_rows(const Field& f, std::size_t ambient,
                                 const std::vector<Vec>& generators);
  static Subspace zero(const Field& f, std::size_t ambient);
  static Subspace full(const Field& f, std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Field& field() const { return field_; }
  const Matrix& basis() const { return basis_; }  // dim x ambient, reduced echelon
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& b) const;
  bool operator!=(const Subspace& b) const { return !(*this == b); }

  // Unique representative of v + this with zeros in the pivot coordinates.
  Vec coset_rep(const Vec& v) const;

  // All elements; prime fields only, guarded against large spans.
  std::vector<Vec> enumerate() const;

  std::string str() const { return basis_.str(); }

 private:
  Subspace(const Field& f, std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots);
  std::size_t ambient_;
  Field field_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
// Complement with respect to the standard inner product <x,y> = sum x_i y_i.
Subspace orthogonal_complement(const Subspace& s);

Subspace kernel(const Matrix& m);  // {x : M x = 0} in F^cols
Subspace image(const Matrix& m);   // column space, in F^rows

// Affine subspace b + direction with b the canonical coset representative.
struct AffineSubspace {
  Subspace direction;
  Vec base;
  bool operator==(const AffineSubspace& o) const {
    return direction == o.direction && base == o.base;
  }
};

AffineSubspace make_affine(const Subspace& direction, const Vec& base);
std::vector<Vec> enumerate_affine(const AffineSubspace& a);

}  // namespace nomic
