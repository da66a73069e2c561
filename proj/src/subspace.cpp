#include "nomic/subspace.hpp"

#include <algorithm>

namespace nomic {

Subspace::Subspace(const Field& f, std::size_t ambient, Matrix basis,
                   std::vector<std::size_t> pivots)
    : ambient_(ambient), field_(f), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::from_span(const Field& f, std::size_t ambient, const Matrix& generators) {
  if (generators.rows() > 0 && generators.cols() != ambient)
    throw DimensionError("generator length differs from ambient dimension");
  if (!(generators.field() == f)) throw FieldMismatchError("generator field differs");
  Matrix gen = generators.rows() == 0 ? Matrix(f, 0, ambient) : generators;
  RrefResult rr = rref(gen);
  return Subspace(f, ambient, rr.m.submatrix(0, 0, rr.rank, ambient),
                  std::vector<std::size_t>(rr.pivots.begin(), rr.pivots.begin() + rr.rank));
}

Subspace Subspace::from_span_rows(const Field& f, std::size_t ambient,
                                  const std::vector<Vec>& generators) {
  return from_span(f, ambient, Matrix::from_vec_rows(f, generators, ambient));
}

Subspace Subspace::zero(const Field& f, std::size_t ambient) {
  return Subspace(f, ambient, Matrix(f, 0, ambient), {});
}

Subspace Subspace::full(const Field& f, std::size_t ambient) {
  std::vector<std::size_t> piv(ambient);
  for (std::size_t i = 0; i < ambient; ++i) piv[i] = i;
  return Subspace(f, ambient, Matrix::identity(f, ambient), piv);
}

Vec Subspace::coset_rep(const Vec& v) const {
  if (v.size() != ambient_) throw DimensionError("vector length differs from ambient dimension");
  Vec r(v);
  for (std::size_t i = 0; i < dim(); ++i) {
    Scalar c = r[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ambient_; ++j) r[j] -= c * basis_.at(i, j);
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return nomic::is_zero(coset_rep(v)); }

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis().row(i))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& b) const {
  return ambient_ == b.ambient_ && field_ == b.field_ && basis_ == b.basis_;
}

std::vector<Vec> Subspace::enumerate() const {
  if (!field_.is_prime_field()) throw UsageError("cannot enumerate a rational subspace");
  long long p = field_.modulus();
  double count = 1;
  for (std::size_t i = 0; i < dim(); ++i) count *= static_cast<double>(p);
  if (count > (1 << 20)) throw InfeasibleError("subspace too large to enumerate");
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<long long> digits(dim(), 0);
  while (true) {
    Vec v = zero_vec(field_, ambient_);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (digits[i] == 0) continue;
      Scalar c(field_, digits[i]);
      for (std::size_t j = 0; j < ambient_; ++j) v[j] += c * basis_.at(i, j);
    }
    out.push_back(std::move(v));
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  std::sort(out.begin(), out.end(), vec_less);
  return out;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw DimensionError("subspace sum needs one common ambient space");
  return Subspace::from_span(a.field(), a.ambient_dim(), vstack(a.basis(), b.basis()));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw DimensionError("subspace intersection needs one common ambient space");
  // x in a iff the constraints (basis of a-perp) annihilate x; stack both
  // constraint sets and take the kernel.
  Matrix ca = orthogonal_complement(a).basis();
  Matrix cb = orthogonal_complement(b).basis();
  return kernel(vstack(ca, cb));
}

Subspace orthogonal_complement(const Subspace& s) { return kernel(s.basis()); }

Subspace kernel(const Matrix& m) {
  Matrix kb = kernel_basis(m);
  return Subspace::from_span(m.field(), m.cols(), kb);
}

Subspace image(const Matrix& m) {
  return Subspace::from_span(m.field(), m.rows(), m.transpose());
}

AffineSubspace make_affine(const Subspace& direction, const Vec& base) {
  return AffineSubspace{direction, direction.coset_rep(base)};
}

std::vector<Vec> enumerate_affine(const AffineSubspace& a) {
  std::vector<Vec> pts = a.direction.enumerate();
  for (auto& v : pts) v = v + a.base;
  std::sort(pts.begin(), pts.end(), vec_less);
  return pts;
}

}  // namespace nomic
