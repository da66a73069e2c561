#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nomic/subspace.hpp"

namespace nomic {

// One subsystem block inside a composite space. dim = 2 * (degrees of freedom),
// offset is the index of the block's first coordinate.
struct Factor {
  std::string name;
  std::size_t offset = 0;
  std::size_t dim = 0;
};

// 2n-dimensional symplectic vector space over a fixed field. Basis order is
// q_1..q_n, p_1..p_n within each factor, and factor blocks stay contiguous in
// composition order; the global basis is never re-sorted.
class PhaseSpace {
 public:
  static PhaseSpace make(const Field& f, std::size_t n, std::string name = "sys");
  static PhaseSpace direct_sum(const std::vector<PhaseSpace>& parts);

  const Field& field() const;
  std::size_t n() const;    // total degrees of freedom
  std::size_t dim() const;  // 2n
  const Matrix& omega() const;
  const std::vector<std::string>& basis_labels() const;
  const std::vector<Factor>& factor_layout() const;

  PhaseSpace factor(std::size_t i) const;
  std::size_t factor_index(const std::string& name) const;  // throws UnknownFactorError

  // Coordinate maps between a factor block and the whole space.
  Vec embed(std::size_t i, const Vec& x) const;
  Vec project(std::size_t i, const Vec& x) const;
  Subspace factor_subspace(std::size_t i) const;

  bool operator==(const PhaseSpace& b) const;
  bool operator!=(const PhaseSpace& b) const { return !(*this == b); }

 private:
  struct Impl;
  explicit PhaseSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

PhaseSpace direct_sum(const PhaseSpace& a, const PhaseSpace& b);

struct OnticState {
  PhaseSpace space;
  Vec coords;

  bool operator==(const OnticState& b) const {
    return space == b.space && coords == b.coords;
  }
};

OnticState make_ontic(const PhaseSpace& space, const std::vector<long long>& coords);

Scalar symplectic_form(const PhaseSpace& space, const Vec& x, const Vec& y);
Scalar symplectic_form(const OnticState& x, const OnticState& y);

// {v : omega(w, v) = 0 for all w in W}.
Subspace symplectic_complement(const PhaseSpace& space, const Subspace& w);

enum class SubspaceClass { Symplectic, Isotropic, Lagrangian, Neither };

std::string to_string(SubspaceClass c);

// Lagrangian takes precedence over Isotropic, Isotropic over Symplectic
// (the zero subspace is both isotropic and symplectically disjoint from
// its complement; it reports as Isotropic).
SubspaceClass classify_subspace(const PhaseSpace& space, const Subspace& w);

}  // namespace nomic
