#pragma once

#include <map>

#include "nomic/phasespace.hpp"

namespace nomic {

// A tuple of linear functionals read off an ontic state: x -> Zx. Row order is
// preserved verbatim, because downstream constructions index components.
class LinearVariable {
 public:
  static LinearVariable make(const PhaseSpace& space, Matrix z);

  const PhaseSpace& space() const { return space_; }
  const Matrix& rows() const { return z_; }
  std::size_t value_dim() const { return z_.rows(); }

  Vec read(const Vec& x) const;

  bool operator==(const LinearVariable& b) const {
    return space_ == b.space_ && z_ == b.z_;
  }
  bool operator!=(const LinearVariable& b) const { return !(*this == b); }

 private:
  LinearVariable(PhaseSpace space, Matrix z) : space_(std::move(space)), z_(std::move(z)) {}
  PhaseSpace space_;
  Matrix z_;
};

LinearVariable make_variable(const PhaseSpace& space, Matrix z);

Scalar poisson_bracket(const PhaseSpace& space, const Vec& f1, const Vec& f2);

// All component functionals commute: Z Omega Z^T = 0.
bool is_poisson(const LinearVariable& v);

// Throwing variant naming the first offending row pair.
void require_poisson(const LinearVariable& v);

// Preimage classes Z^{-1}(value), each a coset of ker Z, keyed by the value
// the class reads. Prime fields only.
std::vector<std::pair<Vec, std::vector<Vec>>> fibers(const LinearVariable& v);

// Same induced partition; for linear maps that is kernel equality.
bool equivalent(const LinearVariable& v1, const LinearVariable& v2);

Subspace variable_kernel(const LinearVariable& v);

// Arbitrary (possibly nonlinear) variable given by a full lookup table over an
// enumerated state space. Serves as the ground-truth model the linear theory
// is checked against; finite fields only.
class GeneralVariable {
 public:
  static GeneralVariable from_linear(const LinearVariable& v);
  static GeneralVariable from_table(const PhaseSpace& space,
                                    std::map<std::vector<long long>, long long> table);

  const PhaseSpace& space() const { return space_; }
  long long read(const Vec& x) const;

  // Partition blocks, each sorted, keyed by value label.
  std::map<long long, std::vector<Vec>> fibers() const;

  bool same_partition(const GeneralVariable& b) const;

 private:
  GeneralVariable(PhaseSpace space, std::map<std::vector<long long>, long long> table)
      : space_(std::move(space)), table_(std::move(table)) {}
  PhaseSpace space_;
  std::map<std::vector<long long>, long long> table_;
};

}  // namespace nomic
