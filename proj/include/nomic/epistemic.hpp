#pragma once

#include "nomic/transform.hpp"

namespace nomic {

// Partial knowledge of an ontic state: a set U of known linear functionals
// (stored as vectors paired by the dot product) together with their observed
// values, encoded by any point a realizing them. The agent holds the state
// possible exactly on the support U^perp + a. U must be isotropic for the
// knowledge to be jointly acquirable; a is kept canonical so states with equal
// supports compare equal.
class EpistemicState {
 public:
  static EpistemicState make(const PhaseSpace& space, const Subspace& known, const Vec& a);

  const PhaseSpace& space() const { return space_; }
  const Subspace& known() const { return known_; }
  const Vec& value_point() const { return a_; }

  bool operator==(const EpistemicState& b) const {
    return space_ == b.space_ && known_ == b.known_ && a_ == b.a_;
  }
  bool operator!=(const EpistemicState& b) const { return !(*this == b); }

 private:
  EpistemicState(PhaseSpace space, Subspace known, Vec a)
      : space_(std::move(space)), known_(std::move(known)), a_(std::move(a)) {}
  PhaseSpace space_;
  Subspace known_;
  Vec a_;
};

AffineSubspace support(const EpistemicState& e);
std::vector<Vec> enumerate_support(const EpistemicState& e);  // prime fields only

// Pure states know a Lagrangian's worth of functionals, the most the theory
// permits.
bool is_pure(const EpistemicState& e);

// Independent joint knowledge on the direct sum of the two spaces.
EpistemicState product(const EpistemicState& e1, const EpistemicState& e2);

// Restriction to one factor: keep the functionals supported entirely on it.
EpistemicState marginal(const EpistemicState& e, std::size_t factor);

// State of an agent who knows the value of every functional in the Lagrangian
// q; its support is q^perp + value.
EpistemicState pointer_state(const PhaseSpace& space, const Subspace& q, const Vec& q_value);

// Image of an epistemic state under reversible dynamics: functionals move by
// the inverse transpose, the value point moves with the flow. The support of
// the result is the pointwise image of the original support.
EpistemicState push_epistemic(const AffineSymplectic& f, const EpistemicState& e);

}  // namespace nomic
