#pragma once

#include <optional>
#include <utility>

#include "nomic/epistemic.hpp"
#include "nomic/variable.hpp"

namespace nomic {

// Rule for completing a Lagrangian (or the contingent part of the pointer
// value space) to a direct-sum decomposition. Canonical: orthogonal complement
// over the rationals, standard basis vectors at the non-pivot coordinates over
// a prime field. GreedyTop exists so choice-independence can be tested against
// a second deterministic complement; prime fields only.
enum class ComplementRule { Canonical, GreedyTop };

Subspace complement_subspace(const Subspace& w, ComplementRule rule = ComplementRule::Canonical);

// An agent: a phase space together with the Lagrangian Q of functionals it can
// read directly (its pointer) and a complement P holding the rest.
class ToySubject {
 public:
  const PhaseSpace& space() const { return space_; }
  const Subspace& q() const { return q_; }
  const Subspace& p() const { return p_; }
  ComplementRule rule() const { return rule_; }

  bool operator==(const ToySubject& b) const {
    return space_ == b.space_ && q_ == b.q_ && p_ == b.p_;
  }
  bool operator!=(const ToySubject& b) const { return !(*this == b); }

 private:
  friend ToySubject make_subject(const PhaseSpace&, const Subspace&, ComplementRule);
  ToySubject(PhaseSpace space, Subspace q, Subspace p, ComplementRule rule)
      : space_(std::move(space)), q_(std::move(q)), p_(std::move(p)), rule_(rule) {}
  PhaseSpace space_;
  Subspace q_;
  Subspace p_;
  ComplementRule rule_;
};

ToySubject make_subject(const PhaseSpace& space, const Subspace& q,
                        ComplementRule rule = ComplementRule::Canonical);

// An interaction that lets the subject learn about the object: a reversible
// map on object + subject, entered with the subject's pointer at ready_q.
class Measurement {
 public:
  const PhaseSpace& object() const { return object_; }
  const ToySubject& subject() const { return subject_; }
  const Vec& ready_q() const { return ready_q_; }
  const AffineSymplectic& map() const { return map_; }
  const PhaseSpace& joint() const { return map_.space(); }

  // Coordinate split of the joint space: object block first, subject block
  // after it.
  Vec embed_object(const Vec& s) const;
  Vec embed_subject(const Vec& a) const;
  Vec project_object(const Vec& x) const;
  Vec project_subject(const Vec& x) const;

  // Joint input with the object at s and the subject at ready_q + p.
  Vec input_state(const Vec& s, const Vec& p) const;

 private:
  friend Measurement make_measurement(const PhaseSpace&, const ToySubject&, const Vec&,
                                      const AffineSymplectic&);
  Measurement(PhaseSpace object, ToySubject subject, Vec ready_q, AffineSymplectic map)
      : object_(std::move(object)),
        subject_(std::move(subject)),
        ready_q_(std::move(ready_q)),
        map_(std::move(map)) {}
  PhaseSpace object_;
  ToySubject subject_;
  Vec ready_q_;
  AffineSymplectic map_;
};

Measurement make_measurement(const PhaseSpace& object, const ToySubject& subject,
                             const Vec& ready_q, const AffineSymplectic& map);

// The measurement matrix rewritten in coordinates adapted to object, pointer
// and momentum, then refined by splitting the pointer value space into the
// part driven by the subject's initial momentum (contingent) and its
// complement (free). In the refined ordering the free rows never see the
// momentum columns: m_fp = 0.
struct BlockDecomposition {
  std::size_t ds, dq, dp, df, dc;
  Matrix m_ss, m_sq, m_sp;
  Matrix m_qs, m_qq, m_qp;
  Matrix m_ps, m_pq, m_pp;
  Matrix f_basis, c_basis;  // rows spanning the free / contingent parts of the value space
  Matrix proj_f, proj_c;    // value-space coordinates along the other part
  Matrix m_fs, m_ff, m_fc, m_fp;
  Matrix m_cs, m_cp;
  Matrix read_q;  // pointer value of a joint state
  Matrix read_f;  // free part of the pointer value
  Vec f_offset;   // free value contributed by ready_q and the shift
};

BlockDecomposition blocks(const Measurement& meas);

// The pointer value as two variables on the subject's space: the part that
// depends on the subject's initial momentum and the part that does not.
std::pair<LinearVariable, LinearVariable> manifest_split(const Measurement& meas);

// The most informative variable the subject can learn: the free part of its
// pointer after the interaction, as a function of the object's initial state.
LinearVariable measured_variable(const Measurement& meas);

// Reads the object variable off the subject's pointer after the interaction:
// z(s) = on_pointer * pointer_value + offset for every initial momentum.
struct Extractor {
  Matrix on_free;
  Matrix on_pointer;
  Vec offset;
};

// Two runs with equal pointer values but different variable readings.
struct FixedWitness {
  Vec s1, p1, s2, p2;
};

struct FixedResult {
  bool fixed;
  std::optional<Extractor> extractor;
  std::optional<FixedWitness> witness;
};

// Decides whether the variable factors through the measured variable, and
// builds the extractor when it does or a witness pair when it does not.
FixedResult is_fixed(const Measurement& meas, const LinearVariable& z);

// Same question settled by enumerating every (s, p) run and checking that the
// pointer value determines the reading; prime fields only.
FixedResult is_fixed_oracle(const Measurement& meas, const LinearVariable& z);
FixedResult is_fixed_oracle(const Measurement& meas, const GeneralVariable& z);

// The interaction that writes z onto a fresh subject's pointer: the object
// keeps its state up to a momentum kick, the pointer accumulates z(s), the
// subject's momentum passes through. Requires z Poisson; the symplectic gate
// on the result is exactly that condition.
Measurement construct_measurement(const PhaseSpace& object, const LinearVariable& z);

// A reversible map on two copies of the space that duplicates the value of z,
// together with the ready state the second copy must start in.
struct Copier {
  AffineSymplectic map;
  EpistemicState ready;
};

Copier construct_copier(const PhaseSpace& space, const LinearVariable& z);

// Whether the interaction sends every pointer state of the subject to another
// pointer state, for every object state. The closed-form test asks that the
// transposed matrix pull object + pointer functionals back onto themselves:
// m^T a lands in S + Q exactly when a does.
bool is_pointer_preserving(const Measurement& meas);

// The same predicate evaluated literally by pushing every pointer-state
// support through the interaction; prime fields only.
bool is_pointer_preserving_definitional(const Measurement& meas);

}  // namespace nomic
