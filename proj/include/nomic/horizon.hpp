#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "nomic/measurement.hpp"

namespace nomic {

// Filter walks candidate columns with pairwise form constraints; Closure takes
// the orbit of the identity under left multiplication by transvections. Both
// produce each matrix exactly once; Auto picks Filter while the raw candidate
// count p^(d^2) stays at most 10^8 and Closure beyond that.
enum class EnumMethod { Auto, Filter, Closure };

// Calls fn once per symplectic matrix on the space, in a deterministic order.
// Prime fields only; dim above the cap is refused.
void for_each_symplectic(const PhaseSpace& space, const std::function<void(const Matrix&)>& fn,
                         EnumMethod method = EnumMethod::Auto, std::size_t dim_cap = 4);

std::vector<Matrix> enumerate_symplectic(const PhaseSpace& space,
                                         EnumMethod method = EnumMethod::Auto,
                                         std::size_t dim_cap = 4);

// x -> x + lambda omega(x, v) v, symplectic for every v and lambda.
Matrix transvection_matrix(const PhaseSpace& space, const Vec& v, const Scalar& lambda);

// All subspaces of F^ambient, ordered by dimension then by basis encoding.
std::vector<Subspace> enumerate_subspaces(const Field& f, std::size_t ambient);
std::vector<Subspace> enumerate_lagrangians(const PhaseSpace& space);
std::vector<Subspace> enumerate_isotropic(const PhaseSpace& space);  // includes {0}
std::vector<EpistemicState> enumerate_epistemic_states(const PhaseSpace& space);

enum class HorizonMode { Exhaustive, Sample };

struct SampleOptions {
  std::uint64_t seed = 20240817;
  std::size_t samples = 100;
  std::size_t word_length = 8;
};

struct HorizonViolation {
  Matrix m;
  Subspace lagrangian;
  std::string detail;
};

// Evidence object for the two-way claim "measurable exactly when Poisson":
// poisson_violations collects interactions whose measured variable has a
// nonvanishing bracket, non_poisson_measurable_claims collects failures of the
// constructive direction. PASS means both lists are empty.
struct HorizonReport {
  Field field = Field::rationals();
  std::size_t n_s = 0;
  std::size_t n_a = 0;
  HorizonMode mode = HorizonMode::Exhaustive;
  unsigned long long group_order = 0;
  unsigned long long lagrangian_count = 0;
  unsigned long long measurements_checked = 0;
  unsigned long long variable_classes_checked = 0;
  std::vector<HorizonViolation> poisson_violations;
  std::vector<HorizonViolation> non_poisson_measurable_claims;
  std::uint64_t seed = 0;
  std::size_t word_length = 0;
  std::size_t sample_count = 0;
  double elapsed_seconds = 0.0;
  bool pass() const {
    return poisson_violations.empty() && non_poisson_measurable_claims.empty();
  }
};

// threads splits the exhaustive interaction sweep; witness lists are sorted
// canonically, so the report does not depend on the split.
HorizonReport verify_horizon(const Field& f, std::size_t n_s, std::size_t n_a, HorizonMode mode,
                             SampleOptions opts = {},
                             ComplementRule rule = ComplementRule::Canonical,
                             std::size_t threads = 1);

struct ScenarioStep {
  std::string label;
  AffineSymplectic map;
};

struct ScenarioPointer {
  std::string label;
  LinearVariable var;
};

struct Scenario {
  PhaseSpace space;
  std::vector<ScenarioStep> steps;
  std::vector<ScenarioPointer> pointers;
  Vec initial;
};

struct ScenarioTrace {
  std::vector<ScenarioStep> steps;
  std::vector<OnticState> states;                 // one more than steps
  std::vector<std::vector<Vec>> pointer_readings;  // per time, per pointer
  std::vector<std::string> disturbance_notes;      // per step, coordinate deltas
};

ScenarioTrace run_sequence(const Scenario& sc);

// Recomputes every snapshot from its predecessor and every pointer reading;
// throws MathError on the first disagreement.
void verify_trace(const ScenarioTrace& t, const std::vector<ScenarioPointer>& pointers);

// Two probes reading the momentum and then the position of a middle system:
// joint space A1 + S + A2 in coordinates (q1, p1, qS, pS, q2, p2), pointer
// variables q1 and q2.
Scenario two_probe_scenario(const Field& f, const Vec& initial);
Scenario two_probe_scenario(const Field& f);  // all-zero initial state

// Closed forms of the two-probe run:
// after the first step  (u1+u4, u2, u2+u3, u4, u5, u6),
// after the second step (u1+u4, u2, u2+u3, u4-u6, u2+u3+u5, u6).
Vec two_probe_after_first(const Vec& u);
Vec two_probe_after_second(const Vec& u);

// Replays the two-probe scenario and checks both closed forms; throws
// MathError with the failing coordinate on any mismatch.
ScenarioTrace run_two_probe_checked(const Field& f, const Vec& initial);

// Exhaustive hunt for a duplicating interaction: every symplectic matrix on
// space + space, every shift, every epistemic ready state. Returns the first
// working pair or nothing if the whole search space fails. Prime fields only,
// joint dimension capped.
std::optional<Copier> search_copier(const PhaseSpace& space, const LinearVariable& z,
                                    std::size_t dim_cap = 4);

// A preparation would drive every object state to one fixed target, for every
// subject microstate compatible with the subject's initial epistemic state.
struct Preparation {
  AffineSymplectic map;
  EpistemicState initial;
  Vec target;
};

// Exhaustive hunt for a preparation: every symplectic matrix on object +
// subject, every epistemic state of the subject. Shifts only translate the
// target and never create or destroy constancy, so the zero shift stands in
// for all of them. Returns the first find or nothing. Prime fields only,
// joint dimension capped.
std::optional<Preparation> search_preparation(const PhaseSpace& object,
                                              const PhaseSpace& subject,
                                              std::size_t dim_cap = 4);

}  // namespace nomic
