#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nomic/errors.hpp"
#include "nomic/horizon.hpp"

using namespace nomic;

namespace {

int failures = 0;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

void criterion(int n, const std::string& what, double budget_seconds,
               const std::function<std::string()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    detail = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && dt >= budget_seconds) {
    ok = false;
    detail = "over time budget: " + std::to_string(dt) + " s";
  }
  std::cout << "criterion " << std::setw(2) << n << " [" << (ok ? "PASS" : "FAIL") << "] "
            << std::fixed << std::setprecision(2) << std::setw(7) << dt << " s  " << what << ": "
            << detail << "\n";
  if (!ok) failures++;
}

std::vector<Vec> all_states(const PhaseSpace& space) {
  const Field& f = space.field();
  return enumerate_support(EpistemicState::make(space, Subspace::zero(f, space.dim()),
                                                zero_vec(f, space.dim())));
}

std::string key(const Vec& v) { return vec_str(v); }

std::vector<std::string> sorted_keys(const std::vector<Vec>& pts) {
  std::vector<std::string> ks;
  ks.reserve(pts.size());
  for (const Vec& p : pts) ks.push_back(key(p));
  std::sort(ks.begin(), ks.end());
  return ks;
}

Vec concat(const Vec& a, const Vec& b) {
  Vec v = a;
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

Vec slice(const Vec& v, std::size_t from, std::size_t len) {
  return Vec(v.begin() + from, v.begin() + from + len);
}

Vec random_rational_vec(std::mt19937_64& rng, std::size_t dim) {
  Field q = Field::rationals();
  std::uniform_int_distribution<long long> num(-20, 20);
  std::uniform_int_distribution<long long> den(1, 12);
  Vec v;
  for (std::size_t i = 0; i < dim; ++i) v.emplace_back(q, Rational(num(rng), den(rng)));
  return v;
}

// the closed forms for the two-probe sequence, restated from scratch
Vec after_first(const Vec& u) {
  return Vec{u[0] + u[3], u[1], u[1] + u[2], u[3], u[4], u[5]};
}
Vec after_second(const Vec& u) {
  return Vec{u[0] + u[3], u[1], u[1] + u[2], u[3] - u[5], u[1] + u[2] + u[4], u[5]};
}

std::string check_position_table() {
  std::size_t checked = 0;
  auto table = [&](const Field& f, const std::vector<Vec>& states) {
    PhaseSpace bit = PhaseSpace::make(f, 1, "S");
    LinearVariable pos = LinearVariable::make(bit, Matrix::from_rows(f, {{1, 0}}));
    Measurement meas = construct_measurement(bit, pos);
    for (const Vec& v : states) {
      Vec got = meas.map().apply(v);
      Vec want{v[0], v[1] - v[3], v[0] + v[2], v[3]};
      require(got == want, "position table broken at " + key(v) + ": got " + key(got));
      checked++;
    }
  };
  Field f2 = Field::prime(2);
  table(f2, all_states(direct_sum(PhaseSpace::make(f2, 1, "S"), PhaseSpace::make(f2, 1, "A"))));
  std::mt19937_64 rng(11);
  std::vector<Vec> rational_states;
  for (int i = 0; i < 100; ++i) rational_states.push_back(random_rational_vec(rng, 4));
  table(Field::rationals(), rational_states);
  return std::to_string(checked) + " states match the post-interaction table";
}

std::string check_two_probe_traces() {
  std::size_t checked = 0, pointered = 0;
  auto probe = [&](const Field& f, const Vec& u) {
    ScenarioTrace t = run_sequence(two_probe_scenario(f, u));
    require(t.states[1].coords == after_first(u), "first step diverges at " + key(u));
    require(t.states[2].coords == after_second(u), "second step diverges at " + key(u));
    checked++;
    if (u[0].is_zero() && u[4].is_zero()) {
      const auto& readings = t.pointer_readings[2];
      require(readings[0] == Vec{u[3]}, "first pointer wrong at " + key(u));
      require(readings[1] == Vec{u[1] + u[2]}, "second pointer wrong at " + key(u));
      pointered++;
    }
  };
  Field f2 = Field::prime(2);
  PhaseSpace six = two_probe_scenario(f2).space;
  for (const Vec& u : all_states(six)) probe(f2, u);
  Field q = Field::rationals();
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    Vec u = random_rational_vec(rng, 6);
    if (i % 2 == 0) u[0] = u[4] = Scalar(q, 0);
    probe(q, u);
  }
  require(pointered >= 16 + 50, "ready-state subset unexpectedly small");
  return std::to_string(checked) + " traces, " + std::to_string(pointered) +
         " ready-state pointer readings";
}

std::string check_horizon_z2() {
  HorizonReport rep = verify_horizon(Field::prime(2), 1, 1, HorizonMode::Exhaustive);
  require(rep.group_order == 720, "map count " + std::to_string(rep.group_order));
  require(rep.lagrangian_count == 3, "pointer choice count");
  require(rep.measurements_checked == 2160, "interaction count");
  require(rep.pass(), std::to_string(rep.poisson_violations.size()) + " bracket violations");
  return "720 maps x 3 pointers, zero violations";
}

std::string check_horizon_z3() {
  Field f = Field::prime(3);
  HorizonReport rep = verify_horizon(f, 1, 1, HorizonMode::Exhaustive);
  require(rep.pass(), std::to_string(rep.poisson_violations.size()) + " bracket violations");
  require(rep.group_order == 51840, "map count " + std::to_string(rep.group_order));

  PhaseSpace joint =
      direct_sum(PhaseSpace::make(f, 1, "S"), PhaseSpace::make(f, 1, "A"));
  std::vector<Matrix> mats = enumerate_symplectic(joint);
  require(mats.size() == rep.group_order, "sweep and enumeration disagree on the count");
  std::set<std::string> seen;
  std::mt19937_64 rng(17);
  std::size_t sampled = 0;
  for (const Matrix& m : mats) {
    std::string k;
    for (std::size_t r = 0; r < m.rows(); ++r) k += key(m.row(r));
    require(seen.insert(k).second, "duplicate map in the enumeration");
    if (rng() % 10 == 0) {
      require(is_symplectic_matrix(joint, m), "enumerated map fails the literal gate");
      sampled++;
    }
  }
  require(sampled > 4000, "sample unexpectedly small");
  return "51840 maps swept clean; " + std::to_string(sampled) +
         " spot-checked against the literal gate";
}

std::string check_constructive_direction() {
  std::size_t accepted = 0, rejected = 0;
  for (long long p : {2LL, 3LL}) {
    Field f = Field::prime(p);
    PhaseSpace object = PhaseSpace::make(f, 1, "S");
    for (const Subspace& u : enumerate_subspaces(f, 2)) {
      LinearVariable z = LinearVariable::make(object, u.basis());
      SubspaceClass c = classify_subspace(object, u);
      bool isotropic = c == SubspaceClass::Isotropic || c == SubspaceClass::Lagrangian;
      require(is_poisson(z) == isotropic, "bracket test disagrees with isotropy");
      if (isotropic) {
        Measurement meas = construct_measurement(object, z);
        require(is_symplectic_matrix(meas.joint(), meas.map().matrix()),
                "constructed interaction fails the gate");
        require(equivalent(measured_variable(meas), z),
                "round trip lost a variable class of dimension " + std::to_string(u.dim()));
        accepted++;
      } else {
        try {
          construct_measurement(object, z);
          require(false, "variable with nonzero bracket accepted");
        } catch (const NotPoissonError&) {
          rejected++;
        }
      }
    }
  }
  require(accepted == 4 + 5 && rejected == 2, "unexpected class counts");
  return "9 vanishing-bracket classes constructed and round-tripped, 2 rejected";
}

std::string check_fixedness_oracle() {
  Field f = Field::prime(2);
  PhaseSpace object = PhaseSpace::make(f, 1, "S");
  PhaseSpace probe = PhaseSpace::make(f, 1, "A");
  PhaseSpace joint = direct_sum(object, probe);

  std::vector<Matrix> zs;
  zs.push_back(Matrix(f, 0, 2));
  for (int a = 0; a < 4; ++a)
    zs.push_back(Matrix::from_rows(f, {{a >> 1, a & 1}}));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      zs.push_back(Matrix::from_rows(f, {{a >> 1, a & 1}, {b >> 1, b & 1}}));

  std::vector<ToySubject> subjects;
  for (const Subspace& q : enumerate_lagrangians(probe)) subjects.push_back(make_subject(probe, q));
  std::vector<Matrix> mats = enumerate_symplectic(joint);

  std::size_t agreements = 0;
  auto agree = [&](const Measurement& meas) {
    for (const Matrix& zm : zs) {
      LinearVariable z = LinearVariable::make(object, zm);
      FixedResult a = is_fixed(meas, z);
      FixedResult b = is_fixed_oracle(meas, z);
      require(a.fixed == b.fixed, "fixedness verdicts disagree");
      require(a.fixed == a.extractor.has_value(), "missing extractor");
      require(!a.fixed == a.witness.has_value(), "missing witness");
      agreements++;
    }
  };
  for (const Matrix& m : mats) {
    AffineSymplectic map = AffineSymplectic::make(joint, m, zero_vec(f, 4));
    for (const ToySubject& s : subjects)
      agree(make_measurement(object, s, zero_vec(f, 2), map));
  }

  std::vector<std::vector<Vec>> readys(subjects.size());
  for (std::size_t s = 0; s < subjects.size(); ++s)
    for (const Vec& x : all_states(probe))
      if (subjects[s].q().contains(x)) readys[s].push_back(x);
  std::vector<Vec> shifts = all_states(joint);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    AffineSymplectic map =
        AffineSymplectic::make(joint, mats[rng() % mats.size()], shifts[rng() % shifts.size()]);
    std::size_t s = rng() % subjects.size();
    agree(make_measurement(object, subjects[s], readys[s][rng() % readys[s].size()], map));
  }
  return std::to_string(agreements) + " verdict pairs agree (factorization vs enumeration)";
}

std::string check_support_transport() {
  std::size_t checked = 0;
  for (std::size_t n : {std::size_t(1), std::size_t(2)}) {
    Field f = Field::prime(2);
    PhaseSpace space = n == 1 ? PhaseSpace::make(f, 1, "S")
                              : direct_sum(PhaseSpace::make(f, 1, "S"),
                                           PhaseSpace::make(f, 1, "A"));
    std::vector<EpistemicState> states = enumerate_epistemic_states(space);
    std::vector<std::vector<Vec>> supports;
    for (const EpistemicState& e : states) supports.push_back(enumerate_support(e));
    std::vector<Vec> shifts = all_states(space);
    for (const Matrix& m : enumerate_symplectic(space)) {
      for (const Vec& shift : shifts) {
        AffineSymplectic map = AffineSymplectic::make(space, m, shift);
        for (std::size_t i = 0; i < states.size(); ++i) {
          std::vector<Vec> image;
          image.reserve(supports[i].size());
          for (const Vec& x : supports[i]) image.push_back(map.apply(x));
          EpistemicState pushed = push_epistemic(map, states[i]);
          require(sorted_keys(image) == sorted_keys(enumerate_support(pushed)),
                  "pushed support mismatch");
          checked++;
        }
      }
    }
  }
  return std::to_string(checked) + " pointwise image comparisons";
}

std::string check_marginals() {
  Field f = Field::prime(2);
  PhaseSpace two = direct_sum(PhaseSpace::make(f, 1, "S"), PhaseSpace::make(f, 1, "A"));
  std::size_t checked = 0;
  for (const EpistemicState& e : enumerate_epistemic_states(two)) {
    std::vector<Vec> support = enumerate_support(e);
    for (std::size_t fac = 0; fac < 2; ++fac) {
      const auto& layout = two.factor_layout()[fac];
      std::vector<Vec> projected;
      for (const Vec& x : support) projected.push_back(slice(x, layout.offset, layout.dim));
      std::vector<std::string> lhs = sorted_keys(projected);
      lhs.erase(std::unique(lhs.begin(), lhs.end()), lhs.end());
      require(lhs == sorted_keys(enumerate_support(marginal(e, fac))),
              "marginal support mismatch");
      checked++;
    }
  }
  return std::to_string(checked) + " factor restrictions match projected supports";
}

std::string check_copiers() {
  Field f = Field::prime(2);
  PhaseSpace bit = PhaseSpace::make(f, 1, "S");
  std::vector<Matrix> reps;
  reps.push_back(Matrix(f, 0, 2));
  reps.push_back(Matrix::from_rows(f, {{1, 0}}));
  reps.push_back(Matrix::from_rows(f, {{0, 1}}));
  reps.push_back(Matrix::from_rows(f, {{1, 1}}));
  reps.push_back(Matrix::from_rows(f, {{1, 1}, {1, 1}}));

  std::size_t duplications = 0;
  for (const Matrix& zm : reps) {
    LinearVariable z = LinearVariable::make(bit, zm);
    Copier cop = construct_copier(bit, z);
    for (const Vec& v : all_states(bit)) {
      for (const Vec& x : enumerate_support(cop.ready)) {
        Vec out = cop.map.apply(concat(v, x));
        require(z.read(slice(out, 0, 2)) == z.read(v), "first copy lost the value");
        require(z.read(slice(out, 2, 2)) == z.read(v), "second copy lost the value");
        duplications++;
      }
    }
  }

  LinearVariable identity =
      LinearVariable::make(bit, Matrix::from_rows(f, {{1, 0}, {0, 1}}));
  require(!search_copier(bit, identity).has_value(),
          "a duplicator was found for a nonzero-bracket variable");
  return std::to_string(duplications) +
         " duplication checks; exhaustive search finds none for the full-state variable";
}

std::string check_pointer_preservation() {
  Field f = Field::prime(2);
  PhaseSpace object = PhaseSpace::make(f, 1, "S");
  PhaseSpace probe = PhaseSpace::make(f, 1, "A");
  PhaseSpace joint = direct_sum(object, probe);

  std::size_t cases = 0, block_cases = 0;
  for (const Subspace& q : enumerate_lagrangians(probe)) {
    ToySubject subject = make_subject(probe, q);
    // the block translation presumes the pointer rows and their kernel span
    // the subject's space; the self-dual pointer over Z2 violates that, and
    // there the transposed-functional characterization is the only applicable
    // form
    bool block_applies = intersection(q, kernel(q.basis())).dim() == 0;
    for (const Matrix& m : enumerate_symplectic(joint)) {
      Measurement meas = make_measurement(object, subject, zero_vec(f, 2),
                                          AffineSymplectic::make(joint, m, zero_vec(f, 4)));
      bool def = is_pointer_preserving_definitional(meas);
      require(def == is_pointer_preserving(meas),
              "transposed-functional characterization diverges");
      cases++;
      if (block_applies) {
        BlockDecomposition b = blocks(meas);
        bool mqp0 = true;
        for (std::size_t r = 0; r < b.m_qp.rows(); ++r)
          for (std::size_t c = 0; c < b.m_qp.cols(); ++c)
            if (!b.m_qp.at(r, c).is_zero()) mqp0 = false;
        require(def == (mqp0 && rank(b.m_pp) == b.m_pp.rows()),
                "block criterion diverges on its own domain");
        block_cases++;
      }
    }
  }
  require(cases == 2160 && block_cases == 1440, "unexpected sweep size");
  return "characterization on 2160 interactions, block form on its 1440-case domain";
}

std::string check_two_pointer_recovery() {
  Field f = Field::prime(2);
  PhaseSpace six = two_probe_scenario(f).space;
  std::map<std::string, std::set<std::string>> t0_by_reading, t1_by_reading;
  std::size_t ready_states = 0;
  for (const Vec& u : all_states(six)) {
    if (!u[0].is_zero() || !u[4].is_zero()) continue;
    ready_states++;
    ScenarioTrace t = run_sequence(two_probe_scenario(f, u));
    const auto& readings = t.pointer_readings[2];
    std::string r = key(readings[0]) + key(readings[1]);
    t0_by_reading[r].insert(key(slice(t.states[0].coords, 2, 2)));
    t1_by_reading[r].insert(key(slice(t.states[1].coords, 2, 2)));
  }
  require(ready_states == 16, "ready-state sweep size");
  bool collision = false;
  for (const auto& [r, states] : t0_by_reading)
    if (states.size() > 1) collision = true;
  require(collision, "the pointers determined the earlier object state");
  for (const auto& [r, states] : t1_by_reading)
    require(states.size() == 1, "pointer fiber with two mid-sequence object states");
  return std::to_string(t1_by_reading.size()) +
         " pointer fibers: earlier object state ambiguous, mid-sequence state exact";
}

}  // namespace

int main() {
  std::cout << "acceptance sweep (exact arithmetic, zero tolerance)\n";
  criterion(1, "position interaction table", 1.0, check_position_table);
  criterion(2, "two-probe closed forms and pointer readings", 1.0, check_two_probe_traces);
  criterion(3, "bracket law, exhaustive over Z2", 10.0, check_horizon_z2);
  criterion(4, "bracket law, exhaustive over Z3", 600.0, check_horizon_z3);
  criterion(5, "constructive direction over Z2 and Z3", 10.0, check_constructive_direction);
  criterion(6, "fixedness factorization vs enumeration", 60.0, check_fixedness_oracle);
  criterion(7, "support transport under affine maps", 60.0, check_support_transport);
  criterion(8, "marginal supports", 60.0, check_marginals);
  criterion(9, "value duplication", 300.0, check_copiers);
  criterion(10, "pointer preservation characterizations", 60.0, check_pointer_preservation);
  criterion(11, "pointer readings vs object history", 60.0, check_two_pointer_recovery);
  if (failures == 0) {
    std::cout << "all criteria hold\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
