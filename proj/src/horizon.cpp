#include "nomic/horizon.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <thread>
#include <unordered_set>

#include "nomic/errors.hpp"

namespace nomic {

namespace {

using IMat = std::vector<std::vector<int>>;
using IVec = std::vector<int>;

IMat omega_ints(const PhaseSpace& space) {
  const std::size_t d = space.dim();
  const long long p = space.field().modulus();
  IMat w(d, IVec(d, 0));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      w[r][c] = static_cast<int>(((space.omega().at(r, c).residue()) % p + p) % p);
  return w;
}

std::vector<IVec> all_int_vectors(long long p, std::size_t d) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= static_cast<std::size_t>(p);
  std::vector<IVec> out;
  out.reserve(total);
  IVec v(d, 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = static_cast<int>(c % p);
      c /= p;
    }
    out.push_back(v);
  }
  return out;
}

Matrix to_matrix(const Field& f, const IMat& m) {
  const std::size_t d = m.size();
  Matrix out(f, d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) out.at(r, c) = Scalar(f, m[r][c]);
  return out;
}

bool pack_fits(long long p, std::size_t digits) {
  long double bits = digits * std::log2(static_cast<long double>(p));
  return bits < 63.0L;
}

std::uint64_t pack_imat(const IMat& m, long long p) {
  std::uint64_t key = 0;
  for (const auto& row : m)
    for (int e : row) key = key * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(e);
  return key;
}

IMat unpack_imat(std::uint64_t key, long long p, std::size_t d) {
  IMat m(d, IVec(d, 0));
  for (std::size_t i = d * d; i-- > 0;) {
    m[i / d][i % d] = static_cast<int>(key % static_cast<std::uint64_t>(p));
    key /= static_cast<std::uint64_t>(p);
  }
  return m;
}

IMat imat_mul(const IMat& a, const IMat& b, long long p) {
  const std::size_t d = a.size();
  IMat out(d, IVec(d, 0));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) {
      if (a[r][k] == 0) continue;
      for (std::size_t c = 0; c < d; ++c)
        out[r][c] = static_cast<int>((out[r][c] + static_cast<long long>(a[r][k]) * b[k][c]) % p);
    }
  return out;
}

// Columns chosen left to right; a candidate for column j must satisfy
// omega(col_i, cand) = Omega[i][j] for every earlier column. A complete set of
// columns reproducing the form is automatically a basis.
void filter_enumerate(const PhaseSpace& space, const std::function<void(const Matrix&)>& fn) {
  const long long p = space.field().modulus();
  const std::size_t d = space.dim();
  const IMat w = omega_ints(space);
  const std::vector<IVec> vecs = all_int_vectors(p, d);

  // pairings[i] = Omega^T col_i, so omega(col_i, x) = dot(pairings[i], x).
  std::vector<IVec> cols(d), pairings(d);
  IMat chosen(d, IVec(d, 0));

  std::function<void(std::size_t)> descend = [&](std::size_t j) {
    if (j == d) {
      IMat m(d, IVec(d, 0));
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) m[r][c] = cols[c][r];
      fn(to_matrix(space.field(), m));
      return;
    }
    for (const IVec& cand : vecs) {
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) {
        long long acc = 0;
        for (std::size_t r = 0; r < d; ++r) acc += static_cast<long long>(pairings[i][r]) * cand[r];
        ok = ((acc % p) + p) % p == w[i][j];
      }
      if (!ok) continue;
      cols[j] = cand;
      IVec pairing(d, 0);
      for (std::size_t c = 0; c < d; ++c) {
        long long acc = 0;
        for (std::size_t r = 0; r < d; ++r) acc += static_cast<long long>(w[r][c]) * cand[r];
        pairing[c] = static_cast<int>(((acc % p) + p) % p);
      }
      pairings[j] = pairing;
      descend(j + 1);
    }
  };
  descend(0);
}

// Orbit of the identity under left multiplication by x -> x + l omega(x, v) v.
void closure_enumerate(const PhaseSpace& space, const std::function<void(const Matrix&)>& fn) {
  const long long p = space.field().modulus();
  const std::size_t d = space.dim();
  if (!pack_fits(p, d * d)) throw InfeasibleError("orbit enumeration state too large to key");
  const IMat w = omega_ints(space);

  std::vector<IMat> gens;
  std::unordered_set<std::uint64_t> gen_keys;
  for (const IVec& v : all_int_vectors(p, d)) {
    bool zero = std::all_of(v.begin(), v.end(), [](int e) { return e == 0; });
    if (zero) continue;
    IVec wv(d, 0);
    for (std::size_t c = 0; c < d; ++c) {
      long long acc = 0;
      for (std::size_t r = 0; r < d; ++r) acc += static_cast<long long>(v[r]) * w[r][c];
      wv[c] = static_cast<int>(((acc % p) + p) % p);
    }
    for (long long l = 1; l < p; ++l) {
      IMat t(d, IVec(d, 0));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          t[r][c] = static_cast<int>(((r == c ? 1 : 0) + l * v[r] % p * wv[c]) % p);
      if (gen_keys.insert(pack_imat(t, p)).second) gens.push_back(t);
    }
  }

  IMat ident(d, IVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) ident[i][i] = 1;
  std::unordered_set<std::uint64_t> visited{pack_imat(ident, p)};
  std::deque<std::uint64_t> queue{pack_imat(ident, p)};
  fn(to_matrix(space.field(), ident));
  while (!queue.empty()) {
    IMat cur = unpack_imat(queue.front(), p, d);
    queue.pop_front();
    for (const IMat& g : gens) {
      IMat prod = imat_mul(g, cur, p);
      std::uint64_t key = pack_imat(prod, p);
      if (visited.insert(key).second) {
        queue.push_back(key);
        fn(to_matrix(space.field(), prod));
      }
    }
  }
}

std::string subspace_key(const Subspace& s) {
  std::string key = std::to_string(s.dim());
  for (std::size_t r = 0; r < s.basis().rows(); ++r) {
    key += '|';
    key += vec_str(s.basis().row(r));
  }
  return key;
}

Vec sample_int_vec(const Field& f, std::size_t d, std::mt19937_64& rng) {
  Vec v;
  v.reserve(d);
  if (f.is_prime_field()) {
    std::uniform_int_distribution<long long> dist(0, f.modulus() - 1);
    for (std::size_t i = 0; i < d; ++i) v.emplace_back(f, dist(rng));
  } else {
    std::uniform_int_distribution<long long> dist(-2, 2);
    for (std::size_t i = 0; i < d; ++i) v.emplace_back(f, dist(rng));
  }
  return v;
}

Scalar sample_unit(const Field& f, std::mt19937_64& rng) {
  if (f.is_prime_field()) {
    std::uniform_int_distribution<long long> dist(1, f.modulus() - 1);
    return Scalar(f, dist(rng));
  }
  static const long long picks[] = {1, -1, 2};
  std::uniform_int_distribution<std::size_t> dist(0, 2);
  return Scalar(f, picks[dist(rng)]);
}

Matrix sample_word(const PhaseSpace& space, std::mt19937_64& rng, std::size_t word_length) {
  Matrix m = Matrix::identity(space.field(), space.dim());
  for (std::size_t i = 0; i < word_length; ++i) {
    Vec v = sample_int_vec(space.field(), space.dim(), rng);
    while (is_zero(v)) v = sample_int_vec(space.field(), space.dim(), rng);
    m = transvection_matrix(space, v, sample_unit(space.field(), rng)) * m;
  }
  return m;
}

Subspace transform_subspace(const Matrix& m, const Subspace& s) {
  if (s.dim() == 0) return Subspace::zero(m.field(), s.ambient_dim());
  return image(m * s.basis().transpose());
}

}  // namespace

void for_each_symplectic(const PhaseSpace& space, const std::function<void(const Matrix&)>& fn,
                         EnumMethod method, std::size_t dim_cap) {
  if (!space.field().is_prime_field())
    throw InfeasibleError("symplectic enumeration needs a prime field");
  if (space.dim() > dim_cap)
    throw InfeasibleError("symplectic enumeration above the dimension cap");
  if (method == EnumMethod::Auto) {
    long double candidates =
        std::pow(static_cast<long double>(space.field().modulus()),
                 static_cast<long double>(space.dim() * space.dim()));
    method = candidates <= 1e8L ? EnumMethod::Filter : EnumMethod::Closure;
  }
  if (method == EnumMethod::Filter)
    filter_enumerate(space, fn);
  else
    closure_enumerate(space, fn);
}

std::vector<Matrix> enumerate_symplectic(const PhaseSpace& space, EnumMethod method,
                                         std::size_t dim_cap) {
  std::vector<Matrix> out;
  for_each_symplectic(
      space, [&](const Matrix& m) { out.push_back(m); }, method, dim_cap);
  return out;
}

Matrix transvection_matrix(const PhaseSpace& space, const Vec& v, const Scalar& lambda) {
  if (v.size() != space.dim()) throw DimensionError("transvection direction has the wrong length");
  if (lambda.field() != space.field()) throw FieldMismatchError();
  const Field& f = space.field();
  Vec wv = space.omega().apply(v);
  Matrix t = Matrix::identity(f, space.dim());
  for (std::size_t r = 0; r < space.dim(); ++r)
    for (std::size_t c = 0; c < space.dim(); ++c) t.at(r, c) = t.at(r, c) + lambda * v[r] * wv[c];
  return t;
}

std::vector<Subspace> enumerate_subspaces(const Field& f, std::size_t ambient) {
  if (!f.is_prime_field()) throw InfeasibleError("subspace enumeration needs a prime field");
  long double points = std::pow(static_cast<long double>(f.modulus()),
                                static_cast<long double>(ambient));
  if (points > 1e6L) throw InfeasibleError("subspace enumeration above the ambient cap");

  std::vector<Vec> all = Subspace::full(f, ambient).enumerate();
  std::map<std::string, Subspace> seen;
  std::deque<Subspace> queue;
  Subspace zero = Subspace::zero(f, ambient);
  seen.emplace(subspace_key(zero), zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    Subspace cur = queue.front();
    queue.pop_front();
    for (const Vec& v : all) {
      if (cur.contains(v)) continue;
      std::vector<Vec> rows;
      for (std::size_t r = 0; r < cur.basis().rows(); ++r) rows.push_back(cur.basis().row(r));
      rows.push_back(v);
      Subspace next = Subspace::from_span_rows(f, ambient, rows);
      if (seen.emplace(subspace_key(next), next).second) queue.push_back(next);
    }
  }
  std::vector<std::pair<std::string, Subspace>> items(seen.begin(), seen.end());
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Subspace> out;
  out.reserve(items.size());
  for (auto& it : items) out.push_back(it.second);
  return out;
}

std::vector<Subspace> enumerate_lagrangians(const PhaseSpace& space) {
  std::vector<Subspace> out;
  for (const Subspace& s : enumerate_subspaces(space.field(), space.dim()))
    if (classify_subspace(space, s) == SubspaceClass::Lagrangian) out.push_back(s);
  return out;
}

std::vector<Subspace> enumerate_isotropic(const PhaseSpace& space) {
  std::vector<Subspace> out;
  for (const Subspace& s : enumerate_subspaces(space.field(), space.dim())) {
    SubspaceClass c = classify_subspace(space, s);
    if (c == SubspaceClass::Isotropic || c == SubspaceClass::Lagrangian) out.push_back(s);
  }
  return out;
}

std::vector<EpistemicState> enumerate_epistemic_states(const PhaseSpace& space) {
  std::vector<EpistemicState> out;
  std::set<std::string> seen;
  std::vector<Vec> points = Subspace::full(space.field(), space.dim()).enumerate();
  for (const Subspace& u : enumerate_isotropic(space)) {
    for (const Vec& a : points) {
      EpistemicState e = EpistemicState::make(space, u, a);
      std::string key = subspace_key(u) + "@" + vec_str(e.value_point());
      if (seen.insert(key).second) out.push_back(e);
    }
  }
  return out;
}

namespace {

// Shifts never reach the measured variable, so sweeping matrices covers every
// affine interaction class.
void check_interactions(HorizonReport& rep, const PhaseSpace& joint, const PhaseSpace& object,
                        const std::vector<ToySubject>& subjects,
                        const std::vector<Subspace>& lagrangians, const Matrix& m) {
  const Field& f = joint.field();
  if (!is_symplectic_matrix(joint, m.transpose()))
    rep.poisson_violations.push_back(
        {m, Subspace::zero(f, joint.dim()), "transpose fails the symplectic gate"});
  Vec shift = zero_vec(f, joint.dim());
  AffineSymplectic map = AffineSymplectic::make(joint, m, shift);
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    Vec ready = zero_vec(f, subjects[i].space().dim());
    Measurement meas = make_measurement(object, subjects[i], ready, map);
    LinearVariable mv = measured_variable(meas);
    if (!is_poisson(mv))
      rep.poisson_violations.push_back(
          {m, lagrangians[i], "measured variable fails the bracket test"});
    rep.measurements_checked++;
  }
}

// For constructive-direction entries the matrix slot holds the variable rows.
void check_variable_class(HorizonReport& rep, const PhaseSpace& object, const Subspace& u) {
  rep.variable_classes_checked++;
  LinearVariable z = LinearVariable::make(object, u.basis());
  SubspaceClass c = classify_subspace(object, u);
  bool isotropic = c == SubspaceClass::Isotropic || c == SubspaceClass::Lagrangian;
  if (is_poisson(z) != isotropic) {
    rep.non_poisson_measurable_claims.push_back(
        {u.basis(), u, "bracket test disagrees with row-space isotropy"});
    return;
  }
  if (isotropic) {
    try {
      Measurement meas = construct_measurement(object, z);
      if (!equivalent(measured_variable(meas), z))
        rep.non_poisson_measurable_claims.push_back(
            {u.basis(), u, "constructed interaction measures a different class"});
    } catch (const MathError&) {
      rep.non_poisson_measurable_claims.push_back(
          {u.basis(), u, "vanishing-bracket variable rejected by the constructor"});
    }
  } else {
    try {
      construct_measurement(object, z);
      rep.non_poisson_measurable_claims.push_back(
          {u.basis(), u, "variable with a nonzero bracket accepted by the constructor"});
    } catch (const NotPoissonError&) {
    }
  }
}

void sort_violations(std::vector<HorizonViolation>& v) {
  auto key = [](const HorizonViolation& x) {
    std::string k;
    for (std::size_t r = 0; r < x.m.rows(); ++r) k += vec_str(x.m.row(r)) + ";";
    return k + "|" + subspace_key(x.lagrangian) + "|" + x.detail;
  };
  std::sort(v.begin(), v.end(),
            [&](const HorizonViolation& a, const HorizonViolation& b) { return key(a) < key(b); });
}

}  // namespace

HorizonReport verify_horizon(const Field& f, std::size_t n_s, std::size_t n_a, HorizonMode mode,
                             SampleOptions opts, ComplementRule rule, std::size_t threads) {
  if (n_s == 0 || n_a == 0) throw UsageError("both systems need at least one degree of freedom");
  auto t0 = std::chrono::steady_clock::now();
  HorizonReport rep;
  rep.field = f;
  rep.n_s = n_s;
  rep.n_a = n_a;
  rep.mode = mode;

  PhaseSpace object = PhaseSpace::make(f, n_s, "S");
  PhaseSpace probe = PhaseSpace::make(f, n_a, "A");
  PhaseSpace joint = direct_sum(object, probe);

  if (mode == HorizonMode::Exhaustive) {
    if (!f.is_prime_field())
      throw InfeasibleError("exhaustive sweep needs a prime field; use sample mode instead");
    std::vector<Subspace> lagrangians = enumerate_lagrangians(probe);
    std::vector<ToySubject> subjects;
    for (const Subspace& q : lagrangians) subjects.push_back(make_subject(probe, q, rule));
    rep.lagrangian_count = lagrangians.size();
    if (threads <= 1) {
      for_each_symplectic(joint, [&](const Matrix& m) {
        rep.group_order++;
        check_interactions(rep, joint, object, subjects, lagrangians, m);
      });
    } else {
      std::vector<Matrix> mats = enumerate_symplectic(joint);
      rep.group_order = mats.size();
      std::vector<HorizonReport> parts(threads);
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < mats.size(); i += threads)
            check_interactions(parts[t], joint, object, subjects, lagrangians, mats[i]);
        });
      for (auto& th : pool) th.join();
      for (const HorizonReport& part : parts) {
        rep.measurements_checked += part.measurements_checked;
        rep.poisson_violations.insert(rep.poisson_violations.end(),
                                      part.poisson_violations.begin(),
                                      part.poisson_violations.end());
        rep.non_poisson_measurable_claims.insert(rep.non_poisson_measurable_claims.end(),
                                                 part.non_poisson_measurable_claims.begin(),
                                                 part.non_poisson_measurable_claims.end());
      }
    }
    for (const Subspace& u : enumerate_subspaces(f, object.dim()))
      check_variable_class(rep, object, u);
  } else {
    std::mt19937_64 rng(opts.seed);
    rep.seed = opts.seed;
    rep.word_length = opts.word_length;
    rep.sample_count = opts.samples;

    std::vector<Subspace> lagrangians;
    std::vector<Vec> q_rows;
    for (std::size_t i = 0; i < n_a; ++i) {
      Vec e = zero_vec(f, probe.dim());
      e[i] = Scalar(f, 1);
      q_rows.push_back(e);
    }
    Subspace q0 = Subspace::from_span_rows(f, probe.dim(), q_rows);
    lagrangians.push_back(q0);
    for (std::size_t i = 0; i < 4; ++i) {
      Subspace q = transform_subspace(sample_word(probe, rng, opts.word_length), q0);
      if (std::find(lagrangians.begin(), lagrangians.end(), q) == lagrangians.end())
        lagrangians.push_back(q);
    }
    std::vector<ToySubject> subjects;
    for (const Subspace& q : lagrangians) subjects.push_back(make_subject(probe, q, rule));
    rep.lagrangian_count = lagrangians.size();

    for (std::size_t i = 0; i < opts.samples; ++i) {
      Matrix m = sample_word(joint, rng, opts.word_length);
      rep.group_order++;
      check_interactions(rep, joint, object, subjects, lagrangians, m);
    }

    std::vector<Subspace> classes;
    auto add_class = [&](const Subspace& u) {
      if (std::find(classes.begin(), classes.end(), u) == classes.end()) classes.push_back(u);
    };
    add_class(Subspace::zero(f, object.dim()));
    for (std::size_t k = 1; k <= n_s; ++k) {
      std::vector<Vec> rows;
      for (std::size_t i = 0; i < k; ++i) {
        Vec e = zero_vec(f, object.dim());
        e[i] = Scalar(f, 1);
        rows.push_back(e);
      }
      Subspace flag = Subspace::from_span_rows(f, object.dim(), rows);
      add_class(flag);
      for (std::size_t i = 0; i < 2; ++i)
        add_class(transform_subspace(sample_word(object, rng, opts.word_length), flag));
    }
    {
      std::vector<Vec> rows;
      Vec q1 = zero_vec(f, object.dim());
      q1[0] = Scalar(f, 1);
      Vec p1 = zero_vec(f, object.dim());
      p1[n_s] = Scalar(f, 1);
      rows.push_back(q1);
      rows.push_back(p1);
      add_class(Subspace::from_span_rows(f, object.dim(), rows));  // bracket 1, must be refused
      add_class(Subspace::full(f, object.dim()));
    }
    for (const Subspace& u : classes) check_variable_class(rep, object, u);
  }

  sort_violations(rep.poisson_violations);
  sort_violations(rep.non_poisson_measurable_claims);
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

ScenarioTrace run_sequence(const Scenario& sc) {
  if (sc.initial.size() != sc.space.dim())
    throw DimensionError("initial state length does not match the scenario space");
  for (const ScenarioPointer& p : sc.pointers)
    if (p.var.space() != sc.space)
      throw DimensionError("pointer variable '" + p.label + "' reads a different space");

  ScenarioTrace trace;
  trace.steps = sc.steps;
  trace.states.push_back(OnticState{sc.space, sc.initial});
  for (const ScenarioStep& step : sc.steps) {
    if (step.map.space() != sc.space)
      throw UsageError("step '" + step.label + "' acts on a different space");
    OnticState next = step.map.apply(trace.states.back());
    Vec delta = next.coords - trace.states.back().coords;
    trace.disturbance_notes.push_back("after " + step.label + ": delta " + vec_str(delta));
    trace.states.push_back(next);
  }
  for (const OnticState& st : trace.states) {
    std::vector<Vec> row;
    for (const ScenarioPointer& p : sc.pointers) row.push_back(p.var.read(st.coords));
    trace.pointer_readings.push_back(row);
  }
  verify_trace(trace, sc.pointers);
  return trace;
}

void verify_trace(const ScenarioTrace& t, const std::vector<ScenarioPointer>& pointers) {
  if (t.states.size() != t.steps.size() + 1)
    throw MathError("trace holds " + std::to_string(t.states.size()) + " snapshots for " +
                    std::to_string(t.steps.size()) + " steps");
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    OnticState redo = t.steps[k].map.apply(t.states[k]);
    if (!(redo == t.states[k + 1]))
      throw MathError("snapshot after step '" + t.steps[k].label +
                      "' disagrees with the recurrence");
  }
  if (t.pointer_readings.size() != t.states.size())
    throw MathError("trace pointer readings do not cover every snapshot");
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    if (t.pointer_readings[k].size() != pointers.size())
      throw MathError("pointer reading row " + std::to_string(k) + " has the wrong width");
    for (std::size_t i = 0; i < pointers.size(); ++i)
      if (pointers[i].var.read(t.states[k].coords) != t.pointer_readings[k][i])
        throw MathError("pointer '" + pointers[i].label + "' reading disagrees at snapshot " +
                        std::to_string(k));
  }
}

Scenario two_probe_scenario(const Field& f, const Vec& initial) {
  PhaseSpace a1 = PhaseSpace::make(f, 1, "A1");
  PhaseSpace mid = PhaseSpace::make(f, 1, "S");
  PhaseSpace a2 = PhaseSpace::make(f, 1, "A2");
  PhaseSpace big = PhaseSpace::direct_sum({a1, mid, a2});
  if (initial.size() != big.dim())
    throw DimensionError("two-probe scenario needs a 6-coordinate initial state");

  Measurement momentum_probe =
      construct_measurement(mid, make_variable(mid, Matrix::from_rows(f, {{0, 1}})));
  Measurement position_probe =
      construct_measurement(mid, make_variable(mid, Matrix::from_rows(f, {{1, 0}})));

  Scenario sc{big, {}, {}, initial};
  sc.steps.push_back({"momentum-probe", embed_map(big, momentum_probe.map(), {1, 0})});
  sc.steps.push_back({"position-probe", embed_map(big, position_probe.map(), {1, 2})});
  sc.pointers.push_back(
      {"first-pointer", make_variable(big, Matrix::from_rows(f, {{1, 0, 0, 0, 0, 0}}))});
  sc.pointers.push_back(
      {"second-pointer", make_variable(big, Matrix::from_rows(f, {{0, 0, 0, 0, 1, 0}}))});
  return sc;
}

Scenario two_probe_scenario(const Field& f) {
  return two_probe_scenario(f, zero_vec(f, 6));
}

Vec two_probe_after_first(const Vec& u) {
  if (u.size() != 6) throw DimensionError("two-probe states have 6 coordinates");
  return Vec{u[0] + u[3], u[1], u[1] + u[2], u[3], u[4], u[5]};
}

Vec two_probe_after_second(const Vec& u) {
  if (u.size() != 6) throw DimensionError("two-probe states have 6 coordinates");
  return Vec{u[0] + u[3], u[1], u[1] + u[2], u[3] - u[5], u[1] + u[2] + u[4], u[5]};
}

ScenarioTrace run_two_probe_checked(const Field& f, const Vec& initial) {
  Scenario sc = two_probe_scenario(f, initial);
  ScenarioTrace trace = run_sequence(sc);
  Vec want1 = two_probe_after_first(initial);
  Vec want2 = two_probe_after_second(initial);
  for (std::size_t i = 0; i < 6; ++i) {
    if (trace.states[1].coords[i] != want1[i])
      throw MathError("first-step closed form fails at coordinate " + std::to_string(i));
    if (trace.states[2].coords[i] != want2[i])
      throw MathError("second-step closed form fails at coordinate " + std::to_string(i));
  }
  return trace;
}

std::optional<Copier> search_copier(const PhaseSpace& space, const LinearVariable& z,
                                    std::size_t dim_cap) {
  if (z.space() != space) throw DimensionError("variable reads a different space");
  if (!space.field().is_prime_field()) throw InfeasibleError("copier search needs a prime field");
  const Field& f = space.field();
  PhaseSpace joint = direct_sum(space, space);
  if (joint.dim() > dim_cap) throw InfeasibleError("copier search above the dimension cap");

  const std::size_t d = space.dim();
  std::vector<Vec> points = Subspace::full(f, d).enumerate();
  std::vector<EpistemicState> readys = enumerate_epistemic_states(space);
  std::vector<std::vector<Vec>> supports;
  for (const EpistemicState& e : readys) supports.push_back(enumerate_support(e));
  std::vector<Vec> shifts = Subspace::full(f, joint.dim()).enumerate();

  auto duplicates = [&](const Matrix& m, const Vec& shift, std::size_t ready_idx) {
    for (const Vec& v : points) {
      Vec want = z.read(v);
      for (const Vec& x : supports[ready_idx]) {
        Vec in(joint.dim(), Scalar(f, 0));
        for (std::size_t i = 0; i < d; ++i) in[i] = v[i];
        for (std::size_t i = 0; i < d; ++i) in[d + i] = x[i];
        Vec out = m.apply(in) + shift;
        Vec first(out.begin(), out.begin() + d);
        Vec second(out.begin() + d, out.end());
        if (z.read(first) != want || z.read(second) != want) return false;
      }
    }
    return true;
  };

  Vec zero_shift = zero_vec(f, joint.dim());
  Matrix ident = Matrix::identity(f, joint.dim());
  for (std::size_t r = 0; r < readys.size(); ++r)
    if (duplicates(ident, zero_shift, r))
      return Copier{AffineSymplectic::make(joint, ident, zero_shift), readys[r]};

  std::optional<Copier> found;
  for_each_symplectic(
      joint,
      [&](const Matrix& m) {
        if (found) return;
        for (const Vec& shift : shifts) {
          for (std::size_t r = 0; r < readys.size(); ++r) {
            if (duplicates(m, shift, r)) {
              found = Copier{AffineSymplectic::make(joint, m, shift), readys[r]};
              return;
            }
          }
        }
      },
      EnumMethod::Auto, dim_cap);
  return found;
}

std::optional<Preparation> search_preparation(const PhaseSpace& object,
                                              const PhaseSpace& subject,
                                              std::size_t dim_cap) {
  if (object.field() != subject.field())
    throw FieldMismatchError("object and subject live over different fields");
  if (!object.field().is_prime_field())
    throw InfeasibleError("preparation search needs a prime field");
  const Field& f = object.field();
  PhaseSpace joint = direct_sum(object, subject);
  if (joint.dim() > dim_cap) throw InfeasibleError("preparation search above the dimension cap");

  const std::size_t ds = object.dim();
  std::vector<Vec> points = Subspace::full(f, ds).enumerate();
  std::vector<EpistemicState> initials = enumerate_epistemic_states(subject);
  std::vector<std::vector<Vec>> supports;
  for (const EpistemicState& e : initials) supports.push_back(enumerate_support(e));

  auto constant_target = [&](const Matrix& m, std::size_t idx) -> std::optional<Vec> {
    std::optional<Vec> target;
    for (const Vec& s : points) {
      for (const Vec& x : supports[idx]) {
        Vec in(joint.dim(), Scalar(f, 0));
        for (std::size_t i = 0; i < ds; ++i) in[i] = s[i];
        for (std::size_t i = 0; i < x.size(); ++i) in[ds + i] = x[i];
        Vec out = m.apply(in);
        Vec landed(out.begin(), out.begin() + ds);
        if (!target)
          target = landed;
        else if (*target != landed)
          return std::nullopt;
      }
    }
    return target;
  };

  std::optional<Preparation> found;
  for_each_symplectic(
      joint,
      [&](const Matrix& m) {
        if (found) return;
        for (std::size_t r = 0; r < initials.size(); ++r) {
          if (auto target = constant_target(m, r)) {
            found = Preparation{AffineSymplectic::make(joint, m, zero_vec(f, joint.dim())),
                                initials[r], *target};
            return;
          }
        }
      },
      EnumMethod::Auto, dim_cap);
  return found;
}

}  // namespace nomic
