#include <doctest.h>

#include <set>

#include "nomic/epistemic.hpp"

using namespace nomic;

namespace {

Subspace sp(const PhaseSpace& s, std::vector<std::vector<long long>> rows) {
  return Subspace::from_span(s.field(), s.dim(),
                             Matrix::from_rows(s.field(), std::move(rows), s.dim()));
}

Vec vec(const Field& f, std::vector<long long> xs) {
  Vec v;
  for (long long x : xs) v.emplace_back(f, x);
  return v;
}

std::set<std::vector<long long>> support_set(const EpistemicState& e) {
  std::set<std::vector<long long>> out;
  for (const Vec& v : enumerate_support(e)) {
    std::vector<long long> key;
    for (const Scalar& x : v) key.push_back(x.residue());
    out.insert(key);
  }
  return out;
}

}  // namespace

TEST_CASE("construction demands isotropy and reports a witness") {
  PhaseSpace bit = PhaseSpace::make(Field::prime(2), 1);
  CHECK_NOTHROW(EpistemicState::make(bit, sp(bit, {{1, 0}}), zero_vec(bit.field(), 2)));
  CHECK_NOTHROW(EpistemicState::make(bit, Subspace::zero(bit.field(), 2),
                                     vec(bit.field(), {1, 1})));
  try {
    EpistemicState::make(bit, Subspace::full(bit.field(), 2), zero_vec(bit.field(), 2));
    FAIL("full space accepted as knowledge");
  } catch (const NotIsotropicError& err) {
    CHECK(err.i == 0);
    CHECK(err.j == 1);
  }
}

TEST_CASE("toy-bit position knowledge has the two-point support") {
  PhaseSpace bit = PhaseSpace::make(Field::prime(2), 1);
  auto e = EpistemicState::make(bit, sp(bit, {{1, 0}}), zero_vec(bit.field(), 2));
  CHECK(support_set(e) == std::set<std::vector<long long>>{{0, 0}, {0, 1}});
  CHECK(is_pure(e));

  auto blank = EpistemicState::make(bit, Subspace::zero(bit.field(), 2),
                                    zero_vec(bit.field(), 2));
  CHECK(support_set(blank).size() == 4);
  CHECK(!is_pure(blank));
}

TEST_CASE("the correlated two-bit state") {
  PhaseSpace two = direct_sum(PhaseSpace::make(Field::prime(2), 1, "L"),
                              PhaseSpace::make(Field::prime(2), 1, "R"));
  auto e = EpistemicState::make(two, sp(two, {{1, 0, -1, 0}, {0, 1, 0, -1}}),
                                zero_vec(two.field(), 4));
  CHECK(support_set(e) == std::set<std::vector<long long>>{
                              {0, 0, 0, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {1, 1, 1, 1}});
  CHECK(is_pure(e));
  // Each half alone knows nothing.
  for (std::size_t i : {0u, 1u}) {
    auto m = marginal(e, i);
    CHECK(m.known().dim() == 0);
    CHECK(support_set(m).size() == 4);
  }
}

TEST_CASE("support dimension counts the unknown functionals") {
  PhaseSpace s = PhaseSpace::make(Field::prime(3), 2);
  auto e = EpistemicState::make(s, sp(s, {{1, 0, 0, 0}}), vec(s.field(), {2, 0, 0, 0}));
  CHECK(support(e).direction.dim() == s.dim() - e.known().dim());
  CHECK(enumerate_support(e).size() == 27);  // 3^(4-1)
}

TEST_CASE("value points canonicalize so equal supports mean equal states") {
  PhaseSpace bit = PhaseSpace::make(Field::prime(2), 1);
  Subspace q = sp(bit, {{1, 0}});
  auto a = EpistemicState::make(bit, q, vec(bit.field(), {0, 0}));
  auto b = EpistemicState::make(bit, q, vec(bit.field(), {0, 1}));  // differs along q^perp
  CHECK(a == b);
  auto c = EpistemicState::make(bit, q, vec(bit.field(), {1, 0}));
  CHECK(a != c);
}

TEST_CASE("enumerating over the rationals is refused") {
  PhaseSpace s = PhaseSpace::make(Field::rationals(), 1);
  auto e = EpistemicState::make(s, sp(s, {{1, 0}}), zero_vec(s.field(), 2));
  CHECK_THROWS_AS(enumerate_support(e), InfeasibleError);
}

TEST_CASE("products join supports componentwise") {
  PhaseSpace bit = PhaseSpace::make(Field::prime(2), 1);
  Field f = bit.field();
  auto eq = EpistemicState::make(bit, sp(bit, {{1, 0}}), zero_vec(f, 2));
  auto shifted = EpistemicState::make(bit, sp(bit, {{1, 0}}), vec(f, {1, 0}));
  auto both = product(eq, shifted);
  CHECK(both.space().dim() == 4);
  CHECK(both.known().dim() == 2);
  CHECK(support_set(both) == std::set<std::vector<long long>>{
                                 {0, 0, 1, 0}, {0, 0, 1, 1}, {0, 1, 1, 0}, {0, 1, 1, 1}});
  // Product of blanks stays blank.
  auto blank = EpistemicState::make(bit, Subspace::zero(f, 2), zero_vec(f, 2));
  CHECK(product(blank, blank).known().dim() == 0);
  // Marginals recover the factors.
  CHECK(marginal(both, 0) == eq);
  CHECK(marginal(both, 1) == shifted);
}

TEST_CASE("marginal projection law holds exhaustively on two toy bits") {
  Field f = Field::prime(2);
  PhaseSpace two = direct_sum(PhaseSpace::make(f, 1, "L"), PhaseSpace::make(f, 1, "R"));

  // All isotropic subspaces of the 4-dim space.
  std::vector<Vec> nonzero;
  for (unsigned m = 1; m < 16; ++m) {
    Vec v = zero_vec(f, 4);
    for (unsigned i = 0; i < 4; ++i)
      if ((m >> i) & 1) v[i] = Scalar(f, 1);
    nonzero.push_back(v);
  }
  std::vector<Subspace> isotropics{Subspace::zero(f, 4)};
  std::vector<Subspace> frontier = isotropics;
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const auto& u : frontier)
      for (const Vec& v : nonzero) {
        if (u.contains(v)) continue;
        std::vector<Vec> gens;
        for (std::size_t r = 0; r < u.basis().rows(); ++r) gens.push_back(u.basis().row(r));
        gens.push_back(v);
        Subspace grown = Subspace::from_span_rows(f, 4, gens);
        if (classify_subspace(two, grown) != SubspaceClass::Isotropic &&
            classify_subspace(two, grown) != SubspaceClass::Lagrangian)
          continue;
        bool fresh = true;
        for (const auto& w : isotropics)
          if (w == grown) { fresh = false; break; }
        if (fresh) {
          isotropics.push_back(grown);
          next.push_back(grown);
        }
      }
    frontier = std::move(next);
  }
  CHECK(isotropics.size() == 31);  // 1 zero + 15 lines + 15 Lagrangian planes

  std::size_t states = 0;
  for (const auto& u : isotropics) {
    // Every coset: value points range over representatives of F^4 / u^perp.
    std::set<std::vector<long long>> seen_reps;
    for (unsigned m = 0; m < 16; ++m) {
      Vec a = zero_vec(f, 4);
      for (unsigned i = 0; i < 4; ++i)
        if ((m >> i) & 1) a[i] = Scalar(f, 1);
      auto e = EpistemicState::make(two, u, a);
      std::vector<long long> key;
      for (const Scalar& x : e.value_point()) key.push_back(x.residue());
      if (!seen_reps.insert(key).second) continue;
      ++states;
      for (std::size_t fac : {0u, 1u}) {
        std::set<std::vector<long long>> projected;
        for (const Vec& x : enumerate_support(e)) {
          Vec px = two.project(fac, x);
          projected.insert({px[0].residue(), px[1].residue()});
        }
        CHECK(projected == support_set(marginal(e, fac)));
      }
    }
  }
  CHECK(states == 91);
}

TEST_CASE("pointer states fix the Lagrangian values") {
  PhaseSpace bit = PhaseSpace::make(Field::prime(2), 1);
  Subspace q = sp(bit, {{1, 0}});
  auto ready = pointer_state(bit, q, zero_vec(bit.field(), 2));
  CHECK(ready == EpistemicState::make(bit, q, zero_vec(bit.field(), 2)));
  auto one = pointer_state(bit, q, vec(bit.field(), {1, 0}));
  CHECK(support_set(one) == std::set<std::vector<long long>>{{1, 0}, {1, 1}});
  CHECK_THROWS_AS(pointer_state(bit, q, vec(bit.field(), {0, 1})), ValueError);
}

TEST_CASE("pushing knowledge through the half-turn swaps position and momentum") {
  PhaseSpace bit = PhaseSpace::make(Field::prime(2), 1);
  Field f = bit.field();
  auto g = AffineSymplectic::make(bit, bit.omega(), zero_vec(f, 2));
  auto eq = EpistemicState::make(bit, sp(bit, {{1, 0}}), zero_vec(f, 2));
  auto pushed = push_epistemic(g, eq);
  CHECK(pushed.known() == sp(bit, {{0, 1}}));
  CHECK(support_set(pushed) == std::set<std::vector<long long>>{{0, 0}, {1, 0}});
}

TEST_CASE("pushing matches the pointwise image of the support") {
  Field f = Field::prime(3);
  PhaseSpace s = PhaseSpace::make(f, 1);
  Matrix shear = Matrix::from_rows(f, {{1, 0}, {2, 1}});
  auto g = AffineSymplectic::make(s, shear, vec(f, {1, 2}));
  auto e = EpistemicState::make(s, sp(s, {{1, 2}}), vec(f, {0, 1}));
  std::set<std::vector<long long>> moved;
  for (const Vec& x : enumerate_support(e)) {
    Vec y = g.apply(x);
    moved.insert({y[0].residue(), y[1].residue()});
  }
  CHECK(moved == support_set(push_epistemic(g, e)));

  // Total ignorance stays total ignorance.
  auto blank = EpistemicState::make(s, Subspace::zero(f, 2), zero_vec(f, 2));
  CHECK(push_epistemic(g, blank).known().dim() == 0);
}
