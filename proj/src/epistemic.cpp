#include "nomic/epistemic.hpp"

#include "nomic/errors.hpp"

namespace nomic {

EpistemicState EpistemicState::make(const PhaseSpace& space, const Subspace& known,
                                    const Vec& a) {
  if (known.ambient_dim() != space.dim())
    throw DimensionError("known functionals have wrong ambient dimension");
  if (a.size() != space.dim()) throw DimensionError("value point has wrong length");
  const Matrix& b = known.basis();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = i; j < b.rows(); ++j) {
      Scalar w = symplectic_form(space, b.row(i), b.row(j));
      if (!w.is_zero()) throw NotIsotropicError(i, j, w.str());
    }
  Vec canon = orthogonal_complement(known).coset_rep(a);
  return EpistemicState(space, known, std::move(canon));
}

AffineSubspace support(const EpistemicState& e) {
  return make_affine(orthogonal_complement(e.known()), e.value_point());
}

std::vector<Vec> enumerate_support(const EpistemicState& e) {
  if (!e.space().field().is_prime_field())
    throw InfeasibleError("cannot enumerate a support over the rationals");
  return enumerate_affine(support(e));
}

bool is_pure(const EpistemicState& e) {
  return classify_subspace(e.space(), e.known()) == SubspaceClass::Lagrangian;
}

EpistemicState product(const EpistemicState& e1, const EpistemicState& e2) {
  PhaseSpace joint = direct_sum(e1.space(), e2.space());
  const Field& f = joint.field();
  std::size_t d1 = e1.space().dim(), d2 = e2.space().dim();

  std::vector<Vec> rows;
  auto pad = [&](const Matrix& b, std::size_t before) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      Vec v = zero_vec(f, d1 + d2);
      for (std::size_t c = 0; c < b.cols(); ++c) v[before + c] = b.at(r, c);
      rows.push_back(std::move(v));
    }
  };
  pad(e1.known().basis(), 0);
  pad(e2.known().basis(), d1);

  Vec a = zero_vec(f, d1 + d2);
  for (std::size_t c = 0; c < d1; ++c) a[c] = e1.value_point()[c];
  for (std::size_t c = 0; c < d2; ++c) a[d1 + c] = e2.value_point()[c];

  return EpistemicState::make(joint, Subspace::from_span_rows(f, d1 + d2, rows), a);
}

EpistemicState marginal(const EpistemicState& e, std::size_t factor) {
  const PhaseSpace& joint = e.space();
  PhaseSpace part = joint.factor(factor);
  Subspace inside = intersection(e.known(), joint.factor_subspace(factor));
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < inside.basis().rows(); ++r)
    rows.push_back(joint.project(factor, inside.basis().row(r)));
  Subspace u = Subspace::from_span_rows(part.field(), part.dim(), rows);
  return EpistemicState::make(part, u, joint.project(factor, e.value_point()));
}

EpistemicState pointer_state(const PhaseSpace& space, const Subspace& q, const Vec& q_value) {
  if (!q.contains(q_value)) throw ValueError("pointer value does not lie in the Lagrangian");
  return EpistemicState::make(space, q, q_value);
}

EpistemicState push_epistemic(const AffineSymplectic& f, const EpistemicState& e) {
  if (f.space() != e.space()) throw DimensionError("map and state live on different spaces");
  Matrix new_basis = e.known().basis() * inv_transpose(f).transpose();
  Subspace u = Subspace::from_span(f.space().field(), f.space().dim(), new_basis);
  return EpistemicState::make(f.space(), u, f.apply(e.value_point()));
}

}  // namespace nomic
