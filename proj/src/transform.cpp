#include "nomic/transform.hpp"

#include <algorithm>

#include "nomic/errors.hpp"

namespace nomic {

bool is_symplectic_matrix(const PhaseSpace& space, const Matrix& m) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) return false;
  return m.transpose() * space.omega() * m == space.omega();
}

AffineSymplectic AffineSymplectic::make(const PhaseSpace& space, Matrix m, Vec v) {
  if (m.rows() != space.dim() || m.cols() != space.dim())
    throw DimensionError("transformation matrix has wrong shape");
  if (v.size() != space.dim()) throw DimensionError("translation vector has wrong length");
  Matrix delta = m.transpose() * space.omega() * m - space.omega();
  for (std::size_t i = 0; i < delta.rows(); ++i)
    for (std::size_t j = 0; j < delta.cols(); ++j)
      if (!delta.at(i, j).is_zero()) throw NotSymplecticError(i, j, delta.at(i, j).str());
  return AffineSymplectic(space, std::move(m), std::move(v));
}

AffineSymplectic AffineSymplectic::identity(const PhaseSpace& space) {
  return make(space, Matrix::identity(space.field(), space.dim()),
              zero_vec(space.field(), space.dim()));
}

AffineSymplectic compose(const AffineSymplectic& outer, const AffineSymplectic& inner) {
  if (outer.space() != inner.space()) throw DimensionError("composing maps on different spaces");
  Matrix m = outer.matrix() * inner.matrix();
  Vec v = outer.shift() + outer.matrix().apply(inner.shift());
  return AffineSymplectic::make(outer.space(), std::move(m), std::move(v));
}

AffineSymplectic inverse(const AffineSymplectic& f) {
  const Matrix& omega = f.space().omega();
  Matrix minv = omega.transpose() * f.matrix().transpose() * omega;
  Vec v = -Scalar(f.space().field(), 1) * minv.apply(f.shift());
  return AffineSymplectic::make(f.space(), std::move(minv), std::move(v));
}

Vec AffineSymplectic::apply(const Vec& x) const {
  if (x.size() != space_.dim()) throw DimensionError("state has wrong length");
  return m_.apply(x) + v_;
}

OnticState AffineSymplectic::apply(const OnticState& x) const {
  if (x.space != space_) throw DimensionError("state lives on a different space");
  return OnticState{x.space, apply(x.coords)};
}

Matrix inv_transpose(const AffineSymplectic& f) {
  const Matrix& omega = f.space().omega();
  return -Scalar(f.space().field(), 1) * (omega * f.matrix() * omega);
}

AffineSymplectic embed_map(const PhaseSpace& joint, const AffineSymplectic& f_sub,
                           const std::vector<std::size_t>& factor_idxs) {
  const PhaseSpace& sub = f_sub.space();
  if (joint.field() != sub.field()) throw FieldMismatchError();
  const auto& sub_layout = sub.factor_layout();
  const auto& joint_layout = joint.factor_layout();
  if (factor_idxs.size() != sub_layout.size())
    throw UsageError("embed_map: one joint factor per sub-map factor required");

  // pos[c] = joint coordinate carrying sub coordinate c.
  std::vector<std::size_t> pos(sub.dim());
  std::vector<bool> used(joint_layout.size(), false);
  for (std::size_t k = 0; k < sub_layout.size(); ++k) {
    std::size_t idx = factor_idxs[k];
    if (idx >= joint_layout.size()) throw UnknownFactorError("embed_map: factor index out of range");
    if (used[idx]) throw UsageError("embed_map: joint factor used twice");
    used[idx] = true;
    if (joint_layout[idx].dim != sub_layout[k].dim)
      throw DimensionError("embed_map: factor dimensions differ");
    for (std::size_t c = 0; c < sub_layout[k].dim; ++c)
      pos[sub_layout[k].offset + c] = joint_layout[idx].offset + c;
  }

  Matrix m = Matrix::identity(joint.field(), joint.dim());
  Vec v = zero_vec(joint.field(), joint.dim());
  for (std::size_t r = 0; r < sub.dim(); ++r) {
    for (std::size_t c = 0; c < sub.dim(); ++c) m.at(pos[r], pos[c]) = f_sub.matrix().at(r, c);
    v[pos[r]] = f_sub.shift()[r];
  }
  return AffineSymplectic::make(joint, std::move(m), std::move(v));
}

SymplecticBasis symplectic_basis(const PhaseSpace& space, const Subspace& k) {
  if (k.ambient_dim() != space.dim()) throw DimensionError("subspace has wrong ambient dimension");
  std::vector<Vec> rem;
  for (std::size_t r = 0; r < k.basis().rows(); ++r) rem.push_back(k.basis().row(r));

  SymplecticBasis out;
  while (!rem.empty()) {
    std::size_t j = 0;
    Scalar form(space.field(), 0);
    for (j = 1; j < rem.size(); ++j) {
      form = symplectic_form(space, rem[0], rem[j]);
      if (!form.is_zero()) break;
    }
    if (j == rem.size())
      throw MathError("subspace has a nonzero radical, no symplectic basis exists");
    Vec e = rem[0];
    Vec f = form.inverse() * rem[j];
    rem.erase(rem.begin() + j);
    rem.erase(rem.begin());
    for (Vec& r : rem)
      r = r + symplectic_form(space, f, r) * e - symplectic_form(space, e, r) * f;
    out.e.push_back(std::move(e));
    out.f.push_back(std::move(f));
  }
  return out;
}

namespace {

// Match the codomain's factor blocks to domain factors, in order, by dimension.
std::vector<std::size_t> match_factors(const PhaseSpace& domain, const PhaseSpace& codomain) {
  const auto& dl = domain.factor_layout();
  const auto& cl = codomain.factor_layout();
  std::vector<std::size_t> idxs;
  std::size_t start = 0;
  for (const Factor& cf : cl) {
    std::size_t i = start;
    while (i < dl.size() && dl[i].dim != cf.dim) ++i;
    if (i == dl.size()) throw NotPhysicalError("codomain is not a factor of the domain");
    idxs.push_back(i);
    start = i + 1;
  }
  return idxs;
}

}  // namespace

PhysicalTransformation PhysicalTransformation::make(const PhaseSpace& domain,
                                                    const PhaseSpace& codomain, Matrix f, Vec w) {
  if (domain.field() != codomain.field()) throw FieldMismatchError();
  if (f.rows() != codomain.dim() || f.cols() != domain.dim())
    throw DimensionError("map matrix has wrong shape");
  if (w.size() != codomain.dim()) throw DimensionError("shift has wrong length");
  if (codomain.dim() > domain.dim())
    throw NotPhysicalError("codomain dimension exceeds the domain dimension");

  std::vector<std::size_t> idxs = match_factors(domain, codomain);
  if (rank(f) != codomain.dim()) throw NotPhysicalError("map does not cover the codomain");

  Subspace ker = kernel(f);
  if (ker.dim() > 0 && classify_subspace(domain, ker) != SubspaceClass::Symplectic)
    throw NotPhysicalError("kernel is not a symplectic subspace");

  Subspace kw = symplectic_complement(domain, ker);
  std::vector<Vec> u;
  for (std::size_t r = 0; r < kw.basis().rows(); ++r) u.push_back(kw.basis().row(r));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      Scalar lhs = symplectic_form(codomain, f.apply(u[i]), f.apply(u[j]));
      Scalar rhs = symplectic_form(domain, u[i], u[j]);
      if (!(lhs == rhs))
        throw NotPhysicalError("form not preserved on the complement of the kernel");
    }

  // Dilation: send the kernel's complement through f into the codomain blocks
  // and the kernel itself, Darboux pair by Darboux pair, onto the remaining
  // blocks' standard pairs.
  const Field& fd = domain.field();
  std::vector<Vec> remaining_q, remaining_p;
  for (std::size_t i = 0; i < domain.factor_layout().size(); ++i) {
    if (std::find(idxs.begin(), idxs.end(), i) != idxs.end()) continue;
    const Factor& fac = domain.factor_layout()[i];
    for (std::size_t c = 0; c < fac.dim / 2; ++c) {
      Vec q = zero_vec(fd, domain.dim());
      q[fac.offset + c] = Scalar(fd, 1);
      remaining_q.push_back(std::move(q));
      Vec p = zero_vec(fd, domain.dim());
      p[fac.offset + fac.dim / 2 + c] = Scalar(fd, 1);
      remaining_p.push_back(std::move(p));
    }
  }

  SymplecticBasis kb = symplectic_basis(domain, ker);

  // Embed codomain coordinate c at domain coordinate embed_pos[c].
  std::vector<std::size_t> embed_pos(codomain.dim());
  for (std::size_t k = 0; k < idxs.size(); ++k)
    for (std::size_t c = 0; c < codomain.factor_layout()[k].dim; ++c)
      embed_pos[codomain.factor_layout()[k].offset + c] =
          domain.factor_layout()[idxs[k]].offset + c;
  auto embed = [&](const Vec& x) {
    Vec out = zero_vec(fd, domain.dim());
    for (std::size_t c = 0; c < x.size(); ++c) out[embed_pos[c]] = x[c];
    return out;
  };

  Matrix t(fd, domain.dim(), domain.dim());
  Matrix g(fd, domain.dim(), domain.dim());
  std::size_t col = 0;
  auto put = [&](const Vec& tc, const Vec& gc) {
    for (std::size_t r = 0; r < domain.dim(); ++r) {
      t.at(r, col) = tc[r];
      g.at(r, col) = gc[r];
    }
    ++col;
  };
  for (const Vec& ui : u) put(ui, embed(f.apply(ui)));
  for (std::size_t i = 0; i < kb.e.size(); ++i) put(kb.e[i], remaining_q[i]);
  for (std::size_t i = 0; i < kb.f.size(); ++i) put(kb.f[i], remaining_p[i]);

  AffineSymplectic dil = AffineSymplectic::make(domain, g * inverse(t), embed(w));
  return PhysicalTransformation(domain, codomain, std::move(f), std::move(w), std::move(dil));
}

PhysicalTransformation make_physical(const PhaseSpace& domain, const PhaseSpace& codomain,
                                     Matrix f, Vec w) {
  return PhysicalTransformation::make(domain, codomain, std::move(f), std::move(w));
}

AffineSymplectic dilate(const PhysicalTransformation& pt) { return pt.dilation(); }

Vec PhysicalTransformation::apply(const Vec& x) const {
  if (x.size() != domain_.dim()) throw DimensionError("state has wrong length");
  return f_.apply(x) + w_;
}

}  // namespace nomic
