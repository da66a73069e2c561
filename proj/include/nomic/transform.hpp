#pragma once

#include "nomic/phasespace.hpp"

namespace nomic {

// Reversible dynamics x -> Mx + v. Construction is the single gate: an
// AffineSymplectic exists only if M^T.Omega.M = Omega holds exactly.
class AffineSymplectic {
 public:
  static AffineSymplectic make(const PhaseSpace& space, Matrix m, Vec v);
  static AffineSymplectic identity(const PhaseSpace& space);

  const PhaseSpace& space() const { return space_; }
  const Matrix& matrix() const { return m_; }
  const Vec& shift() const { return v_; }

  Vec apply(const Vec& x) const;
  OnticState apply(const OnticState& x) const;

  bool operator==(const AffineSymplectic& b) const {
    return space_ == b.space_ && m_ == b.m_ && v_ == b.v_;
  }
  bool operator!=(const AffineSymplectic& b) const { return !(*this == b); }

 private:
  AffineSymplectic(PhaseSpace space, Matrix m, Vec v)
      : space_(std::move(space)), m_(std::move(m)), v_(std::move(v)) {}
  PhaseSpace space_;
  Matrix m_;
  Vec v_;
};

bool is_symplectic_matrix(const PhaseSpace& space, const Matrix& m);

// (s,u) after (t,v): x -> s(t(x) + v) + u.
AffineSymplectic compose(const AffineSymplectic& outer, const AffineSymplectic& inner);

// Matrix part Omega^T M^T Omega, shift -M^{-1} v.
AffineSymplectic inverse(const AffineSymplectic& f);

// (M^{-1})^T in closed form, -Omega M Omega.
Matrix inv_transpose(const AffineSymplectic& f);

// Lift a map on a sub-product of factors to the whole composite, acting as the
// identity on every other factor. factor_idxs gives, in order, the joint
// factors that carry the sub-map's blocks.
AffineSymplectic embed_map(const PhaseSpace& joint, const AffineSymplectic& f_sub,
                           const std::vector<std::size_t>& factor_idxs);

// Darboux basis e_1..e_m, f_1..f_m of a symplectic subspace:
// omega(e_i, f_j) = delta_ij, omega(e_i, e_j) = omega(f_i, f_j) = 0.
struct SymplecticBasis {
  std::vector<Vec> e, f;
};
SymplecticBasis symplectic_basis(const PhaseSpace& space, const Subspace& k);

// Possibly irreversible map x -> Fx + w onto a factor of the domain. Validity
// is established constructively: the kernel of F must be a symplectic
// subspace, F must preserve the form on the kernel's symplectic complement and
// hit all of the codomain, and the resulting dilation must pass the
// AffineSymplectic gate.
class PhysicalTransformation {
 public:
  static PhysicalTransformation make(const PhaseSpace& domain, const PhaseSpace& codomain,
                                     Matrix f, Vec w);

  const PhaseSpace& domain() const { return domain_; }
  const PhaseSpace& codomain() const { return codomain_; }
  const Matrix& matrix() const { return f_; }
  const Vec& shift() const { return w_; }
  const AffineSymplectic& dilation() const { return dilation_; }

  Vec apply(const Vec& x) const;

 private:
  PhysicalTransformation(PhaseSpace domain, PhaseSpace codomain, Matrix f, Vec w,
                         AffineSymplectic dilation)
      : domain_(std::move(domain)),
        codomain_(std::move(codomain)),
        f_(std::move(f)),
        w_(std::move(w)),
        dilation_(std::move(dilation)) {}
  PhaseSpace domain_;
  PhaseSpace codomain_;
  Matrix f_;
  Vec w_;
  AffineSymplectic dilation_;
};

PhysicalTransformation make_physical(const PhaseSpace& domain, const PhaseSpace& codomain,
                                     Matrix f, Vec w);
AffineSymplectic dilate(const PhysicalTransformation& pt);

}  // namespace nomic
