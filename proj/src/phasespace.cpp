#include "nomic/phasespace.hpp"

#include <map>

#include "nomic/errors.hpp"

namespace nomic {

struct PhaseSpace::Impl {
  Field field = Field::rationals();
  std::size_t n = 0;
  Matrix omega{Field::rationals(), 0, 0};
  std::vector<std::string> labels;
  std::vector<Factor> layout;
};

namespace {

Matrix canonical_omega(const Field& f, std::size_t n) {
  Matrix w(f, 2 * n, 2 * n);
  Scalar one(f, 1);
  for (std::size_t i = 0; i < n; ++i) {
    w.at(i, n + i) = one;
    w.at(n + i, i) = -one;
  }
  return w;
}

}  // namespace

PhaseSpace PhaseSpace::make(const Field& f, std::size_t n, std::string name) {
  if (n == 0) throw DimensionError("phase space needs at least one degree of freedom");
  auto impl = std::make_shared<Impl>();
  impl->field = f;
  impl->n = n;
  impl->omega = canonical_omega(f, n);
  for (std::size_t i = 1; i <= n; ++i) impl->labels.push_back("q" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) impl->labels.push_back("p" + std::to_string(i));
  impl->layout.push_back(Factor{std::move(name), 0, 2 * n});
  return PhaseSpace(std::move(impl));
}

PhaseSpace PhaseSpace::direct_sum(const std::vector<PhaseSpace>& parts) {
  if (parts.empty()) throw DimensionError("direct sum of no spaces");
  if (parts.size() == 1) return parts[0];
  const Field& f = parts[0].field();
  for (const auto& p : parts)
    if (p.field() != f) throw FieldMismatchError();

  auto impl = std::make_shared<Impl>();
  impl->field = f;
  for (const auto& p : parts) impl->n += p.n();
  impl->omega = Matrix(f, 0, 0);

  std::map<std::string, std::size_t> name_uses;
  std::size_t offset = 0;
  for (const auto& p : parts) {
    const Matrix& po = p.omega();
    Matrix grown(f, impl->omega.rows() + po.rows(), impl->omega.cols() + po.cols());
    for (std::size_t i = 0; i < impl->omega.rows(); ++i)
      for (std::size_t j = 0; j < impl->omega.cols(); ++j)
        grown.at(i, j) = impl->omega.at(i, j);
    for (std::size_t i = 0; i < po.rows(); ++i)
      for (std::size_t j = 0; j < po.cols(); ++j)
        grown.at(offset + i, offset + j) = po.at(i, j);
    impl->omega = std::move(grown);

    for (const Factor& fac : p.factor_layout()) {
      std::string name = fac.name;
      std::size_t uses = ++name_uses[name];
      if (uses > 1) name += "_" + std::to_string(uses);
      impl->layout.push_back(Factor{name, offset + fac.offset, fac.dim});
      for (std::size_t k = 0; k < fac.dim; ++k) {
        std::string base = p.basis_labels()[fac.offset + k];
        auto dot = base.rfind('.');
        if (dot != std::string::npos) base = base.substr(dot + 1);
        impl->labels.push_back(name + "." + base);
      }
    }
    offset += p.dim();
  }
  return PhaseSpace(std::move(impl));
}

const Field& PhaseSpace::field() const { return impl_->field; }
std::size_t PhaseSpace::n() const { return impl_->n; }
std::size_t PhaseSpace::dim() const { return 2 * impl_->n; }
const Matrix& PhaseSpace::omega() const { return impl_->omega; }
const std::vector<std::string>& PhaseSpace::basis_labels() const { return impl_->labels; }
const std::vector<Factor>& PhaseSpace::factor_layout() const { return impl_->layout; }

PhaseSpace PhaseSpace::factor(std::size_t i) const {
  const auto& layout = impl_->layout;
  if (i >= layout.size()) throw UnknownFactorError("factor index out of range");
  return make(impl_->field, layout[i].dim / 2, layout[i].name);
}

std::size_t PhaseSpace::factor_index(const std::string& name) const {
  for (std::size_t i = 0; i < impl_->layout.size(); ++i)
    if (impl_->layout[i].name == name) return i;
  throw UnknownFactorError("no factor named '" + name + "'");
}

Vec PhaseSpace::embed(std::size_t i, const Vec& x) const {
  const auto& layout = impl_->layout;
  if (i >= layout.size()) throw UnknownFactorError("factor index out of range");
  if (x.size() != layout[i].dim) throw DimensionError("embed: wrong factor dimension");
  Vec out = zero_vec(impl_->field, dim());
  for (std::size_t k = 0; k < x.size(); ++k) out[layout[i].offset + k] = x[k];
  return out;
}

Vec PhaseSpace::project(std::size_t i, const Vec& x) const {
  const auto& layout = impl_->layout;
  if (i >= layout.size()) throw UnknownFactorError("factor index out of range");
  if (x.size() != dim()) throw DimensionError("project: wrong ambient dimension");
  Vec out;
  for (std::size_t k = 0; k < layout[i].dim; ++k) out.push_back(x[layout[i].offset + k]);
  return out;
}

Subspace PhaseSpace::factor_subspace(std::size_t i) const {
  const auto& layout = impl_->layout;
  if (i >= layout.size()) throw UnknownFactorError("factor index out of range");
  std::vector<Vec> rows;
  for (std::size_t k = 0; k < layout[i].dim; ++k) {
    Vec e = zero_vec(impl_->field, dim());
    e[layout[i].offset + k] = Scalar(impl_->field, 1);
    rows.push_back(std::move(e));
  }
  return Subspace::from_span_rows(impl_->field, dim(), rows);
}

// Names are addressing labels only; two spaces with the same field, form and
// block structure are the same space.
bool PhaseSpace::operator==(const PhaseSpace& b) const {
  if (impl_ == b.impl_) return true;
  if (impl_->field != b.impl_->field || impl_->n != b.impl_->n) return false;
  if (!(impl_->omega == b.impl_->omega)) return false;
  if (impl_->layout.size() != b.impl_->layout.size()) return false;
  for (std::size_t i = 0; i < impl_->layout.size(); ++i) {
    const Factor &x = impl_->layout[i], &y = b.impl_->layout[i];
    if (x.offset != y.offset || x.dim != y.dim) return false;
  }
  return true;
}

PhaseSpace direct_sum(const PhaseSpace& a, const PhaseSpace& b) {
  return PhaseSpace::direct_sum({a, b});
}

OnticState make_ontic(const PhaseSpace& space, const std::vector<long long>& coords) {
  if (coords.size() != space.dim()) throw DimensionError("ontic state has wrong length");
  Vec v;
  for (long long c : coords) v.emplace_back(space.field(), c);
  return OnticState{space, std::move(v)};
}

Scalar symplectic_form(const PhaseSpace& space, const Vec& x, const Vec& y) {
  if (x.size() != space.dim() || y.size() != space.dim())
    throw DimensionError("symplectic form: wrong vector length");
  return dot(x, space.omega().apply(y));
}

Scalar symplectic_form(const OnticState& x, const OnticState& y) {
  if (x.space != y.space) throw DimensionError("symplectic form: different spaces");
  return symplectic_form(x.space, x.coords, y.coords);
}

Subspace symplectic_complement(const PhaseSpace& space, const Subspace& w) {
  if (w.ambient_dim() != space.dim())
    throw DimensionError("symplectic complement: ambient dimension mismatch");
  return kernel(w.basis() * space.omega());
}

std::string to_string(SubspaceClass c) {
  switch (c) {
    case SubspaceClass::Symplectic: return "symplectic";
    case SubspaceClass::Isotropic: return "isotropic";
    case SubspaceClass::Lagrangian: return "lagrangian";
    case SubspaceClass::Neither: return "neither";
  }
  return "?";
}

SubspaceClass classify_subspace(const PhaseSpace& space, const Subspace& w) {
  Subspace comp = symplectic_complement(space, w);
  if (w == comp) return SubspaceClass::Lagrangian;
  if (comp.contains(w)) return SubspaceClass::Isotropic;
  if (intersection(w, comp).dim() == 0) return SubspaceClass::Symplectic;
  return SubspaceClass::Neither;
}

}  // namespace nomic
