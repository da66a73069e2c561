#include "nomic/variable.hpp"

#include <algorithm>

#include "nomic/errors.hpp"

namespace nomic {

namespace {

std::vector<long long> state_key(const Vec& x) {
  std::vector<long long> key;
  key.reserve(x.size());
  for (const Scalar& s : x) key.push_back(s.residue());
  return key;
}

}  // namespace

LinearVariable LinearVariable::make(const PhaseSpace& space, Matrix z) {
  if (z.cols() != space.dim()) throw DimensionError("variable rows have wrong length");
  if (z.field() != space.field()) throw FieldMismatchError();
  return LinearVariable(space, std::move(z));
}

LinearVariable make_variable(const PhaseSpace& space, Matrix z) {
  return LinearVariable::make(space, std::move(z));
}

Vec LinearVariable::read(const Vec& x) const {
  if (x.size() != space_.dim()) throw DimensionError("state has wrong length");
  return z_.apply(x);
}

Scalar poisson_bracket(const PhaseSpace& space, const Vec& f1, const Vec& f2) {
  return symplectic_form(space, f1, f2);
}

bool is_poisson(const LinearVariable& v) {
  Matrix bracket = v.rows() * v.space().omega() * v.rows().transpose();
  return bracket.is_zero();
}

void require_poisson(const LinearVariable& v) {
  Matrix bracket = v.rows() * v.space().omega() * v.rows().transpose();
  for (std::size_t i = 0; i < bracket.rows(); ++i)
    for (std::size_t j = 0; j < bracket.cols(); ++j)
      if (!bracket.at(i, j).is_zero()) throw NotPoissonError(i, j, bracket.at(i, j).str());
}

Subspace variable_kernel(const LinearVariable& v) { return kernel(v.rows()); }

std::vector<std::pair<Vec, std::vector<Vec>>> fibers(const LinearVariable& v) {
  if (!v.space().field().is_prime_field())
    throw InfeasibleError("cannot enumerate fibers over the rationals");
  std::vector<std::pair<Vec, std::vector<Vec>>> out;
  for (const Vec& x : Subspace::full(v.space().field(), v.space().dim()).enumerate()) {
    Vec val = v.read(x);
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& p) { return p.first == val; });
    if (it == out.end()) {
      out.push_back({val, {x}});
    } else {
      it->second.push_back(x);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return vec_less(a.first, b.first); });
  return out;
}

bool equivalent(const LinearVariable& v1, const LinearVariable& v2) {
  if (v1.space() != v2.space()) throw DimensionError("variables live on different spaces");
  return variable_kernel(v1) == variable_kernel(v2);
}

GeneralVariable GeneralVariable::from_linear(const LinearVariable& v) {
  if (!v.space().field().is_prime_field())
    throw InfeasibleError("lookup tables need a finite state space");
  std::map<std::vector<long long>, long long> table;
  std::map<std::vector<long long>, long long> value_labels;
  for (const Vec& x : Subspace::full(v.space().field(), v.space().dim()).enumerate()) {
    auto val = state_key(v.read(x));
    auto [it, fresh] = value_labels.try_emplace(val, (long long)value_labels.size());
    (void)fresh;
    table[state_key(x)] = it->second;
  }
  return GeneralVariable(v.space(), std::move(table));
}

GeneralVariable GeneralVariable::from_table(const PhaseSpace& space,
                                            std::map<std::vector<long long>, long long> table) {
  if (!space.field().is_prime_field())
    throw InfeasibleError("lookup tables need a finite state space");
  for (const Vec& x : Subspace::full(space.field(), space.dim()).enumerate())
    if (!table.count(state_key(x))) throw ValueError("table misses a state");
  return GeneralVariable(space, std::move(table));
}

long long GeneralVariable::read(const Vec& x) const {
  auto it = table_.find(state_key(x));
  if (it == table_.end()) throw ValueError("state outside the table");
  return it->second;
}

std::map<long long, std::vector<Vec>> GeneralVariable::fibers() const {
  std::map<long long, std::vector<Vec>> out;
  for (const Vec& x : Subspace::full(space_.field(), space_.dim()).enumerate())
    out[read(x)].push_back(x);
  return out;
}

bool GeneralVariable::same_partition(const GeneralVariable& b) const {
  if (space_ != b.space_) throw DimensionError("variables live on different spaces");
  // Relabel both tables by first appearance over the common enumeration order.
  auto canon = [](const GeneralVariable& v) {
    std::map<long long, long long> relabel;
    std::vector<long long> out;
    for (const Vec& x : Subspace::full(v.space_.field(), v.space_.dim()).enumerate()) {
      long long raw = v.read(x);
      auto [it, fresh] = relabel.try_emplace(raw, (long long)relabel.size());
      (void)fresh;
      out.push_back(it->second);
    }
    return out;
  };
  return canon(*this) == canon(b);
}

}  // namespace nomic
