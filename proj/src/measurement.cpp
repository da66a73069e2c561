#include "nomic/measurement.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nomic/errors.hpp"

namespace nomic {

namespace {

std::vector<long long> encode(const Vec& v) {
  std::vector<long long> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.residue());
  return out;
}

Vec negate(const Vec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(-s);
  return out;
}

}  // namespace

Subspace complement_subspace(const Subspace& w, ComplementRule rule) {
  const Field& f = w.field();
  std::size_t n = w.ambient_dim();
  if (rule == ComplementRule::Canonical) {
    if (!f.is_prime_field()) return orthogonal_complement(w);
    std::vector<bool> pivot(n, false);
    for (std::size_t p : w.pivots()) pivot[p] = true;
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i) {
      if (pivot[i]) continue;
      Vec e = zero_vec(f, n);
      e[i] = Scalar(f, 1);
      rows.push_back(e);
    }
    return Subspace::from_span_rows(f, n, rows);
  }
  if (!f.is_prime_field())
    throw InfeasibleError("cannot enumerate a complement over the rationals");
  std::vector<Vec> pts = Subspace::full(f, n).enumerate();
  Subspace cur = w;
  std::vector<Vec> rows;
  for (auto it = pts.rbegin(); it != pts.rend() && cur.dim() < n; ++it) {
    if (cur.contains(*it)) continue;
    rows.push_back(*it);
    cur = sum(cur, Subspace::from_span_rows(f, n, {*it}));
  }
  return Subspace::from_span_rows(f, n, rows);
}

ToySubject make_subject(const PhaseSpace& space, const Subspace& q, ComplementRule rule) {
  if (q.field() != space.field()) throw FieldMismatchError();
  if (q.ambient_dim() != space.dim())
    throw DimensionError("pointer subspace does not match the subject's space");
  if (classify_subspace(space, q) != SubspaceClass::Lagrangian)
    throw NotLagrangianError("pointer subspace is not Lagrangian");
  return ToySubject(space, q, complement_subspace(q, rule), rule);
}

Vec Measurement::embed_object(const Vec& s) const {
  std::size_t ds = object_.dim();
  if (s.size() != ds) throw DimensionError("object state has the wrong length");
  Vec x = zero_vec(object_.field(), joint().dim());
  for (std::size_t i = 0; i < ds; ++i) x[i] = s[i];
  return x;
}

Vec Measurement::embed_subject(const Vec& a) const {
  std::size_t ds = object_.dim();
  std::size_t da = subject_.space().dim();
  if (a.size() != da) throw DimensionError("subject state has the wrong length");
  Vec x = zero_vec(object_.field(), joint().dim());
  for (std::size_t i = 0; i < da; ++i) x[ds + i] = a[i];
  return x;
}

Vec Measurement::project_object(const Vec& x) const {
  if (x.size() != joint().dim()) throw DimensionError("joint state has the wrong length");
  return Vec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(object_.dim()));
}

Vec Measurement::project_subject(const Vec& x) const {
  if (x.size() != joint().dim()) throw DimensionError("joint state has the wrong length");
  return Vec(x.begin() + static_cast<std::ptrdiff_t>(object_.dim()), x.end());
}

Vec Measurement::input_state(const Vec& s, const Vec& p) const {
  return embed_object(s) + embed_subject(ready_q_ + p);
}

Measurement make_measurement(const PhaseSpace& object, const ToySubject& subject,
                             const Vec& ready_q, const AffineSymplectic& map) {
  if (object.field() != subject.space().field()) throw FieldMismatchError();
  if (map.space() != direct_sum(object, subject.space()))
    throw DimensionError("interaction does not act on object + subject");
  if (ready_q.size() != subject.space().dim())
    throw DimensionError("ready value has the wrong length");
  if (!subject.q().contains(ready_q))
    throw ValueError("ready value does not lie in the pointer Lagrangian");
  return Measurement(object, subject, ready_q, map);
}

BlockDecomposition blocks(const Measurement& meas) {
  const Field& f = meas.object().field();
  const std::size_t ds = meas.object().dim();
  const std::size_t dq = meas.subject().q().dim();
  const std::size_t dp = meas.subject().p().dim();
  const std::size_t d = ds + dq + dp;

  Matrix t(f, d, d);
  for (std::size_t i = 0; i < ds; ++i) t.at(i, i) = Scalar(f, 1);
  for (std::size_t j = 0; j < dq; ++j) {
    Vec col = meas.embed_subject(meas.subject().q().basis().row(j));
    for (std::size_t i = 0; i < d; ++i) t.at(i, ds + j) = col[i];
  }
  for (std::size_t j = 0; j < dp; ++j) {
    Vec col = meas.embed_subject(meas.subject().p().basis().row(j));
    for (std::size_t i = 0; i < d; ++i) t.at(i, ds + dq + j) = col[i];
  }
  Matrix tinv = inverse(t);
  Matrix mp = tinv * meas.map().matrix() * t;

  BlockDecomposition bd{
      ds,
      dq,
      dp,
      0,
      0,
      mp.submatrix(0, 0, ds, ds),
      mp.submatrix(0, ds, ds, dq),
      mp.submatrix(0, ds + dq, ds, dp),
      mp.submatrix(ds, 0, dq, ds),
      mp.submatrix(ds, ds, dq, dq),
      mp.submatrix(ds, ds + dq, dq, dp),
      mp.submatrix(ds + dq, 0, dp, ds),
      mp.submatrix(ds + dq, ds, dp, dq),
      mp.submatrix(ds + dq, ds + dq, dp, dp),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Matrix(f, 0, 0),
      Vec{}};

  Subspace c_image = image(bd.m_qp);
  Subspace f_part = complement_subspace(c_image, meas.subject().rule());
  bd.c_basis = c_image.basis();
  bd.f_basis = f_part.basis();
  bd.df = bd.f_basis.rows();
  bd.dc = bd.c_basis.rows();

  Matrix a_mat = hstack(bd.f_basis.transpose(), bd.c_basis.transpose());
  Matrix a_inv = inverse(a_mat);
  bd.proj_f = a_inv.submatrix(0, 0, bd.df, dq);
  bd.proj_c = a_inv.submatrix(bd.df, 0, bd.dc, dq);

  bd.m_fs = bd.proj_f * bd.m_qs;
  bd.m_ff = bd.proj_f * bd.m_qq * bd.f_basis.transpose();
  bd.m_fc = bd.proj_f * bd.m_qq * bd.c_basis.transpose();
  bd.m_fp = bd.proj_f * bd.m_qp;
  bd.m_cs = bd.proj_c * bd.m_qs;
  bd.m_cp = bd.proj_c * bd.m_qp;

  bd.read_q = tinv.submatrix(ds, 0, dq, d);
  bd.read_f = bd.proj_f * bd.read_q;
  Vec ready_img = meas.map().matrix().apply(meas.embed_subject(meas.ready_q())) +
                  meas.map().shift();
  bd.f_offset = bd.read_f.apply(ready_img);
  return bd;
}

std::pair<LinearVariable, LinearVariable> manifest_split(const Measurement& meas) {
  BlockDecomposition bd = blocks(meas);
  const ToySubject& a = meas.subject();
  Matrix basis_cols = hstack(a.q().basis().transpose(), a.p().basis().transpose());
  Matrix coords = inverse(basis_cols);
  Matrix value_of_q = coords.submatrix(0, 0, bd.dq, a.space().dim());
  LinearVariable contingent = LinearVariable::make(a.space(), bd.proj_c * value_of_q);
  LinearVariable free = LinearVariable::make(a.space(), bd.proj_f * value_of_q);
  return {contingent, free};
}

LinearVariable measured_variable(const Measurement& meas) {
  BlockDecomposition bd = blocks(meas);
  return LinearVariable::make(meas.object(), bd.m_fs);
}

FixedResult is_fixed(const Measurement& meas, const LinearVariable& z) {
  if (z.space() != meas.object())
    throw DimensionError("variable does not live on the measured object");
  const Field& f = meas.object().field();
  BlockDecomposition bd = blocks(meas);

  Matrix mfs_t = bd.m_fs.transpose();
  std::vector<Vec> l_rows;
  bool all = true;
  for (std::size_t i = 0; i < z.rows().rows() && all; ++i) {
    auto l = solve(mfs_t, z.rows().row(i));
    if (!l)
      all = false;
    else
      l_rows.push_back(*l);
  }
  if (all) {
    Matrix on_free(f, l_rows.size(), bd.df);
    for (std::size_t i = 0; i < l_rows.size(); ++i)
      for (std::size_t j = 0; j < bd.df; ++j) on_free.at(i, j) = l_rows[i][j];
    Extractor ex{on_free, on_free * bd.proj_f, negate(on_free.apply(bd.f_offset))};
    return FixedResult{true, ex, std::nullopt};
  }

  Matrix kb = kernel_basis(bd.m_fs);
  Vec s_star = zero_vec(f, bd.ds);
  bool found = false;
  for (std::size_t i = 0; i < kb.rows() && !found; ++i) {
    if (!is_zero(z.read(kb.row(i)))) {
      s_star = kb.row(i);
      found = true;
    }
  }
  if (!found) throw MathError("factorization failed without a kernel witness");
  auto delta = solve(bd.m_qp, bd.m_qs.apply(s_star));
  if (!delta) throw MathError("pointer collision is not reachable by any momentum");
  std::size_t da = meas.subject().space().dim();
  Vec p2 = meas.subject().p().basis().transpose().apply(*delta);
  FixedWitness w{s_star, zero_vec(f, da), zero_vec(f, bd.ds), p2};
  return FixedResult{false, std::nullopt, w};
}

namespace {

template <typename ReadFn>
FixedResult fixed_by_enumeration(const Measurement& meas, ReadFn read) {
  const Field& f = meas.object().field();
  if (!f.is_prime_field())
    throw InfeasibleError("cannot enumerate measurement runs over the rationals");
  BlockDecomposition bd = blocks(meas);
  std::vector<Vec> states = Subspace::full(f, meas.object().dim()).enumerate();
  std::vector<Vec> momenta = meas.subject().p().enumerate();
  std::map<std::vector<long long>, std::pair<std::vector<long long>, std::pair<Vec, Vec>>> seen;
  for (const Vec& s : states) {
    std::vector<long long> value = read(s);
    for (const Vec& p : momenta) {
      Vec after = meas.map().apply(meas.input_state(s, p));
      std::vector<long long> key = encode(bd.read_q.apply(after));
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, std::make_pair(value, std::make_pair(s, p)));
      } else if (it->second.first != value) {
        FixedWitness w{it->second.second.first, it->second.second.second, s, p};
        return FixedResult{false, std::nullopt, w};
      }
    }
  }
  return FixedResult{true, std::nullopt, std::nullopt};
}

}  // namespace

FixedResult is_fixed_oracle(const Measurement& meas, const LinearVariable& z) {
  if (z.space() != meas.object())
    throw DimensionError("variable does not live on the measured object");
  return fixed_by_enumeration(meas, [&](const Vec& s) { return encode(z.read(s)); });
}

FixedResult is_fixed_oracle(const Measurement& meas, const GeneralVariable& z) {
  if (z.space() != meas.object())
    throw DimensionError("variable does not live on the measured object");
  return fixed_by_enumeration(
      meas, [&](const Vec& s) { return std::vector<long long>{z.read(s)}; });
}

Measurement construct_measurement(const PhaseSpace& object, const LinearVariable& z) {
  if (z.space() != object) throw DimensionError("variable does not live on the object");
  require_poisson(z);
  const Field& f = object.field();
  const std::size_t ds = object.dim();
  Matrix zm = z.rows();
  if (zm.rows() == 0) zm = Matrix(f, 1, ds);
  const std::size_t k = zm.rows();

  PhaseSpace probe = PhaseSpace::make(f, k, "probe");
  std::vector<Vec> q_rows;
  for (std::size_t i = 0; i < k; ++i) {
    Vec e = zero_vec(f, 2 * k);
    e[i] = Scalar(f, 1);
    q_rows.push_back(e);
  }
  ToySubject subject = make_subject(probe, Subspace::from_span_rows(f, 2 * k, q_rows));

  const std::size_t d = ds + 2 * k;
  Matrix m(f, d, d);
  for (std::size_t i = 0; i < ds; ++i) m.at(i, i) = Scalar(f, 1);
  Matrix kick = object.omega() * zm.transpose();
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t j = 0; j < k; ++j) m.at(i, ds + k + j) = kick.at(i, j);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < ds; ++c) m.at(ds + i, c) = zm.at(i, c);
    m.at(ds + i, ds + i) = Scalar(f, 1);
    m.at(ds + k + i, ds + k + i) = Scalar(f, 1);
  }
  PhaseSpace joint = direct_sum(object, probe);
  AffineSymplectic map = AffineSymplectic::make(joint, m, zero_vec(f, d));
  return make_measurement(object, subject, zero_vec(f, 2 * k), map);
}

Copier construct_copier(const PhaseSpace& space, const LinearVariable& z) {
  if (z.space() != space) throw DimensionError("variable does not live on the given space");
  require_poisson(z);
  const Field& f = space.field();
  const std::size_t d = space.dim();
  RrefResult rr = rref(z.rows());
  Matrix zp = rr.m.submatrix(0, 0, rr.rank, d);
  const std::size_t r = rr.rank;
  const Matrix& omega = space.omega();

  Matrix h(f, d, d);
  if (r > 0) {
    Matrix gram = zp * zp.transpose();
    if (rank(gram) == r) {
      h = zp.transpose() * inverse(gram) * zp;
    } else {
      std::vector<Vec> duals;
      Matrix omega_t = omega.transpose();
      for (std::size_t j = 0; j < r; ++j) {
        Matrix cons(f, r + j, d);
        Vec rhs = zero_vec(f, r + j);
        for (std::size_t i = 0; i < r; ++i) {
          Vec row = omega_t.apply(zp.row(i));
          for (std::size_t c = 0; c < d; ++c) cons.at(i, c) = row[c];
          if (i == j) rhs[i] = Scalar(f, 1);
        }
        for (std::size_t kk = 0; kk < j; ++kk) {
          Vec row = omega_t.apply(duals[kk]);
          for (std::size_t c = 0; c < d; ++c) cons.at(r + kk, c) = row[c];
        }
        auto e = solve(cons, rhs);
        if (!e) throw MathError("no symplectic dual basis for the value functionals");
        duals.push_back(*e);
      }
      Matrix w(f, d, r);
      for (std::size_t j = 0; j < r; ++j) {
        Vec col = omega.apply(duals[j]);
        for (std::size_t i = 0; i < d; ++i) w.at(i, j) = col[i];
      }
      h = w * zp;
    }
  }
  Matrix g = omega * h.transpose() * omega;

  const std::size_t dd = 2 * d;
  Matrix m(f, dd, dd);
  for (std::size_t i = 0; i < dd; ++i) m.at(i, i) = Scalar(f, 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      m.at(i, d + j) = m.at(i, d + j) + g.at(i, j);
      m.at(d + i, j) = m.at(d + i, j) + h.at(i, j);
    }
  PhaseSpace joint = direct_sum(space, space);
  AffineSymplectic map = AffineSymplectic::make(joint, m, zero_vec(f, dd));
  EpistemicState ready =
      EpistemicState::make(space, Subspace::from_span(f, d, zp), zero_vec(f, d));
  return Copier{map, ready};
}

bool is_pointer_preserving(const Measurement& meas) {
  const Field& f = meas.object().field();
  const std::size_t ds = meas.object().dim();
  const std::size_t d = meas.joint().dim();

  std::vector<Vec> sq_rows;
  for (std::size_t i = 0; i < ds; ++i) {
    Vec e = zero_vec(f, d);
    e[i] = Scalar(f, 1);
    sq_rows.push_back(e);
  }
  const Matrix& qb = meas.subject().q().basis();
  for (std::size_t i = 0; i < qb.rows(); ++i)
    sq_rows.push_back(meas.embed_subject(qb.row(i)));
  Subspace sq = Subspace::from_span_rows(f, d, sq_rows);
  Subspace emb_q = Subspace::from_span_rows(
      f, d, std::vector<Vec>(sq_rows.begin() + static_cast<std::ptrdiff_t>(ds), sq_rows.end()));

  std::vector<Vec> subj_rows;
  for (std::size_t i = ds; i < d; ++i) {
    Vec e = zero_vec(f, d);
    e[i] = Scalar(f, 1);
    subj_rows.push_back(e);
  }
  Subspace subj_block = Subspace::from_span_rows(f, d, subj_rows);

  Matrix pull = inv_transpose(meas.map());
  std::vector<Vec> pre_rows;
  for (std::size_t i = 0; i < sq.dim(); ++i) pre_rows.push_back(pull.apply(sq.basis().row(i)));
  Subspace pre = intersection(Subspace::from_span_rows(f, d, pre_rows), subj_block);
  return pre == emb_q;
}

bool is_pointer_preserving_definitional(const Measurement& meas) {
  const Field& f = meas.object().field();
  if (!f.is_prime_field())
    throw InfeasibleError("cannot enumerate pointer states over the rationals");
  const ToySubject& a = meas.subject();
  Subspace momentum_dir = orthogonal_complement(a.q());

  std::set<std::vector<std::vector<long long>>> support_keys;
  std::vector<std::vector<Vec>> supports;
  for (const Vec& pt : Subspace::full(f, a.space().dim()).enumerate()) {
    std::vector<Vec> pts = enumerate_affine(make_affine(momentum_dir, pt));
    std::vector<std::vector<long long>> key;
    for (const Vec& x : pts) key.push_back(encode(x));
    std::sort(key.begin(), key.end());
    if (support_keys.insert(key).second) supports.push_back(pts);
  }

  for (const Vec& s : Subspace::full(f, meas.object().dim()).enumerate()) {
    Vec s_emb = meas.embed_object(s);
    for (const auto& pts : supports) {
      std::vector<std::vector<long long>> img;
      for (const Vec& x : pts)
        img.push_back(encode(meas.project_subject(meas.map().apply(s_emb + meas.embed_subject(x)))));
      std::sort(img.begin(), img.end());
      if (support_keys.find(img) == support_keys.end()) return false;
    }
  }
  return true;
}

}  // namespace nomic
