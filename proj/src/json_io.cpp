#include "nomic/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nomic/errors.hpp"

namespace nomic {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected an object carrying \"" + std::string(key) + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing key \"" + std::string(key) + "\"");
  return *it;
}

const Json& need_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError("expected an array for " + what);
  return j;
}

std::size_t need_size(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_unsigned()) throw ParseError("\"" + std::string(key) + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::string need_string(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_string()) throw ParseError("\"" + std::string(key) + "\" must be a string");
  return v.get<std::string>();
}

unsigned long long need_u64(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_unsigned())
    throw ParseError("\"" + std::string(key) + "\" must be a nonnegative integer");
  return v.get<unsigned long long>();
}

Rational rational_from_string(const std::string& text) {
  std::string num = text;
  std::string den = "1";
  if (auto slash = text.find('/'); slash != std::string::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  try {
    BigInt n(num);
    BigInt d(den);
    if (d == 0) throw ParseError("zero denominator in \"" + text + "\"");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return Rational(n, d);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("cannot read \"" + text + "\" as a rational number");
  }
}

}  // namespace

Json to_json(const Scalar& s) {
  if (s.field().is_prime_field()) return Json(s.residue());
  return Json(s.str());
}

Scalar scalar_from_json(const Field& f, const Json& j) {
  if (f.is_prime_field()) {
    if (!j.is_number_integer()) throw ParseError("prime-field entries must be JSON integers");
    return Scalar(f, j.get<long long>());
  }
  if (j.is_number_integer()) return Scalar(f, j.get<long long>());
  if (j.is_string()) return Scalar(f, rational_from_string(j.get<std::string>()));
  throw ParseError("rational entries must be integers or \"num/den\" strings");
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const Scalar& s : v) out.push_back(to_json(s));
  return out;
}

Vec vec_from_json(const Field& f, const Json& j) {
  need_array(j, "a vector");
  Vec v;
  v.reserve(j.size());
  for (const Json& e : j) v.push_back(scalar_from_json(f, e));
  return v;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Matrix matrix_from_json(const Field& f, const Json& j, std::size_t cols_if_empty) {
  need_array(j, "a matrix");
  if (j.empty()) return Matrix(f, 0, cols_if_empty);
  std::size_t cols = need_array(j.front(), "a matrix row").size();
  Matrix m(f, j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Json& row = need_array(j.at(r), "a matrix row");
    if (row.size() != cols) throw ParseError("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = scalar_from_json(f, row.at(c));
  }
  return m;
}

Json to_json(const PhaseSpace& space) {
  Json factors = Json::array();
  for (const Factor& f : space.factor_layout())
    factors.push_back(Json{{"n", f.dim / 2}, {"name", f.name}});
  return Json{{"field", space.field().name()}, {"factors", factors}};
}

PhaseSpace space_from_json(const Json& j) {
  auto field = Field::parse(need_string(j, "field"));
  if (!field) throw ParseError("unknown field \"" + need_string(j, "field") + "\"");
  const Json& factors = need_array(need(j, "factors"), "\"factors\"");
  if (factors.empty()) throw ParseError("a space needs at least one factor");
  std::vector<PhaseSpace> parts;
  for (const Json& fac : factors) {
    std::size_t n = need_size(fac, "n");
    if (n == 0) throw ParseError("factor \"n\" must be positive");
    parts.push_back(PhaseSpace::make(*field, n, need_string(fac, "name")));
  }
  return parts.size() == 1 ? parts.front() : PhaseSpace::direct_sum(parts);
}

Json to_json(const AffineSymplectic& t) {
  return Json{{"space", to_json(t.space())},
              {"matrix", to_json(t.matrix())},
              {"shift", to_json(t.shift())}};
}

AffineSymplectic transform_from_json(const Json& j) {
  PhaseSpace space = space_from_json(need(j, "space"));
  const Field& f = space.field();
  Matrix m = matrix_from_json(f, need(j, "matrix"), space.dim());
  Vec shift = j.contains("shift") ? vec_from_json(f, j.at("shift")) : zero_vec(f, space.dim());
  return AffineSymplectic::make(space, m, shift);
}

Json to_json(const LinearVariable& z) {
  return Json{{"space", to_json(z.space())}, {"rows", to_json(z.rows())}};
}

LinearVariable variable_from_json(const Json& j) {
  PhaseSpace space = space_from_json(need(j, "space"));
  return LinearVariable::make(space,
                              matrix_from_json(space.field(), need(j, "rows"), space.dim()));
}

Json to_json(const EpistemicState& e) {
  return Json{{"space", to_json(e.space())},
              {"known", to_json(e.known().basis())},
              {"value_point", to_json(e.value_point())}};
}

EpistemicState epistemic_from_json(const Json& j) {
  PhaseSpace space = space_from_json(need(j, "space"));
  const Field& f = space.field();
  Matrix rows = matrix_from_json(f, need(j, "known"), space.dim());
  Subspace known = Subspace::from_span(f, space.dim(), rows);
  return EpistemicState::make(space, known, vec_from_json(f, need(j, "value_point")));
}

std::string to_string(ComplementRule rule) {
  return rule == ComplementRule::Canonical ? "canonical" : "greedy-top";
}

ComplementRule complement_rule_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("\"rule\" must be a string");
  std::string s = j.get<std::string>();
  if (s == "canonical") return ComplementRule::Canonical;
  if (s == "greedy-top") return ComplementRule::GreedyTop;
  throw ParseError("unknown complement rule \"" + s + "\"");
}

Json to_json(const ToySubject& s) {
  return Json{{"space", to_json(s.space())},
              {"manifest", to_json(s.q().basis())},
              {"momentum", to_json(s.p().basis())},
              {"rule", to_string(s.rule())}};
}

ToySubject subject_from_json(const Json& j) {
  PhaseSpace space = space_from_json(need(j, "space"));
  const Field& f = space.field();
  Subspace q =
      Subspace::from_span(f, space.dim(), matrix_from_json(f, need(j, "manifest"), space.dim()));
  ComplementRule rule =
      j.contains("rule") ? complement_rule_from_json(j.at("rule")) : ComplementRule::Canonical;
  ToySubject subject = make_subject(space, q, rule);
  if (j.contains("momentum")) {
    Subspace p =
        Subspace::from_span(f, space.dim(), matrix_from_json(f, j.at("momentum"), space.dim()));
    if (p != subject.p()) throw ParseError("stored momentum block disagrees with the rule");
  }
  return subject;
}

Json to_json(const Measurement& m) {
  return Json{{"object", to_json(m.object())},
              {"subject", to_json(m.subject())},
              {"ready", to_json(m.ready_q())},
              {"transform", Json{{"matrix", to_json(m.map().matrix())},
                                 {"shift", to_json(m.map().shift())}}},
              {"measured", to_json(measured_variable(m).rows())}};
}

Measurement measurement_from_json(const Json& j) {
  PhaseSpace object = space_from_json(need(j, "object"));
  ToySubject subject = subject_from_json(need(j, "subject"));
  const Field& f = object.field();
  Vec ready = vec_from_json(f, need(j, "ready"));
  const Json& tj = need(j, "transform");
  PhaseSpace joint = direct_sum(object, subject.space());
  Matrix m = matrix_from_json(f, need(tj, "matrix"), joint.dim());
  Vec shift =
      tj.contains("shift") ? vec_from_json(f, tj.at("shift")) : zero_vec(f, joint.dim());
  Measurement meas =
      make_measurement(object, subject, ready, AffineSymplectic::make(joint, m, shift));
  if (j.contains("measured")) {
    Matrix rows = matrix_from_json(f, j.at("measured"), object.dim());
    if (rows != measured_variable(meas).rows())
      throw ParseError("stored measured rows disagree with the transform");
  }
  return meas;
}

Json to_json(const Scenario& sc) {
  Json steps = Json::array();
  for (const ScenarioStep& step : sc.steps)
    steps.push_back(Json{{"label", step.label},
                         {"transform", Json{{"matrix", to_json(step.map.matrix())},
                                            {"shift", to_json(step.map.shift())}}}});
  Json subjects = Json::array();
  for (const ScenarioPointer& p : sc.pointers)
    subjects.push_back(Json{{"label", p.label}, {"rows", to_json(p.var.rows())}});
  return Json{{"space", to_json(sc.space)},
              {"initial", to_json(sc.initial)},
              {"steps", steps},
              {"subjects", subjects}};
}

ScenarioDoc scenario_from_json(const Json& j) {
  PhaseSpace space = space_from_json(need(j, "space"));
  const Field& f = space.field();
  ScenarioDoc doc{Scenario{space, {}, {}, zero_vec(f, space.dim())}, false};

  const Json& initial = need(j, "initial");
  if (initial.is_string()) {
    if (initial.get<std::string>() != "all")
      throw ParseError("\"initial\" must be a vector or the string \"all\"");
    doc.all_initial = true;
  } else {
    doc.scenario.initial = vec_from_json(f, initial);
  }

  for (const Json& sj : need_array(need(j, "steps"), "\"steps\"")) {
    std::string label = need_string(sj, "label");
    const Json& tj = need(sj, "transform");
    Matrix m = matrix_from_json(f, need(tj, "matrix"), space.dim());
    Vec shift =
        tj.contains("shift") ? vec_from_json(f, tj.at("shift")) : zero_vec(f, space.dim());
    try {
      doc.scenario.steps.push_back({label, AffineSymplectic::make(space, m, shift)});
    } catch (const NotSymplecticError& e) {
      throw MathError("step '" + label + "': " + e.what());
    }
  }
  if (j.contains("subjects")) {
    for (const Json& pj : need_array(j.at("subjects"), "\"subjects\"")) {
      std::string label = need_string(pj, "label");
      doc.scenario.pointers.push_back(
          {label,
           LinearVariable::make(space, matrix_from_json(f, need(pj, "rows"), space.dim()))});
    }
  }
  return doc;
}

Json to_json(const ScenarioTrace& t, const std::vector<ScenarioPointer>& pointers) {
  if (t.states.empty()) throw ValueError("cannot serialize an empty trace");
  const PhaseSpace& space = t.states.front().space;
  Json steps = Json::array();
  for (const ScenarioStep& step : t.steps)
    steps.push_back(Json{{"label", step.label},
                         {"transform", Json{{"matrix", to_json(step.map.matrix())},
                                            {"shift", to_json(step.map.shift())}}}});
  Json states = Json::array();
  for (const OnticState& st : t.states) states.push_back(to_json(st.coords));
  Json labels = Json::array();
  for (const ScenarioPointer& p : pointers) labels.push_back(p.label);
  Json readings = Json::array();
  for (const auto& row : t.pointer_readings) {
    Json jr = Json::array();
    for (const Vec& v : row) jr.push_back(to_json(v));
    readings.push_back(jr);
  }
  return Json{{"space", to_json(space)},
              {"steps", steps},
              {"states", states},
              {"pointers", labels},
              {"pointer_readings", readings},
              {"disturbance_notes", t.disturbance_notes}};
}

ScenarioTrace trace_from_json(const Json& j) {
  PhaseSpace space = space_from_json(need(j, "space"));
  const Field& f = space.field();
  ScenarioTrace t;
  for (const Json& sj : need_array(need(j, "steps"), "\"steps\"")) {
    const Json& tj = need(sj, "transform");
    Matrix m = matrix_from_json(f, need(tj, "matrix"), space.dim());
    Vec shift =
        tj.contains("shift") ? vec_from_json(f, tj.at("shift")) : zero_vec(f, space.dim());
    t.steps.push_back({need_string(sj, "label"), AffineSymplectic::make(space, m, shift)});
  }
  for (const Json& st : need_array(need(j, "states"), "\"states\""))
    t.states.push_back(OnticState{space, vec_from_json(f, st)});
  for (const Json& row : need_array(need(j, "pointer_readings"), "\"pointer_readings\"")) {
    std::vector<Vec> r;
    for (const Json& v : need_array(row, "a reading row")) r.push_back(vec_from_json(f, v));
    t.pointer_readings.push_back(r);
  }
  for (const Json& note : need_array(need(j, "disturbance_notes"), "\"disturbance_notes\"")) {
    if (!note.is_string()) throw ParseError("disturbance notes must be strings");
    t.disturbance_notes.push_back(note.get<std::string>());
  }
  return t;
}

namespace {

Json violations_to_json(const std::vector<HorizonViolation>& vs) {
  Json out = Json::array();
  for (const HorizonViolation& v : vs)
    out.push_back(Json{{"matrix", to_json(v.m)},
                       {"matrix_cols", v.m.cols()},
                       {"subspace", to_json(v.lagrangian.basis())},
                       {"ambient", v.lagrangian.ambient_dim()},
                       {"detail", v.detail}});
  return out;
}

std::vector<HorizonViolation> violations_from_json(const Field& f, const Json& j,
                                                   const std::string& what) {
  std::vector<HorizonViolation> out;
  for (const Json& vj : need_array(j, what)) {
    std::size_t ambient = need_size(vj, "ambient");
    Matrix m = matrix_from_json(f, need(vj, "matrix"), need_size(vj, "matrix_cols"));
    Subspace s = Subspace::from_span(f, ambient, matrix_from_json(f, need(vj, "subspace"), ambient));
    out.push_back({m, s, need_string(vj, "detail")});
  }
  return out;
}

}  // namespace

Json to_json(const HorizonReport& rep) {
  return Json{{"field", rep.field.name()},
              {"ns", rep.n_s},
              {"na", rep.n_a},
              {"mode", rep.mode == HorizonMode::Exhaustive ? "exhaustive" : "sample"},
              {"group_order", rep.group_order},
              {"lagrangian_count", rep.lagrangian_count},
              {"measurements_checked", rep.measurements_checked},
              {"variable_classes_checked", rep.variable_classes_checked},
              {"poisson_violations", violations_to_json(rep.poisson_violations)},
              {"non_poisson_measurable_claims",
               violations_to_json(rep.non_poisson_measurable_claims)},
              {"seed", rep.seed},
              {"word_length", rep.word_length},
              {"sample_count", rep.sample_count},
              {"pass", rep.pass()},
              {"elapsed_seconds", rep.elapsed_seconds}};
}

HorizonReport report_from_json(const Json& j) {
  auto field = Field::parse(need_string(j, "field"));
  if (!field) throw ParseError("unknown field \"" + need_string(j, "field") + "\"");
  HorizonReport rep;
  rep.field = *field;
  rep.n_s = need_size(j, "ns");
  rep.n_a = need_size(j, "na");
  std::string mode = need_string(j, "mode");
  if (mode != "exhaustive" && mode != "sample")
    throw ParseError("unknown mode \"" + mode + "\"");
  rep.mode = mode == "exhaustive" ? HorizonMode::Exhaustive : HorizonMode::Sample;
  rep.group_order = need_u64(j, "group_order");
  rep.lagrangian_count = need_u64(j, "lagrangian_count");
  rep.measurements_checked = need_u64(j, "measurements_checked");
  rep.variable_classes_checked = need_u64(j, "variable_classes_checked");
  rep.poisson_violations =
      violations_from_json(*field, need(j, "poisson_violations"), "\"poisson_violations\"");
  rep.non_poisson_measurable_claims = violations_from_json(
      *field, need(j, "non_poisson_measurable_claims"), "\"non_poisson_measurable_claims\"");
  rep.seed = need_u64(j, "seed");
  rep.word_length = need_size(j, "word_length");
  rep.sample_count = need_size(j, "sample_count");
  const Json& el = need(j, "elapsed_seconds");
  if (!el.is_number()) throw ParseError("\"elapsed_seconds\" must be a number");
  rep.elapsed_seconds = el.get<double>();
  return rep;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json strip_elapsed(Json j) {
  j.erase("elapsed_seconds");
  return j;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot open " + temp.string() + " for writing");
    out << content;
    if (!out.flush()) throw UsageError("failed while writing " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw UsageError("cannot move " + temp.string() + " into place: " + ec.message());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace nomic
