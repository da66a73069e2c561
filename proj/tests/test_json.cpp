#include <doctest.h>

#include <filesystem>

#include "nomic/errors.hpp"
#include "nomic/json_io.hpp"

using namespace nomic;

namespace {

Vec lift(const Field& f, const std::vector<long long>& entries) {
  Vec v;
  for (long long e : entries) v.emplace_back(f, e);
  return v;
}

PhaseSpace two_bits() {
  Field f = Field::prime(2);
  return direct_sum(PhaseSpace::make(f, 1, "S"), PhaseSpace::make(f, 1, "A"));
}

}  // namespace

TEST_CASE("scalars survive the round trip in both fields") {
  Field f3 = Field::prime(3);
  for (long long v : {0LL, 1LL, 2LL}) {
    Json j = to_json(Scalar(f3, v));
    CHECK(j.is_number_integer());
    CHECK(scalar_from_json(f3, j) == Scalar(f3, v));
  }

  Field q = Field::rationals();
  Scalar half(q, Rational(1, 2));
  Json j = to_json(half);
  CHECK(j.is_string());
  CHECK(scalar_from_json(q, j) == half);
  CHECK(scalar_from_json(q, Json("-3/4")) == Scalar(q, Rational(-3, 4)));
  CHECK(scalar_from_json(q, Json("6/-8")) == Scalar(q, Rational(-3, 4)));
  CHECK(scalar_from_json(q, Json(7)) == Scalar(q, 7));
  CHECK(scalar_from_json(q, Json("123456789123456789123456789")) ==
        Scalar(q, Rational(BigInt("123456789123456789123456789"), BigInt(1))));

  CHECK_THROWS_AS(scalar_from_json(q, Json("1/0")), ParseError);
  CHECK_THROWS_AS(scalar_from_json(q, Json("banana")), ParseError);
  CHECK_THROWS_AS(scalar_from_json(f3, Json("2")), ParseError);
  CHECK_THROWS_AS(scalar_from_json(f3, Json(1.5)), ParseError);
}

TEST_CASE("vectors and matrices round-trip, including empty row lists") {
  Field f = Field::prime(5);
  Vec v = lift(f, {0, 4, 2});
  CHECK(vec_from_json(f, to_json(v)) == v);

  Matrix m = Matrix::from_rows(f, {{1, 2}, {3, 4}, {0, 1}});
  CHECK(matrix_from_json(f, to_json(m)) == m);

  Matrix blank(f, 0, 3);
  Json j = to_json(blank);
  CHECK(j.is_array());
  CHECK(j.empty());
  CHECK(matrix_from_json(f, j, 3) == blank);

  CHECK_THROWS_AS(matrix_from_json(f, Json::parse("[[1,2],[3]]")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(f, Json(17)), ParseError);
}

TEST_CASE("spaces keep their factor layout through serialization") {
  Field f = Field::prime(2);
  PhaseSpace a1 = PhaseSpace::make(f, 1, "A1");
  PhaseSpace mid = PhaseSpace::make(f, 2, "S");
  PhaseSpace a2 = PhaseSpace::make(f, 1, "A2");
  PhaseSpace big = PhaseSpace::direct_sum({a1, mid, a2});

  Json j = to_json(big);
  PhaseSpace back = space_from_json(j);
  CHECK(back == big);
  CHECK(back.factor_layout().size() == 3);
  CHECK(back.factor_layout()[1].name == "S");
  CHECK(back.factor_layout()[1].dim == 4);

  PhaseSpace single = space_from_json(to_json(mid));
  CHECK(single == mid);

  CHECK_THROWS_AS(space_from_json(Json{{"field", "Z9"}, {"factors", Json::array()}}), ParseError);
  CHECK_THROWS_AS(space_from_json(Json{{"field", "Z2"}, {"factors", Json::array()}}), ParseError);
  CHECK_THROWS_AS(space_from_json(Json{{"field", "Z2"}}), ParseError);
}

TEST_CASE("transforms are gated while parsing") {
  PhaseSpace space = two_bits();
  const Field f = space.field();
  Matrix m = Matrix::from_rows(f, {{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}});
  AffineSymplectic t = AffineSymplectic::make(space, m, lift(f, {1, 0, 1, 1}));

  Json j = to_json(t);
  CHECK(transform_from_json(j) == t);

  Json missing_shift = j;
  missing_shift.erase("shift");
  CHECK(transform_from_json(missing_shift) ==
        AffineSymplectic::make(space, m, zero_vec(f, 4)));

  Json broken = j;
  broken["matrix"][0][0] = 0;
  CHECK_THROWS_AS(transform_from_json(broken), NotSymplecticError);
}

TEST_CASE("variables and epistemic states round-trip") {
  PhaseSpace space = two_bits();
  const Field f = space.field();
  LinearVariable z = LinearVariable::make(space, Matrix::from_rows(f, {{1, 0, 1, 0}}));
  CHECK(variable_from_json(to_json(z)) == z);

  LinearVariable blank = LinearVariable::make(space, Matrix(f, 0, 4));
  CHECK(variable_from_json(to_json(blank)) == blank);

  Subspace known = Subspace::from_span(f, 4, Matrix::from_rows(f, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
  EpistemicState e = EpistemicState::make(space, known, lift(f, {1, 1, 0, 0}));
  CHECK(epistemic_from_json(to_json(e)) == e);
}

TEST_CASE("subjects and measurements round-trip with their derived blocks checked") {
  Field f = Field::prime(2);
  PhaseSpace object = PhaseSpace::make(f, 1, "S");
  PhaseSpace probe = PhaseSpace::make(f, 1, "A");
  PhaseSpace joint = direct_sum(object, probe);

  Subspace q = Subspace::from_span(f, 2, Matrix::from_rows(f, {{1, 1}}));
  ToySubject subject = make_subject(probe, q, ComplementRule::GreedyTop);
  Json sj = to_json(subject);
  CHECK(subject_from_json(sj) == subject);

  Json tampered = sj;
  tampered["momentum"] = to_json(Matrix::from_rows(f, {{1, 1}}));
  CHECK_THROWS_AS(subject_from_json(tampered), ParseError);

  ToySubject std_subject =
      make_subject(probe, Subspace::from_span(f, 2, Matrix::from_rows(f, {{1, 0}})));
  Matrix m = Matrix::from_rows(f, {{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}});
  Measurement meas = make_measurement(object, std_subject, lift(f, {1, 0}),
                                      AffineSymplectic::make(joint, m, zero_vec(f, 4)));
  Json mj = to_json(meas);
  Measurement back = measurement_from_json(mj);
  CHECK(back.object() == meas.object());
  CHECK(back.subject() == meas.subject());
  CHECK(back.ready_q() == meas.ready_q());
  CHECK(back.map() == meas.map());

  Json wrong = mj;
  wrong["measured"] = to_json(Matrix::from_rows(f, {{1, 0}}));
  CHECK_THROWS_AS(measurement_from_json(wrong), ParseError);
}

TEST_CASE("scenarios round-trip and gate failures name the step") {
  Field f = Field::prime(2);
  Scenario sc = two_probe_scenario(f, lift(f, {0, 1, 1, 0, 0, 1}));
  Json j = to_json(sc);

  ScenarioDoc doc = scenario_from_json(j);
  CHECK(!doc.all_initial);
  CHECK(doc.scenario.space == sc.space);
  CHECK(doc.scenario.initial == sc.initial);
  REQUIRE(doc.scenario.steps.size() == 2);
  CHECK(doc.scenario.steps[0].label == sc.steps[0].label);
  CHECK(doc.scenario.steps[0].map == sc.steps[0].map);
  CHECK(doc.scenario.steps[1].map == sc.steps[1].map);
  REQUIRE(doc.scenario.pointers.size() == 2);
  CHECK(doc.scenario.pointers[1].label == sc.pointers[1].label);
  CHECK(doc.scenario.pointers[1].var == sc.pointers[1].var);

  Json all = j;
  all["initial"] = "all";
  CHECK(scenario_from_json(all).all_initial);
  Json bad_initial = j;
  bad_initial["initial"] = "everything";
  CHECK_THROWS_AS(scenario_from_json(bad_initial), ParseError);

  Json broken = j;
  broken["steps"][1]["transform"]["matrix"][0][0] = 1;
  broken["steps"][1]["transform"]["matrix"][0][2] = 1;
  try {
    scenario_from_json(broken);
    CHECK(false);
  } catch (const MathError& e) {
    CHECK(std::string(e.what()).find("position-probe") != std::string::npos);
  }
}

TEST_CASE("traces round-trip") {
  Field f = Field::prime(3);
  Scenario sc = two_probe_scenario(f, lift(f, {0, 2, 1, 2, 0, 1}));
  ScenarioTrace t = run_sequence(sc);
  Json j = to_json(t, sc.pointers);
  ScenarioTrace back = trace_from_json(j);

  REQUIRE(back.steps.size() == t.steps.size());
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    CHECK(back.steps[i].label == t.steps[i].label);
    CHECK(back.steps[i].map == t.steps[i].map);
  }
  REQUIRE(back.states.size() == t.states.size());
  for (std::size_t i = 0; i < t.states.size(); ++i) CHECK(back.states[i] == t.states[i]);
  CHECK(back.pointer_readings == t.pointer_readings);
  CHECK(back.disturbance_notes == t.disturbance_notes);
  verify_trace(back, sc.pointers);
}

TEST_CASE("horizon reports serialize deterministically apart from elapsed time") {
  HorizonReport rep = verify_horizon(Field::prime(2), 1, 1, HorizonMode::Exhaustive);
  Json j = to_json(rep);
  CHECK(j["pass"] == true);

  HorizonReport back = report_from_json(j);
  CHECK(back.field == rep.field);
  CHECK(back.mode == rep.mode);
  CHECK(back.group_order == rep.group_order);
  CHECK(back.measurements_checked == rep.measurements_checked);
  CHECK(back.elapsed_seconds == rep.elapsed_seconds);
  CHECK(canonical_dump(to_json(back)) == canonical_dump(j));

  HorizonReport again = verify_horizon(Field::prime(2), 1, 1, HorizonMode::Exhaustive);
  CHECK(canonical_dump(strip_elapsed(to_json(again))) ==
        canonical_dump(strip_elapsed(to_json(rep))));

  SampleOptions opts;
  opts.seed = 4242;
  opts.samples = 10;
  HorizonReport s1 = verify_horizon(Field::rationals(), 1, 1, HorizonMode::Sample, opts);
  HorizonReport s2 = verify_horizon(Field::rationals(), 1, 1, HorizonMode::Sample, opts);
  CHECK(canonical_dump(strip_elapsed(to_json(s1))) == canonical_dump(strip_elapsed(to_json(s2))));
}

TEST_CASE("synthetic violation entries round-trip exactly") {
  Field f = Field::prime(2);
  HorizonReport rep;
  rep.field = f;
  rep.n_s = 1;
  rep.n_a = 1;
  rep.mode = HorizonMode::Exhaustive;
  rep.group_order = 1;
  rep.poisson_violations.push_back({Matrix::identity(f, 4),
                                    Subspace::from_span(f, 2, Matrix::from_rows(f, {{1, 0}})),
                                    "synthetic"});
  rep.non_poisson_measurable_claims.push_back(
      {Matrix(f, 0, 2), Subspace::zero(f, 2), "blank rows"});

  HorizonReport back = report_from_json(to_json(rep));
  REQUIRE(back.poisson_violations.size() == 1);
  CHECK(back.poisson_violations[0].m == rep.poisson_violations[0].m);
  CHECK(back.poisson_violations[0].lagrangian == rep.poisson_violations[0].lagrangian);
  CHECK(back.poisson_violations[0].detail == "synthetic");
  REQUIRE(back.non_poisson_measurable_claims.size() == 1);
  CHECK(back.non_poisson_measurable_claims[0].m == rep.non_poisson_measurable_claims[0].m);
  CHECK(!back.pass());
  CHECK(canonical_dump(to_json(back)) == canonical_dump(to_json(rep)));
}

TEST_CASE("atomic writes land complete files that read back") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "nomic_json_test";
  fs::remove_all(dir);
  fs::path file = dir / "nested" / "report.json";

  Json doc{{"alpha", 1}, {"beta", "two"}};
  write_text_atomic(file.string(), canonical_dump(doc));
  CHECK(read_json_file(file.string()) == doc);
  CHECK(!fs::exists(file.string() + ".tmp"));

  write_text_atomic(file.string(), canonical_dump(Json{{"alpha", 2}}));
  CHECK(read_json_file(file.string())["alpha"] == 2);

  fs::path bad = dir / "broken.json";
  write_text_atomic(bad.string(), "{not json");
  CHECK_THROWS_AS(read_json_file(bad.string()), ParseError);
  CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), ParseError);
  fs::remove_all(dir);
}
