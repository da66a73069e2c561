#include "cli_app.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <sstream>

#include "nomic/errors.hpp"
#include "nomic/json_io.hpp"

namespace nomic {

namespace {

Field parse_field_flag(const std::string& s) {
  auto f = Field::parse(s);
  if (!f) throw UsageError("unknown field '" + s + "' (try z2, z3, z5 or q)");
  return *f;
}

std::size_t env_threads() {
  const char* v = std::getenv("NOMIC_THREADS");
  if (!v) return 1;
  long n = 0;
  try {
    std::size_t used = 0;
    n = std::stol(v, &used);
    if (used != std::string(v).size()) n = 0;
  } catch (const std::exception&) {
    n = 0;
  }
  if (n < 1) throw UsageError("NOMIC_THREADS must be a positive integer");
  return static_cast<std::size_t>(n);
}

Vec parse_initial(const Field& f, const std::string& csv, std::size_t dim) {
  Vec v;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t a = tok.find_first_not_of(" \t");
    std::size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty entry in --initial");
    tok = tok.substr(a, b - a + 1);
    if (f.is_prime_field()) {
      try {
        std::size_t used = 0;
        long long x = std::stoll(tok, &used);
        if (used != tok.size()) throw ParseError("");
        v.emplace_back(f, x);
      } catch (const std::exception&) {
        throw ParseError("--initial entry '" + tok + "' is not an integer");
      }
    } else {
      v.push_back(scalar_from_json(f, Json(tok)));
    }
  }
  if (v.size() != dim)
    throw ParseError("--initial needs " + std::to_string(dim) + " comma-separated entries, got " +
                     std::to_string(v.size()));
  return v;
}

std::vector<Vec> all_points(const PhaseSpace& space) {
  if (!space.field().is_prime_field())
    throw InfeasibleError("--all-initial needs a prime field; pass --initial instead");
  EpistemicState ignorance = EpistemicState::make(
      space, Subspace::zero(space.field(), space.dim()), zero_vec(space.field(), space.dim()));
  return enumerate_support(ignorance);
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& body) {
  if (!cfg.output.empty())
    write_text_atomic(cfg.output, body);
  else
    out << body;
}

std::string matrix_lines(const Matrix& m, const std::string& indent) {
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r) s += indent + vec_str(m.row(r)) + "\n";
  if (m.rows() == 0) s += indent + "(no rows)\n";
  return s;
}

std::string render_report_text(const HorizonReport& rep) {
  std::ostringstream s;
  s << "field: " << rep.field.name() << "\n";
  s << "object dof: " << rep.n_s << ", probe dof: " << rep.n_a << "\n";
  s << "mode: " << (rep.mode == HorizonMode::Exhaustive ? "exhaustive" : "sample") << "\n";
  if (rep.mode == HorizonMode::Sample)
    s << "seed: " << rep.seed << ", samples: " << rep.sample_count
      << ", word length: " << rep.word_length << "\n";
  s << "maps swept: " << rep.group_order << "\n";
  s << "pointer choices: " << rep.lagrangian_count << "\n";
  s << "interactions checked: " << rep.measurements_checked << "\n";
  s << "variable classes checked: " << rep.variable_classes_checked << "\n";
  for (const HorizonViolation& v : rep.poisson_violations) {
    s << "bracket violation: " << v.detail << "\n" << matrix_lines(v.m, "  ");
  }
  for (const HorizonViolation& v : rep.non_poisson_measurable_claims) {
    s << "constructive failure: " << v.detail << "\n" << matrix_lines(v.m, "  ");
  }
  s << "result: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
  return s.str();
}

std::string render_trace_text(const ScenarioTrace& t, const std::vector<ScenarioPointer>& ptrs) {
  std::ostringstream s;
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    s << "t" << i << ": " << vec_str(t.states[i].coords) << "\n";
    for (std::size_t k = 0; k < ptrs.size(); ++k)
      s << "  " << ptrs[k].label << ": " << vec_str(t.pointer_readings[i][k]) << "\n";
    if (i < t.steps.size()) s << "step " << t.steps[i].label << "\n";
  }
  for (const std::string& note : t.disturbance_notes) s << note << "\n";
  return s.str();
}

int cmd_verify_horizon(const RunConfig& cfg, std::ostream& out) {
  Field f = parse_field_flag(cfg.field);
  HorizonMode mode = cfg.mode == "sample" ? HorizonMode::Sample : HorizonMode::Exhaustive;
  SampleOptions opts;
  if (cfg.seed) opts.seed = *cfg.seed;
  opts.samples = cfg.samples;
  opts.word_length = cfg.word_length;
  HorizonReport rep =
      verify_horizon(f, cfg.n_s, cfg.n_a, mode, opts, ComplementRule::Canonical, cfg.threads);
  emit(cfg, out, cfg.format == "text" ? render_report_text(rep) : canonical_dump(to_json(rep)));
  return rep.pass() ? 0 : 2;
}

int cmd_run_scenario(const RunConfig& cfg, std::ostream& out) {
  bool builtin = !cfg.builtin.empty();
  if (builtin && cfg.builtin != "appendix-a")
    throw UsageError("unknown builtin '" + cfg.builtin + "' (available: appendix-a)");
  if (builtin == !cfg.inputs.empty())
    throw UsageError("run-scenario needs exactly one of a scenario file or --builtin");

  bool sweep = cfg.all_initial;
  std::optional<Scenario> sc_opt;
  if (builtin) {
    sc_opt = two_probe_scenario(parse_field_flag(cfg.field));
  } else {
    ScenarioDoc doc = scenario_from_json(read_json_file(cfg.inputs[0]));
    sweep = sweep || doc.all_initial;
    sc_opt = std::move(doc.scenario);
  }
  Scenario& sc = *sc_opt;
  if (!cfg.initial.empty()) {
    sc.initial = parse_initial(sc.space.field(), cfg.initial, sc.space.dim());
    sweep = cfg.all_initial;
  }
  if (sweep && !cfg.initial.empty())
    throw UsageError("--initial and --all-initial are mutually exclusive");

  auto run_one = [&](const Vec& u) {
    if (builtin) return run_two_probe_checked(sc.space.field(), u);
    Scenario s = sc;
    s.initial = u;
    return run_sequence(s);
  };

  if (sweep) {
    std::vector<Vec> points = all_points(sc.space);
    Json traces = Json::array();
    std::string text;
    for (const Vec& u : points) {
      ScenarioTrace t = run_one(u);
      if (cfg.format == "text")
        text += "initial " + vec_str(u) + "\n" + render_trace_text(t, sc.pointers) + "\n";
      else
        traces.push_back(to_json(t, sc.pointers));
    }
    if (cfg.format == "text")
      emit(cfg, out, text);
    else
      emit(cfg, out,
           canonical_dump(Json{{"space", to_json(sc.space)},
                               {"count", points.size()},
                               {"traces", traces}}));
    return 0;
  }

  ScenarioTrace t = run_one(sc.initial);
  emit(cfg, out,
       cfg.format == "text" ? render_trace_text(t, sc.pointers)
                            : canonical_dump(to_json(t, sc.pointers)));
  return 0;
}

int cmd_build_measurement(const RunConfig& cfg, std::ostream& out) {
  LinearVariable z = variable_from_json(read_json_file(cfg.inputs[0]));
  Measurement meas = construct_measurement(z.space(), z);
  if (cfg.format == "text") {
    std::ostringstream s;
    s << "interaction on " << meas.joint().dim() << " coordinates over "
      << meas.joint().field().name() << "\n";
    s << "matrix:\n" << matrix_lines(meas.map().matrix(), "  ");
    s << "ready pointer value: " << vec_str(meas.ready_q()) << "\n";
    s << "measured rows:\n" << matrix_lines(measured_variable(meas).rows(), "  ");
    emit(cfg, out, s.str());
  } else {
    emit(cfg, out, canonical_dump(to_json(meas)));
  }
  return 0;
}

std::size_t resolve_factor(const PhaseSpace& space, const std::string& token) {
  const auto& layout = space.factor_layout();
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (layout[i].name == token) return i;
  try {
    std::size_t used = 0;
    long long k = std::stoll(token, &used);
    if (used == token.size() && k >= 1 && static_cast<std::size_t>(k) <= layout.size())
      return static_cast<std::size_t>(k - 1);
  } catch (const std::exception&) {
  }
  std::string names;
  for (const auto& fac : layout) names += (names.empty() ? "" : ", ") + fac.name;
  throw UnknownFactorError("no factor '" + token + "' (have: " + names + ")");
}

int cmd_marginalize(const RunConfig& cfg, std::ostream& out) {
  EpistemicState e = epistemic_from_json(read_json_file(cfg.inputs[0]));
  std::size_t idx = resolve_factor(e.space(), cfg.factor);
  EpistemicState m = marginal(e, idx);
  if (cfg.format == "text") {
    std::ostringstream s;
    s << "marginal on factor " << e.space().factor_layout()[idx].name << "\n";
    s << "known functionals:\n" << matrix_lines(m.known().basis(), "  ");
    s << "value point: " << vec_str(m.value_point()) << "\n";
    emit(cfg, out, s.str());
  } else {
    emit(cfg, out, canonical_dump(to_json(m)));
  }
  return 0;
}

int cmd_check_symplectic(const RunConfig& cfg, std::ostream& out) {
  AffineSymplectic t = transform_from_json(read_json_file(cfg.inputs[0]));
  if (cfg.format == "text")
    emit(cfg, out, "PASS: the map preserves the form on " +
                       std::to_string(t.space().dim()) + " coordinates\n");
  else
    emit(cfg, out, canonical_dump(Json{{"symplectic", true}, {"transform", to_json(t)}}));
  return 0;
}

int cmd_classify_subspace(const RunConfig& cfg, std::ostream& out) {
  Json j = read_json_file(cfg.inputs[0]);
  if (!j.is_object() || !j.contains("space") || !j.contains("span"))
    throw ParseError("classify-subspace input needs \"space\" and \"span\"");
  PhaseSpace space = space_from_json(j["space"]);
  Matrix rows = matrix_from_json(space.field(), j["span"], space.dim());
  Subspace w = Subspace::from_span(space.field(), space.dim(), rows);
  SubspaceClass c = classify_subspace(space, w);
  if (cfg.format == "text")
    emit(cfg, out, to_string(c) + " (dimension " + std::to_string(w.dim()) + " in ambient " +
                       std::to_string(space.dim()) + ")\n");
  else
    emit(cfg, out, canonical_dump(Json{{"class", to_string(c)},
                                       {"dimension", w.dim()},
                                       {"ambient", space.dim()}}));
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  if (mode == "sample" && !seed) throw UsageError("sample mode needs an explicit --seed");
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact workbench for affine symplectic toy theories"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::uint64_t seed_val = 0;

  CLI::App* vh = app.add_subcommand("verify-horizon", "sweep interactions for bracket violations");
  vh->add_option("--field", cfg.field, "scalar field (z2, z3, ... or q)")->required();
  vh->add_option("--ns", cfg.n_s, "object degrees of freedom");
  vh->add_option("--na", cfg.n_a, "probe degrees of freedom");
  vh->add_option("--mode", cfg.mode, "sweep mode")
      ->check(CLI::IsMember({"exhaustive", "sample"}));
  CLI::Option* seed_opt = vh->add_option("--seed", seed_val, "generator seed (sample mode)");
  vh->add_option("--samples", cfg.samples, "sampled maps (sample mode)");
  vh->add_option("--word-length", cfg.word_length, "generator word length (sample mode)");

  CLI::App* rs = app.add_subcommand("run-scenario", "run a measurement sequence and trace it");
  rs->add_option("file", cfg.inputs, "scenario JSON file");
  rs->add_option("--builtin", cfg.builtin, "named scenario (appendix-a)");
  rs->add_option("--field", cfg.field, "field for --builtin");
  rs->add_option("--initial", cfg.initial, "comma-separated initial coordinates");
  rs->add_flag("--all-initial", cfg.all_initial, "trace every ontic state (prime fields)");

  CLI::App* bm = app.add_subcommand("build-measurement",
                                    "construct the interaction measuring a variable");
  bm->add_option("file", cfg.inputs, "variable JSON file")->required();

  CLI::App* mg = app.add_subcommand("marginalize", "restrict an epistemic state to one factor");
  mg->add_option("file", cfg.inputs, "epistemic state JSON file")->required();
  mg->add_option("--factor", cfg.factor, "factor name or 1-based index")->required();

  CLI::App* cs = app.add_subcommand("check-symplectic", "gate a transform file");
  cs->add_option("file", cfg.inputs, "transform JSON file")->required();

  CLI::App* cl = app.add_subcommand("classify-subspace", "name the class of a spanned subspace");
  cl->add_option("file", cfg.inputs, "subspace JSON file")->required();

  for (CLI::App* sub : {vh, rs, bm, mg, cs, cl}) {
    sub->add_option("-o,--output", cfg.output, "write the result atomically to this path");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
  }

  std::vector<const char*> argv;
  argv.push_back("nomic");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (seed_opt->count() > 0) cfg.seed = seed_val;
    cfg.threads = env_threads();
    if (*vh) {
      cfg.command = "verify-horizon";
      cfg.validate();
      return cmd_verify_horizon(cfg, out);
    }
    if (*rs) {
      cfg.command = "run-scenario";
      cfg.validate();
      return cmd_run_scenario(cfg, out);
    }
    if (*bm) {
      cfg.command = "build-measurement";
      cfg.validate();
      return cmd_build_measurement(cfg, out);
    }
    if (*mg) {
      cfg.command = "marginalize";
      cfg.validate();
      return cmd_marginalize(cfg, out);
    }
    if (*cs) {
      cfg.command = "check-symplectic";
      cfg.validate();
      return cmd_check_symplectic(cfg, out);
    }
    cfg.command = "classify-subspace";
    cfg.validate();
    return cmd_classify_subspace(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nomic
