#include "kronlab/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include <json.hpp>

#include "kronlab/gaussflow.hpp"
#include "kronlab/group_measure.hpp"
#include "kronlab/kronecker.hpp"
#include "kronlab/measure.hpp"
#include "kronlab/rng.hpp"
#include "kronlab/serialize.hpp"

namespace kronlab {

using nlohmann::json;

std::string ScenarioReport::to_json() const {
  json asserts = json::array();
  for (const auto& a : assertions) {
    asserts.push_back({{"name", a.name},
                       {"operation", a.operation},
                       {"tolerance", a.tolerance},
                       {"pass", a.pass},
                       {"details", a.details}});
  }
  return json{{"name", name},
              {"version", version},
              {"config_hash", config_hash},
              {"assertions", asserts},
              {"artifacts", artifacts},
              {"elapsed_seconds", elapsed_seconds},
              {"all_pass", all_pass}}
      .dump(2);
}

namespace {

struct Ctx {
  const ScenarioConfig& cfg;
  ScenarioReport& report;

  std::string param(const std::string& key, const std::string& fallback) const {
    auto it = cfg.parameters.find(key);
    return it == cfg.parameters.end() ? fallback : it->second;
  }
  double param_d(const std::string& key, double fallback) const {
    auto it = cfg.parameters.find(key);
    return it == cfg.parameters.end() ? fallback : std::stod(it->second);
  }
  int param_i(const std::string& key, int fallback) const {
    auto it = cfg.parameters.find(key);
    return it == cfg.parameters.end() ? fallback : std::stoi(it->second);
  }

  void check(const std::string& name, const std::string& op, const std::string& tol, bool pass,
             const std::string& details) {
    report.assertions.push_back({name, op, tol, pass, details});
  }

  void emit(const std::string& filename, const std::string& content) {
    if (cfg.output_dir.empty()) return;
    std::filesystem::create_directories(cfg.output_dir);
    std::string path = cfg.output_dir + "/" + filename;
    std::ofstream out(path);
    out << content;
    report.artifacts.push_back(path);
  }
};

// numeric-tier 4-point Q-independent instance used by several scenarios
AtomicMeasure sample_independent_measure(uint64_t seed, int precision_bits) {
  GroupSlice trivial = expand_group({}, 0);
  BuildOptions bopt;
  bopt.seed = seed;
  bopt.bounds.precision_bits = precision_bits;
  KroneckerSetSpec spec = build_kronecker_points(
      {Rational(2, 10), Rational(4, 10), Rational(6, 10), Rational(8, 10)}, Rational(5, 100),
      trivial, Tier::numeric, bopt);
  std::vector<Atom> atoms;
  for (const auto& p : spec.points) atoms.push_back({p, Rational(1, 4)});
  return AtomicMeasure::from_atoms(std::move(atoms));
}

void scenario_km10_demo(Ctx& ctx) {
  const int radius = ctx.param_i("radius", 3);
  GroupMeasure gm;
  gm.lambda = Rational(1, 2);
  gm.truncation_radius = radius;

  std::vector<RealValue> scale_samples;
  if (ctx.cfg.tier == Tier::symbolic) {
    gm.generators = {RealValue(SymbolicReal::symbol("tau"))};
    // "e" enters the symbolic tier as one more declared-independent symbol
    scale_samples = {RealValue(Rational(2)), RealValue(Rational(3, 2)),
                     RealValue(SymbolicReal::symbol("e"))};
  } else {
    gm.generators = {RealValue(BigFloat::pi(ctx.cfg.precision_bits))};
    scale_samples = {RealValue(Rational(2)), RealValue(Rational(3, 2)),
                     RealValue(BigFloat::euler_e(ctx.cfg.precision_bits))};
  }

  GroupSlice slice = expand_group(gm.generators, radius);
  BuildOptions bopt;
  bopt.seed = ctx.cfg.seed;
  bopt.bounds.precision_bits = ctx.cfg.precision_bits;
  KroneckerSetSpec spec =
      build_kronecker_points({Rational(3, 10)}, Rational(1, 100), slice, ctx.cfg.tier, bopt);
  IndependenceVerdict v = check_q_independence(spec.realized_set, bopt.bounds);
  bool indep_ok = ctx.cfg.tier == Tier::symbolic
                      ? v.status == IndependenceStatus::independent_exact
                      : v.status == IndependenceStatus::none_found_within_bounds;
  ctx.check("realized-set-independent", "build_kronecker_points + check_q_independence",
            "exact / bounds", indep_ok, independence_status_name(v.status));

  gm.base = AtomicMeasure::from_atoms({{spec.points[0], Rational(1)}});

  for (int k = 1; k <= std::min(2, radius); ++k) {
    RealValue s = gm.generators[0].pow(k);
    StructuralVerdict sv = structural_self_similarity(gm, s);
    ctx.check("member-of-group-h^" + std::to_string(k), "structural_self_similarity", "exact",
              sv.member_of_group, "collisions " + std::to_string(sv.collision_count) + "/" +
                                      std::to_string(sv.support_size));
  }
  const char* names[] = {"2", "3/2", "e"};
  for (size_t i = 0; i < scale_samples.size(); ++i) {
    StructuralVerdict sv = structural_self_similarity(gm, scale_samples[i]);
    ctx.check(std::string("collision-count-0-s=") + names[i], "structural_self_similarity",
              "count == 0", !sv.member_of_group && sv.collision_count == 0,
              "collisions " + std::to_string(sv.collision_count));
  }
  ctx.emit("km10_slice.json", group_slice_to_json(slice));
}

void scenario_mkj_singularity(Ctx& ctx) {
  AtomicMeasure sigma = sample_independent_measure(ctx.cfg.seed, ctx.cfg.precision_bits);
  PiecewiseMeasure base(sigma);
  const int r_trials = ctx.param_i("r_trials", 100);
  const int jobs = std::max(1, ctx.param_i("jobs", 1));
  const std::vector<Rational> scales{Rational(2), Rational(1, 2), Rational(3, 2)};

  // one RNG stream per scale block, so sequential and parallel execution
  // produce identical reports
  auto run_block = [&](size_t k) {
    PiecewiseMeasure scaled = scale_measure(base, RealValue(scales[k]));
    CounterRng rng(mix_key(ctx.cfg.seed, 0x6d6b6aULL, k));
    int ok = 0;
    for (int i = 0; i < r_trials; ++i) {
      Rational r = Rational::from_double(rng.next_uniform() * 4.0 - 2.0);
      PiecewiseMeasure moved = translate_measure(scaled, RealValue(BigFloat::from_rational(
                                                             r, ctx.cfg.precision_bits)));
      if (singularity_test(base, moved).verdict == SingularityVerdict::singular) ++ok;
    }
    return ok;
  };

  std::vector<int> per_scale(scales.size(), 0);
  if (jobs > 1) {
    std::vector<std::future<int>> futures;
    for (size_t k = 0; k < scales.size(); ++k) {
      futures.push_back(std::async(std::launch::async, run_block, k));
    }
    for (size_t k = 0; k < scales.size(); ++k) per_scale[k] = futures[k].get();
  } else {
    for (size_t k = 0; k < scales.size(); ++k) per_scale[k] = run_block(k);
  }
  int total = static_cast<int>(scales.size()) * r_trials;
  int singular = 0;
  for (int v : per_scale) singular += v;
  ctx.check("singular-all", "singularity_test(sigma, translate(scale(sigma,s),r))",
            "300/300 singular", singular == total,
            std::to_string(singular) + "/" + std::to_string(total));
  ctx.emit("mkj_sigma.json", measure_to_json(base));
}

void scenario_mkj_factor(Ctx& ctx) {
  const std::string s_text = ctx.param("s", "sqrt(2)");
  BigFloat s = parse_numeric_constant(s_text, ctx.cfg.precision_bits);
  PiecewiseMeasure sigma(AtomicMeasure::from_atoms(
      {{RealValue(BigFloat::from_rational(Rational(1), ctx.cfg.precision_bits)), Rational(1)}}));
  PiecewiseMeasure sigma_s = scale_measure(sigma, RealValue(s));
  PiecewiseMeasure eta = mix({sigma, sigma_s}, {Rational(1, 2), Rational(1, 2)});

  ctx.check("sigma_s-abscont-eta", "abs_continuity_test(sigma_s, eta)", "exact",
            abs_continuity_test(sigma_s, eta), "s = " + s_text);
  ctx.check("sigma_s-abscont-eta_s", "abs_continuity_test(sigma_s, scale(eta, s))", "exact",
            abs_continuity_test(sigma_s, scale_measure(eta, RealValue(s))), "s = " + s_text);
  ctx.emit("mkj_eta.json", measure_to_json(eta));
}

void scenario_rigidity_e2e(Ctx& ctx) {
  const double eps = ctx.param_d("eps", 0.1);
  PiecewiseMeasure sigma(AtomicMeasure::from_atoms(
      {{RealValue(BigFloat::from_rational(Rational(1), ctx.cfg.precision_bits)), Rational(1, 2)},
       {RealValue(BigFloat::sqrt_of(Rational(2), ctx.cfg.precision_bits)), Rational(1, 2)}}));

  SolveOptions sopt;
  sopt.eps = eps;
  sopt.precision_bits = ctx.cfg.precision_bits;
  SolveResult r = rigidity_witness(sigma.atomic(), sopt);
  ctx.check("witness-found", "rigidity_witness", "eps = " + std::to_string(eps), r.found,
            r.found ? "t = " + std::to_string(r.witness->t.to_double()) +
                          ", residual = " + std::to_string(r.witness->max_residual)
                    : r.note);
  if (!r.found) return;

  ProcessSpec spec;
  spec.spectral = sigma;
  spec.grid = {0.0, 0.5, 64};
  spec.paths = ctx.param_i("paths", 2000);
  spec.seed = ctx.cfg.seed;
  PathSample sample = simulate(spec);
  RigidityCheckReport rc = rigidity_check(sample, r.witness->t.to_double(), 0.01);
  ctx.check("rigidity-theoretical", "rigidity_check", "2(cov0 - cov(t)) < 0.01 var",
            rc.theoretical < rc.tol * rc.variance,
            "theoretical " + std::to_string(rc.theoretical));
  ctx.check("rigidity-empirical", "rigidity_check", "within 3 stderr of theoretical",
            std::fabs(rc.empirical - rc.theoretical) < 3 * rc.stderr_,
            "empirical " + std::to_string(rc.empirical) + " stderr " + std::to_string(rc.stderr_));
  ctx.emit("rigidity_witness.json", witness_to_json(*r.witness));
  ctx.emit("rigidity_check.json", rigidity_report_to_json(rc));
}

void scenario_kronecker_verify(Ctx& ctx) {
  AtomicMeasure sigma = sample_independent_measure(ctx.cfg.seed, ctx.cfg.precision_bits);
  SolveOptions sopt;
  sopt.eps = ctx.param_d("eps", 0.1);
  sopt.precision_bits = ctx.cfg.precision_bits;
  const int trials = ctx.param_i("trials", 10);
  KroneckerVerifyReport rep = verify_kronecker_property(sigma, trials, sopt, ctx.cfg.seed);
  ctx.check("all-trials-succeed", "verify_kronecker_property",
            "eps = " + std::to_string(sopt.eps), rep.successes == trials,
            std::to_string(rep.successes) + "/" + std::to_string(trials) + ", max residual " +
                std::to_string(rep.max_residual_among_successes));
  ctx.emit("kronecker_verify.json", verify_report_to_json(rep));
}

uint64_t hash_config(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << cfg.name << "|" << cfg.seed << "|" << tier_name(cfg.tier) << "|" << cfg.precision_bits;
  for (const auto& [k, v] : cfg.parameters) {
    if (k == "jobs") continue;  // execution knob, not semantics
    os << "|" << k << "=" << v;
  }
  return fnv1a64(os.str());
}

using ScenarioFn = std::function<void(Ctx&)>;

const std::map<std::string, ScenarioFn>& scenario_table() {
  static const std::map<std::string, ScenarioFn> table = {
      {"km10-demo", scenario_km10_demo},
      {"mkj-singularity", scenario_mkj_singularity},
      {"mkj-factor", scenario_mkj_factor},
      {"rigidity-e2e", scenario_rigidity_e2e},
      {"kronecker-verify", scenario_kronecker_verify},
  };
  return table;
}

}  // namespace

std::vector<std::string> registered_scenarios() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : scenario_table()) names.push_back(name);
  return names;
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
  auto it = scenario_table().find(cfg.name);
  if (it == scenario_table().end()) {
    throw std::invalid_argument("run_scenario: unknown scenario '" + cfg.name + "'");
  }
  ScenarioReport report;
  report.name = cfg.name;
  report.config_hash = hash_config(cfg);
  Ctx ctx{cfg, report};
  auto start = std::chrono::steady_clock::now();
  it->second(ctx);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.all_pass = true;
  for (const auto& a : report.assertions) report.all_pass = report.all_pass && a.pass;
  return report;
}

}  // namespace kronlab
