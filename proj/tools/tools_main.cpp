// kronlab: command-line front end for building Q-independent point sets,
// solving the Kronecker approximation problem, manipulating spectral
// measures, simulating the associated stationary Gaussian processes, and
// running the packaged end-to-end scenarios.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kronlab/gaussflow.hpp"
#include "kronlab/group_measure.hpp"
#include "kronlab/kronecker.hpp"
#include "kronlab/measure.hpp"
#include "kronlab/scenario.hpp"
#include "kronlab/serialize.hpp"

using namespace kronlab;
using nlohmann::json;

namespace {

struct Global {
  uint64_t seed = 1;
  int precision_bits = kDefaultPrecisionBits;
  std::string tier = "numeric";
  std::string out;

  Tier tier_value() const { return tier_from_name(tier); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<uint8_t> read_binary_file(const std::string& path) {
  std::string s = read_file(path);
  return std::vector<uint8_t>(s.begin(), s.end());
}

void emit(const Global& g, const std::string& content) {
  if (g.out.empty()) {
    std::cout << content << "\n";
  } else {
    std::ofstream out(g.out, std::ios::binary);
    out << content;
  }
}

void emit_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CLI::ValidationError("cannot write '" + path + "'");
  out << content;
}

std::vector<RealValue> read_reals(const std::string& path, Tier tier, int prec) {
  json j = json::parse(read_file(path));
  if (!j.is_array()) throw CLI::ValidationError(path + ": expected a JSON array of reals");
  std::vector<RealValue> out;
  for (const auto& e : j) {
    if (e.is_number()) {
      if (tier == Tier::symbolic) {
        out.push_back(RealValue(Rational::from_double(e.get<double>())));
      } else {
        out.push_back(RealValue(BigFloat::from_double(e.get<double>(), prec)));
      }
    } else {
      out.push_back(parse_real(e.get<std::string>(), tier, prec));
    }
  }
  return out;
}

std::vector<Rational> read_rationals(const std::string& path) {
  json j = json::parse(read_file(path));
  std::vector<Rational> out;
  for (const auto& e : j) {
    if (e.is_number()) {
      out.push_back(Rational::from_double(e.get<double>()));
    } else {
      out.push_back(Rational::parse_decimal_or_fraction(e.get<std::string>()));
    }
  }
  return out;
}

PiecewiseMeasure read_measure(const std::string& path, int prec, bool strict_csv = false) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
    std::string warning;
    PiecewiseMeasure m = measure_from_csv(read_file(path), prec, !strict_csv, &warning);
    if (!warning.empty()) std::cerr << "warning: " << path << ": " << warning << "\n";
    return m;
  }
  if (path.size() > 4 && path.substr(path.size() - 4) == ".txt") {
    return measure_from_text(read_file(path), prec);
  }
  return measure_from_json(read_file(path), prec);
}

RealValue parse_scalar(const std::string& text, const Global& g) {
  // try the requested tier first, fall back to the symbolic canonical form
  try {
    return parse_real(text, g.tier_value(), g.precision_bits);
  } catch (const std::exception&) {
    return parse_real(text, Tier::symbolic, g.precision_bits);
  }
}

GroupSlice read_group(const std::string& path, const Global& g) {
  json j = json::parse(read_file(path));
  std::vector<RealValue> gens;
  Tier tier = j.contains("tier") ? tier_from_name(j["tier"].get<std::string>()) : g.tier_value();
  for (const auto& e : j.at("generators")) {
    if (e.is_number()) {
      gens.push_back(tier == Tier::symbolic
                         ? RealValue(Rational::from_double(e.get<double>()))
                         : RealValue(BigFloat::from_double(e.get<double>(), g.precision_bits)));
    } else {
      gens.push_back(parse_real(e.get<std::string>(), tier, g.precision_bits));
    }
  }
  return expand_group(gens, j.at("radius").get<int>());
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

PathSample read_paths(const std::string& paths_file, const std::string& spectral_file,
                      const Global& g) {
  BinaryPaths bp = paths_from_binary(read_binary_file(paths_file));
  PiecewiseMeasure spectral = read_measure(spectral_file, g.precision_bits);
  if (fnv1a64(measure_to_json(spectral)) != bp.measure_hash) {
    throw CLI::ValidationError("spectral measure does not match the path file hash");
  }
  ProcessSpec spec;
  spec.spectral = std::move(spectral);
  spec.grid = bp.grid;
  spec.paths = bp.paths;
  spec.seed = bp.seed;
  std::vector<double> times(bp.grid.count);
  for (int i = 0; i < bp.grid.count; ++i) times[i] = bp.grid.t0 + i * bp.grid.step;
  return PathSample(std::move(spec), std::move(times), std::move(bp.values));
}

WeakTarget parse_weak_target(const json& e) {
  std::string type = e.at("type").get<std::string>();
  if (type == "constant") {
    return WeakTarget::constant_target({e.at("re").get<double>(), e.value("im", 0.0)});
  }
  if (type == "character") return WeakTarget::character(e.at("u").get<double>());
  if (type == "affine") {
    return WeakTarget::affine({e.at("c0_re").get<double>(), e.value("c0_im", 0.0)},
                              {e.at("c1_re").get<double>(), e.value("c1_im", 0.0)},
                              e.at("u").get<double>());
  }
  throw CLI::ValidationError("unknown weak target type '" + type + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kronlab: Kronecker measures, Q-independence, and Gaussian flow experiments"};
  app.fallthrough();  // global flags remain usable after subcommand names
  app.require_subcommand(1);

  Global g;
  app.add_option("--seed", g.seed, "global RNG seed")->envname("KRONLAB_SEED");
  app.add_option("--precision-bits", g.precision_bits, "working precision in bits (>= 53)");
  app.add_option("--tier", g.tier, "value tier: symbolic | numeric")
      ->check(CLI::IsMember({"symbolic", "numeric"}));
  app.add_option("--out", g.out, "write output to this file instead of stdout");

  int exit_code = 0;

  // ---- qindep -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("qindep", "Q-independence verdict for a list of reals");
    auto values = std::make_shared<std::string>();
    auto max_coeff = std::make_shared<long>(10000);
    sub->add_option("--values", *values, "JSON array of reals")->required();
    sub->add_option("--max-coeff", *max_coeff, "numeric-tier coefficient bound");
    sub->callback([&, values, max_coeff]() {
      SearchBounds bounds{mpz_class(*max_coeff), g.precision_bits};
      IndependenceVerdict v =
          check_q_independence(read_reals(*values, g.tier_value(), g.precision_bits), bounds);
      emit(g, independence_verdict_to_json(v));
    });
  }

  // ---- group --------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("group", "expand the word ball of a multiplicative group");
    auto gens = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(1);
    auto check = std::make_shared<bool>(false);
    auto max_coeff = std::make_shared<long>(10000);
    sub->add_option("--generators", *gens, "JSON array of generators")->required();
    sub->add_option("--radius", *radius, "word-ball radius");
    sub->add_flag("--check-independence", *check, "also report the slice independence verdict");
    sub->add_option("--max-coeff", *max_coeff, "numeric-tier coefficient bound");
    sub->callback([&, gens, radius, check, max_coeff]() {
      std::vector<RealValue> gv = read_reals(*gens, g.tier_value(), g.precision_bits);
      GroupSlice slice = expand_group(gv, *radius);
      if (*check) {
        SearchBounds bounds{mpz_class(*max_coeff), g.precision_bits};
        json j = json::parse(group_slice_to_json(slice));
        j["independence"] =
            json::parse(independence_verdict_to_json(check_group_independence(slice, bounds)));
        emit(g, j.dump(2));
      } else {
        emit(g, group_slice_to_json(slice));
      }
    });
  }

  // ---- measure ------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("measure", "spectral measure algebra");
    sub->require_subcommand(1);

    auto add_unary = [&](const char* name, const char* help, auto fn) {
      auto* c = sub->add_subcommand(name, help);
      auto file = std::make_shared<std::string>();
      auto arg = std::make_shared<std::string>();
      c->add_option("--measure", *file, "measure file (.json/.txt/.csv)")->required();
      c->add_option("--value", *arg, "scalar argument (scale s, shift r, ...)");
      c->callback([&, file, arg, fn]() {
        PiecewiseMeasure m = read_measure(*file, g.precision_bits);
        emit(g, fn(m, *arg));
      });
      return c;
    };

    add_unary("scale", "pushforward under x -> s x", [&](const PiecewiseMeasure& m,
                                                         const std::string& arg) {
      return measure_to_json(scale_measure(m, parse_scalar(arg, g)));
    });
    add_unary("translate", "pushforward under x -> x + r",
              [&](const PiecewiseMeasure& m, const std::string& arg) {
                return measure_to_json(translate_measure(m, parse_scalar(arg, g)));
              });
    add_unary("symmetrize", "sigma + (R_{-1})_* sigma",
              [&](const PiecewiseMeasure& m, const std::string&) {
                return measure_to_json(symmetrize(m));
              });
    add_unary("selfsim", "self-similarity scales of an atomic measure",
              [&](const PiecewiseMeasure& m, const std::string&) {
                if (!m.is_atomic()) {
                  throw CLI::ValidationError("selfsim is defined for atomic measures only");
                }
                json arr = json::array();
                for (const auto& s : self_similarity_scales(m.atomic())) {
                  arr.push_back(s.to_string());
                }
                return arr.dump(2);
              });

    {
      auto* c = sub->add_subcommand("mix", "weighted superposition");
      auto files = std::make_shared<std::vector<std::string>>();
      auto weights = std::make_shared<std::string>();
      c->add_option("--measures", *files, "measure files")->required()->expected(-1);
      c->add_option("--weights", *weights, "comma-separated rational weights")->required();
      c->callback([&, files, weights]() {
        std::vector<PiecewiseMeasure> ms;
        for (const auto& f : *files) ms.push_back(read_measure(f, g.precision_bits));
        std::vector<Rational> ws;
        std::stringstream ss(*weights);
        std::string item;
        while (std::getline(ss, item, ',')) ws.push_back(Rational::parse_decimal_or_fraction(item));
        emit(g, measure_to_json(mix(ms, ws)));
      });
    }
    {
      auto* c = sub->add_subcommand("restrict", "conditional measure on [a, b]");
      auto file = std::make_shared<std::string>();
      auto lo = std::make_shared<std::string>(), hi = std::make_shared<std::string>();
      c->add_option("--measure", *file)->required();
      c->add_option("--lower", *lo)->required();
      c->add_option("--upper", *hi)->required();
      c->callback([&, file, lo, hi]() {
        emit(g, measure_to_json(restrict_measure(read_measure(*file, g.precision_bits),
                                                 Rational::parse_decimal_or_fraction(*lo),
                                                 Rational::parse_decimal_or_fraction(*hi))));
      });
    }
    {
      auto* c = sub->add_subcommand("bochner", "transform values at the given times");
      auto file = std::make_shared<std::string>();
      auto ts = std::make_shared<std::string>();
      c->add_option("--measure", *file)->required();
      c->add_option("--t", *ts, "comma-separated times")->required();
      c->callback([&, file, ts]() {
        PiecewiseMeasure m = read_measure(*file, g.precision_bits);
        json arr = json::array();
        for (double t : parse_double_list(*ts)) {
          std::complex<double> v = bochner(m, t);
          arr.push_back({{"t", t}, {"re", v.real()}, {"im", v.imag()}});
        }
        emit(g, arr.dump(2));
      });
    }
    {
      auto* c = sub->add_subcommand("distance", "truncated weak-topology metric");
      auto fa = std::make_shared<std::string>(), fb = std::make_shared<std::string>();
      auto depth = std::make_shared<int>(64);
      auto lo = std::make_shared<double>(-16.0), hi = std::make_shared<double>(16.0);
      c->add_option("--a", *fa)->required();
      c->add_option("--b", *fb)->required();
      c->add_option("--depth", *depth);
      c->add_option("--lower", *lo);
      c->add_option("--upper", *hi);
      c->callback([&, fa, fb, depth, lo, hi]() {
        MetricConfig cfg{*lo, *hi, *depth};
        double d = weak_distance(read_measure(*fa, g.precision_bits),
                                 read_measure(*fb, g.precision_bits), cfg);
        emit(g, json{{"distance", d}, {"depth", *depth}}.dump(2));
      });
    }
    {
      auto* c = sub->add_subcommand("singular", "mutual singularity verdict");
      auto fa = std::make_shared<std::string>(), fb = std::make_shared<std::string>();
      c->add_option("--a", *fa)->required();
      c->add_option("--b", *fb)->required();
      c->callback([&, fa, fb]() {
        SingularityReport r = singularity_test(read_measure(*fa, g.precision_bits),
                                               read_measure(*fb, g.precision_bits));
        json j{{"verdict", singularity_verdict_name(r.verdict)}};
        if (r.verdict == SingularityVerdict::common_mass) {
          j["common"] = json::parse(measure_to_json(r.common));
        }
        emit(g, j.dump(2));
      });
    }
    {
      auto* c = sub->add_subcommand("acont", "absolute continuity and equivalence");
      auto fa = std::make_shared<std::string>(), fb = std::make_shared<std::string>();
      c->add_option("--a", *fa)->required();
      c->add_option("--b", *fb)->required();
      c->callback([&, fa, fb]() {
        PiecewiseMeasure a = read_measure(*fa, g.precision_bits);
        PiecewiseMeasure b = read_measure(*fb, g.precision_bits);
        emit(g, json{{"a_abscont_b", abs_continuity_test(a, b)},
                     {"b_abscont_a", abs_continuity_test(b, a)},
                     {"equivalent", equivalence_test(a, b)}}
                    .dump(2));
      });
    }
  }

  // ---- kron ---------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("kron", "Kronecker approximation and set construction");
    sub->require_subcommand(1);

    auto add_solve_opts = [](CLI::App* c, std::shared_ptr<SolveOptions> opt,
                             std::shared_ptr<std::string> method) {
      c->add_option("--eps", opt->eps, "chord-metric tolerance");
      c->add_option("--t-min", opt->t_min, "smallest admissible witness time");
      c->add_option("--method", *method, "grid | lattice")
          ->check(CLI::IsMember({"grid", "lattice"}));
      c->add_option("--grid-budget", opt->grid_budget);
      c->add_option("--rounding-budget", opt->rounding_budget);
    };

    {
      auto* c = sub->add_subcommand("solve", "witness for a unimodular target");
      auto points = std::make_shared<std::string>(), phases = std::make_shared<std::string>();
      auto opt = std::make_shared<SolveOptions>();
      auto method = std::make_shared<std::string>("lattice");
      c->add_option("--points", *points, "JSON array of frequencies")->required();
      c->add_option("--phases", *phases, "JSON array of phases in [0,1)")->required();
      add_solve_opts(c, opt, method);
      c->callback([&, points, phases, opt, method]() {
        UnimodularTarget tg;
        for (const auto& v : read_reals(*points, Tier::numeric, g.precision_bits)) {
          tg.points.push_back(v.num());
        }
        tg.phases = read_rationals(*phases);
        opt->method = *method == "grid" ? WitnessMethod::grid : WitnessMethod::lattice;
        opt->precision_bits = g.precision_bits;
        SolveResult r = solve_kronecker_approx(tg, *opt);
        emit(g, solve_result_to_json(r));
        if (!r.found) exit_code = 2;
      });
    }
    {
      auto* c = sub->add_subcommand("rigidity", "Dirichlet witness over a measure's atoms");
      auto file = std::make_shared<std::string>();
      auto opt = std::make_shared<SolveOptions>();
      auto method = std::make_shared<std::string>("lattice");
      c->add_option("--measure", *file)->required();
      add_solve_opts(c, opt, method);
      c->callback([&, file, opt, method]() {
        opt->method = *method == "grid" ? WitnessMethod::grid : WitnessMethod::lattice;
        opt->precision_bits = g.precision_bits;
        PiecewiseMeasure m = read_measure(*file, g.precision_bits);
        if (!m.is_atomic()) {
          throw CLI::ValidationError("rigidity witnesses are defined for atomic measures only");
        }
        SolveResult r = rigidity_witness(m.atomic(), *opt);
        emit(g, solve_result_to_json(r));
        if (!r.found) exit_code = 2;
      });
    }
    {
      auto* c = sub->add_subcommand("build-set", "Q-independent points near targets");
      auto targets = std::make_shared<std::string>(), group = std::make_shared<std::string>();
      auto delta = std::make_shared<std::string>("0.01");
      auto rounds = std::make_shared<int>(10);
      auto max_coeff = std::make_shared<long>(10000);
      c->add_option("--targets", *targets, "JSON array of rational targets")->required();
      c->add_option("--delta", *delta, "perturbation radius");
      c->add_option("--group", *group, "JSON {generators: [...], radius: n}")->required();
      c->add_option("--max-rounds", *rounds);
      c->add_option("--max-coeff", *max_coeff);
      c->callback([&, targets, group, delta, rounds, max_coeff]() {
        BuildOptions opt;
        opt.seed = g.seed;
        opt.max_rounds = *rounds;
        opt.bounds = SearchBounds{mpz_class(*max_coeff), g.precision_bits};
        KroneckerSetSpec spec =
            build_kronecker_points(read_rationals(*targets),
                                   Rational::parse_decimal_or_fraction(*delta),
                                   read_group(*group, g), g.tier_value(), opt);
        json pts = json::array(), realized = json::array();
        for (const auto& p : spec.points) pts.push_back(p.to_string());
        for (const auto& p : spec.realized_set) realized.push_back(p.to_string());
        emit(g, json{{"points", pts},
                     {"realized_set", realized},
                     {"certificate",
                      spec.certificate == KroneckerSetSpec::Certificate::symbolic_fresh_transcendental
                          ? "symbolic-fresh-transcendental"
                          : "numeric-no-relation"},
                     {"rounds_used", spec.rounds_used},
                     {"max_coeff", spec.bounds.max_coeff.get_str()},
                     {"precision_bits", spec.bounds.precision_bits}}
                    .dump(2));
      });
    }
    {
      auto* c = sub->add_subcommand("verify", "random-phase Kronecker verification");
      auto file = std::make_shared<std::string>();
      auto trials = std::make_shared<int>(20);
      auto opt = std::make_shared<SolveOptions>();
      auto method = std::make_shared<std::string>("lattice");
      c->add_option("--measure", *file)->required();
      c->add_option("--trials", *trials);
      add_solve_opts(c, opt, method);
      c->callback([&, file, trials, opt, method]() {
        opt->method = *method == "grid" ? WitnessMethod::grid : WitnessMethod::lattice;
        opt->precision_bits = g.precision_bits;
        PiecewiseMeasure m = read_measure(*file, g.precision_bits);
        if (!m.is_atomic()) {
          throw CLI::ValidationError("kron verify is defined for atomic measures only");
        }
        KroneckerVerifyReport rep =
            verify_kronecker_property(m.atomic(), *trials, *opt, g.seed);
        emit(g, verify_report_to_json(rep));
      });
    }
    {
      auto* c = sub->add_subcommand("weak", "weak-convergence defect report");
      auto file = std::make_shared<std::string>(), targets = std::make_shared<std::string>();
      auto scales = std::make_shared<std::string>(), ts = std::make_shared<std::string>();
      auto freqs = std::make_shared<std::string>();
      auto tol = std::make_shared<double>(0.05);
      c->add_option("--measure", *file)->required();
      c->add_option("--scales", *scales, "comma-separated scales")->required();
      c->add_option("--targets", *targets, "JSON array of weak targets")->required();
      c->add_option("--ts", *ts, "comma-separated times")->required();
      c->add_option("--test-freqs", *freqs, "comma-separated test frequencies")->required();
      c->add_option("--tol", *tol);
      c->callback([&, file, targets, scales, ts, freqs, tol]() {
        std::vector<WeakTarget> tg;
        for (const auto& e : json::parse(read_file(*targets))) tg.push_back(parse_weak_target(e));
        WeakConvergenceReport rep = weak_convergence_check(
            read_measure(*file, g.precision_bits), parse_double_list(*scales), tg,
            parse_double_list(*ts), parse_double_list(*freqs), *tol);
        emit(g, weak_report_to_json(rep));
      });
    }
  }

  // ---- flow ---------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("flow", "stationary Gaussian process synthesis");
    sub->require_subcommand(1);

    {
      auto* c = sub->add_subcommand("simulate", "sample paths from a spectral measure");
      auto file = std::make_shared<std::string>();
      auto t0 = std::make_shared<double>(0.0), step = std::make_shared<double>(0.125);
      auto count = std::make_shared<int>(256), paths = std::make_shared<int>(100);
      auto dens = std::make_shared<int>(256);
      auto csv = std::make_shared<std::string>(), bin = std::make_shared<std::string>();
      c->add_option("--spectral", *file)->required();
      c->add_option("--t0", *t0);
      c->add_option("--step", *step);
      c->add_option("--count", *count);
      c->add_option("--paths", *paths);
      c->add_option("--density-freqs", *dens);
      c->add_option("--out-csv", *csv, "write paths as CSV");
      c->add_option("--out-bin", *bin, "write paths in the binary format");
      c->callback([&, file, t0, step, count, paths, dens, csv, bin]() {
        ProcessSpec spec;
        spec.spectral = read_measure(*file, g.precision_bits);
        spec.grid = {*t0, *step, *count};
        spec.paths = *paths;
        spec.seed = g.seed;
        spec.density_freqs = *dens;
        PathSample s = simulate(spec);
        if (!csv->empty()) emit_file(*csv, paths_to_csv(s));
        if (!bin->empty()) {
          std::vector<uint8_t> bytes = paths_to_binary(s);
          emit_file(*bin, std::string(bytes.begin(), bytes.end()));
        }
        emit(g, json{{"paths", s.paths()},
                     {"times", s.time_count()},
                     {"seed", spec.seed},
                     {"mass", spec.spectral.total_mass()}}
                    .dump(2));
      });
    }

    auto add_paths_opts = [](CLI::App* c, std::shared_ptr<std::string> pf,
                             std::shared_ptr<std::string> sf) {
      c->add_option("--paths-file", *pf, "binary path file")->required();
      c->add_option("--spectral", *sf, "spectral measure used to generate it")->required();
    };

    {
      auto* c = sub->add_subcommand("autocov", "empirical vs theoretical autocovariance");
      auto pf = std::make_shared<std::string>(), sf = std::make_shared<std::string>();
      auto lags = std::make_shared<std::string>();
      add_paths_opts(c, pf, sf);
      c->add_option("--lags", *lags, "comma-separated lags")->required();
      c->callback([&, pf, sf, lags]() {
        emit(g, covariance_report_to_json(
                    empirical_autocovariance(read_paths(*pf, *sf, g), parse_double_list(*lags))));
      });
    }
    {
      auto* c = sub->add_subcommand("rescale", "time-rescaled process (X_{st})");
      auto pf = std::make_shared<std::string>(), sf = std::make_shared<std::string>();
      auto s = std::make_shared<double>(2.0);
      auto bin = std::make_shared<std::string>();
      add_paths_opts(c, pf, sf);
      c->add_option("--s", *s, "positive time scale");
      c->add_option("--out-bin", *bin, "write the rescaled paths")->required();
      c->callback([&, pf, sf, s, bin]() {
        PathSample r = rescale_paths(read_paths(*pf, *sf, g), *s);
        std::vector<uint8_t> bytes = paths_to_binary(r);
        emit_file(*bin, std::string(bytes.begin(), bytes.end()));
        emit(g, json{{"s", *s}, {"paths", r.paths()}}.dump(2));
      });
    }
    {
      auto* c = sub->add_subcommand("spectrum", "periodogram and detected peaks");
      auto pf = std::make_shared<std::string>(), sf = std::make_shared<std::string>();
      auto lo = std::make_shared<double>(0.0), hi = std::make_shared<double>(4.0);
      auto n = std::make_shared<int>(256), peaks = std::make_shared<int>(4);
      add_paths_opts(c, pf, sf);
      c->add_option("--freq-lo", *lo);
      c->add_option("--freq-hi", *hi);
      c->add_option("--freq-count", *n);
      c->add_option("--peaks", *peaks);
      c->callback([&, pf, sf, lo, hi, n, peaks]() {
        std::vector<double> grid;
        for (int i = 1; i <= *n; ++i) {
          grid.push_back(*lo + (*hi - *lo) * i / *n);
        }
        std::vector<SpectralPoint> pg = spectral_estimate(read_paths(*pf, *sf, g), grid);
        double bin_width = (*hi - *lo) / *n;
        json j{{"periodogram", json::parse(spectral_points_to_json(pg))},
               {"peaks", json::parse(spectral_points_to_json(
                             spectral_peaks(pg, *peaks, 4 * bin_width)))}};
        emit(g, j.dump(2));
      });
    }
    {
      auto* c = sub->add_subcommand("rigidity", "path-level rigidity along a witness");
      auto pf = std::make_shared<std::string>(), sf = std::make_shared<std::string>();
      auto tw = std::make_shared<double>(), tol = std::make_shared<double>(0.01);
      add_paths_opts(c, pf, sf);
      c->add_option("--t-witness", *tw)->required();
      c->add_option("--tol", *tol);
      c->callback([&, pf, sf, tw, tol]() {
        RigidityCheckReport rep = rigidity_check(read_paths(*pf, *sf, g), *tw, *tol);
        emit(g, rigidity_report_to_json(rep));
        if (!rep.pass) exit_code = 2;
      });
    }
    {
      auto* c = sub->add_subcommand("gauss-test", "marginal normality omnibus test");
      auto pf = std::make_shared<std::string>(), sf = std::make_shared<std::string>();
      auto alpha = std::make_shared<double>(0.01);
      add_paths_opts(c, pf, sf);
      c->add_option("--alpha", *alpha);
      c->callback([&, pf, sf, alpha]() {
        GaussianityReport rep = gaussianity_test(read_paths(*pf, *sf, g), *alpha);
        emit(g, gaussianity_report_to_json(rep));
        if (!rep.pass) exit_code = 2;
      });
    }
  }

  // ---- scenario -----------------------------------------------------------
  {
    auto* sub = app.add_subcommand("scenario", "packaged end-to-end demonstrations");
    sub->require_subcommand(1);
    auto* list = sub->add_subcommand("list", "list registered scenarios");
    list->callback([&]() {
      json arr = json::array();
      for (const auto& n : registered_scenarios()) arr.push_back(n);
      emit(g, arr.dump(2));
    });

    auto* run = sub->add_subcommand("run", "run one scenario");
    auto name = std::make_shared<std::string>();
    auto params = std::make_shared<std::vector<std::string>>();
    auto outdir = std::make_shared<std::string>();
    auto jobs = std::make_shared<int>(1);
    run->add_option("name", *name, "scenario name")->required();
    run->add_option("--param", *params, "key=value overrides")->expected(-1);
    run->add_option("--out-dir", *outdir, "artifact directory");
    run->add_option("--jobs", *jobs, "parallelize independent assertions (report order fixed)");
    run->callback([&, name, params, outdir, jobs]() {
      ScenarioConfig cfg;
      cfg.name = *name;
      cfg.seed = g.seed;
      cfg.tier = g.tier_value();
      cfg.precision_bits = g.precision_bits;
      cfg.output_dir = *outdir;
      if (*jobs > 1) cfg.parameters["jobs"] = std::to_string(*jobs);
      for (const auto& p : *params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--param expects key=value");
        cfg.parameters[p.substr(0, eq)] = p.substr(eq + 1);
      }
      ScenarioReport rep = run_scenario(cfg);
      emit(g, rep.to_json());
      if (!rep.all_pass) exit_code = 1;
    });
  }

  // ---- convert ------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("convert", "convert among measure formats");
    auto in = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("json");
    auto assigns = std::make_shared<std::vector<std::string>>();
    auto strict = std::make_shared<bool>(false);
    sub->add_option("--in", *in, "input measure (.json/.txt/.csv)")->required();
    sub->add_option("--format", *format, "output format: json | text | csv")
        ->check(CLI::IsMember({"json", "text", "csv"}));
    sub->add_option("--assign", *assigns, "symbol=value numeric assignments")->expected(-1);
    sub->add_flag("--strict", *strict, "make duplicate CSV positions an error");
    sub->callback([&, in, format, assigns, strict]() {
      PiecewiseMeasure m = read_measure(*in, g.precision_bits, *strict);
      if (!assigns->empty()) {
        std::map<std::string, BigFloat> assignment;
        for (const auto& a : *assigns) {
          auto eq = a.find('=');
          if (eq == std::string::npos) throw CLI::ValidationError("--assign expects symbol=value");
          assignment.emplace(a.substr(0, eq),
                             parse_numeric_constant(a.substr(eq + 1), g.precision_bits));
        }
        std::vector<Atom> atoms;
        for (const auto& atom : m.atomic().atoms()) {
          if (atom.position.is_symbolic()) {
            atoms.push_back({RealValue(atom.position.sym().eval(assignment)), atom.weight});
          } else {
            atoms.push_back(atom);
          }
        }
        m = PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(atoms)), m.pieces());
      }
      if (*format == "json") {
        emit(g, measure_to_json(m));
      } else if (*format == "text") {
        emit(g, measure_to_text(m));
      } else {
        emit(g, measure_to_csv(m));
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
