#include "kronlab/serialize.hpp"

#include <cstring>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kronlab {

using nlohmann::json;

namespace {

std::string position_to_string(const RealValue& p) { return p.to_string(); }

RealValue position_from_string(const std::string& s, Tier tier, int precision_bits) {
  if (tier == Tier::symbolic) return RealValue(SymbolicReal::parse(s));
  return RealValue(BigFloat::from_string(s, precision_bits));
}

json measure_to_json_obj(const PiecewiseMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atomic().atoms()) {
    atoms.push_back({{"pos", position_to_string(a.position)}, {"w", a.weight.to_string()}});
  }
  json density = json::array();
  for (const auto& p : m.pieces()) {
    density.push_back({{"l", p.lower}, {"u", p.upper}, {"level", p.level}});
  }
  return json{{"atoms", atoms}, {"density", density}, {"tier", tier_name(m.tier())}};
}

PiecewiseMeasure measure_from_json_obj(const json& j, int precision_bits) {
  Tier tier = tier_from_name(j.at("tier").get<std::string>());
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) {
    atoms.push_back({position_from_string(a.at("pos").get<std::string>(), tier, precision_bits),
                     Rational::parse(a.at("w").get<std::string>())});
  }
  std::vector<DensityPiece> pieces;
  if (j.contains("density")) {
    for (const auto& p : j.at("density")) {
      pieces.push_back({p.at("l").get<double>(), p.at("u").get<double>(),
                        p.at("level").get<double>()});
    }
  }
  return PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(atoms)),
                                      std::move(pieces));
}

}  // namespace

std::string measure_to_json(const PiecewiseMeasure& m) { return measure_to_json_obj(m).dump(2); }

PiecewiseMeasure measure_from_json(const std::string& text, int precision_bits) {
  return measure_from_json_obj(json::parse(text), precision_bits);
}

std::string measure_to_text(const PiecewiseMeasure& m) {
  std::ostringstream os;
  os << "tier " << tier_name(m.tier()) << "\n";
  for (const auto& a : m.atomic().atoms()) {
    os << "atom " << a.weight.to_string() << " " << position_to_string(a.position) << "\n";
  }
  for (const auto& p : m.pieces()) {
    os << "density " << json(p.lower).dump() << " " << json(p.upper).dump() << " "
       << json(p.level).dump() << "\n";
  }
  return os.str();
}

PiecewiseMeasure measure_from_text(const std::string& text, int precision_bits) {
  std::istringstream is(text);
  std::string line;
  Tier tier = Tier::symbolic;
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "tier") {
      std::string t;
      ls >> t;
      tier = tier_from_name(t);
    } else if (kind == "atom") {
      std::string w;
      ls >> w;
      std::string rest;
      std::getline(ls, rest);
      size_t start = rest.find_first_not_of(' ');
      if (start == std::string::npos) throw std::invalid_argument("measure text: missing position");
      atoms.push_back({position_from_string(rest.substr(start), tier, precision_bits),
                       Rational::parse(w)});
    } else if (kind == "density") {
      DensityPiece p{};
      ls >> p.lower >> p.upper >> p.level;
      pieces.push_back(p);
    } else {
      throw std::invalid_argument("measure text: unknown line '" + line + "'");
    }
  }
  return PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(atoms)),
                                      std::move(pieces));
}

std::string measure_to_csv(const PiecewiseMeasure& m) {
  if (!m.is_atomic()) {
    throw std::invalid_argument("measure_to_csv: CSV atom lists cannot carry density pieces");
  }
  std::ostringstream os;
  os << "pos,weight\n";
  for (const auto& a : m.atomic().atoms()) {
    os << position_to_string(a.position) << "," << a.weight.to_string() << "\n";
  }
  return os.str();
}

PiecewiseMeasure measure_from_csv(const std::string& text, int precision_bits,
                                  bool merge_duplicates, std::string* warning) {
  std::istringstream is(text);
  std::string line;
  std::vector<Atom> atoms;
  bool first = true;
  Tier tier = Tier::symbolic;
  std::vector<std::pair<std::string, std::string>> rows;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (first && line.rfind("pos", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("csv parse error at line " + std::to_string(lineno) +
                                  ": missing comma");
    }
    rows.push_back({line.substr(0, comma), line.substr(comma + 1)});
  }
  // numeric tier when any position fails to parse as canonical symbolic text
  for (const auto& [pos, w] : rows) {
    try {
      (void)SymbolicReal::parse(pos);
    } catch (const std::invalid_argument&) {
      tier = Tier::numeric;
      break;
    }
  }
  std::set<std::string> seen;
  bool duplicates = false;
  for (const auto& [pos, w] : rows) {
    if (!seen.insert(pos).second) duplicates = true;
    atoms.push_back({position_from_string(pos, tier, precision_bits), Rational::parse(w)});
  }
  if (duplicates) {
    if (!merge_duplicates) throw std::invalid_argument("csv: duplicate positions (strict mode)");
    if (warning) *warning = "duplicate positions merged by weight addition";
  }
  return PiecewiseMeasure(AtomicMeasure::from_atoms(std::move(atoms)));
}

std::string group_slice_to_json(const GroupSlice& slice) {
  json elems = json::array();
  for (const auto& e : slice.elements) {
    elems.push_back({{"word", e.word}, {"value", e.value.to_string()}});
  }
  json j{{"generators", json::array()},
         {"radius", slice.radius},
         {"tier", tier_name(slice.tier)},
         {"elements", elems}};
  for (const auto& g : slice.generators) j["generators"].push_back(g.to_string());
  return j.dump(2);
}

std::string witness_to_json(const ApproxWitness& w) {
  json j{{"t", w.t.to_string()},
         {"t_approx", w.t.to_double()},
         {"residuals", w.residuals},
         {"max_residual", w.max_residual},
         {"method", witness_method_name(w.method)},
         {"search_bound", w.search_bound}};
  return j.dump(2);
}

std::string solve_result_to_json(const SolveResult& r) {
  json j{{"found", r.found}, {"evaluations", r.evaluations}};
  if (!r.note.empty()) j["note"] = r.note;
  if (r.witness) j["witness"] = json::parse(witness_to_json(*r.witness));
  return j.dump(2);
}

std::string verify_report_to_json(const KroneckerVerifyReport& r) {
  json trials = json::array();
  for (const auto& t : r.trials) {
    json phases = json::array();
    for (const auto& p : t.phases) phases.push_back(p.to_string());
    trials.push_back({{"phases", phases},
                      {"success", t.success},
                      {"residual", t.residual},
                      {"note", t.note}});
  }
  json j{{"trials", trials},
         {"successes", r.successes},
         {"success_fraction", r.success_fraction},
         {"max_residual_among_successes", r.max_residual_among_successes}};
  return j.dump(2);
}

std::string weak_report_to_json(const WeakConvergenceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr{{"scale", row.scale},
            {"defects", row.defects},
            {"tail_below_tol", row.tail_below_tol}};
    if (row.cannot_converge) {
      jr["cannot_converge"] = true;
      jr["obstruction_lower_bound"] = row.obstruction_lower_bound;
    }
    rows.push_back(jr);
  }
  return json{{"tol", r.tol}, {"rows", rows}}.dump(2);
}

std::string covariance_report_to_json(const CovarianceReport& r) {
  return json{{"lags", r.lags},
              {"empirical", r.empirical},
              {"theoretical", r.theoretical},
              {"stderr", r.stderr_}}
      .dump(2);
}

std::string rigidity_report_to_json(const RigidityCheckReport& r) {
  return json{{"t_witness", r.t_witness},
              {"theoretical", r.theoretical},
              {"empirical", r.empirical},
              {"stderr", r.stderr_},
              {"variance", r.variance},
              {"tol", r.tol},
              {"pass", r.pass}}
      .dump(2);
}

std::string gaussianity_report_to_json(const GaussianityReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"time", p.time},
                   {"k2", p.k2_statistic},
                   {"p_value", p.p_value},
                   {"degenerate", p.degenerate},
                   {"rejected", p.rejected}});
  }
  return json{{"alpha", r.alpha}, {"pass", r.pass}, {"points", pts}}.dump(2);
}

std::string spectral_points_to_json(const std::vector<SpectralPoint>& pts) {
  json arr = json::array();
  for (const auto& p : pts) {
    arr.push_back({{"frequency", p.frequency}, {"power", p.power}, {"stderr", p.stderr_}});
  }
  return arr.dump(2);
}

std::string independence_verdict_to_json(const IndependenceVerdict& v) {
  json j{{"status", independence_status_name(v.status)},
         {"max_coeff", v.bounds.max_coeff.get_str()},
         {"precision_bits", v.bounds.precision_bits}};
  if (v.relation) {
    json coeffs = json::array();
    for (const auto& c : v.relation->coefficients) coeffs.push_back(c.get_str());
    j["relation"] = coeffs;
    j["residual"] = v.relation->residual.to_double();
  }
  return j.dump(2);
}

std::string paths_to_csv(const PathSample& sample) {
  std::ostringstream os;
  os << "time";
  for (int p = 0; p < sample.paths(); ++p) os << ",path" << p;
  os << "\n";
  os.precision(17);
  for (int i = 0; i < sample.time_count(); ++i) {
    os << sample.times()[i];
    for (int p = 0; p < sample.paths(); ++p) os << "," << sample.value(p, i);
    os << "\n";
  }
  return os.str();
}

namespace {

template <typename T>
void put_raw(std::vector<uint8_t>& out, const T& v) {
  const auto* p = reinterpret_cast<const uint8_t*>(&v);
  out.insert(out.end(), p, p + sizeof(T));
}

template <typename T>
T get_raw(const std::vector<uint8_t>& in, size_t& off) {
  if (off + sizeof(T) > in.size()) throw std::invalid_argument("binary paths: truncated");
  T v;
  std::memcpy(&v, in.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

}  // namespace

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<uint8_t> paths_to_binary(const PathSample& sample) {
  std::vector<uint8_t> out;
  out.insert(out.end(), {'K', 'L', 'P', 'B'});
  put_raw<uint32_t>(out, 1);  // version
  put_raw<uint64_t>(out, sample.spec().seed);
  put_raw<double>(out, sample.spec().grid.t0);
  put_raw<double>(out, sample.spec().grid.step);
  put_raw<uint32_t>(out, static_cast<uint32_t>(sample.spec().grid.count));
  put_raw<uint32_t>(out, static_cast<uint32_t>(sample.paths()));
  put_raw<uint64_t>(out, fnv1a64(measure_to_json(sample.spec().spectral)));
  for (double v : sample.raw_values()) put_raw<double>(out, v);
  return out;
}

BinaryPaths paths_from_binary(const std::vector<uint8_t>& bytes) {
  size_t off = 0;
  if (bytes.size() < 4 || bytes[0] != 'K' || bytes[1] != 'L' || bytes[2] != 'P' || bytes[3] != 'B') {
    throw std::invalid_argument("binary paths: bad magic");
  }
  off = 4;
  uint32_t version = get_raw<uint32_t>(bytes, off);
  if (version != 1) throw std::invalid_argument("binary paths: unsupported version");
  BinaryPaths bp;
  bp.seed = get_raw<uint64_t>(bytes, off);
  bp.grid.t0 = get_raw<double>(bytes, off);
  bp.grid.step = get_raw<double>(bytes, off);
  bp.grid.count = static_cast<int>(get_raw<uint32_t>(bytes, off));
  bp.paths = static_cast<int>(get_raw<uint32_t>(bytes, off));
  bp.measure_hash = get_raw<uint64_t>(bytes, off);
  size_t n = static_cast<size_t>(bp.grid.count) * bp.paths;
  bp.values.reserve(n);
  for (size_t i = 0; i < n; ++i) bp.values.push_back(get_raw<double>(bytes, off));
  return bp;
}

BigFloat parse_numeric_constant(const std::string& text, int precision_bits) {
  std::string s = text;
  // optional rational prefix "q*"
  auto star = s.find('*');
  Rational mult(1);
  if (star != std::string::npos && s.find('(') > star) {
    mult = Rational::parse_decimal_or_fraction(s.substr(0, star));
    s = s.substr(star + 1);
  }
  auto inner = [&](const std::string& call) -> std::string {
    return s.substr(call.size() + 1, s.size() - call.size() - 2);
  };
  BigFloat v(precision_bits);
  if (s == "pi") {
    v = BigFloat::pi(precision_bits);
  } else if (s == "e") {
    v = BigFloat::euler_e(precision_bits);
  } else if (s == "phi") {
    v = BigFloat::golden_ratio(precision_bits);
  } else if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
    v = BigFloat::sqrt_of(Rational::parse_decimal_or_fraction(inner("sqrt")), precision_bits);
  } else if (s.rfind("cbrt(", 0) == 0 && s.back() == ')') {
    v = BigFloat::cbrt_of(Rational::parse_decimal_or_fraction(inner("cbrt")), precision_bits);
  } else {
    return BigFloat::from_rational(Rational::parse_decimal_or_fraction(s), precision_bits) * mult;
  }
  return v * mult;
}

RealValue parse_real(const std::string& text, Tier tier, int precision_bits) {
  if (tier == Tier::symbolic) return RealValue(SymbolicReal::parse(text));
  return RealValue(parse_numeric_constant(text, precision_bits));
}

}  // namespace kronlab
