#include "kronlab/kronecker.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kronlab/rng.hpp"

namespace kronlab {

std::string witness_method_name(WitnessMethod m) {
  return m == WitnessMethod::grid ? "grid" : "lattice";
}

std::vector<double> witness_residuals(const BigFloat& t, const UnimodularTarget& target,
                                      int precision_bits) {
  std::vector<double> out;
  out.reserve(target.points.size());
  BigFloat tw = t.at_precision(precision_bits);
  for (size_t j = 0; j < target.points.size(); ++j) {
    BigFloat theta = tw * target.points[j].at_precision(precision_bits);
    BigFloat phase = BigFloat::from_rational(target.phases[j], precision_bits);
    out.push_back(chord_distance_turns(theta, phase).to_double());
  }
  return out;
}

namespace {

void validate_target(const UnimodularTarget& target) {
  if (target.points.empty()) throw std::invalid_argument("solve: empty point set");
  if (target.points.size() != target.phases.size()) {
    throw std::invalid_argument("solve: points and phases differ in length");
  }
  for (size_t i = 0; i < target.points.size(); ++i) {
    if (target.points[i].is_zero()) throw std::invalid_argument("solve: zero frequency");
    for (size_t j = i + 1; j < target.points.size(); ++j) {
      if (target.points[i] == target.points[j]) {
        throw std::invalid_argument("solve: duplicate frequencies");
      }
    }
  }
}

ApproxWitness make_witness(const BigFloat& t, const UnimodularTarget& target, WitnessMethod method,
                           double search_bound, int precision_bits) {
  ApproxWitness w;
  w.t = t.at_precision(precision_bits);
  w.residuals = witness_residuals(t, target, precision_bits + 64);
  w.max_residual = 0;
  for (double r : w.residuals) w.max_residual = std::max(w.max_residual, r);
  w.method = method;
  w.search_bound = search_bound;
  return w;
}

SolveResult solve_grid(const UnimodularTarget& target, const SolveOptions& opt) {
  const size_t n = target.points.size();
  std::vector<double> xd(n), pd(n);
  double maxabs = 0;
  for (size_t j = 0; j < n; ++j) {
    xd[j] = target.points[j].to_double();
    pd[j] = target.phases[j].to_double();
    maxabs = std::max(maxabs, std::fabs(xd[j]));
  }
  // stay strictly below the contract step bound despite double rounding
  double step_d = opt.eps / (2.0 * M_PI * maxabs) * (1.0 - 1e-9);
  Rational step = Rational::from_double(step_d);
  Rational t0 = Rational::from_double(opt.t_min);
  const double eps_turns = std::asin(opt.eps / 2.0) / M_PI;

  SolveResult res;
  long best_k = -1;
  double best_res = 1e300;
  double t_d = opt.t_min;
  for (long k = 0; k < opt.grid_budget; ++k) {
    t_d = opt.t_min + static_cast<double>(k) * step_d;
    ++res.evaluations;
    bool ok = true;
    double worst = 0;
    for (size_t j = 0; j < n; ++j) {
      double v = t_d * xd[j] - pd[j];
      double dist = std::fabs(v - std::nearbyint(v));
      worst = std::max(worst, dist);
      if (dist >= eps_turns) {
        ok = false;
        break;
      }
    }
    if (ok) {
      // confirm at full precision with the exact grid time
      Rational t_exact = t0 + Rational(k) * step;
      BigFloat t = BigFloat::from_rational(t_exact, opt.precision_bits);
      ApproxWitness w = make_witness(t, target, WitnessMethod::grid, t_d, opt.precision_bits);
      if (w.max_residual < opt.eps) {
        res.found = true;
        res.witness = w;
        return res;
      }
    }
    if (worst < best_res) {
      best_res = worst;
      best_k = k;
    }
  }
  res.found = false;
  res.note = "not-found(budget)";
  if (best_k >= 0) {
    Rational t_exact = t0 + Rational(best_k) * step;
    res.witness = make_witness(BigFloat::from_rational(t_exact, opt.precision_bits), target,
                               WitnessMethod::grid, t_d, opt.precision_bits);
  }
  return res;
}

struct DoubleGso {
  std::vector<std::vector<double>> b;      // reduced basis rows, scaled
  std::vector<std::vector<double>> bstar;  // orthogonalized rows
  std::vector<double> norms2;              // |b*_i|^2
  std::vector<std::vector<double>> mu;
};

DoubleGso double_gso(const std::vector<std::vector<double>>& rows) {
  size_t n = rows.size(), d = rows[0].size();
  DoubleGso g;
  g.b = rows;
  g.bstar = rows;
  g.norms2.assign(n, 0);
  g.mu.assign(n, std::vector<double>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      double dot = 0;
      for (size_t c = 0; c < d; ++c) dot += rows[i][c] * g.bstar[j][c];
      g.mu[i][j] = dot / g.norms2[j];
      for (size_t c = 0; c < d; ++c) g.bstar[i][c] -= g.mu[i][j] * g.bstar[j][c];
    }
    double s = 0;
    for (size_t c = 0; c < d; ++c) s += g.bstar[i][c] * g.bstar[i][c];
    g.norms2[i] = s;
  }
  return g;
}

// Nearest-plane descent with per-level offsets; leaves are coefficient
// vectors w.r.t. the reduced basis.
void babai_enumerate(const DoubleGso& g, const std::vector<double>& y, int offsets_radius,
                     std::vector<std::vector<long>>& out_coeffs, size_t max_leaves) {
  size_t n = g.b.size(), d = y.size();
  std::vector<long> coeffs(n, 0);
  std::vector<std::vector<double>> residual_stack(n + 1, std::vector<double>(d));
  residual_stack[n] = y;

  struct Frame {
    size_t level;
    int offset_idx;
  };
  // depth-first over levels n-1 .. 0
  std::vector<int> offsets;
  offsets.push_back(0);
  for (int o = 1; o <= offsets_radius; ++o) {
    offsets.push_back(o);
    offsets.push_back(-o);
  }

  std::function<void(size_t)> descend = [&](size_t level) {
    if (out_coeffs.size() >= max_leaves) return;
    if (level == 0) {
      out_coeffs.push_back(coeffs);
      return;
    }
    size_t i = level - 1;
    const std::vector<double>& y_cur = residual_stack[level];
    double dot = 0;
    for (size_t c = 0; c < d; ++c) dot += y_cur[c] * g.bstar[i][c];
    double base = std::nearbyint(dot / g.norms2[i]);
    for (int off : offsets) {
      double ci = base + off;
      if (std::fabs(ci) > 9.0e15) continue;  // keep within exact long range
      coeffs[i] = static_cast<long>(ci);
      for (size_t c = 0; c < d; ++c) {
        residual_stack[level - 1][c] = residual_stack[level][c] - ci * g.b[i][c];
      }
      descend(level - 1);
      if (out_coeffs.size() >= max_leaves) return;
    }
  };
  descend(n);
}

struct Success {
  BigFloat t;
  std::vector<double> residuals;
  double max_residual;
};

// local minimax polish around an anchored success: the anchored time zeroes
// one coordinate, while the best time in the same feasibility window
// balances all of them
std::optional<Success> refine_success(const Success& s, const UnimodularTarget& target,
                                      const SolveOptions& opt, int work) {
  const size_t n = target.points.size();
  std::vector<double> xd(n), pd(n);
  double maxabs = 0;
  for (size_t j = 0; j < n; ++j) {
    xd[j] = target.points[j].to_double();
    pd[j] = target.phases[j].to_double();
    maxabs = std::max(maxabs, std::fabs(xd[j]));
  }
  double t0 = s.t.to_double();
  double h = opt.eps / (M_PI * maxabs);
  const int steps = 4000;
  double best_t = t0, best_res = s.max_residual;
  for (int i = -steps; i <= steps; ++i) {
    double t = t0 + h * i / steps;
    if (t < opt.t_min) continue;
    double worst = 0;
    for (size_t j = 0; j < n; ++j) worst = std::max(worst, chord_of_turns(t * xd[j] - pd[j]));
    if (worst < best_res) {
      best_res = worst;
      best_t = t;
    }
  }
  if (best_t == t0) return std::nullopt;
  BigFloat t = BigFloat::from_rational(Rational::from_double(best_t), work);
  std::vector<double> rs = witness_residuals(t, target, work);
  double mx = 0;
  for (double r : rs) mx = std::max(mx, r);
  if (mx >= s.max_residual) return std::nullopt;
  return Success{t, rs, mx};
}

SolveResult solve_lattice(const UnimodularTarget& target, const SolveOptions& opt) {
  const size_t n = target.points.size();
  const int work = opt.precision_bits + 64;
  const double eps_turns = std::asin(opt.eps / 2.0) / M_PI;

  SolveResult res;
  std::optional<Success> best_success;
  std::optional<Success> best_seen;
  double search_bound = 0;

  auto consider = [&](const BigFloat& t) {
    if (t.to_double() < opt.t_min * (1.0 - 1e-12)) return;
    ++res.evaluations;
    std::vector<double> rs = witness_residuals(t, target, work);
    double mx = 0;
    for (double r : rs) mx = std::max(mx, r);
    search_bound = std::max(search_bound, t.to_double());
    if (!best_seen || mx < best_seen->max_residual) best_seen = Success{t, rs, mx};
    if (mx < opt.eps) {
      if (!best_success || t < best_success->t) best_success = Success{t, rs, mx};
    }
  };

  // anchor on each frequency in turn: t = (phase_a + M) / x_a; a negative
  // frequency anchors as t = (phase'_a + M) / |x_a| with phase' = -phase mod 1
  for (size_t a = 0; a < n && res.evaluations < opt.rounding_budget; ++a) {
    BigFloat xa = target.points[a].at_precision(work).abs();
    Rational phase_a = target.phases[a];
    if (target.points[a].sign() < 0 && !phase_a.is_zero()) phase_a = Rational(1) - phase_a;
    BigFloat phia = BigFloat::from_rational(phase_a, work);

    // M >= x_a t_min - phase_a keeps t >= t_min
    BigFloat m_lo = xa * BigFloat::from_double(opt.t_min, work) - phia;
    mpz_class m_min = m_lo.floor_to_integer() + 1;
    if (BigFloat::from_integer(m_min - 1, work) == m_lo) m_min -= 1;

    std::vector<size_t> others;
    for (size_t j = 0; j < n; ++j) {
      if (j != a) others.push_back(j);
    }

    std::set<mpz_class> tried;
    auto try_m = [&](const mpz_class& m) {
      if (m < m_min) return;
      if (!tried.insert(m).second) return;
      BigFloat t = (phia + BigFloat::from_integer(m, work)) / xa;
      consider(t);
    };

    if (others.empty()) {
      try_m(m_min);  // single frequency: the first anchored time is exact
      continue;
    }

    // exhaustive prefix: cheap double scan of small M
    {
      std::vector<double> u(others.size()), c(others.size());
      for (size_t k = 0; k < others.size(); ++k) {
        size_t j = others[k];
        u[k] = (target.points[j].at_precision(work) / xa).to_double();
        c[k] = phase_a.to_double() * u[k] - target.phases[j].to_double();
      }
      double m0 = static_cast<double>(m_min.get_d());
      long prefix = 1L << 14;
      for (long i = 0; i < prefix && res.evaluations < opt.rounding_budget; ++i) {
        double md = m0 + static_cast<double>(i);
        bool ok = true;
        for (size_t k = 0; k < others.size(); ++k) {
          double v = md * u[k] + c[k];
          if (std::fabs(v - std::nearbyint(v)) >= eps_turns * 1.05) {
            ok = false;
            break;
          }
        }
        if (ok) try_m(m_min + i);
      }
    }

    // lattice embedding for the deep range
    const int prec = opt.precision_bits;
    mpz_class C = 1;
    mpz_mul_2exp(C.get_mpz_t(), C.get_mpz_t(), static_cast<unsigned long>(prec));
    const double C_d = std::ldexp(1.0, prec);

    std::vector<mpz_class> z(others.size());
    std::vector<double> c_off(others.size());
    for (size_t k = 0; k < others.size(); ++k) {
      size_t j = others[k];
      BigFloat u = target.points[j].at_precision(work) / xa;
      BigFloat scaled = u;
      mpfr_mul_2si(scaled.raw_mutable(), scaled.raw(), prec, MPFR_RNDN);
      z[k] = scaled.round_to_integer();
      BigFloat cj = phia * u - BigFloat::from_rational(target.phases[j], work);
      c_off[k] = cj.to_double();
    }

    for (int kpow : {4, 10, 18, 28, 40}) {
      if (res.evaluations >= opt.rounding_budget) break;
      // column-0 weight balancing an M-deviation of 2^kpow against the
      // phase scale C * eps_turns
      mpz_class W;
      {
        double w_d = C_d * eps_turns / std::ldexp(1.0, kpow);
        if (w_d < 1.0) w_d = 1.0;
        BigFloat wf = BigFloat::from_double(w_d, 64);
        W = wf.round_to_integer();
        if (W < 1) W = 1;
      }

      IntMatrix basis(others.size() + 1, IntVector(others.size() + 1, 0));
      basis[0][0] = W;
      for (size_t k = 0; k < others.size(); ++k) {
        basis[0][k + 1] = z[k];
        basis[k + 1][k + 1] = C;
      }
      IntMatrix red = lll_reduce(basis);

      std::vector<std::vector<double>> rows(red.size(), std::vector<double>(red[0].size()));
      for (size_t i = 0; i < red.size(); ++i) {
        for (size_t j2 = 0; j2 < red[i].size(); ++j2) {
          rows[i][j2] = red[i][j2].get_d() / C_d;
        }
      }
      DoubleGso gso = double_gso(rows);
      const double W_scaled = mpz_class(W).get_d() / C_d;

      for (int oct = 0; oct <= 48 && res.evaluations < opt.rounding_budget; ++oct) {
        mpz_class m_center = m_min + (mpz_class(1) << oct) - 1;
        std::vector<double> y(others.size() + 1, 0.0);
        y[0] = W_scaled * m_center.get_d();
        for (size_t k = 0; k < others.size(); ++k) y[k + 1] = -c_off[k];

        std::vector<std::vector<long>> leaves;
        int radius = others.size() <= 3 ? 2 : 1;
        babai_enumerate(gso, y, radius, leaves, 4096);

        for (const auto& coeffs : leaves) {
          if (res.evaluations >= opt.rounding_budget) break;
          // screen by the lattice residual on the phase coordinates
          bool plausible = true;
          for (size_t col = 1; col <= others.size(); ++col) {
            double v = -y[col];
            for (size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * rows[i][col];
            if (std::fabs(v) > eps_turns * 1.25) {
              plausible = false;
              break;
            }
          }
          if (!plausible) continue;
          mpz_class p0 = 0;
          for (size_t i = 0; i < coeffs.size(); ++i) p0 += mpz_class(coeffs[i]) * red[i][0];
          if (p0 % W != 0) continue;
          try_m(p0 / W);
        }
      }
    }
  }

  if (best_success) {
    if (auto polished = refine_success(*best_success, target, opt, work)) {
      best_success = polished;
    }
    res.found = true;
    res.witness = ApproxWitness{best_success->t.at_precision(opt.precision_bits),
                                best_success->residuals, best_success->max_residual,
                                WitnessMethod::lattice, search_bound};
    return res;
  }
  if (opt.grid_fallback) {
    SolveOptions g = opt;
    g.method = WitnessMethod::grid;
    SolveResult gr = solve_grid(target, g);
    gr.evaluations += res.evaluations;
    if (!gr.found && best_seen &&
        (!gr.witness || best_seen->max_residual < gr.witness->max_residual)) {
      gr.witness = ApproxWitness{best_seen->t.at_precision(opt.precision_bits),
                                 best_seen->residuals, best_seen->max_residual,
                                 WitnessMethod::lattice, search_bound};
    }
    return gr;
  }
  res.found = false;
  res.note = "not-found(budget)";
  if (best_seen) {
    res.witness = ApproxWitness{best_seen->t.at_precision(opt.precision_bits),
                                best_seen->residuals, best_seen->max_residual,
                                WitnessMethod::lattice, search_bound};
  }
  return res;
}

}  // namespace

SolveResult solve_kronecker_approx(const UnimodularTarget& target, const SolveOptions& opt) {
  validate_target(target);
  if (opt.eps <= 0) throw std::invalid_argument("solve: eps must be positive");
  if (opt.t_min <= 0) throw std::invalid_argument("solve: t_min must be positive");
  if (opt.method == WitnessMethod::grid) return solve_grid(target, opt);
  return solve_lattice(target, opt);
}

SolveResult rigidity_witness(const AtomicMeasure& sigma, const SolveOptions& opt) {
  if (sigma.empty()) throw std::invalid_argument("rigidity_witness: empty measure");
  UnimodularTarget target;
  for (const auto& a : sigma.atoms()) {
    target.points.push_back(a.position.to_bigfloat(opt.precision_bits));
    target.phases.push_back(Rational(0));
  }
  return solve_kronecker_approx(target, opt);
}

KroneckerSetSpec build_kronecker_points(const std::vector<Rational>& targets, const Rational& delta,
                                        const GroupSlice& slice, Tier tier,
                                        const BuildOptions& opt) {
  if (targets.empty()) throw std::invalid_argument("build_kronecker_points: no targets");
  if (!(delta > Rational(0))) throw std::invalid_argument("build_kronecker_points: delta <= 0");

  IndependenceVerdict slice_verdict = check_group_independence(slice, opt.bounds);
  if (slice_verdict.is_dependent()) {
    throw std::invalid_argument(
        "build_kronecker_points: slice is Q-dependent; the orbit of any point set inherits the "
        "relation");
  }

  Rational lo = opt.lower ? *opt.lower : *std::min_element(targets.begin(), targets.end()) - delta;
  Rational hi = opt.upper ? *opt.upper : *std::max_element(targets.begin(), targets.end()) + delta;
  for (const auto& y : targets) {
    if (y < lo || y > hi) {
      throw std::invalid_argument("build_kronecker_points: target outside [a,b]");
    }
  }

  KroneckerSetSpec spec;
  spec.slice = slice;
  spec.bounds = opt.bounds;

  if (tier == Tier::symbolic) {
    std::set<std::string> used;
    for (const auto& g : slice.generators) {
      if (g.is_symbolic()) {
        auto syms = g.sym().symbols();
        used.insert(syms.begin(), syms.end());
      }
    }
    Rational half = delta / Rational(2);
    int counter = 1;
    for (const auto& y : targets) {
      std::string name;
      do {
        name = opt.fresh_prefix + std::to_string(counter++);
      } while (used.count(name));
      used.insert(name);
      SymbolicReal x = SymbolicReal(y) + SymbolicReal::symbol(name).scaled(half);
      spec.points.push_back(RealValue(x));
    }
    spec.certificate = KroneckerSetSpec::Certificate::symbolic_fresh_transcendental;
    spec.rounds_used = 1;
  } else {
    CounterRng rng(mix_key(opt.seed, 0x6b726f6eULL));
    bool accepted = false;
    std::string last_note;
    for (int round = 0; round < opt.max_rounds && !accepted; ++round) {
      spec.points.clear();
      for (const auto& y : targets) {
        Rational x;
        do {
          Rational u = Rational::from_double(rng.next_uniform());  // dyadic in [0,1)
          x = y - delta + u * delta * Rational(2);
        } while (x < lo || x > hi);
        spec.points.push_back(RealValue(BigFloat::from_rational(x, opt.bounds.precision_bits)));
      }
      std::vector<RealValue> realized;
      for (const auto& e : slice.elements) {
        for (const auto& p : spec.points) realized.push_back(e.value * p);
      }
      IndependenceVerdict v = check_q_independence(realized, opt.bounds);
      spec.rounds_used = round + 1;
      if (v.status == IndependenceStatus::none_found_within_bounds) {
        accepted = true;
      } else if (v.relation) {
        std::ostringstream os;
        os << "relation (";
        for (size_t i = 0; i < v.relation->coefficients.size(); ++i) {
          os << (i ? "," : "") << v.relation->coefficients[i].get_str();
        }
        os << ")";
        last_note = os.str();
      }
    }
    if (!accepted) {
      throw std::runtime_error("build_kronecker_points: retry budget exhausted after " +
                               std::to_string(opt.max_rounds) + " rounds; last " + last_note);
    }
    spec.certificate = KroneckerSetSpec::Certificate::numeric_no_relation;
  }

  for (const auto& e : slice.elements) {
    for (const auto& p : spec.points) spec.realized_set.push_back(e.value * p);
  }
  return spec;
}

std::vector<RealValue> korner_points(const RealValue& h, const std::vector<Rational>& targets,
                                     const Rational& delta) {
  if (!(delta > Rational(0))) throw std::invalid_argument("korner_points: delta <= 0");
  for (const auto& y : targets) {
    if (y.is_zero()) throw std::invalid_argument("korner_points: zero target");
  }
  std::vector<RealValue> out;
  if (h.is_symbolic()) {
    const SymbolicReal& hs = h.sym();
    if (!hs.is_invertible_term() || hs.is_rational()) {
      throw std::invalid_argument("korner_points: symbolic h must be a single transcendental term");
    }
    // the window |x_i - y_i| < delta is not evaluable on symbols; q_i = y_i
    for (size_t i = 0; i < targets.size(); ++i) {
      SymbolicReal x = hs.pow(2 * static_cast<int>(i + 1)).scaled(targets[i]);
      out.push_back(RealValue(x));
    }
    return out;
  }

  const BigFloat& hv = h.num();
  if (hv.sign() <= 0) throw std::invalid_argument("korner_points: h must be positive");
  const int prec = hv.precision_bits();
  for (size_t i = 0; i < targets.size(); ++i) {
    BigFloat hp = hv.pow_si(2 * static_cast<long>(i + 1));
    // smallest k with 2^{-k} <= delta / h^{2i}
    BigFloat ratio = hp / BigFloat::from_rational(delta, prec);
    mpfr_t lg;
    mpfr_init2(lg, 64);
    mpfr_log2(lg, ratio.raw(), MPFR_RNDU);
    long k = static_cast<long>(mpfr_get_si(lg, MPFR_RNDU));
    mpfr_clear(lg);
    if (k < 0) k = 0;
    // dyadic rounding of y / h^{2i} at k fractional bits
    BigFloat q_scaled = BigFloat::from_rational(targets[i], prec) / hp;
    mpfr_mul_2si(q_scaled.raw_mutable(), q_scaled.raw(), k, MPFR_RNDN);
    mpz_class num = q_scaled.round_to_integer();
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k));
    Rational q(num, den);
    BigFloat x = hp * BigFloat::from_rational(q, prec);
    out.push_back(RealValue(x));
  }
  return out;
}

KroneckerVerifyReport verify_kronecker_property(const AtomicMeasure& sigma, int trials,
                                                const SolveOptions& opt, uint64_t seed) {
  if (sigma.empty()) throw std::invalid_argument("verify_kronecker_property: empty measure");
  UnimodularTarget base;
  for (const auto& a : sigma.atoms()) {
    base.points.push_back(a.position.to_bigfloat(opt.precision_bits));
  }

  KroneckerVerifyReport report;
  for (int trial = 0; trial < trials; ++trial) {
    CounterRng rng(mix_key(seed, 0x7472ULL, static_cast<uint64_t>(trial)));
    UnimodularTarget t = base;
    t.phases.clear();
    for (size_t j = 0; j < base.points.size(); ++j) {
      t.phases.push_back(Rational(static_cast<long>(rng.next_u64() >> 32), 1L << 32));
    }
    SolveResult r = solve_kronecker_approx(t, opt);
    KroneckerVerifyReport::Trial row;
    row.phases = t.phases;
    row.success = r.found;
    row.residual = r.witness ? r.witness->max_residual : 1e300;
    row.note = r.note;
    if (r.found) {
      ++report.successes;
      report.max_residual_among_successes =
          std::max(report.max_residual_among_successes, r.witness->max_residual);
    }
    report.trials.push_back(std::move(row));
  }
  report.success_fraction = trials > 0 ? static_cast<double>(report.successes) / trials : 0;
  return report;
}

double WeakTarget::modulus_at(double x) const {
  double arg = 2.0 * M_PI * char_freq * x;
  std::complex<double> v = constant + char_coeff * std::complex<double>(std::cos(arg), std::sin(arg));
  return std::abs(v);
}

WeakConvergenceReport weak_convergence_check(const PiecewiseMeasure& mu,
                                             const std::vector<double>& scales,
                                             const std::vector<WeakTarget>& targets,
                                             const std::vector<double>& ts,
                                             const std::vector<double>& test_freqs, double tol) {
  if (scales.size() != targets.size()) {
    throw std::invalid_argument("weak_convergence_check: scales and targets differ in length");
  }
  if (ts.empty() || test_freqs.empty()) {
    throw std::invalid_argument("weak_convergence_check: empty times or test frequencies");
  }
  for (size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] > ts[i - 1])) {
      throw std::invalid_argument("weak_convergence_check: times must be increasing");
    }
  }
  WeakConvergenceReport report;
  report.tol = tol;

  for (size_t j = 0; j < scales.size(); ++j) {
    WeakConvergenceReport::Row row;
    row.scale = scales[j];
    const WeakTarget& g = targets[j];

    // <xi_{st} - g, xi_u> = mu^(st - u) - c0 mu^(-u) - c1 mu^(v - u)
    for (double t : ts) {
      double sup = 0;
      for (double u : test_freqs) {
        std::complex<double> pair = bochner(mu, scales[j] * t - u) -
                                    g.constant * bochner(mu, -u) -
                                    g.char_coeff * bochner(mu, g.char_freq - u);
        sup = std::max(sup, std::abs(pair));
      }
      row.defects.push_back(sup);
    }
    size_t tail = std::max<size_t>(1, row.defects.size() / 4);
    row.tail_below_tol = true;
    for (size_t i = row.defects.size() - tail; i < row.defects.size(); ++i) {
      if (row.defects[i] >= tol) row.tail_below_tol = false;
    }

    if (mu.is_atomic() && mu.has_atoms()) {
      double max_mod = 0;
      for (const auto& a : mu.atomic().atoms()) {
        max_mod = std::max(max_mod, g.modulus_at(a.position.to_double_approx()));
      }
      if (max_mod < 1.0 - 1e-12) {
        // |xi_{st}| = 1 at every atom, so the L^2 distance to g is bounded
        // below on the normalized measure
        row.cannot_converge = true;
        row.obstruction_lower_bound = 1.0 - max_mod;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace kronlab
