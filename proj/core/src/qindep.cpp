#include "kronlab/qindep.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace kronlab {

std::string independence_status_name(IndependenceStatus s) {
  switch (s) {
    case IndependenceStatus::independent_exact: return "independent-exact";
    case IndependenceStatus::dependent: return "dependent";
    case IndependenceStatus::none_found_within_bounds: return "none-found-within-bounds";
  }
  return "?";
}

namespace {

// Integer left-kernel vector of the m coordinate vectors, or nullopt when
// they are linearly independent over Q. Exact Gaussian elimination.
std::optional<std::vector<mpz_class>> rational_kernel(const std::vector<SymbolicReal>& xs) {
  // Column space: constant 1 plus every monomial that appears.
  std::set<Monomial> monos;
  for (const auto& x : xs) {
    for (const auto& [m, c] : x.terms()) monos.insert(m);
  }
  std::vector<Monomial> cols(monos.begin(), monos.end());
  const size_t m = xs.size(), d = cols.size() + 1;

  // A[i] = coordinates of xs[i]; we solve sum_i k_i A[i] = 0 by eliminating
  // on the transpose.
  std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(d, 0));
  for (size_t i = 0; i < m; ++i) {
    a[i][0] = xs[i].rational_part().raw();
    for (size_t j = 0; j < cols.size(); ++j) {
      auto it = xs[i].terms().find(cols[j]);
      if (it != xs[i].terms().end()) a[i][j + 1] = it->second.raw();
    }
  }

  // Row-reduce the m x d matrix; a dependent row yields the kernel vector.
  // Track the elimination coefficients so the combination is recoverable.
  std::vector<std::vector<mpq_class>> comb(m, std::vector<mpq_class>(m, 0));
  for (size_t i = 0; i < m; ++i) comb[i][i] = 1;
  std::vector<long> pivot_col(m, -1);
  size_t rank = 0;
  for (size_t i = 0; i < m; ++i) {
    // eliminate against established pivots
    for (size_t r = 0; r < rank; ++r) {
      long pc = pivot_col[r];
      if (a[i][pc] == 0) continue;
      mpq_class f = a[i][pc];
      for (size_t j = 0; j < d; ++j) a[i][j] -= f * a[r][j];
      for (size_t j = 0; j < m; ++j) comb[i][j] -= f * comb[r][j];
    }
    long pc = -1;
    for (size_t j = 0; j < d; ++j) {
      if (a[i][j] != 0) { pc = static_cast<long>(j); break; }
    }
    if (pc < 0) {
      // xs[i] = -sum of previous rows => integer relation after clearing
      // denominators.
      std::vector<mpq_class> k(comb[i].begin(), comb[i].end());
      mpz_class lcm = 1;
      for (const auto& q : k) {
        mpz_class den = q.get_den();
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      }
      std::vector<mpz_class> out(m);
      mpz_class g = 0;
      for (size_t j = 0; j < m; ++j) {
        mpq_class scaled = k[j] * mpq_class(lcm);
        scaled.canonicalize();
        out[j] = scaled.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
      }
      if (g > 1) {
        for (auto& v : out) v /= g;
      }
      for (const auto& v : out) {
        if (v != 0) {
          if (v < 0) for (auto& w : out) w = -w;
          break;
        }
      }
      return out;
    }
    // normalize pivot row to 1 at the pivot
    mpq_class p = a[i][pc];
    for (size_t j = 0; j < d; ++j) a[i][j] /= p;
    for (size_t j = 0; j < m; ++j) comb[i][j] /= p;
    if (rank != i) {
      std::swap(a[rank], a[i]);
      std::swap(comb[rank], comb[i]);
    }
    pivot_col[rank] = pc;
    ++rank;
  }
  return std::nullopt;
}

}  // namespace

IndependenceVerdict check_q_independence(const std::vector<RealValue>& xs,
                                         const SearchBounds& bounds) {
  if (xs.empty()) throw std::invalid_argument("check_q_independence: empty input");
  Tier tier = xs.front().tier();
  for (const auto& x : xs) {
    if (x.tier() != tier) {
      throw std::invalid_argument("check_q_independence: mixed tiers; evaluate symbols first");
    }
    if (x.is_zero()) throw std::invalid_argument("check_q_independence: zero element");
  }
  for (size_t i = 0; i < xs.size(); ++i) {
    for (size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i] == xs[j]) throw std::invalid_argument("check_q_independence: duplicate elements");
    }
  }

  if (tier == Tier::symbolic) {
    std::vector<SymbolicReal> sy;
    sy.reserve(xs.size());
    for (const auto& x : xs) sy.push_back(x.sym());
    auto k = rational_kernel(sy);
    if (!k) return {IndependenceStatus::independent_exact, std::nullopt, bounds};
    IntegerRelation rel{*k, BigFloat(bounds.precision_bits)};  // exact zero residual
    return {IndependenceStatus::dependent, rel, bounds};
  }

  std::vector<BigFloat> nums;
  nums.reserve(xs.size());
  for (const auto& x : xs) nums.push_back(x.num());
  auto rel = find_integer_relation(nums, bounds.max_coeff, bounds.precision_bits);
  if (rel) return {IndependenceStatus::dependent, rel, bounds};
  return {IndependenceStatus::none_found_within_bounds, std::nullopt, bounds};
}

namespace {

void enumerate_words(int gens, int radius, std::vector<int>& word, int pos, int budget,
                     std::vector<std::vector<int>>& out) {
  if (pos == gens) {
    out.push_back(word);
    return;
  }
  for (int e = -budget; e <= budget; ++e) {
    word[pos] = e;
    enumerate_words(gens, radius, word, pos + 1, budget - std::abs(e), out);
  }
  word[pos] = 0;
}

}  // namespace

GroupSlice expand_group(const std::vector<RealValue>& generators, int radius) {
  if (radius < 0) throw std::invalid_argument("expand_group: negative radius");
  Tier tier = Tier::symbolic;
  bool first = true;
  for (const auto& g : generators) {
    if (g.is_zero()) throw std::invalid_argument("expand_group: zero generator");
    if (auto q = g.as_rational(); q && q->sign() <= 0) {
      throw std::invalid_argument("expand_group: nonpositive generator");
    }
    if (g.is_numeric() && g.num().sign() <= 0) {
      throw std::invalid_argument("expand_group: nonpositive generator");
    }
    if (first) {
      tier = g.tier();
      first = false;
    } else if (g.tier() != tier) {
      throw std::invalid_argument("expand_group: mixed-tier generators");
    }
  }

  std::vector<std::vector<int>> words;
  std::vector<int> w(generators.size(), 0);
  if (generators.empty()) {
    words.push_back({});
  } else {
    enumerate_words(static_cast<int>(generators.size()), radius, w, 0, radius, words);
  }
  // order by total length then lex
  std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    int la = 0, lb = 0;
    for (int x : a) la += std::abs(x);
    for (int x : b) lb += std::abs(x);
    if (la != lb) return la < lb;
    return a < b;
  });

  GroupSlice slice;
  slice.generators = generators;
  slice.radius = radius;
  slice.tier = tier;
  for (const auto& word : words) {
    RealValue v{SymbolicReal(Rational(1))};
    if (tier == Tier::numeric) {
      int prec = kDefaultPrecisionBits;
      for (const auto& g : generators) prec = std::max(prec, g.num().precision_bits());
      v = RealValue(BigFloat::from_rational(Rational(1), prec));
    }
    for (size_t i = 0; i < word.size(); ++i) {
      if (word[i] == 0) continue;
      v = v * generators[i].pow(word[i]);
    }
    bool duplicate = false;
    for (const auto& e : slice.elements) {
      if (e.value == v) {
        duplicate = true;
        break;
      }
      if (tier == Tier::numeric) {
        // near-collision at the dedup tolerance signals an algebraic
        // relation between generators; refuse to merge silently
        const BigFloat& a = e.value.num();
        const BigFloat& b = v.num();
        int p = std::min(a.precision_bits(), b.precision_bits());
        BigFloat diff = (a - b).abs();
        BigFloat scale = a.abs() > b.abs() ? a.abs() : b.abs();
        BigFloat tol = scale;
        mpfr_mul_2si(tol.raw_mutable(), tol.raw(), -p / 2, MPFR_RNDN);
        if (diff <= tol) {
          throw std::runtime_error("expand_group: near-collision between distinct words (values " +
                                   a.to_string() + " and " + b.to_string() +
                                   "); generators look algebraically related");
        }
      }
    }
    if (!duplicate) slice.elements.push_back({word, v});
  }
  return slice;
}

IndependenceVerdict check_group_independence(const GroupSlice& slice, const SearchBounds& bounds) {
  if (slice.elements.empty()) throw std::invalid_argument("check_group_independence: empty slice");
  std::vector<RealValue> vals;
  vals.reserve(slice.elements.size());
  for (const auto& e : slice.elements) vals.push_back(e.value);
  return check_q_independence(vals, bounds);
}

}  // namespace kronlab
