#include "kronlab/lll.hpp"

#include <stdexcept>

namespace kronlab {

namespace {

mpz_class dot(const IntVector& a, const IntVector& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

mpz_class round_to_nearest(const mpq_class& q) {
  // Nearest integer, half rounded toward +infinity; den > 0 in canonical form.
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), mpz_class(2 * num + den).get_mpz_t(), mpz_class(2 * den).get_mpz_t());
  return r;
}

struct Gso {
  // mu[i][j] for j < i, and B[i] = |b*_i|^2, both exact.
  std::vector<std::vector<mpq_class>> mu;
  std::vector<mpq_class> B;
};

Gso compute_gso(const IntMatrix& b) {
  size_t n = b.size();
  Gso g;
  g.mu.assign(n, std::vector<mpq_class>(n, 0));
  g.B.assign(n, 0);
  // c[i][j] = <b_i, b*_j> maintained implicitly via mu and B.
  std::vector<std::vector<mpq_class>> bstar_dot(n, std::vector<mpq_class>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    // <b_i, b*_j> = <b_i, b_j> - sum_{k<j} mu[j][k] <b_i, b*_k>
    for (size_t j = 0; j <= i; ++j) {
      mpq_class c(dot(b[i], b[j]));
      for (size_t k = 0; k < j; ++k) c -= g.mu[j][k] * bstar_dot[i][k];
      bstar_dot[i][j] = c;
      if (j < i) {
        if (g.B[j] == 0) throw std::invalid_argument("lll_reduce: linearly dependent input vectors");
        g.mu[i][j] = c / g.B[j];
      } else {
        g.B[i] = c;
      }
    }
    if (g.B[i] == 0) throw std::invalid_argument("lll_reduce: linearly dependent input vectors");
  }
  return g;
}

void row_sub(IntVector& a, const IntVector& b, const mpz_class& q) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= q * b[i];
}

}  // namespace

LllResult lll_reduce_with_transform(const IntMatrix& input, const Rational& delta) {
  if (input.empty()) return {{}, {}};
  size_t n = input.size(), dim = input[0].size();
  for (const auto& row : input) {
    if (row.size() != dim) throw std::invalid_argument("lll_reduce: ragged matrix");
  }
  if (!(delta > Rational(1, 4) && delta < Rational(1))) {
    throw std::invalid_argument("lll_reduce: delta must satisfy 1/4 < delta < 1");
  }
  mpq_class del = delta.raw();

  IntMatrix b = input;
  IntMatrix u(n, IntVector(n, 0));
  for (size_t i = 0; i < n; ++i) u[i][i] = 1;

  Gso g = compute_gso(b);

  auto reduce_pair = [&](size_t k, size_t l) {
    // size-reduce b_k against b_l
    mpq_class m = g.mu[k][l];
    if (2 * abs(m.get_num()) <= m.get_den()) return;  // |mu| <= 1/2
    mpz_class q = round_to_nearest(m);
    row_sub(b[k], b[l], q);
    row_sub(u[k], u[l], q);
    g.mu[k][l] -= q;
    for (size_t j = 0; j < l; ++j) g.mu[k][j] -= mpq_class(q) * g.mu[l][j];
  };

  size_t k = 1;
  while (k < n) {
    reduce_pair(k, k - 1);
    mpq_class lovasz = (del - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1];
    if (g.B[k] < lovasz) {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      // Cohen's exact swap update of the GSO data.
      mpq_class m = g.mu[k][k - 1];
      mpq_class Bnew = g.B[k] + m * m * g.B[k - 1];
      g.mu[k][k - 1] = m * g.B[k - 1] / Bnew;
      g.B[k] = g.B[k - 1] * g.B[k] / Bnew;
      g.B[k - 1] = Bnew;
      for (size_t j = 0; j + 1 < k; ++j) std::swap(g.mu[k][j], g.mu[k - 1][j]);
      for (size_t i = k + 1; i < n; ++i) {
        mpq_class t = g.mu[i][k];
        g.mu[i][k] = g.mu[i][k - 1] - m * t;
        g.mu[i][k - 1] = t + g.mu[k][k - 1] * g.mu[i][k];
      }
      k = (k > 1) ? k - 1 : 1;
    } else {
      for (size_t l = k - 1; l-- > 0;) reduce_pair(k, l);
      ++k;
    }
  }
  return {std::move(b), std::move(u)};
}

IntMatrix lll_reduce(const IntMatrix& basis, const Rational& delta) {
  return lll_reduce_with_transform(basis, delta).basis;
}

mpz_class gram_determinant(const IntMatrix& basis) {
  // Exact via fraction-free evaluation of the rational GSO: det = prod B_i.
  Gso g = compute_gso(basis);
  mpq_class p = 1;
  for (const auto& Bi : g.B) p *= Bi;
  p.canonicalize();
  if (p.get_den() != 1) throw std::logic_error("gram_determinant: non-integer product");
  return p.get_num();
}

}  // namespace kronlab
