#include "oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

using LMat = std::vector<std::vector<long double>>;

static LMat lmul(const LMat& x, const LMat& y) {
  const std::size_t n = x.size();
  LMat r(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) r[i][j] += x[i][k] * y[k][j];
  return r;
}

gph::Matrix series_expm(const gph::Matrix& a, double t) {
  const std::size_t n = a.rows();
  long double norm = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < n; ++j) row += std::fabs(static_cast<long double>(a(i, j)) * t);
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.125L) {
    norm /= 2.0L;
    ++squarings;
  }
  const long double scale = std::ldexp(static_cast<long double>(t), -squarings);
  LMat x(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i][j] = a(i, j) * scale;
  LMat sum(n, std::vector<long double>(n, 0.0L)), term(n, std::vector<long double>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) sum[i][i] = term[i][i] = 1.0L;
  for (int k = 1; k < 40; ++k) {
    term = lmul(term, x);
    for (auto& row : term)
      for (auto& v : row) v /= k;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
  }
  for (int s = 0; s < squarings; ++s) sum = lmul(sum, sum);
  gph::Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = static_cast<double>(sum[i][j]);
  return r;
}

gph::Matrix gauss_inverse(const gph::Matrix& a) {
  const std::size_t n = a.rows();
  LMat w(n, std::vector<long double>(2 * n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a(i, j);
    w[i][n + i] = 1.0L;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(w[r][c]) > std::fabs(w[piv][c])) piv = r;
    if (w[piv][c] == 0.0L) throw std::runtime_error("singular");
    std::swap(w[c], w[piv]);
    const long double d = w[c][c];
    for (auto& v : w[c]) v /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = w[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) w[r][j] -= f * w[c][j];
    }
  }
  gph::Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = static_cast<double>(w[i][n + j]);
  return r;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  static const double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                              0.9602898564975363};
  static const double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                              0.1012285362903763};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h, half = 0.5 * h;
    for (int q = 0; q < 4; ++q)
      total += half * w[q] * (f(mid - half * x[q]) + f(mid + half * x[q]));
  }
  return total;
}

RandomModel random_model(std::mt19937_64& rng, std::size_t m, std::size_t p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomModel r{gph::Matrix(m, m), gph::Matrix(m, p), gph::Vector(m), gph::Vector(m),
                gph::Vector(m)};
  for (std::size_t i = 0; i < m; ++i) {
    double out = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i && u(rng) < 0.7) {
        r.T(i, j) = 2.0 * u(rng);
        out += r.T(i, j);
      }
    for (std::size_t j = 0; j < p; ++j) {
      r.D(i, j) = 0.05 + u(rng);
      out += r.D(i, j);
    }
    r.T(i, i) = -out;
    r.psi[i] = 0.1 + 2.9 * u(rng);
    r.s0[i] = u(rng);
    r.pi[i] = 0.05 + u(rng);
  }
  double total = 0.0;
  for (double v : r.pi) total += v;
  for (double& v : r.pi) v /= total;
  return r;
}

double erlang_pdf(double t, int k, double rate) {
  return std::pow(rate, k) * std::pow(t, k - 1) * std::exp(-rate * t) / std::tgamma(k);
}

}  // namespace oracle
