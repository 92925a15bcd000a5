#include "gph/numkernel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gph/error.hpp"

namespace gph {

// ---- complex helpers -------------------------------------------------------

CMatrix::CMatrix(const Matrix& m) : n(m.rows()), a(m.rows() * m.cols()) {
  if (!m.square()) throw DimensionError("complex matrix: not square");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = m.entries()[k];
}

CMatrix::CMatrix(std::size_t n_, Complex fill) : n(n_), a(n_ * n_, fill) {}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix operator*(const CMatrix& x, const CMatrix& y) {
  if (x.n != y.n) throw DimensionError("complex matrix *: size mismatch");
  CMatrix z(x.n, 0.0);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t l = 0; l < x.n; ++l) {
      const Complex xil = x(i, l);
      if (xil == Complex(0.0)) continue;
      for (std::size_t j = 0; j < x.n; ++j) z(i, j) += xil * y(l, j);
    }
  return z;
}

CMatrix operator+(CMatrix x, const CMatrix& y) {
  if (x.n != y.n) throw DimensionError("complex matrix +: size mismatch");
  for (std::size_t k = 0; k < x.a.size(); ++k) x.a[k] += y.a[k];
  return x;
}

CMatrix operator*(Complex s, CMatrix x) {
  for (auto& v : x.a) v *= s;
  return x;
}

Matrix real_part(const CMatrix& x, double tol) {
  double scale = 1.0;
  for (const auto& v : x.a) scale = std::max(scale, std::abs(v));
  Matrix r(x.n, x.n);
  for (std::size_t k = 0; k < x.a.size(); ++k) {
    if (std::abs(x.a[k].imag()) > tol * scale)
      throw UnsupportedSpectrumError("imaginary residue " + std::to_string(x.a[k].imag()) +
                                     " in a quantity expected to be real");
    r.data()[k] = x.a[k].real();
  }
  return r;
}

// ---- expm ------------------------------------------------------------------

namespace {

void check_square_finite(const Matrix& a, const char* op) {
  if (!a.square()) throw DimensionError(std::string(op) + ": matrix is not square");
  if (!a.all_finite()) throw DomainError(std::string(op) + ": non-finite entry");
}

Matrix add_scaled(std::initializer_list<std::pair<double, const Matrix*>> terms, std::size_t n,
                  double identity_coeff) {
  Matrix r(n, n);
  for (const auto& [c, m] : terms)
    for (std::size_t k = 0; k < n * n; ++k) r.data()[k] += c * m->data()[k];
  for (std::size_t i = 0; i < n; ++i) r(i, i) += identity_coeff;
  return r;
}

Matrix pade_low(const Matrix& a, int degree) {
  static const std::array<double, 4> b3{120., 60., 12., 1.};
  static const std::array<double, 6> b5{30240., 15120., 3360., 420., 30., 1.};
  static const std::array<double, 8> b7{17297280., 8648640., 1995840., 277200.,
                                        25200.,    1512.,    56.,      1.};
  static const std::array<double, 10> b9{17643225600., 8821612800., 2075673600., 302702400.,
                                         30270240.,    2162160.,    110880.,     3960.,
                                         90.,          1.};
  const double* b = degree == 3 ? b3.data() : degree == 5 ? b5.data() : degree == 7 ? b7.data()
                                                                                    : b9.data();
  const std::size_t n = a.rows();
  std::vector<Matrix> pw{Matrix::identity(n), a * a};  // I, A^2, A^4, ...
  for (int k = 2; 2 * k <= degree; ++k) pw.push_back(pw.back() * pw[1]);
  Matrix u_inner(n, n), v(n, n);
  for (int k = 0; 2 * k + 1 <= degree; ++k) u_inner += pw[k] * b[2 * k + 1];
  for (int k = 0; 2 * k <= degree; ++k) v += pw[k] * b[2 * k];
  Matrix u = a * u_inner;
  return solve(v - u, v + u);
}

Matrix pade13(const Matrix& a) {
  static const std::array<double, 14> b{64764752532480000., 32382376266240000., 7771770303897600.,
                                        1187353796428800.,  129060195264000.,   10559470521600.,
                                        670442572800.,      33522128640.,       1323241920.,
                                        40840800.,          960960.,            16380.,
                                        182.,               1.};
  const std::size_t n = a.rows();
  const Matrix a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
  Matrix w1 = add_scaled({{b[13], &a6}, {b[11], &a4}, {b[9], &a2}}, n, 0.0);
  Matrix w2 = add_scaled({{b[7], &a6}, {b[5], &a4}, {b[3], &a2}}, n, b[1]);
  Matrix u = a * (a6 * w1 + w2);
  Matrix z1 = add_scaled({{b[12], &a6}, {b[10], &a4}, {b[8], &a2}}, n, 0.0);
  Matrix v = a6 * z1 + add_scaled({{b[6], &a6}, {b[4], &a4}, {b[2], &a2}}, n, b[0]);
  return solve(v - u, v + u);
}

}  // namespace

Matrix expm(const Matrix& a_in, double t) {
  check_square_finite(a_in, "expm");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("expm: t must be finite and >= 0");
  const std::size_t n = a_in.rows();
  if (t == 0.0 || n == 0) return Matrix::identity(n);
  Matrix a = a_in * t;
  const double norm = norm1(a);
  if (norm == 0.0) return Matrix::identity(n);

  static const std::array<std::pair<int, double>, 4> low{
      {{3, 1.495585217958292e-2}, {5, 2.539398330063230e-1}, {7, 9.504178996162932e-1},
       {9, 2.097847961257068e0}}};
  for (const auto& [deg, theta] : low)
    if (norm <= theta) return pade_low(a, deg);

  constexpr double theta13 = 5.371920351148152;
  int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
  if (s > 0) a *= std::ldexp(1.0, -s);
  Matrix r = pade13(a);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

// ---- LU --------------------------------------------------------------------

Lu::Lu(const Matrix& a) : n_(a.rows()), lu_(a), perm_(a.rows()) {
  check_square_finite(a, "solve");
  std::iota(perm_.begin(), perm_.end(), 0);
  const double scale = std::max(norm_inf(a), std::numeric_limits<double>::min());
  const double tiny = scale * static_cast<double>(std::max<std::size_t>(n_, 1)) *
                      std::numeric_limits<double>::epsilon() * 1e-2;
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n_; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(piv, k))) piv = i;
    if (std::abs(lu_(piv, k)) <= tiny)
      throw SingularMatrixError("matrix is singular to working precision (pivot " +
                                std::to_string(k) + ")");
    if (piv != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
    }
    const double inv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const double f = lu_(i, k) *= inv;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

Vector Lu::solve(const Vector& b) const {
  if (b.size() != n_) throw DimensionError("solve: right-hand side size mismatch");
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n_; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n_; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

Vector Lu::solve_left(const Vector& b) const {
  // A = P^T L U, so x^T A = b^T  <=>  U^T L^T (P x) = b.
  if (b.size() != n_) throw DimensionError("solve: right-hand side size mismatch");
  Vector y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * y[j];
    y[i] = s / lu_(i, i);
  }
  for (std::size_t i = n_; i-- > 0;) {
    double s = y[i];
    for (std::size_t j = i + 1; j < n_; ++j) s -= lu_(j, i) * y[j];
    y[i] = s;
  }
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
  return x;
}

Matrix Lu::solve(const Matrix& b) const {
  if (b.rows() != n_) throw DimensionError("solve: right-hand side rows mismatch");
  Matrix x(n_, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    Vector c = solve(b.col(j));
    for (std::size_t i = 0; i < n_; ++i) x(i, j) = c[i];
  }
  return x;
}

Matrix Lu::inverse() const { return solve(Matrix::identity(n_)); }

Matrix solve(const Matrix& a, const Matrix& b) { return Lu(a).solve(b); }
Vector solve(const Matrix& a, const Vector& b) { return Lu(a).solve(b); }
Matrix inverse(const Matrix& a) { return Lu(a).inverse(); }

// ---- eigen -----------------------------------------------------------------

bool eigenvalues_distinct(const std::vector<Complex>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const double scale = std::max({1.0, std::abs(values[i]), std::abs(values[j])});
      if (std::abs(values[i] - values[j]) <= 1e-8 * scale) return false;
    }
  return true;
}

EigenSystem eigen(const Matrix& a) {
  check_square_finite(a, "eigen");
  const std::size_t n = a.rows();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
  if (es.info() != Eigen::Success) throw Error("eigen: QR iteration did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto vals = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (vals(x).real() != vals(y).real()) return vals(x).real() > vals(y).real();
    return vals(x).imag() > vals(y).imag();
  });

  EigenSystem out;
  const auto vecs = es.eigenvectors();
  for (std::size_t k : order) {
    out.values.push_back(vals(k));
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = vecs(i, k);
    out.vectors.push_back(std::move(v));
  }
  out.distinct = eigenvalues_distinct(out.values);
  return out;
}

CMatrix lagrange_coefficient_complex(const Matrix& a, const EigenSystem& eig, std::size_t p) {
  if (!a.square() || eig.size() != a.rows()) throw DimensionError("lagrange: size mismatch");
  if (p >= eig.size()) throw DimensionError("lagrange: eigenvalue index out of range");
  if (!eig.distinct)
    throw UnsupportedSpectrumError("lagrange: repeated eigenvalues are not supported");
  const std::size_t n = a.rows();
  const CMatrix ac(a);
  CMatrix l = CMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == p) continue;
    CMatrix f = ac;
    for (std::size_t i = 0; i < n; ++i) f(i, i) -= eig.values[j];
    l = (1.0 / (eig.values[p] - eig.values[j])) * (l * f);
  }
  return l;
}

Matrix lagrange_coefficient(const Matrix& a, const EigenSystem& eig, std::size_t p) {
  if (p < eig.size() &&
      std::abs(eig.values[p].imag()) > 1e-8 * std::max(1.0, std::abs(eig.values[p])))
    throw UnsupportedSpectrumError("lagrange: eigenvalue is complex; use the complex variant");
  return real_part(lagrange_coefficient_complex(a, eig, p));
}

std::optional<Asymptote> leading_term(const Matrix& a, const EigenSystem& eig, const Vector& u,
                                      const Vector& v) {
  const std::size_t n = eig.size();
  if (u.size() != n || v.size() != n) throw DimensionError("leading_term: size mismatch");
  std::vector<Complex> w(n);
  std::vector<CMatrix> coeffs;
  double scale = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    coeffs.push_back(lagrange_coefficient_complex(a, eig, p));
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) s += u[i] * coeffs[p](i, j) * v[j];
    }
    w[p] = s;
    scale = std::max(scale, std::abs(s));
  }
  if (scale == 0.0) return std::nullopt;
  for (std::size_t p = 0; p < n; ++p) {
    if (std::abs(w[p]) <= 1e-9 * scale) continue;
    const Complex phi = eig.values[p];
    if (std::abs(phi.imag()) > 1e-8 * std::max(1.0, std::abs(phi)))
      throw UnsupportedSpectrumError("leading eigenvalue is complex; the limit oscillates");
    return Asymptote{p, phi.real(), real_part(coeffs[p])};
  }
  return std::nullopt;
}

// ---- quadrature ------------------------------------------------------------

namespace {

struct SimpsonRun {
  const RealFunction& f;
  const QuadratureOptions& opt;
  long evals = 0;
  bool failed = false;
  double err = 0.0;

  double eval(double x) {
    ++evals;
    const double y = f(x);
    if (!std::isfinite(y))
      throw DomainError("integrate: integrand not finite at x=" + std::to_string(x));
    return y;
  }

  double step(double a, double b, double fa, double fm, double fb, double whole, double tol,
              int depth, int min_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(lm), frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (min_depth <= 0 && std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0 || evals >= opt.max_evaluations) {
      failed = true;
      err += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, min_depth - 1) +
           step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, min_depth - 1);
  }
};

}  // namespace

double integrate(const RealFunction& f, double a, double b, const QuadratureOptions& opt) {
  if (!(a <= b)) throw DomainError("integrate: requires a <= b");
  if (!(opt.tol > 0.0)) throw DomainError("integrate: tolerance must be positive");
  if (a == b) return 0.0;
  SimpsonRun run{f, opt};
  const double fa = run.eval(a), fb = run.eval(b), fm = run.eval(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double r = run.step(a, b, fa, fm, fb, whole, opt.tol, opt.max_depth, 5);
  if (run.failed)
    throw AccuracyError("integrate: tolerance not reached on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]",
                        r, run.err);
  return r;
}

double integrate(const RealFunction& f, double a, double b, double tol) {
  QuadratureOptions opt;
  opt.tol = tol;
  return integrate(f, a, b, opt);
}

double integrate_to_infinity(const RealFunction& f, double a, double tol, double first_panel) {
  if (!(first_panel > 0.0)) throw DomainError("integrate_to_infinity: panel width must be > 0");
  double total = 0.0, lo = a, width = first_panel, panel_tol = 0.5 * tol;
  for (int k = 0; k < 200; ++k) {
    const double part = integrate(f, lo, lo + width, panel_tol);
    total += part;
    if (k >= 3 && std::abs(part) < 0.25 * tol) return total;
    lo += width;
    width *= 2.0;
    panel_tol = std::max(0.5 * panel_tol, 1e-3 * tol);
  }
  throw AccuracyError("integrate_to_infinity: tail did not decay", total, 0.0);
}

}  // namespace gph
