#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace gph {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Small (m up to a few hundred) by design.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);
  static Matrix column(const Vector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& entries() const { return data_; }
  const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;
  Vector diag() const;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double a);

  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
// A x
Vector operator*(const Matrix& a, const Vector& x);
// x^T A, returned as a plain vector
Vector row_times(const Vector& x, const Matrix& a);

// diag(d) * A and A * diag(d)
Matrix scale_rows(const Vector& d, Matrix a);
Matrix scale_cols(Matrix a, const Vector& d);

double dot(const Vector& x, const Vector& y);
double sum(const Vector& x);
Vector ones(std::size_t n);
Vector unit(std::size_t n, std::size_t i);
Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector a);
Vector hadamard(Vector a, const Vector& b);

double norm1(const Matrix& a);     // max column abs sum
double norm_inf(const Matrix& a);  // max row abs sum
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(const Vector& v);

}  // namespace gph
