#pragma once

// Small dense linear algebra for the observer and estimator. Sizes are tiny
// (n <= 8 states, p <= 16 parameters) so everything is heap-backed row-major
// storage with straightforward loops.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace clobs {

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim, double fill = 0.0) : data_(dim, fill) {}
  Vec(std::initializer_list<double> values) : data_(values) {}
  explicit Vec(std::vector<double> values) : data_(std::move(values)) {}

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  Vec& operator+=(const Vec& other);
  Vec& operator-=(const Vec& other);
  Vec& operator*=(double s);

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  std::vector<double> data_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator-(Vec a);
Vec operator*(double s, Vec a);
Vec operator*(Vec a, double s);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
bool all_finite(const Vec& a);

/// Concatenates two vectors, e.g. x = (p, q).
Vec concat(const Vec& a, const Vec& b);
/// Elements [offset, offset + count).
Vec segment(const Vec& a, std::size_t offset, std::size_t count);

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat identity(std::size_t n);
  static Mat diagonal(const Vec& d);
  /// Column matrix holding v.
  static Mat column(const Vec& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> values() const { return data_; }

  Vec col(std::size_t c) const;
  Vec row(std::size_t r) const;
  Mat transpose() const;

  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);
  Mat& operator*=(double s);

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(Mat a, double s);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& v);

/// a * b^T
Mat outer(const Vec& a, const Vec& b);
/// a * a^T without forming the transpose.
Mat gram_of(const Mat& a);

double frobenius_norm(const Mat& a);
/// Largest singular value.
double spectral_norm(const Mat& a);
bool all_finite(const Mat& a);
/// (a + a^T) / 2
Mat symmetrized(const Mat& a);

/// Eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
/// Throws DimensionError for non-square or visibly asymmetric input.
Vec symmetric_eigenvalues(const Mat& a);

/// Smallest singular value of a symmetric PSD matrix, i.e. its smallest
/// eigenvalue clamped at zero. Throws std::domain_error if an eigenvalue is
/// negative beyond the 1e-9 * ||g|| slack.
double min_singular_value(const Mat& g);

/// Solves a x = b for symmetric positive definite a via Cholesky.
Mat solve_spd(const Mat& a, const Mat& b);
Vec solve_spd(const Mat& a, const Vec& b);

}  // namespace clobs
