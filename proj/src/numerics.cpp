#include "clobs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace clobs {

namespace {

constexpr double kSymmetryTol = 1e-9;
constexpr double kPsdSlack = 1e-9;
constexpr double kJacobiTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kCholeskyPivotTol = 1e-12;

std::string shape(const Mat& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_same_size(const Vec& a, const Vec& b, const char* op) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(op) + ": vector sizes " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()) + " differ");
  }
}

void require_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shapes " + shape(a) + " and " + shape(b) +
                         " differ");
  }
}

void require_symmetric(const Mat& a, const char* op) {
  if (!a.square()) {
    throw DimensionError(std::string(op) + ": matrix " + shape(a) + " is not square");
  }
  const double tol = kSymmetryTol * frobenius_norm(a);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > tol) {
        throw DimensionError(std::string(op) + ": matrix is not symmetric");
      }
    }
  }
}

double off_diagonal_norm(const Mat& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

// Lower Cholesky factor of a symmetric positive definite matrix.
Mat cholesky(const Mat& a) {
  require_symmetric(a, "solve_spd");
  const std::size_t n = a.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
  const double pivot_floor = kCholeskyPivotTol * max_diag;

  Mat l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > pivot_floor)) {
      throw SingularMatrixError("solve_spd: matrix is singular or not positive definite");
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

}  // namespace

// ---------------------------------------------------------------------------
// Vec

Vec& Vec::operator+=(const Vec& other) {
  require_same_size(*this, other, "Vec +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& other) {
  require_same_size(*this, other, "Vec -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator-(Vec a) { return a *= -1.0; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator*(Vec a, double s) { return a *= s; }

double dot(const Vec& a, const Vec& b) {
  require_same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

bool all_finite(const Vec& a) {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](double v) { return std::isfinite(v); });
}

Vec concat(const Vec& a, const Vec& b) {
  Vec out(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[a.size() + i] = b[i];
  return out;
}

Vec segment(const Vec& a, std::size_t offset, std::size_t count) {
  if (offset + count > a.size()) {
    throw DimensionError("segment: range exceeds vector size " + std::to_string(a.size()));
  }
  Vec out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = a[offset + i];
  return out;
}

// ---------------------------------------------------------------------------
// Mat

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("Mat: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::column(const Vec& v) {
  Mat m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Vec Mat::col(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Vec Mat::row(std::size_t r) const {
  Vec out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
  return out;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Mat& Mat::operator+=(const Mat& other) {
  require_same_shape(*this, other, "Mat +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& other) {
  require_same_shape(*this, other, "Mat -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }
Mat operator*(Mat a, double s) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("Mat *: shapes " + shape(a) + " and " + shape(b) + " do not chain");
  }
  Mat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Vec operator*(const Mat& a, const Vec& v) {
  if (a.cols() != v.size()) {
    throw DimensionError("Mat * Vec: " + shape(a) + " times vector of size " +
                         std::to_string(v.size()));
  }
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Mat outer(const Vec& a, const Vec& b) {
  Mat out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = a[i] * b[j];
  }
  return out;
}

Mat gram_of(const Mat& a) {
  Mat out(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.rows(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * a(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

double frobenius_norm(const Mat& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return std::sqrt(s);
}

double spectral_norm(const Mat& a) {
  const Mat ata = a.rows() >= a.cols() ? gram_of(a.transpose()) : gram_of(a);
  if (ata.rows() == 0) return 0.0;
  const Vec eig = symmetric_eigenvalues(ata);
  return std::sqrt(std::max(0.0, eig[eig.size() - 1]));
}

bool all_finite(const Mat& a) {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](double v) { return std::isfinite(v); });
}

Mat symmetrized(const Mat& a) {
  if (!a.square()) throw DimensionError("symmetrized: matrix " + shape(a) + " is not square");
  Mat out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = 0.5 * (a(i, j) + a(j, i));
  }
  return out;
}

Vec symmetric_eigenvalues(const Mat& input) {
  require_symmetric(input, "symmetric_eigenvalues");
  const std::size_t n = input.rows();
  Mat a = symmetrized(input);
  const double scale = frobenius_norm(a);
  Vec eig(n);
  if (scale == 0.0) return eig;

  // Cyclic Jacobi: annihilate each off-diagonal pair in turn until the
  // off-diagonal mass is negligible relative to the whole matrix.
  const double stop = kJacobiTol * scale;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && off_diagonal_norm(a) >= stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.values().begin(), eig.values().end());
  return eig;
}

double min_singular_value(const Mat& g) {
  const Vec eig = symmetric_eigenvalues(g);
  if (eig.empty()) return 0.0;
  const double lo = eig[0];
  if (lo < -kPsdSlack * frobenius_norm(g)) {
    throw std::domain_error("min_singular_value: matrix is not positive semidefinite");
  }
  return std::max(0.0, lo);
}

Mat solve_spd(const Mat& a, const Mat& b) {
  if (b.rows() != a.rows()) {
    throw DimensionError("solve_spd: rhs " + shape(b) + " does not match " + shape(a));
  }
  const Mat l = cholesky(a);
  const std::size_t n = a.rows();
  Mat x = b;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    // Forward substitution L y = b, then back substitution L^T x = y.
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
      x(i, c) = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = x(i, c);
      for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x(k, c);
      x(i, c) = s / l(i, i);
    }
  }
  return x;
}

Vec solve_spd(const Mat& a, const Vec& b) { return solve_spd(a, Mat::column(b)).col(0); }

}  // namespace clobs
