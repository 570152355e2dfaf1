#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace gifs {

// Ambient dimension cap; fixed inline storage keeps values trivially
// copyable and comparisons bit-exact.
inline constexpr int kMaxDim = 8;

class Error : public std::runtime_error {
 public:
  enum class Kind { input, domain, numeric };
  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Vector in R^D, 1 <= D <= kMaxDim. Unused slots stay zero so that
// operator== compares whole values.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim, double fill = 0.0);
  static Vec of(std::initializer_list<double> xs);

  int dim() const { return dim_; }
  double& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

  double norm() const;
  bool finite() const;
  bool operator==(const Vec&) const = default;

 private:
  int dim_ = 0;
  std::array<double, kMaxDim> v_{};
};

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double c, const Vec& a);

// Square D x D matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim);  // zero matrix
  static Matrix identity(int dim);
  static Matrix from_rows(int dim, std::initializer_list<double> entries);

  int dim() const { return dim_; }
  double& at(int r, int c) { return m_[idx(r, c)]; }
  double at(int r, int c) const { return m_[idx(r, c)]; }

  Matrix transpose() const;
  bool finite() const;
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_) +
           static_cast<std::size_t>(c);
  }
  int dim_ = 0;
  std::array<double, kMaxDim * kMaxDim> m_{};
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator*(double c, const Matrix& a);
Vec operator*(const Matrix& a, const Vec& x);

// Singular values in non-increasing order: sigma[0] is the operator norm,
// sigma[dim-1] the infimum norm, and their product equals |det|.
struct SingularSpectrum {
  int dim = 0;
  std::array<double, kMaxDim> sigma{};
  double max() const { return sigma[0]; }
  double min() const { return sigma[static_cast<std::size_t>(dim - 1)]; }
};

// Symmetric Jacobi eigendecomposition of M^T M; iterates until the
// off-diagonal Frobenius mass falls below 1e-14 relative to the matrix scale.
// Negative round-off eigenvalues are clamped to zero before the square root.
SingularSpectrum singular_values(const Matrix& m);

// Largest singular value: sup_{|x|=1} |Mx|.
double op_norm(const Matrix& m);

// Smallest singular value: inf_{|x|=1} |Mx|. Equals 1/op_norm(M^-1) for
// invertible M.
double inf_norm(const Matrix& m);

double det(const Matrix& m);
Matrix inverse(const Matrix& m);  // throws Error(domain) when singular

// Minimal K >= 1 with K^-1 * op_norm^D <= |det| <= K * inf_norm^D,
// i.e. max(sigma_1^D / |det|, |det| / sigma_D^D).
// Throws Error(domain, "non-invertible derivative") when det == 0.
double min_quasiregular_K(const Matrix& m);

// True iff sigma_1 - sigma_D <= tol * sigma_1.
bool is_conformal(const Matrix& m, double tol = 1e-9);

}  // namespace gifs
