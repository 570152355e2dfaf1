#include "gifsdim/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gifs {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw Error(Error::Kind::input,
                "dimension must be in [1, " + std::to_string(kMaxDim) + "], got " +
                    std::to_string(dim));
}

void check_same(int a, int b) {
  if (a != b)
    throw Error(Error::Kind::input, "dimension mismatch: " + std::to_string(a) + " vs " +
                                        std::to_string(b));
}

}  // namespace

Vec::Vec(int dim, double fill) : dim_(dim) {
  check_dim(dim);
  for (int i = 0; i < dim; ++i) v_[static_cast<std::size_t>(i)] = fill;
}

Vec Vec::of(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

double Vec::norm() const {
  double s = 0;
  for (int i = 0; i < dim_; ++i) s += (*this)[i] * (*this)[i];
  return std::sqrt(s);
}

bool Vec::finite() const {
  for (int i = 0; i < dim_; ++i)
    if (!std::isfinite((*this)[i])) return false;
  return true;
}

Vec operator+(const Vec& a, const Vec& b) {
  check_same(a.dim(), b.dim());
  Vec r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  check_same(a.dim(), b.dim());
  Vec r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(double c, const Vec& a) {
  Vec r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = c * a[i];
  return r;
}

Matrix::Matrix(int dim) : dim_(dim) { check_dim(dim); }

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(int dim, std::initializer_list<double> entries) {
  Matrix m(dim);
  if (static_cast<int>(entries.size()) != dim * dim)
    throw Error(Error::Kind::input, "expected " + std::to_string(dim * dim) + " entries");
  int k = 0;
  for (double x : entries) {
    m.at(k / dim, k % dim) = x;
    ++k;
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool Matrix::finite() const {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      if (!std::isfinite(at(r, c))) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same(a.dim(), b.dim());
  Matrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < a.dim(); ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_same(a.dim(), b.dim());
  Matrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

Matrix operator*(double c, const Matrix& a) {
  Matrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r.at(i, j) = c * a.at(i, j);
  return r;
}

Vec operator*(const Matrix& a, const Vec& x) {
  check_same(a.dim(), x.dim());
  Vec r(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    double s = 0;
    for (int j = 0; j < a.dim(); ++j) s += a.at(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

SingularSpectrum singular_values(const Matrix& m) {
  if (!m.finite()) throw Error(Error::Kind::input, "matrix entries must be finite");
  const int d = m.dim();
  // S = M^T M, symmetric positive semidefinite.
  double s[kMaxDim][kMaxDim] = {};
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double acc = 0;
      for (int k = 0; k < d; ++k) acc += m.at(k, i) * m.at(k, j);
      s[i][j] = acc;
      s[j][i] = acc;
    }

  double scale = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) scale += s[i][j] * s[i][j];
  scale = std::sqrt(scale);

  if (scale > 0) {
    for (int sweep = 0; sweep < 64; ++sweep) {
      double off = 0;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) off += 2 * s[i][j] * s[i][j];
      if (std::sqrt(off) <= 1e-14 * scale) break;

      for (int p = 0; p < d; ++p)
        for (int q = p + 1; q < d; ++q) {
          const double apq = s[p][q];
          if (std::abs(apq) <= 1e-300) continue;
          const double theta = (s[q][q] - s[p][p]) / (2 * apq);
          const double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(1 + theta * theta));
          const double c = 1 / std::sqrt(1 + t * t);
          const double sn = t * c;
          const double spp = s[p][p], sqq = s[q][q];
          s[p][p] = c * c * spp - 2 * sn * c * apq + sn * sn * sqq;
          s[q][q] = sn * sn * spp + 2 * sn * c * apq + c * c * sqq;
          s[p][q] = 0;
          s[q][p] = 0;
          for (int r = 0; r < d; ++r) {
            if (r == p || r == q) continue;
            const double srp = s[r][p], srq = s[r][q];
            s[r][p] = c * srp - sn * srq;
            s[p][r] = s[r][p];
            s[r][q] = sn * srp + c * srq;
            s[q][r] = s[r][q];
          }
        }
    }
  }

  SingularSpectrum out;
  out.dim = d;
  for (int i = 0; i < d; ++i)
    out.sigma[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, s[i][i]));
  std::sort(out.sigma.begin(), out.sigma.begin() + d, std::greater<double>());
  return out;
}

double op_norm(const Matrix& m) { return singular_values(m).max(); }

double inf_norm(const Matrix& m) { return singular_values(m).min(); }

double det(const Matrix& m) {
  if (!m.finite()) throw Error(Error::Kind::input, "matrix entries must be finite");
  const int d = m.dim();
  double a[kMaxDim][kMaxDim];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a[i][j] = m.at(i, j);

  double result = 1.0;
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int i = k + 1; i < d; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      for (int j = k; j < d; ++j) std::swap(a[piv][j], a[k][j]);
      result = -result;
    }
    result *= a[k][k];
    for (int i = k + 1; i < d; ++i) {
      const double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      for (int j = k + 1; j < d; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return result;
}

Matrix inverse(const Matrix& m) {
  if (!m.finite()) throw Error(Error::Kind::input, "matrix entries must be finite");
  const int d = m.dim();
  double a[kMaxDim][2 * kMaxDim] = {};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a[i][j] = m.at(i, j);
    a[i][d + i] = 1.0;
  }
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int i = k + 1; i < d; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (std::abs(a[piv][k]) < 1e-300)
      throw Error(Error::Kind::domain, "matrix is singular, cannot invert");
    if (piv != k)
      for (int j = 0; j < 2 * d; ++j) std::swap(a[piv][j], a[k][j]);
    const double inv_piv = 1.0 / a[k][k];
    for (int j = 0; j < 2 * d; ++j) a[k][j] *= inv_piv;
    for (int i = 0; i < d; ++i) {
      if (i == k) continue;
      const double f = a[i][k];
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * d; ++j) a[i][j] -= f * a[k][j];
    }
  }
  Matrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.at(i, j) = a[i][d + j];
  return out;
}

double min_quasiregular_K(const Matrix& m) {
  const SingularSpectrum sp = singular_values(m);
  const double ad = std::abs(det(m));
  if (ad < 1e-300 || sp.min() <= 0)
    throw Error(Error::Kind::domain, "non-invertible derivative");
  const int d = m.dim();
  const double upper = std::pow(sp.max(), d) / ad;
  const double lower = ad / std::pow(sp.min(), d);
  // >= 1 in exact arithmetic; clamp round-off for conformal inputs.
  return std::max(1.0, std::max(upper, lower));
}

bool is_conformal(const Matrix& m, double tol) {
  if (tol <= 0) throw Error(Error::Kind::input, "tolerance must be positive");
  const SingularSpectrum sp = singular_values(m);
  return sp.max() - sp.min() <= tol * sp.max();
}

}  // namespace gifs
