#include "h22/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace h22 {

std::optional<SpdFactor> factor(const Matrix& m) {
  const int n = m.size();
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(m(i, j)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-8 * std::max(scale, 1.0))
        throw std::invalid_argument("factor: matrix is not symmetric");

  SpdFactor f;
  f.l_ = Matrix(n);
  Matrix& l = f.l_;
  for (int j = 0; j < n; ++j) {
    double diag = m(j, j);
    for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag)) return std::nullopt;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double v = m(i, j);
      for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      v /= ljj;
      if (!std::isfinite(v)) return std::nullopt;
      l(i, j) = v;
    }
  }
  return f;
}

double SpdFactor::logdet() const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += std::log(l_(i, i));
  return 2.0 * s;
}

std::vector<double> SpdFactor::solve(std::vector<double> rhs) const {
  const int n = size();
  if (static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("solve: size mismatch");
  for (int i = 0; i < n; ++i) {
    double v = rhs[i];
    for (int k = 0; k < i; ++k) v -= l_(i, k) * rhs[k];
    rhs[i] = v / l_(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double v = rhs[i];
    for (int k = i + 1; k < n; ++k) v -= l_(k, i) * rhs[k];
    rhs[i] = v / l_(i, i);
  }
  return rhs;
}

double SpdFactor::inverse_entry(int x, int y) const {
  const int n = size();
  if (x < 0 || x >= n || y < 0 || y >= n)
    throw std::domain_error("inverse_entry: index out of range");
  std::vector<double> e(n, 0.0);
  e[y] = 1.0;
  return solve(std::move(e))[x];
}

Matrix SpdFactor::inverse() const {
  const int n = size();
  Matrix inv(n);
  for (int y = 0; y < n; ++y) {
    std::vector<double> e(n, 0.0);
    e[y] = 1.0;
    e = solve(std::move(e));
    for (int x = 0; x < n; ++x) inv(x, y) = e[x];
  }
  return inv;
}

double logdet(const SpdFactor& f) { return f.logdet(); }

double inverse_entry(const SpdFactor& f, int x, int y) { return f.inverse_entry(x, y); }

double lu_det(Matrix m) {
  const int n = m.size();
  if (n == 0) return 1.0;
  double det = 1.0;
  for (int j = 0; j < n; ++j) {
    int piv = j;
    for (int i = j + 1; i < n; ++i)
      if (std::abs(m(i, j)) > std::abs(m(piv, j))) piv = i;
    if (m(piv, j) == 0.0) return 0.0;
    if (piv != j) {
      for (int k = 0; k < n; ++k) std::swap(m(j, k), m(piv, k));
      det = -det;
    }
    det *= m(j, j);
    for (int i = j + 1; i < n; ++i) {
      const double r = m(i, j) / m(j, j);
      for (int k = j + 1; k < n; ++k) m(i, k) -= r * m(j, k);
    }
  }
  return det;
}

double det_minor(const Matrix& m, const std::vector<int>& removed) {
  const int n = m.size();
  std::vector<char> drop(n, 0);
  for (int r : removed) {
    if (r < 0 || r >= n) throw std::domain_error("det_minor: index out of range");
    drop[r] = 1;
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (!drop[i]) keep.push_back(i);
  const int k = static_cast<int>(keep.size());
  Matrix sub(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = m(keep[i], keep[j]);
  return lu_det(std::move(sub));
}

}  // namespace h22
