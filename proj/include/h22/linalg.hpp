#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace h22 {

// Dense square matrix, row-major. Everything here is desk scale, so dense
// storage and O(N^3) factorizations are used throughout.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, double fill = 0.0)
      : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Lower-triangular Cholesky factor L of a symmetric positive definite M,
// M = L L^T. Immutable once built.
class SpdFactor {
 public:
  int size() const { return l_.size(); }
  const Matrix& lower() const { return l_; }

  double logdet() const;
  double inverse_entry(int x, int y) const;  // (M^{-1})_{xy}
  std::vector<double> solve(std::vector<double> rhs) const;
  Matrix inverse() const;

  friend std::optional<SpdFactor> factor(const Matrix& m);

 private:
  Matrix l_;
};

// Cholesky factorization. Returns nullopt when a pivot is not strictly
// positive or an entry is non-finite; callers treat that as "not positive
// definite" (vanished pinning, or a proposal that overflowed), never a crash.
std::optional<SpdFactor> factor(const Matrix& m);

double logdet(const SpdFactor& f);
double inverse_entry(const SpdFactor& f, int x, int y);

// Determinant by LU with partial pivoting; any square matrix.
double lu_det(Matrix m);

// Determinant of m with the rows and columns in `removed` deleted.
// The empty matrix has determinant 1.
double det_minor(const Matrix& m, const std::vector<int>& removed);

}  // namespace h22
