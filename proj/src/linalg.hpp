#pragma once

#include <complex>
#include <vector>

namespace dofbc {

using cplx = std::complex<double>;

// Dense row-major complex matrix sized for this library's needs (<= 16x16).
// All decompositions below are implemented here; no external solver is used.
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int r, int c) { return a_[r * cols_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[r * cols_ + c]; }

  Mat adjoint() const;
  Mat transpose() const;
  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(cplx s) const;

  // Rows listed in `idx` (0-based), in order.
  Mat take_rows(const std::vector<int>& idx) const;
  // Columns listed in `idx` (0-based), in order.
  Mat take_cols(const std::vector<int>& idx) const;

  double frobenius() const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

struct QrFactors {
  Mat q;  // unitary, rows x rows
  Mat r;  // upper triangular, rows x cols
};

// Householder QR with the diagonal of R made real and nonnegative.
QrFactors qr_decompose(const Mat& a);

struct PivotedQr {
  std::vector<int> perm;  // column order: A P = Q R, perm[i] = source column
  Mat q;
  Mat r;                  // real nonnegative diagonal
};

// Greedy column-pivoted QR: each step moves the remaining column of largest
// residual norm to the front before the unitary annihilation step. The
// resulting diagonal obeys r_ii^2 >= lambda_i(A^H A) / (rows - i + 1).
PivotedQr pivoted_qr(const Mat& a);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps, sorted
// descending.
std::vector<double> hermitian_eigenvalues(const Mat& a);

// Determinant via LU with partial pivoting.
cplx determinant(const Mat& a);

// Solves A X = B for square nonsingular A (Gauss-Jordan, partial pivoting).
Mat solve(const Mat& a, const Mat& b);

}  // namespace dofbc
