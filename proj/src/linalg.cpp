#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dofbc {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::adjoint() const {
  Mat m(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  }
  return m;
}

Mat Mat::transpose() const {
  Mat m(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape");
  Mat m(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int i = 0; i < cols_; ++i) {
      const cplx v = (*this)(r, i);
      if (v == cplx(0.0)) continue;
      for (int c = 0; c < o.cols_; ++c) m(r, c) += v * o(i, c);
    }
  }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  Mat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  Mat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

Mat Mat::scaled(cplx s) const {
  Mat m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
  return m;
}

Mat Mat::take_rows(const std::vector<int>& idx) const {
  Mat m(static_cast<int>(idx.size()), cols_);
  for (size_t r = 0; r < idx.size(); ++r) {
    for (int c = 0; c < cols_; ++c) m(static_cast<int>(r), c) = (*this)(idx[r], c);
  }
  return m;
}

Mat Mat::take_cols(const std::vector<int>& idx) const {
  Mat m(rows_, static_cast<int>(idx.size()));
  for (int r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < idx.size(); ++c) m(r, static_cast<int>(c)) = (*this)(r, idx[c]);
  }
  return m;
}

double Mat::frobenius() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

namespace {

// Applies one Householder reflector that zeroes column `col` of `work` below
// row `col`, accumulating the same unitary into `q` (q <- q * H).
void householder_step(Mat& work, Mat& q, int col) {
  const int m = work.rows();
  double norm2 = 0.0;
  for (int r = col; r < m; ++r) norm2 += std::norm(work(r, col));
  const double norm = std::sqrt(norm2);
  if (norm == 0.0) return;

  const cplx pivot = work(col, col);
  const double pm = std::abs(pivot);
  const cplx phase = pm > 0.0 ? pivot / pm : cplx(1.0);
  // v = x + phase*|x| e1, reflector H = I - 2 v v^H / (v^H v).
  std::vector<cplx> v(m - col);
  for (int r = col; r < m; ++r) v[r - col] = work(r, col);
  v[0] += phase * norm;
  double vnorm2 = 0.0;
  for (const auto& x : v) vnorm2 += std::norm(x);
  if (vnorm2 == 0.0) return;

  for (int c = col; c < work.cols(); ++c) {
    cplx dot = 0.0;
    for (int r = col; r < m; ++r) dot += std::conj(v[r - col]) * work(r, c);
    const cplx f = 2.0 * dot / vnorm2;
    for (int r = col; r < m; ++r) work(r, c) -= f * v[r - col];
  }
  for (int r = 0; r < m; ++r) {
    cplx dot = 0.0;
    for (int c = col; c < m; ++c) dot += q(r, c) * v[c - col];
    const cplx f = 2.0 * dot / vnorm2;
    for (int c = col; c < m; ++c) q(r, c) -= f * std::conj(v[c - col]);
  }
}

// Multiplies column i of q by p and row i of r by conj(p) (keeps Q R fixed).
void absorb_phase(Mat& q, Mat& r, int i, cplx p) {
  for (int row = 0; row < q.rows(); ++row) q(row, i) *= p;
  for (int col = 0; col < r.cols(); ++col) r(i, col) *= std::conj(p);
}

void fix_diagonal_phases(Mat& q, Mat& r) {
  const int steps = std::min(r.rows(), r.cols());
  for (int i = 0; i < steps; ++i) {
    const cplx d = r(i, i);
    const double m = std::abs(d);
    if (m > 0.0) {
      absorb_phase(q, r, i, d / m);
    }
    r(i, i) = m;
    for (int c = 0; c < i; ++c) r(i, c) = 0.0;  // clear roundoff below diagonal
  }
}

}  // namespace

QrFactors qr_decompose(const Mat& a) {
  QrFactors f;
  f.r = a;
  f.q = Mat::identity(a.rows());
  const int steps = std::min(a.rows(), a.cols());
  for (int i = 0; i < steps; ++i) householder_step(f.r, f.q, i);
  fix_diagonal_phases(f.q, f.r);
  return f;
}

PivotedQr pivoted_qr(const Mat& a) {
  PivotedQr f;
  f.r = a;
  f.q = Mat::identity(a.rows());
  f.perm.resize(a.cols());
  for (int i = 0; i < a.cols(); ++i) f.perm[i] = i;

  const int steps = std::min(a.rows(), a.cols());
  for (int i = 0; i < steps; ++i) {
    // Pivot: remaining column with the largest residual norm.
    int best = i;
    double best_norm = -1.0;
    for (int c = i; c < a.cols(); ++c) {
      double n2 = 0.0;
      for (int r = i; r < a.rows(); ++r) n2 += std::norm(f.r(r, c));
      if (n2 > best_norm) {
        best_norm = n2;
        best = c;
      }
    }
    if (best != i) {
      for (int r = 0; r < a.rows(); ++r) std::swap(f.r(r, i), f.r(r, best));
      std::swap(f.perm[i], f.perm[best]);
    }
    householder_step(f.r, f.q, i);
  }
  fix_diagonal_phases(f.q, f.r);
  return f;
}

std::vector<double> hermitian_eigenvalues(const Mat& a) {
  const int n = a.rows();
  Mat w = a;
  // Cyclic Jacobi: rotate away each off-diagonal pair until convergence.
  const double scale = std::max(w.frobenius(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += std::norm(w(p, q));
    }
    if (std::sqrt(off) <= 1e-14 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = w(p, q);
        const double b = std::abs(apq);
        if (b <= 1e-18 * scale) continue;
        const cplx phase = apq / b;
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary plane rotation J: columns p,q mixed with the phase folded in.
        for (int r = 0; r < n; ++r) {
          const cplx xp = w(r, p);
          const cplx xq = w(r, q);
          w(r, p) = c * xp - s * std::conj(phase) * xq;
          w(r, q) = s * phase * xp + c * xq;
        }
        for (int col = 0; col < n; ++col) {
          const cplx xp = w(p, col);
          const cplx xq = w(q, col);
          w(p, col) = c * xp - s * phase * xq;
          w(q, col) = s * std::conj(phase) * xp + c * xq;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = w(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

cplx determinant(const Mat& a) {
  const int n = a.rows();
  Mat w = a;
  cplx det = 1.0;
  for (int i = 0; i < n; ++i) {
    int piv = i;
    double best = std::abs(w(i, i));
    for (int r = i + 1; r < n; ++r) {
      if (std::abs(w(r, i)) > best) {
        best = std::abs(w(r, i));
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != i) {
      for (int c = 0; c < n; ++c) std::swap(w(i, c), w(piv, c));
      det = -det;
    }
    det *= w(i, i);
    const cplx inv = 1.0 / w(i, i);
    for (int r = i + 1; r < n; ++r) {
      const cplx f = w(r, i) * inv;
      if (f == cplx(0.0)) continue;
      for (int c = i; c < n; ++c) w(r, c) -= f * w(i, c);
    }
  }
  return det;
}

Mat solve(const Mat& a, const Mat& b) {
  const int n = a.rows();
  Mat w = a;
  Mat x = b;
  for (int i = 0; i < n; ++i) {
    int piv = i;
    double best = std::abs(w(i, i));
    for (int r = i + 1; r < n; ++r) {
      if (std::abs(w(r, i)) > best) {
        best = std::abs(w(r, i));
        piv = r;
      }
    }
    if (best == 0.0) throw std::runtime_error("singular system");
    if (piv != i) {
      for (int c = 0; c < n; ++c) std::swap(w(i, c), w(piv, c));
      for (int c = 0; c < x.cols(); ++c) std::swap(x(i, c), x(piv, c));
    }
    const cplx inv = 1.0 / w(i, i);
    for (int c = 0; c < n; ++c) w(i, c) *= inv;
    for (int c = 0; c < x.cols(); ++c) x(i, c) *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == i) continue;
      const cplx f = w(r, i);
      if (f == cplx(0.0)) continue;
      for (int c = 0; c < n; ++c) w(r, c) -= f * w(i, c);
      for (int c = 0; c < x.cols(); ++c) x(r, c) -= f * x(i, c);
    }
  }
  return x;
}

}  // namespace dofbc
