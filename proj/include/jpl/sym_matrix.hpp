#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jpl {

/// Dense real symmetric matrix holding one copy of each entry (r, s), r <= s.
///
/// The upper triangle, diagonal included, is packed row by row into an Eigen
/// vector; every accessor folds (r, s) and (s, r) onto the same slot, so the
/// matrix cannot become unsymmetric. Indices are zero-based.
template <typename Scalar>
class SymMatrix {
 public:
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  static constexpr int kMinSize = 2;
  static constexpr int kMaxSize = 16;

  SymMatrix() : SymMatrix(kMinSize) {}

  explicit SymMatrix(int n) : n_(n) {
    if (n < kMinSize || n > kMaxSize)
      throw std::invalid_argument("SymMatrix: dimension " + std::to_string(n) + " outside [2, 16]");
    packed_ = Vector::Zero(n * (n + 1) / 2);
  }

  static SymMatrix Zero(int n) { return SymMatrix(n); }

  static SymMatrix Identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar(1));
    return m;
  }

  template <typename Derived>
  static SymMatrix Diagonal(const Eigen::MatrixBase<Derived>& d) {
    SymMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.size(); ++i) m.set(i, i, d(i));
    return m;
  }

  /// Builds from a full square matrix. Entries whose mirror differs by more
  /// than `rel_tol` times the largest magnitude are rejected; the upper
  /// triangle is kept.
  template <typename Derived>
  static SymMatrix FromDense(const Eigen::MatrixBase<Derived>& a, Scalar rel_tol = Scalar(1e-12)) {
    if (a.rows() != a.cols()) throw std::invalid_argument("SymMatrix: matrix is not square");
    SymMatrix m(static_cast<int>(a.rows()));
    const Scalar scale = a.cwiseAbs().maxCoeff();
    for (int r = 0; r < m.size(); ++r) {
      for (int s = r; s < m.size(); ++s) {
        const Scalar upper = a(r, s);
        const Scalar lower = a(s, r);
        if (!std::isfinite(upper) || !std::isfinite(lower))
          throw std::invalid_argument("SymMatrix: non-finite entry");
        if (std::abs(upper - lower) > rel_tol * scale)
          throw std::invalid_argument("SymMatrix: entries (" + std::to_string(r + 1) + "," +
                                      std::to_string(s + 1) + ") and its mirror differ");
        m.set(r, s, upper);
      }
    }
    return m;
  }

  int size() const { return n_; }

  Scalar operator()(int r, int s) const { return packed_(slot(r, s)); }

  void set(int r, int s, Scalar value) {
    if (!std::isfinite(value)) throw std::invalid_argument("SymMatrix: non-finite entry");
    packed_(slot(r, s)) = value;
  }

  Dense dense() const {
    Dense a(n_, n_);
    for (int r = 0; r < n_; ++r)
      for (int s = r; s < n_; ++s) a(r, s) = a(s, r) = (*this)(r, s);
    return a;
  }

  Vector diagonal() const {
    Vector d(n_);
    for (int i = 0; i < n_; ++i) d(i) = (*this)(i, i);
    return d;
  }

  Scalar frobeniusNorm() const { return dense().norm(); }

  bool operator==(const SymMatrix& other) const {
    return n_ == other.n_ && packed_ == other.packed_;
  }

 private:
  int slot(int r, int s) const {
    if (r > s) std::swap(r, s);
    if (r < 0 || s >= n_) throw std::out_of_range("SymMatrix: index out of range");
    return r * n_ - r * (r - 1) / 2 + (s - r);
  }

  int n_;
  Vector packed_;
};

using SymMatrixd = SymMatrix<double>;

/// Off-norm: sqrt of the sum of squares of the strictly upper entries.
/// Accumulated with a running scale so tiny iterates do not underflow.
template <typename Scalar>
Scalar off_norm(const SymMatrix<Scalar>& m) {
  Scalar scale(0);
  Scalar ssq(1);
  for (int r = 0; r < m.size(); ++r) {
    for (int s = r + 1; s < m.size(); ++s) {
      const Scalar x = std::abs(m(r, s));
      if (x == Scalar(0)) continue;
      if (scale < x) {
        ssq = Scalar(1) + ssq * (scale / x) * (scale / x);
        scale = x;
      } else {
        ssq += (x / scale) * (x / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

template <typename Scalar>
Scalar off_norm_squared(const SymMatrix<Scalar>& m) {
  const Scalar s = off_norm(m);
  return s * s;
}

}  // namespace jpl
