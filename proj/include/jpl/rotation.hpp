#pragma once

#include "jpl/sym_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace jpl {

/// Plane rotation in the (i, j) plane, i < j. Embedded in the identity it has
/// c at (i,i) and (j,j), -s at (i,j) and s at (j,i).
template <typename Scalar>
struct PlaneRotation {
  int i = 0;
  int j = 1;
  Scalar c = Scalar(1);
  Scalar s = Scalar(0);
  Scalar phi = Scalar(0);

  static PlaneRotation identity(int i, int j) { return PlaneRotation{i, j, Scalar(1), Scalar(0), Scalar(0)}; }

  static PlaneRotation fromAngle(int i, int j, Scalar phi) {
    return PlaneRotation{i, j, std::cos(phi), std::sin(phi), phi};
  }

  bool isIdentity() const { return s == Scalar(0) && c == Scalar(1); }

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense(int n) const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> r =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n);
    r(i, i) = c;
    r(j, j) = c;
    r(i, j) = -s;
    r(j, i) = s;
    return r;
  }
};

namespace detail {

inline void check_pivot(int n, int i, int j) {
  if (i < 0 || j >= n || i >= j) throw std::out_of_range("pivot indices out of range or not i < j");
}

template <typename Scalar>
Scalar sign_of(Scalar x) {
  return x < Scalar(0) ? Scalar(-1) : Scalar(1);
}

}  // namespace detail

/// Rotation that annihilates m(i, j): tan(2 phi) = 2 a_ij / (a_ii - a_jj) with
/// |phi| <= pi/4. Computed through t = tan(phi) from the cancellation-free
/// root; a tie a_ii == a_jj gives phi = sign(a_ij) pi/4.
template <typename Scalar>
PlaneRotation<Scalar> rotation_for_pivot(const SymMatrix<Scalar>& m, int i, int j) {
  detail::check_pivot(m.size(), i, j);
  const Scalar aij = m(i, j);
  if (aij == Scalar(0)) return PlaneRotation<Scalar>::identity(i, j);

  const Scalar diff = m(i, i) - m(j, j);
  Scalar t;
  if (diff == Scalar(0)) {
    t = detail::sign_of(aij);
  } else {
    const Scalar tau = diff / (Scalar(2) * aij);
    t = detail::sign_of(tau) / (std::abs(tau) + std::hypot(Scalar(1), tau));
  }
  const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
  return PlaneRotation<Scalar>{i, j, c, t * c, std::atan(t)};
}

/// R^T M R for a plane rotation R. Only rows/columns i and j change.
template <typename Scalar>
SymMatrix<Scalar> apply_two_sided(const SymMatrix<Scalar>& m, const PlaneRotation<Scalar>& rot) {
  const int i = rot.i;
  const int j = rot.j;
  detail::check_pivot(m.size(), i, j);
  if (rot.isIdentity()) return m;

  const Scalar c = rot.c;
  const Scalar s = rot.s;
  SymMatrix<Scalar> out = m;
  for (int k = 0; k < m.size(); ++k) {
    if (k == i || k == j) continue;
    const Scalar mki = m(k, i);
    const Scalar mkj = m(k, j);
    out.set(k, i, c * mki + s * mkj);
    out.set(k, j, c * mkj - s * mki);
  }
  const Scalar a = m(i, i);
  const Scalar b = m(i, j);
  const Scalar d = m(j, j);
  out.set(i, i, c * c * a + Scalar(2) * c * s * b + s * s * d);
  out.set(j, j, s * s * a - Scalar(2) * c * s * b + c * c * d);
  out.set(i, j, c * s * (d - a) + (c - s) * (c + s) * b);
  return out;
}

template <typename Scalar>
struct Annihilation {
  SymMatrix<Scalar> matrix;
  PlaneRotation<Scalar> rotation;
};

/// One Jacobi step at pivot (i, j). The pivot is stored as an exact zero.
template <typename Scalar>
Annihilation<Scalar> annihilate(const SymMatrix<Scalar>& m, int i, int j) {
  const PlaneRotation<Scalar> rot = rotation_for_pivot(m, i, j);
  SymMatrix<Scalar> out = apply_two_sided(m, rot);
  out.set(i, j, Scalar(0));
  return {std::move(out), rot};
}

}  // namespace jpl
