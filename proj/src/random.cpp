#include "jpl/random.hpp"

#include <limits>

namespace jpl {

SymMatrixd random_symmetric(Rng& rng, int n) {
  SymMatrixd m(n);
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s) m.set(r, s, rng.uniform(-1.0, 1.0));
  return m;
}

SymMatrixd random_decoupled(Rng& rng) {
  SymMatrixd m = random_symmetric(rng, 4);
  m.set(0, 1, 0.0);
  m.set(2, 3, 0.0);
  return m;
}

double condition_number(const Eigen::MatrixXd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

Eigen::MatrixXd random_nonsingular(Rng& rng, int n, double max_cond) {
  Eigen::MatrixXd m(n, n);
  while (true) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
    if (condition_number(m) <= max_cond) return m;
  }
}

}  // namespace jpl
