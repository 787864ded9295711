#pragma once

#include "jpl/sym_matrix.hpp"

#include <cstdint>
#include <random>

namespace jpl {

/// Identifier written into every seeded report.
inline constexpr const char* kRngAlgorithm = "mt19937_64/top53-uniform";

/// Seeded source of doubles, bit-reproducible across platforms: the top 53
/// bits of each mt19937_64 output scaled to [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Upper triangle (diagonal included) drawn row by row from U[-1, 1].
SymMatrixd random_symmetric(Rng& rng, int n);
/// Like random_symmetric(rng, 4) with a_12 = a_34 = 0.
SymMatrixd random_decoupled(Rng& rng);
/// Row-major U[-1, 1] entries, redrawn until the 2-norm condition number is
/// at most max_cond.
Eigen::MatrixXd random_nonsingular(Rng& rng, int n, double max_cond = 1e6);

double condition_number(const Eigen::MatrixXd& m);

}  // namespace jpl
