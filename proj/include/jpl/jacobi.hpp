#pragma once

#include "jpl/classification.hpp"
#include "jpl/ordering.hpp"
#include "jpl/sym_matrix.hpp"

#include <vector>

namespace jpl {

struct StepRecord {
  PivotPair pivot;
  double pivot_value;
  double phi;
  double off_before;
  double off_after;
};

struct SweepReport {
  std::vector<StepRecord> steps;
  /// Steps applied jointly from one iterate: 1 for sequential runs, 2 for
  /// parallel cycles. Records within a group share off_before/off_after.
  int group_size = 1;
  /// S(A^[t]) for t = 0..cycles_executed.
  std::vector<double> cycle_off_norms;
  std::vector<Eigen::VectorXd> cycle_diagonals;
  int cycles_requested = 0;
  int cycles_executed = 0;
  SymMatrixd final_matrix;
};

/// Runs stop before a cycle whose starting off-norm is below this.
inline constexpr double kOffNormFloor = 1e-300;

SweepReport run_cycles(const SymMatrixd& a, const PivotOrdering& o, int cycles);

/// One cycle of an ordering ~-equivalent to o_par() or o_par_prime(), as
/// three steps of two commuting rotations computed from the same iterate.
SweepReport run_parallel_cycle(const SymMatrixd& a, const PivotOrdering& o);

/// Largest |S^2_after - (S^2_before - pivot^2)| / S^2_before over all steps
/// (or groups) that start with S_before >= kOffNormFloor.
double step_identity_error(const SweepReport& report);
/// Largest relative increase S(A^[t+1]) / S(A^[t]) - 1 over the run, or 0.
double off_norm_increase(const SweepReport& report);

inline constexpr double kBoundSlack = 1e-12;

struct BoundCheck {
  double gamma = 0;
  int tau = 0;
  int t0 = 0;
  double observed_worst_ratio = 0;
  double observed_worst_ratio_squared = 0;
  int windows = 0;
  bool pass = true;
  double margin = 0;
};

/// Worst S(A^[t+tau]) / S(A^[t]) over t0 <= t with t + tau within the
/// executed cycles; a zero S(A^[t]) counts as ratio 0.
BoundCheck evaluate_bound(const SweepReport& report, const ConvergenceBound& bound);
BoundCheck check_bound(const SymMatrixd& a, const PivotOrdering& o, const ConvergenceBound& bound, int cycles);
BoundCheck check_bound(const SymMatrixd& a, const ClassificationRecord& record, int cycles);

}  // namespace jpl
