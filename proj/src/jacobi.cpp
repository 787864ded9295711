#include "jpl/jacobi.hpp"

#include "jpl/errors.hpp"
#include "jpl/rotation.hpp"

#include <algorithm>
#include <cmath>

namespace jpl {

SweepReport run_cycles(const SymMatrixd& a, const PivotOrdering& o, int cycles) {
  if (a.size() != o.n()) throw std::invalid_argument("run_cycles: matrix and ordering dimensions differ");
  if (cycles < 0) throw std::invalid_argument("run_cycles: negative cycle count");

  SweepReport report;
  report.cycles_requested = cycles;
  report.steps.reserve(static_cast<std::size_t>(cycles * o.size()));
  SymMatrixd m = a;
  double s = off_norm(m);
  report.cycle_off_norms.push_back(s);
  report.cycle_diagonals.push_back(m.diagonal());
  for (int t = 0; t < cycles; ++t) {
    if (s < kOffNormFloor) break;
    for (const PivotPair& p : o) {
      const double pivot = m(p.r, p.s);
      Annihilation<double> step = annihilate(m, p.r, p.s);
      m = std::move(step.matrix);
      const double after = off_norm(m);
      report.steps.push_back({p, pivot, step.rotation.phi, s, after});
      s = after;
    }
    ++report.cycles_executed;
    report.cycle_off_norms.push_back(s);
    report.cycle_diagonals.push_back(m.diagonal());
  }
  report.final_matrix = std::move(m);
  return report;
}

SweepReport run_parallel_cycle(const SymMatrixd& a, const PivotOrdering& o) {
  if (a.size() != 4 || o.n() != 4) throw std::invalid_argument("run_parallel_cycle: n must be 4");
  if (!equivalent(o, o_par()) && !equivalent(o, o_par_prime()))
    throw NotParallelOrdering("not a parallel ordering: not equivalent to either parallel anchor");

  SweepReport report;
  report.group_size = 2;
  report.cycles_requested = 1;
  SymMatrixd m = a;
  double s = off_norm(m);
  report.cycle_off_norms.push_back(s);
  report.cycle_diagonals.push_back(m.diagonal());
  for (int g = 0; g < 3; ++g) {
    const PivotPair& p1 = o[2 * g];
    const PivotPair& p2 = o[2 * g + 1];
    const PlaneRotation<double> r1 = rotation_for_pivot(m, p1.r, p1.s);
    const PlaneRotation<double> r2 = rotation_for_pivot(m, p2.r, p2.s);
    const Eigen::MatrixXd q = r1.dense(4) * r2.dense(4);
    const Eigen::MatrixXd next = q.transpose() * m.dense() * q;
    SymMatrixd joint(4);
    for (int r = 0; r < 4; ++r)
      for (int c = r; c < 4; ++c) joint.set(r, c, next(r, c));
    joint.set(p1.r, p1.s, 0.0);
    joint.set(p2.r, p2.s, 0.0);
    const double after = off_norm(joint);
    report.steps.push_back({p1, m(p1.r, p1.s), r1.phi, s, after});
    report.steps.push_back({p2, m(p2.r, p2.s), r2.phi, s, after});
    m = std::move(joint);
    s = after;
  }
  report.cycles_executed = 1;
  report.cycle_off_norms.push_back(s);
  report.cycle_diagonals.push_back(m.diagonal());
  report.final_matrix = std::move(m);
  return report;
}

double step_identity_error(const SweepReport& report) {
  double worst = 0.0;
  const auto width = static_cast<std::size_t>(report.group_size);
  for (std::size_t k = 0; k + width <= report.steps.size(); k += width) {
    // Scaled by S_before so tiny iterates do not underflow when squared.
    // Steps starting below the floor run in subnormal arithmetic and are skipped.
    const double before = report.steps[k].off_before;
    if (before < kOffNormFloor) continue;
    double drop = 0.0;
    for (std::size_t w = 0; w < width; ++w) {
      const double p = report.steps[k + w].pivot_value / before;
      drop += p * p;
    }
    const double after = report.steps[k].off_after / before;
    worst = std::max(worst, std::abs(after * after - (1.0 - drop)));
  }
  return worst;
}

double off_norm_increase(const SweepReport& report) {
  double worst = 0.0;
  const auto& s = report.cycle_off_norms;
  for (std::size_t t = 0; t + 1 < s.size(); ++t)
    if (s[t + 1] > s[t]) worst = std::max(worst, s[t + 1] / s[t] - 1.0);
  return worst;
}

BoundCheck evaluate_bound(const SweepReport& report, const ConvergenceBound& bound) {
  BoundCheck check;
  check.gamma = bound.gamma;
  check.tau = bound.tau;
  check.t0 = bound.t0;
  const auto& s = report.cycle_off_norms;
  for (int t = bound.t0; t + bound.tau <= report.cycles_executed; ++t) {
    const double base = s[static_cast<std::size_t>(t)];
    const double ratio = base == 0.0 ? 0.0 : s[static_cast<std::size_t>(t + bound.tau)] / base;
    check.observed_worst_ratio = std::max(check.observed_worst_ratio, ratio);
    check.observed_worst_ratio_squared = std::max(check.observed_worst_ratio_squared, ratio * ratio);
    ++check.windows;
  }
  check.pass = check.observed_worst_ratio <= bound.gamma + kBoundSlack;
  check.margin = bound.gamma - check.observed_worst_ratio;
  return check;
}

BoundCheck check_bound(const SymMatrixd& a, const PivotOrdering& o, const ConvergenceBound& bound, int cycles) {
  if (cycles < bound.t0 + bound.tau)
    throw std::invalid_argument("check_bound: need at least t0 + tau cycles");
  return evaluate_bound(run_cycles(a, o, cycles), bound);
}

BoundCheck check_bound(const SymMatrixd& a, const ClassificationRecord& record, int cycles) {
  if (std::holds_alternative<Parallel>(record.label) && a.size() != 4)
    throw std::invalid_argument("check_bound: parallel bounds need n = 4");
  return check_bound(a, record.ordering, record.bound, cycles);
}

}  // namespace jpl
