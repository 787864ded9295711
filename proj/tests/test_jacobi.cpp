#include "jpl/classification.hpp"
#include "jpl/errors.hpp"
#include "jpl/io.hpp"
#include "jpl/jacobi.hpp"
#include "jpl/random.hpp"

#include <gtest/gtest.h>

using namespace jpl;

namespace {

SymMatrixd literal4() {
  return parse_sym_matrix("4 1 -2 0.5\n1 3 0.25 -1\n-2 0.25 1 0.75\n0.5 -1 0.75 -2\n");
}

Eigen::VectorXd spectrum(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
}

}  // namespace

TEST(RunCycles, DiagonalUnchanged) {
  const SymMatrixd d = SymMatrixd::Diagonal(Eigen::Vector4d(1, 2, 3, 4));
  const SweepReport r = run_cycles(d, o_par(), 1);
  EXPECT_EQ(r.final_matrix, d);
  for (double s : r.cycle_off_norms) EXPECT_EQ(s, 0.0);
}

TEST(RunCycles, TwoByTwoOneStep) {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const SweepReport r = run_cycles(random_symmetric(rng, 2), PivotOrdering(2, all_pairs(2)), 1);
    EXPECT_EQ(r.cycle_off_norms.back(), 0.0);
  }
}

TEST(RunCycles, DimensionMismatch) {
  EXPECT_THROW(run_cycles(SymMatrixd::Identity(3), o_par(), 1), std::invalid_argument);
  EXPECT_THROW(run_cycles(SymMatrixd::Identity(4), o_par(), -1), std::invalid_argument);
}

// Off-norm after every step of two cycles of the first catalog ordering on a
// fixed matrix, computed independently with phi = atan(2 a_ij / (a_ii - a_jj)) / 2
// and dense products.
TEST(RunCycles, FrozenOracleValues) {
  const double oracle[] = {2.6220221204253789,   2.4238399287081647,  1.8467571116309303,  1.4170550894334715,
                           1.371499048550759,    1.1525683265263251,  0.41895099754336451, 0.213845152837146,
                           0.17440972168324184,  0.1203202802508128,  0.046248152630239472, 0.0062365115001558136,
                           0.0038020684561517362};
  const SymMatrixd a = literal4();
  const SweepReport r = run_cycles(a, reference_catalog()[0].ordering, 2);
  ASSERT_EQ(r.steps.size(), 12u);
  const double scale = a.frobeniusNorm();
  EXPECT_NEAR(r.steps[0].off_before, oracle[0], 1e-13 * scale);
  for (std::size_t k = 0; k < 12; ++k) EXPECT_NEAR(r.steps[k].off_after, oracle[k + 1], 1e-13 * scale) << k;
  // One sweep of a serial ordering.
  EXPECT_LE(r.cycle_off_norms[1] * r.cycle_off_norms[1], 27.0 / 28.0 * r.cycle_off_norms[0] * r.cycle_off_norms[0]);
}

TEST(RunCycles, DiagonalConverges) {
  Rng rng(77);
  for (int k = 0; k < 20; ++k) {
    const SweepReport r = run_cycles(random_symmetric(rng, 4), reference_catalog()[k * 5].ordering, 50);
    const auto& d = r.cycle_diagonals;
    ASSERT_GE(d.size(), 2u);
    EXPECT_LT((d[d.size() - 1] - d[d.size() - 2]).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RunCycles, StopsBelowFloor) {
  Rng rng(78);
  const SweepReport r = run_cycles(random_symmetric(rng, 4), o_par(), 50);
  EXPECT_LT(r.cycles_executed, 50);
  EXPECT_LT(r.cycle_off_norms.back(), kOffNormFloor);
  EXPECT_EQ(r.cycle_off_norms.size(), static_cast<std::size_t>(r.cycles_executed) + 1);
}

TEST(RunCycles, StepIdentityMonotonicityAndSpectrum) {
  Rng rng(31);
  const auto all = enumerate_orderings(4);
  for (int k = 0; k < 300; ++k) {
    const SymMatrixd a = random_symmetric(rng, 4);
    const SweepReport r = run_cycles(a, all[static_cast<std::size_t>(k * 7) % all.size()], 50);
    EXPECT_LE(step_identity_error(r), 1e-13);
    for (const StepRecord& s : r.steps) EXPECT_LE(s.off_after, s.off_before);
    EXPECT_EQ(off_norm_increase(r), 0.0);
    EXPECT_LE((spectrum(r.final_matrix.dense()) - spectrum(a.dense())).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(RunCycles, LargerDimension) {
  Rng rng(32);
  const SymMatrixd a = random_symmetric(rng, 9);
  std::vector<PivotPair> row;
  for (int r = 0; r < 9; ++r)
    for (int s = r + 1; s < 9; ++s) row.emplace_back(r, s);
  const SweepReport rep = run_cycles(a, PivotOrdering(9, row), 15);
  EXPECT_LT(rep.cycle_off_norms.back(), 1e-12);
  EXPECT_LE((spectrum(rep.final_matrix.dense()) - spectrum(a.dense())).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ParallelCycle, DiagonalUnchanged) {
  const SymMatrixd d = SymMatrixd::Diagonal(Eigen::Vector4d(1, 2, 3, 4));
  EXPECT_EQ(run_parallel_cycle(d, o_par()).final_matrix, d);
}

TEST(ParallelCycle, RejectsSerial) {
  EXPECT_THROW(run_parallel_cycle(SymMatrixd::Identity(4), reference_catalog()[0].ordering), NotParallelOrdering);
  // Weakly but not ~-equivalent to an anchor.
  EXPECT_THROW(run_parallel_cycle(SymMatrixd::Identity(4), reference_catalog()[104].ordering), NotParallelOrdering);
}

TEST(ParallelCycle, MatchesSequential) {
  Rng rng(33);
  const PivotOrdering shifted = cyclic_shift(reference_catalog()[104].ordering, 2);
  for (int k = 0; k < 100; ++k) {
    const SymMatrixd a = random_symmetric(rng, 4);
    const SweepReport par = run_parallel_cycle(a, shifted);
    const SweepReport seq = run_cycles(a, shifted, 1);
    EXPECT_LE((par.final_matrix.dense() - seq.final_matrix.dense()).norm(), 1e-13 * a.frobeniusNorm());
    EXPECT_LE(step_identity_error(par), 1e-13);
  }
}

TEST(CheckBound, SerialRecord) {
  Rng rng(34);
  const ClassificationRecord rec = classify(reference_catalog()[3].ordering);
  for (int k = 0; k < 200; ++k) {
    const BoundCheck c = check_bound(random_symmetric(rng, 4), rec, 1);
    EXPECT_TRUE(c.pass);
    EXPECT_LE(c.observed_worst_ratio_squared, 27.0 / 28.0 + 1e-12);
    EXPECT_EQ(c.windows, 1);
  }
}

TEST(CheckBound, DecoupledParallel) {
  Rng rng(35);
  const ClassificationRecord rec = classify(reference_catalog()[104].ordering);
  ASSERT_EQ(std::get<Parallel>(rec.label).shift_length, 2);
  const ConvergenceBound from_start{1.0 - 1e-5, 3, 0};
  for (int k = 0; k < 200; ++k) EXPECT_TRUE(check_bound(random_decoupled(rng), rec.ordering, from_start, 3).pass);
}

TEST(CheckBound, DiagonalIsVacuous) {
  const SymMatrixd d = SymMatrixd::Diagonal(Eigen::Vector4d(1, 2, 3, 4));
  for (int k : {1, 50, 110}) {
    const BoundCheck c = check_bound(d, classify(reference_catalog()[static_cast<std::size_t>(k) - 1].ordering), 8);
    EXPECT_TRUE(c.pass);
    EXPECT_EQ(c.observed_worst_ratio, 0.0);
  }
}

TEST(CheckBound, Preconditions) {
  const ClassificationRecord rec = classify(o_par());
  EXPECT_THROW(check_bound(SymMatrixd::Identity(4), rec, 3), std::invalid_argument);
  EXPECT_THROW(check_bound(SymMatrixd::Identity(3), rec, 8), std::invalid_argument);
}

TEST(EvaluateBound, DetectsViolation) {
  SweepReport r;
  r.cycles_executed = 2;
  r.cycle_off_norms = {1.0, 0.5, 0.6};
  const BoundCheck c = evaluate_bound(r, {0.9, 1, 0});
  EXPECT_FALSE(c.pass);
  EXPECT_DOUBLE_EQ(c.observed_worst_ratio, 1.2);
  EXPECT_LT(c.margin, 0);
  EXPECT_GT(off_norm_increase(r), 0.0);
}
