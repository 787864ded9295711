#pragma once

#include "jpl/ordering.hpp"
#include "jpl/sym_matrix.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jpl {

class SignDiagonal {
 public:
  explicit SignDiagonal(std::vector<int> signs);
  /// "+1 +1 -1 -1" or "1 1 -1 -1".
  static SignDiagonal parse(std::string_view text);
  /// diag(1, 1, -1, -1).
  static SignDiagonal standard();

  int n() const { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& signs() const { return signs_; }
  Eigen::VectorXd vector() const;
  Eigen::MatrixXd dense() const;
  /// True for diag(1, 1, -1, -1), the sign pattern with a convergence proof.
  bool is_proved_case() const;
  std::string str() const;

  bool operator==(const SignDiagonal&) const = default;

 private:
  std::vector<int> signs_;
};

enum class RotationKind { Trigonometric, Hyperbolic };

/// J-orthogonal plane transformation acting on rows/columns i < j.
/// Trigonometric: [[c, -s], [s, c]] with angle phi. Hyperbolic: [[ch, sh],
/// [sh, ch]] with angle theta.
struct JRotation {
  int i = 0;
  int j = 1;
  RotationKind kind = RotationKind::Trigonometric;
  double c = 1;
  double s = 0;
  double angle = 0;

  bool isIdentity() const { return s == 0.0 && c == 1.0; }
  double abs_tanh() const { return kind == RotationKind::Hyperbolic ? std::abs(s / c) : 0.0; }
  Eigen::MatrixXd dense(int n) const;
};

/// Trigonometric rotation when J has equal signs at i and j; otherwise the
/// hyperbolic transformation with tanh(2 theta) = -2 a_ij / (a_ii + a_jj).
/// Throws HyperbolicBreakdown when |2 a_ij / (a_ii + a_jj)| >= 1.
JRotation j_rotation_for_pivot(const SymMatrixd& a, const SignDiagonal& j_signs, int i, int j);

/// F^T A F for the embedded transformation; the pivot is left as computed.
SymMatrixd apply_j(const SymMatrixd& a, const JRotation& f);

struct JStepRecord {
  PivotPair pivot;
  RotationKind kind;
  double angle;
  double abs_tanh;
  double pivot_value;
};

struct JJacobiReport {
  PivotOrdering ordering;
  SignDiagonal signs;
  bool proved_case = false;
  double tol = 0;
  double norm_a = 0;
  std::vector<JStepRecord> steps;
  /// S(A^(k)) for k = 0..steps.size().
  std::vector<double> step_off_norms;
  /// S at the start of each cycle and after the last one.
  std::vector<double> cycle_off_norms;
  /// Largest |tanh theta| within each executed cycle.
  std::vector<double> tanh_envelope;
  int cycles = 0;
  bool converged = false;
};

struct JJacobiResult {
  SymMatrixd lambda;
  Eigen::MatrixXd f;
  JJacobiReport report;
};

inline constexpr double kDefaultJTol = 1e-13;
inline constexpr int kDefaultMaxCycles = 40;

/// Cycles until S(A^(k)) <= tol ||A||_F at a cycle boundary, confirmed by a
/// preceding cycle whose pivots were all at most tol ||A||_F (or S = 0).
/// Non-convergence is reported through report.converged.
JJacobiResult run_j_jacobi(const SymMatrixd& a, const SignDiagonal& j_signs, const PivotOrdering& o,
                           double tol = kDefaultJTol, int max_cycles = kDefaultMaxCycles);

/// Whether the trailing half of the tanh envelope never increases.
bool envelope_nonincreasing_tail(const JJacobiReport& report);

inline constexpr double kMaxFactorCondition = 1e8;

struct FactoredEigen {
  Eigen::VectorXd eigenvalues;
  /// Column k pairs with eigenvalues(k); H v = lambda v for H = L J L^T.
  Eigen::MatrixXd eigenvectors;
  /// ||H v - lambda v|| / ||H||_2 per pair.
  Eigen::VectorXd residuals;
  JJacobiResult run;
};

/// Eigenpairs of H = L J L^T from the J-Jacobi run on (L^T L, J). Throws
/// IllConditioned when cond(L) exceeds kMaxFactorCondition.
FactoredEigen eigen_from_factored(const Eigen::MatrixXd& l, const SignDiagonal& j_signs, const PivotOrdering& o,
                                  double tol = kDefaultJTol, int max_cycles = kDefaultMaxCycles);

struct MonitorWindow {
  int r;
  /// S^2 at steps base+2, base+4, base+6, base+8.
  double s2[4];
  bool ok[4];
};

struct MonitorVerdict {
  bool applicable = false;
  std::string reason;
  /// 1: {12,34},{13,24},{14,23}; 2: {12,34},{14,23},{13,24}.
  int pattern = 0;
  /// Stream position of the first {12,34} group.
  int phase = 0;
  double epsilon = 0;
  bool thresholds_attained = false;
  int r0 = 0;
  int complete_windows = 0;
  int violations = 0;
  std::vector<MonitorWindow> windows;

  bool pass() const { return applicable && thresholds_attained && violations == 0; }
};

inline constexpr double kCascadeFactor[4] = {1.0, 0.52, 0.5114, 0.5026};
inline constexpr int kCascadePower[4] = {2, 2, 4, 6};

/// Checks the two-cycle window conditions on pivots and hyperbolic angles
/// and, from the first window r0 after which they always hold, the S^2
/// cascade. Requires 0 < epsilon < 0.1.
MonitorVerdict monitor_proof_bounds(const JJacobiReport& report, double epsilon);

/// Proof-pattern phase for an ordering, if its cyclic stream has one.
std::optional<std::pair<int, int>> proof_pattern(const PivotOrdering& o);

struct CubicDiagnostic {
  int checked = 0;
  /// Smallest log(S_{t+1}) / log(S_t) over cycles with S_t < 1e-2.
  double worst_exponent = 0;
  bool holds = true;
};

/// Off-norms relative to ||A||_F, from the first cycle below 1e-2 until the
/// next value falls under tol.
CubicDiagnostic cubic_convergence(const JJacobiReport& report);

}  // namespace jpl
