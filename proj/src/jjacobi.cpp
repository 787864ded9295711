#include "jpl/jjacobi.hpp"

#include "jpl/errors.hpp"
#include "jpl/random.hpp"
#include "jpl/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jpl {

SignDiagonal::SignDiagonal(std::vector<int> signs) : signs_(std::move(signs)) {
  if (signs_.size() < 2) throw std::invalid_argument("sign diagonal needs at least two entries");
  for (int v : signs_)
    if (v != 1 && v != -1) throw std::invalid_argument("sign diagonal entries must be +1 or -1");
}

SignDiagonal SignDiagonal::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<int> signs;
  std::string tok;
  while (in >> tok) {
    if (tok == "+1" || tok == "1" || tok == "+") signs.push_back(1);
    else if (tok == "-1" || tok == "-") signs.push_back(-1);
    else throw ParseError("sign diagonal: bad entry '" + tok + "'");
  }
  if (signs.size() < 2) throw ParseError("sign diagonal: need at least two entries");
  return SignDiagonal(std::move(signs));
}

SignDiagonal SignDiagonal::standard() { return SignDiagonal({1, 1, -1, -1}); }

Eigen::VectorXd SignDiagonal::vector() const {
  Eigen::VectorXd v(n());
  for (int i = 0; i < n(); ++i) v(i) = (*this)[i];
  return v;
}

Eigen::MatrixXd SignDiagonal::dense() const { return vector().asDiagonal(); }

bool SignDiagonal::is_proved_case() const { return *this == standard(); }

std::string SignDiagonal::str() const {
  std::string out;
  for (int i = 0; i < n(); ++i) out += (i ? " " : "") + std::string((*this)[i] > 0 ? "+1" : "-1");
  return out;
}

Eigen::MatrixXd JRotation::dense(int n) const {
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(n, n);
  f(i, i) = c;
  f(j, j) = c;
  f(i, j) = kind == RotationKind::Hyperbolic ? s : -s;
  f(j, i) = s;
  return f;
}

JRotation j_rotation_for_pivot(const SymMatrixd& a, const SignDiagonal& j_signs, int i, int j) {
  if (j_signs.n() != a.size()) throw std::invalid_argument("sign diagonal and matrix dimensions differ");
  detail::check_pivot(a.size(), i, j);
  if (j_signs[i] == j_signs[j]) {
    const PlaneRotation<double> rot = rotation_for_pivot(a, i, j);
    return JRotation{i, j, RotationKind::Trigonometric, rot.c, rot.s, rot.phi};
  }
  const double b = a(i, j);
  if (b == 0.0) return JRotation{i, j, RotationKind::Hyperbolic, 1.0, 0.0, 0.0};
  const double sum = a(i, i) + a(j, j);
  // |tau| <= 1 is |tanh(2 theta)| >= 1.
  const double tau = -sum / (2.0 * b);
  if (!(std::abs(tau) > 1.0))
    throw HyperbolicBreakdown("hyperbolic breakdown at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              "): |2 a_ij / (a_ii + a_jj)| >= 1, the pair is not definite");
  const double th = detail::sign_of(tau) / (std::abs(tau) + std::sqrt((std::abs(tau) - 1.0) * (std::abs(tau) + 1.0)));
  const double ch = 1.0 / std::sqrt((1.0 - th) * (1.0 + th));
  return JRotation{i, j, RotationKind::Hyperbolic, ch, th * ch, std::atanh(th)};
}

SymMatrixd apply_j(const SymMatrixd& a, const JRotation& f) {
  if (f.kind == RotationKind::Trigonometric)
    return apply_two_sided(a, PlaneRotation<double>{f.i, f.j, f.c, f.s, f.angle});
  detail::check_pivot(a.size(), f.i, f.j);
  if (f.isIdentity()) return a;
  const int i = f.i;
  const int j = f.j;
  const double ch = f.c;
  const double sh = f.s;
  SymMatrixd out = a;
  for (int k = 0; k < a.size(); ++k) {
    if (k == i || k == j) continue;
    const double aki = a(k, i);
    const double akj = a(k, j);
    out.set(k, i, ch * aki + sh * akj);
    out.set(k, j, sh * aki + ch * akj);
  }
  const double x = a(i, i);
  const double b = a(i, j);
  const double d = a(j, j);
  out.set(i, i, ch * ch * x + 2.0 * ch * sh * b + sh * sh * d);
  out.set(j, j, sh * sh * x + 2.0 * ch * sh * b + ch * ch * d);
  out.set(i, j, ch * sh * (x + d) + (ch * ch + sh * sh) * b);
  return out;
}

namespace {

// F <- F * G for the embedded transformation G.
void accumulate(Eigen::MatrixXd& f, const JRotation& g) {
  const Eigen::VectorXd fi = f.col(g.i);
  const Eigen::VectorXd fj = f.col(g.j);
  if (g.kind == RotationKind::Hyperbolic) {
    f.col(g.i) = g.c * fi + g.s * fj;
    f.col(g.j) = g.s * fi + g.c * fj;
  } else {
    f.col(g.i) = g.c * fi + g.s * fj;
    f.col(g.j) = g.c * fj - g.s * fi;
  }
}

}  // namespace

JJacobiResult run_j_jacobi(const SymMatrixd& a, const SignDiagonal& j_signs, const PivotOrdering& o, double tol,
                           int max_cycles) {
  if (a.size() != o.n() || j_signs.n() != a.size())
    throw std::invalid_argument("run_j_jacobi: matrix, signs and ordering dimensions differ");
  if (!(tol > 0.0)) throw std::invalid_argument("run_j_jacobi: tol must be positive");
  if (max_cycles < 0) throw std::invalid_argument("run_j_jacobi: negative max_cycles");

  JJacobiReport report{o, j_signs, j_signs.is_proved_case(), tol, a.frobeniusNorm(), {}, {}, {}, {}, 0, false};
  const double threshold = tol * report.norm_a;
  SymMatrixd m = a;
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(a.size(), a.size());
  double s = off_norm(m);
  report.step_off_norms.push_back(s);
  report.cycle_off_norms.push_back(s);
  std::optional<double> last_max_pivot;

  for (int cycle = 0;; ++cycle) {
    if (s == 0.0 || (s <= threshold && last_max_pivot && *last_max_pivot <= threshold)) {
      report.converged = true;
      break;
    }
    if (cycle == max_cycles) break;
    double max_pivot = 0.0;
    double max_tanh = 0.0;
    for (const PivotPair& p : o) {
      const double pivot = m(p.r, p.s);
      const JRotation g = j_rotation_for_pivot(m, j_signs, p.r, p.s);
      m = apply_j(m, g);
      m.set(p.r, p.s, 0.0);
      accumulate(f, g);
      s = off_norm(m);
      max_pivot = std::max(max_pivot, std::abs(pivot));
      max_tanh = std::max(max_tanh, g.abs_tanh());
      report.steps.push_back({p, g.kind, g.angle, g.abs_tanh(), pivot});
      report.step_off_norms.push_back(s);
    }
    last_max_pivot = max_pivot;
    report.tanh_envelope.push_back(max_tanh);
    report.cycle_off_norms.push_back(s);
    ++report.cycles;
  }
  return JJacobiResult{std::move(m), std::move(f), std::move(report)};
}

bool envelope_nonincreasing_tail(const JJacobiReport& report) {
  const auto& e = report.tanh_envelope;
  for (std::size_t k = e.size() / 2; k + 1 < e.size(); ++k)
    if (e[k + 1] > e[k]) return false;
  return true;
}

FactoredEigen eigen_from_factored(const Eigen::MatrixXd& l, const SignDiagonal& j_signs, const PivotOrdering& o,
                                  double tol, int max_cycles) {
  if (l.rows() != l.cols()) throw std::invalid_argument("eigen_from_factored: L is not square");
  if (l.rows() != j_signs.n()) throw std::invalid_argument("eigen_from_factored: L and J dimensions differ");
  const double cond = condition_number(l);
  if (!(cond <= kMaxFactorCondition))
    throw IllConditioned("factor is singular or ill-conditioned: cond(L) = " + std::to_string(cond));

  const Eigen::MatrixXd gram = l.transpose() * l;
  SymMatrixd a(static_cast<int>(l.rows()));
  for (int r = 0; r < a.size(); ++r)
    for (int c = r; c < a.size(); ++c) a.set(r, c, gram(r, c));

  JJacobiResult run = run_j_jacobi(a, j_signs, o, tol, max_cycles);
  const Eigen::VectorXd lambda_a = run.lambda.diagonal();
  if ((lambda_a.array() <= 0.0).any())
    throw HyperbolicBreakdown("factored run produced a nonpositive diagonal entry");
  FactoredEigen out{{}, {}, {}, std::move(run)};
  out.eigenvalues = j_signs.vector().cwiseProduct(lambda_a);
  out.eigenvectors = l * out.run.f * lambda_a.cwiseSqrt().cwiseInverse().asDiagonal();

  const Eigen::MatrixXd h = l * j_signs.dense() * l.transpose();
  const double h_norm = Eigen::JacobiSVD<Eigen::MatrixXd>(h).singularValues()(0);
  out.residuals.resize(out.eigenvalues.size());
  for (int k = 0; k < out.eigenvalues.size(); ++k) {
    const Eigen::VectorXd v = out.eigenvectors.col(k);
    out.residuals(k) = (h * v - out.eigenvalues(k) * v).norm() / h_norm;
  }
  return out;
}

std::optional<std::pair<int, int>> proof_pattern(const PivotOrdering& o) {
  if (o.n() != 4) return std::nullopt;
  const auto group = [&](int pos) {
    PivotPair a = o[pos % 6];
    PivotPair b = o[(pos + 1) % 6];
    if (b < a) std::swap(a, b);
    return std::pair{a, b};
  };
  const auto g12 = std::pair{PivotPair(0, 1), PivotPair(2, 3)};
  const auto g13 = std::pair{PivotPair(0, 2), PivotPair(1, 3)};
  const auto g14 = std::pair{PivotPair(0, 3), PivotPair(1, 2)};
  for (int phase = 0; phase < 6; ++phase) {
    if (group(phase) != g12) continue;
    if (group(phase + 2) == g13 && group(phase + 4) == g14) return std::pair{1, phase};
    if (group(phase + 2) == g14 && group(phase + 4) == g13) return std::pair{2, phase};
  }
  return std::nullopt;
}

MonitorVerdict monitor_proof_bounds(const JJacobiReport& report, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.1)) throw std::invalid_argument("monitor: epsilon must lie in (0, 0.1)");
  MonitorVerdict v;
  v.epsilon = epsilon;
  if (report.step_off_norms.empty() || report.step_off_norms.front() == 0.0) {
    v.applicable = true;
    v.thresholds_attained = true;
    v.reason = "initial matrix is diagonal";
    return v;
  }
  const auto pattern = proof_pattern(report.ordering);
  if (!pattern || !report.signs.is_proved_case()) {
    v.reason = "monitor inapplicable: the ordering does not contain the parallel proof pattern"
               " or J is not diag(1, 1, -1, -1)";
    return v;
  }
  v.applicable = true;
  v.pattern = pattern->first;
  v.phase = pattern->second;

  const double eps2 = epsilon * epsilon;
  const auto& steps = report.steps;
  const auto& s = report.step_off_norms;
  const auto sq = [](double x) { return x * x; };
  std::vector<bool> hypotheses;
  for (int r = 0;; ++r) {
    const std::size_t base = static_cast<std::size_t>(v.phase + 6 * r);
    if (base + 8 >= s.size()) break;
    const double piv_a = sq(steps[base + 2].pivot_value) + sq(steps[base + 3].pivot_value);
    const double piv_b = sq(steps[base + 4].pivot_value) + sq(steps[base + 5].pivot_value);
    const double th_a = sq(steps[base + 2].abs_tanh) + sq(steps[base + 3].abs_tanh);
    const double th_b = sq(steps[base + 4].abs_tanh) + sq(steps[base + 5].abs_tanh);
    hypotheses.push_back(std::max({piv_a, piv_b, th_a, th_b}) < eps2 / 2.0);

    MonitorWindow w{r, {}, {}};
    for (int l = 0; l < 4; ++l) {
      w.s2[l] = sq(s[base + 2 + 2 * static_cast<std::size_t>(l)]);
      w.ok[l] = w.s2[l] < kCascadeFactor[l] * std::pow(epsilon, kCascadePower[l]);
    }
    v.windows.push_back(w);
  }
  v.complete_windows = static_cast<int>(v.windows.size());

  int r0 = static_cast<int>(hypotheses.size());
  while (r0 > 0 && hypotheses[static_cast<std::size_t>(r0) - 1]) --r0;
  if (r0 == static_cast<int>(hypotheses.size())) {
    v.reason = "window conditions never hold through the end of the run";
    return v;
  }
  v.thresholds_attained = true;
  v.r0 = r0;
  for (std::size_t k = static_cast<std::size_t>(r0); k < v.windows.size(); ++k)
    for (bool ok : v.windows[k].ok)
      if (!ok) ++v.violations;
  return v;
}

CubicDiagnostic cubic_convergence(const JJacobiReport& report) {
  CubicDiagnostic d;
  d.worst_exponent = 3.0;
  const double scale = report.norm_a;
  if (scale == 0.0) return d;
  const auto& s = report.cycle_off_norms;
  for (std::size_t t = 0; t + 1 < s.size(); ++t) {
    const double now = s[t] / scale;
    const double next = s[t + 1] / scale;
    if (!(now < 1e-2) || now == 0.0) continue;
    if (next <= report.tol) break;
    const double exponent = std::log(next) / std::log(now);
    d.worst_exponent = std::min(d.worst_exponent, exponent);
    ++d.checked;
  }
  d.holds = d.worst_exponent >= 3.0;
  return d;
}

}  // namespace jpl
