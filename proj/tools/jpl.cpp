// Command-line front end: classify, solve, jsolve, verify.

#include "jpl/campaign.hpp"
#include "jpl/classification.hpp"
#include "jpl/errors.hpp"
#include "jpl/io.hpp"
#include "jpl/jacobi.hpp"
#include "jpl/jjacobi.hpp"
#include "jpl/random.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using json = nlohmann::ordered_json;
using namespace jpl;

enum Exit { kOk = 0, kViolation = 1, kInputError = 2, kNumerical = 3 };

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

json mat_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (int r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r).transpose()));
  return a;
}

// Column by column: (1,2), (1,3), (2,3), (1,4), ...
PivotOrdering column_cyclic(int n) {
  std::vector<PivotPair> seq;
  for (int s = 1; s < n; ++s)
    for (int r = 0; r < s; ++r) seq.emplace_back(r, s);
  return PivotOrdering(n, std::move(seq));
}

PivotOrdering ordering_or_default(const std::string& text, int n) {
  if (text.empty()) return column_cyclic(n);
  PivotOrdering o = parse_ordering(text);
  if (o.n() != n)
    throw ParseError("ordering is over " + std::to_string(o.n()) + " indices but the matrix has size " +
                     std::to_string(n));
  return o;
}

unsigned resolve_jobs(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("JPL_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    throw ParseError(std::string("JPL_JOBS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

json certificate_json(const Certificate& c) {
  json steps = json::array();
  for (const RelationStep& s : c.steps) {
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, AdjacentTranspose>) steps.push_back({{"transpose", st.position}});
          else if constexpr (std::is_same_v<T, CyclicShift>) steps.push_back({{"shift", st.length}});
          else steps.push_back({{"permute", format_permutation(st.q)}});
        },
        s);
  }
  return {{"source", format_ordering(c.source)}, {"steps", steps}, {"target", format_ordering(c.target)},
          {"text", format_certificate(c)}};
}

// ---- classify ---------------------------------------------------------------

struct ClassifyArgs {
  bool all = false;
  bool c0 = false;
  bool catalog = false;
  std::string ordering;
  std::string format = "csv";
  std::string out;
  int jobs = 0;
};

int cmd_classify(const ClassifyArgs& args) {
  if (args.catalog) {
    const CatalogReport report = verify_catalog();
    const auto& catalog = reference_catalog();
    std::string text;
    if (args.format == "json") {
      json entries = json::array();
      for (std::size_t k = 0; k < report.entries.size(); ++k) {
        const CatalogCheck& c = report.entries[k];
        entries.push_back({{"index", c.index},
                           {"ordering", format_ordering(catalog[k].ordering)},
                           {"endpoint", endpoint_name(catalog[k].endpoint)},
                           {"chain", certificate_json(catalog[k].chain)},
                           {"label", c.label},
                           {"chain_parameter", c.chain_parameter},
                           {"classified_parameter", c.classified_parameter},
                           {"ok", c.ok()},
                           {"message", c.message}});
      }
      json doc = {{"entries", entries},
                  {"counts",
                   {{"column", report.column},
                    {"row", report.row},
                    {"reverse_column", report.reverse_column},
                    {"reverse_row", report.reverse_row},
                    {"generalized_serial", report.generalized},
                    {"parallel", report.parallel}}},
                  {"covers_c0", report.covers_c0},
                  {"ok", report.ok()}};
      text = doc.dump(2) + "\n";
    } else {
      text = "index,ordering,endpoint,label,chain_parameter,classified_parameter,ok,message\n";
      for (std::size_t k = 0; k < report.entries.size(); ++k) {
        const CatalogCheck& c = report.entries[k];
        text += std::to_string(c.index) + ",\"" + format_ordering(catalog[k].ordering) + "\",\"" +
                endpoint_name(catalog[k].endpoint) + "\",\"" + c.label + "\"," + std::to_string(c.chain_parameter) +
                "," + std::to_string(c.classified_parameter) + "," + (c.ok() ? "1" : "0") + ",\"" + c.message + "\"\n";
      }
    }
    emit(text, args.out);
    std::cerr << "catalog: " << report.entries.size() << " entries, column " << report.column << ", reverse-row "
              << report.reverse_row << ", row " << report.row << ", generalized serial " << report.generalized
              << ", parallel " << report.parallel << (report.ok() ? ", verified\n" : ", FAILED\n");
    return report.ok() ? kOk : kViolation;
  }

  std::vector<ClassificationRecord> records;
  if (!args.ordering.empty()) {
    records.push_back(classify(parse_ordering(args.ordering)));
  } else if (args.c0) {
    for (const CatalogEntry& e : reference_catalog()) records.push_back(classify(e.ordering));
  } else {
    records = classify_all(resolve_jobs(args.jobs));
  }

  std::string text;
  if (args.format == "json") {
    json rows = json::array();
    for (const auto& r : records) {
      rows.push_back({{"ordering", format_ordering(r.ordering)},
                      {"label", label_name(r.label)},
                      {"parameter", label_parameter(r.label)},
                      {"gamma", r.bound.gamma},
                      {"tau", r.bound.tau},
                      {"t0", r.bound.t0},
                      {"certificate", certificate_json(r.certificate)}});
    }
    text = rows.dump(2) + "\n";
  } else {
    text = "ordering,label,parameter,gamma,tau,t0\n";
    for (const auto& r : records)
      text += "\"" + format_ordering(r.ordering) + "\",\"" + label_name(r.label) + "\"," +
              std::to_string(label_parameter(r.label)) + "," + fmt(r.bound.gamma) + "," + std::to_string(r.bound.tau) +
              "," + std::to_string(r.bound.t0) + "\n";
  }
  emit(text, args.out);
  return kOk;
}

// ---- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string matrix;
  std::string ordering;
  int cycles = 10;
  double tol = 1e-12;
  bool steps = false;
  std::string report;
};

int cmd_solve(const SolveArgs& args) {
  const SymMatrixd a = parse_sym_matrix(read_text_file(args.matrix));
  const PivotOrdering o = ordering_or_default(args.ordering, a.size());
  const SweepReport run = run_cycles(a, o, args.cycles);

  const double final_off = run.cycle_off_norms.back();
  const bool converged = final_off <= args.tol * a.frobeniusNorm();
  Eigen::VectorXd eig = run.final_matrix.diagonal();
  std::sort(eig.data(), eig.data() + eig.size());

  json doc = {{"n", a.size()},
              {"ordering", format_ordering(o)},
              {"cycles_requested", run.cycles_requested},
              {"cycles_executed", run.cycles_executed},
              {"cycle_off_norms", run.cycle_off_norms},
              {"final_diagonal", vec_json(run.final_matrix.diagonal())},
              {"eigenvalues", vec_json(eig)},
              {"step_identity_error", step_identity_error(run)},
              {"off_norm_increase", off_norm_increase(run)},
              {"tol", args.tol},
              {"converged", converged}};
  if (args.steps) {
    json steps = json::array();
    for (const StepRecord& s : run.steps)
      steps.push_back({{"pivot", {s.pivot.r + 1, s.pivot.s + 1}},
                       {"pivot_value", s.pivot_value},
                       {"phi", s.phi},
                       {"off_before", s.off_before},
                       {"off_after", s.off_after}});
    doc["steps"] = steps;
  }
  emit(doc.dump(2) + "\n", args.report);
  if (!converged) {
    std::cerr << "solve: off-norm " << fmt(final_off) << " above tol after " << run.cycles_executed << " cycles\n";
    return kNumerical;
  }
  return kOk;
}

// ---- jsolve -----------------------------------------------------------------

struct JSolveArgs {
  std::string l;
  std::string a;
  std::string j;
  std::string ordering;
  double tol = kDefaultJTol;
  int max_cycles = kDefaultMaxCycles;
  double monitor = 0;
  std::string report;
};

json j_report_json(const JJacobiReport& r) {
  return {{"ordering", format_ordering(r.ordering)},
          {"J", r.signs.str()},
          {"proved_case", r.proved_case},
          {"note", r.proved_case ? "" : "outside the proved sign pattern diag(+1 +1 -1 -1)"},
          {"tol", r.tol},
          {"norm_a", r.norm_a},
          {"cycles", r.cycles},
          {"converged", r.converged},
          {"cycle_off_norms", r.cycle_off_norms},
          {"tanh_envelope", r.tanh_envelope},
          {"envelope_nonincreasing_tail", envelope_nonincreasing_tail(r)}};
}

int cmd_jsolve(const JSolveArgs& args) {
  if (args.l.empty() == args.a.empty()) throw ParseError("jsolve: give exactly one of --L and --A");

  std::optional<SignDiagonal> signs;
  if (!args.j.empty()) signs = SignDiagonal::parse(args.j);

  json doc;
  JJacobiReport const* report = nullptr;
  std::optional<FactoredEigen> factored;
  std::optional<JJacobiResult> direct;
  if (!args.l.empty()) {
    Eigen::MatrixXd l;
    if (args.l == "identity") {
      l = Eigen::MatrixXd::Identity(signs ? signs->n() : 4, signs ? signs->n() : 4);
    } else {
      l = parse_square_matrix(read_text_file(args.l));
    }
    if (!signs) signs = l.rows() == 4 ? SignDiagonal::standard() : throw ParseError("jsolve: --J is required for n != 4");
    const PivotOrdering o = ordering_or_default(args.ordering, static_cast<int>(l.rows()));
    factored = eigen_from_factored(l, *signs, o, args.tol, args.max_cycles);
    report = &factored->run.report;
    doc = j_report_json(*report);
    doc["eigenvalues"] = vec_json(factored->eigenvalues);
    doc["eigenvectors"] = mat_json(factored->eigenvectors);
    doc["residuals"] = vec_json(factored->residuals);
  } else {
    const SymMatrixd a = parse_sym_matrix(read_text_file(args.a));
    if (!signs) signs = a.size() == 4 ? SignDiagonal::standard() : throw ParseError("jsolve: --J is required for n != 4");
    const PivotOrdering o = ordering_or_default(args.ordering, a.size());
    direct = run_j_jacobi(a, *signs, o, args.tol, args.max_cycles);
    report = &direct->report;
    doc = j_report_json(*report);
    doc["eigenvalues"] = vec_json(signs->vector().cwiseProduct(direct->lambda.diagonal()));
    doc["F"] = mat_json(direct->f);
  }

  int code = kOk;
  if (args.monitor != 0) {
    const MonitorVerdict v = monitor_proof_bounds(*report, args.monitor);
    json windows = json::array();
    for (const MonitorWindow& w : v.windows)
      windows.push_back({{"r", w.r},
                         {"s2", {w.s2[0], w.s2[1], w.s2[2], w.s2[3]}},
                         {"ok", {w.ok[0], w.ok[1], w.ok[2], w.ok[3]}}});
    doc["monitor"] = {{"epsilon", v.epsilon},         {"applicable", v.applicable},
                      {"reason", v.reason},           {"pattern", v.pattern},
                      {"phase", v.phase},             {"thresholds_attained", v.thresholds_attained},
                      {"r0", v.r0},                   {"complete_windows", v.complete_windows},
                      {"violations", v.violations},   {"windows", windows}};
    if (v.applicable && v.violations > 0) code = kViolation;
  }
  const CubicDiagnostic cubic = cubic_convergence(*report);
  doc["cubic_diagnostic"] = {{"checked", cubic.checked}, {"worst_exponent", cubic.worst_exponent}, {"holds", cubic.holds}};

  emit(doc.dump(2) + "\n", args.report);
  if (!report->converged) {
    std::cerr << "jsolve: no convergence within " << args.max_cycles << " cycles, final off-norm "
              << fmt(report->cycle_off_norms.back()) << "\n";
    return kNumerical;
  }
  return code;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = 0;
  int samples = 100;
  std::vector<std::string> orderings{"all"};
  std::string bound = "classified";
  std::string out;
  int cycles = 8;
  int jobs = 0;
};

std::vector<PivotOrdering> select_orderings(const std::vector<std::string>& sel) {
  const std::string& kind = sel.at(0);
  std::vector<PivotOrdering> out;
  if (kind == "list") {
    if (sel.size() != 2) throw ParseError("--orderings list needs a file name");
    std::istringstream in(read_text_file(sel[1]));
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
      out.push_back(parse_ordering(line));
    }
    if (out.empty()) throw ParseError("ordering list is empty");
    return out;
  }
  if (sel.size() != 1) throw ParseError("--orderings " + kind + " takes no file");
  if (kind == "c0") {
    for (const CatalogEntry& e : reference_catalog()) out.push_back(e.ordering);
    return out;
  }
  if (kind != "all" && kind != "serial" && kind != "parallel")
    throw ParseError("--orderings must be all, c0, serial, parallel or list FILE");
  for (const PivotOrdering& o : enumerate_orderings(4)) {
    if (kind == "serial" && !member_serial_perm(o)) continue;
    if (kind == "parallel" && !std::holds_alternative<Parallel>(classify(o).label)) continue;
    out.push_back(o);
  }
  return out;
}

int cmd_verify(const VerifyArgs& args) {
  CampaignConfig cfg;
  cfg.seed = args.seed;
  cfg.samples = args.samples;
  cfg.orderings = select_orderings(args.orderings);
  cfg.mode = args.bound == "universal" ? BoundMode::Universal : BoundMode::Classified;
  cfg.cycles = args.cycles;
  cfg.jobs = resolve_jobs(args.jobs);
  const CampaignReport report = verification_campaign(cfg);
  emit(campaign_csv(report), args.out);
  const int violations = report.total_violations();
  std::cerr << "verify: seed " << args.seed << ", " << report.rows.size() << " orderings x " << args.samples
            << " matrices, " << violations << " violations\n";
  return violations == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic Jacobi and J-Jacobi eigensolvers with pivot-ordering classification"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "Classify pivot orderings of P_4 and verify the catalog");
  auto* all_flag = classify_cmd->add_flag("--all", ca.all, "All 720 orderings (default)");
  auto* c0_flag = classify_cmd->add_flag("--c0", ca.c0, "The 120 catalog orderings starting with (1,2)");
  auto* ord_opt = classify_cmd->add_option("--ordering", ca.ordering, "One ordering, e.g. \"1 2, 1 3, 2 3, 1 4, 2 4, 3 4\"");
  auto* cat_flag = classify_cmd->add_flag("--catalog", ca.catalog, "Replay and check all 120 catalog chains");
  all_flag->excludes(c0_flag, ord_opt, cat_flag);
  c0_flag->excludes(ord_opt, cat_flag);
  ord_opt->excludes(cat_flag);
  classify_cmd->add_option("--format", ca.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  classify_cmd->add_option("--out", ca.out, "Output file (default stdout)");
  classify_cmd->add_option("--jobs", ca.jobs, "Worker threads (default JPL_JOBS or all cores)");

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Run cyclic Jacobi sweeps on a symmetric matrix");
  solve_cmd->add_option("--matrix", sa.matrix, "Row-major symmetric matrix file")->required();
  solve_cmd->add_option("--ordering", sa.ordering, "Pivot ordering (default column-cyclic)");
  solve_cmd->add_option("--cycles", sa.cycles, "Number of cycles")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--tol", sa.tol, "Final off-norm tolerance relative to ||A||_F");
  solve_cmd->add_flag("--steps", sa.steps, "Include per-step records");
  solve_cmd->add_option("--report", sa.report, "JSON report file (default stdout)");

  JSolveArgs ja;
  auto* jsolve_cmd = app.add_subcommand("jsolve", "J-Jacobi method for a definite pair (A, J)");
  auto* l_opt = jsolve_cmd->add_option("--L", ja.l, "Factor L of H = L J L^T (file, or 'identity')");
  auto* a_opt = jsolve_cmd->add_option("--A", ja.a, "Positive definite A (file)");
  l_opt->excludes(a_opt);
  jsolve_cmd->add_option("--J", ja.j, "Signs, e.g. \"+1 +1 -1 -1\" (default for n = 4)");
  jsolve_cmd->add_option("--ordering", ja.ordering, "Pivot ordering (default column-cyclic)");
  jsolve_cmd->add_option("--tol", ja.tol, "Off-norm tolerance relative to ||A||_F")->check(CLI::PositiveNumber);
  jsolve_cmd->add_option("--max-cycles", ja.max_cycles, "Cycle limit")->check(CLI::NonNegativeNumber);
  jsolve_cmd->add_option("--monitor", ja.monitor, "Check the window cascade with this epsilon in (0, 0.1)");
  jsolve_cmd->add_option("--report", ja.report, "JSON report file (default stdout)");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Seeded campaign checking convergence bounds");
  verify_cmd->add_option("--seed", va.seed, "RNG seed")->required();
  verify_cmd->add_option("--samples", va.samples, "Random matrices per ordering")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--orderings", va.orderings, "all | c0 | serial | parallel | list FILE")->expected(1, 2);
  verify_cmd->add_option("--bound", va.bound, "classified or universal")
      ->check(CLI::IsMember({"classified", "universal"}));
  verify_cmd->add_option("--cycles", va.cycles, "Cycles per run")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", va.out, "CSV output file (default stdout)");
  verify_cmd->add_option("--jobs", va.jobs, "Worker threads (default JPL_JOBS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*classify_cmd) return cmd_classify(ca);
    if (*solve_cmd) return cmd_solve(sa);
    if (*jsolve_cmd) return cmd_jsolve(ja);
    if (*verify_cmd) return cmd_verify(va);
  } catch (const HyperbolicBreakdown& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const IllConditioned& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const ClassificationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
