#include "jpl/campaign.hpp"

#include "jpl/io.hpp"
#include "jpl/random.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <thread>

namespace jpl {

int CampaignReport::total_violations() const {
  int total = 0;
  for (const CampaignRow& r : rows) total += r.violations;
  return total;
}

CampaignReport verification_campaign(const CampaignConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("campaign: samples must be at least 1");
  for (const PivotOrdering& o : config.orderings)
    if (o.n() != 4) throw std::invalid_argument("campaign: orderings must be over four indices");

  Rng rng(config.seed);
  std::vector<SymMatrixd> matrices;
  matrices.reserve(static_cast<std::size_t>(config.samples));
  for (int k = 0; k < config.samples; ++k) matrices.push_back(random_symmetric(rng, 4));

  CampaignReport report{config.seed, config.samples, config.mode, {}};
  report.rows.resize(config.orderings.size(), CampaignRow{0, config.orderings.empty() ? o_par() : config.orderings[0], "", {}, 0, 0, 0, 0, 0});

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(std::max(1u, config.jobs));
  const auto work = [&](unsigned w) {
    try {
      for (std::size_t k = next++; k < config.orderings.size(); k = next++) {
        const PivotOrdering& o = config.orderings[k];
        const ClassificationRecord rec = classify(o);
        CampaignRow row{static_cast<int>(k) + 1, o, label_name(rec.label), {}, 0, 0, 0, 0, 0};
        row.bound = config.mode == BoundMode::Classified ? rec.bound : universal_bound();
        const int cycles = std::max(config.cycles, row.bound.t0 + row.bound.tau);
        for (const SymMatrixd& a : matrices) {
          const SweepReport run = run_cycles(a, o, cycles);
          const BoundCheck check = evaluate_bound(run, row.bound);
          row.worst_ratio = std::max(row.worst_ratio, check.observed_worst_ratio);
          row.worst_ratio_squared = std::max(row.worst_ratio_squared, check.observed_worst_ratio_squared);
          if (!check.pass) ++row.violations;
          row.worst_step_identity = std::max(row.worst_step_identity, step_identity_error(run));
          row.worst_off_norm_increase = std::max(row.worst_off_norm_increase, off_norm_increase(run));
        }
        report.rows[k] = std::move(row);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  const unsigned jobs = std::max(1u, config.jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 1; w < jobs; ++w) workers.emplace_back(work, w);
  work(0);
  for (auto& t : workers) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return report;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string campaign_csv(const CampaignReport& report) {
  std::string out;
  out += "# seed=" + std::to_string(report.seed) + " samples=" + std::to_string(report.samples) +
         " rng=" + kRngAlgorithm + " bound=" + (report.mode == BoundMode::Classified ? "classified" : "universal") +
         " slack=" + fmt(kBoundSlack) + "\n";
  out += "ordering,label,gamma,tau,t0,worst_ratio,violations\n";
  for (const CampaignRow& r : report.rows) {
    out += "\"" + format_ordering(r.ordering) + "\",\"" + r.label + "\"," + fmt(r.bound.gamma) + "," +
           std::to_string(r.bound.tau) + "," + std::to_string(r.bound.t0) + "," + fmt(r.worst_ratio) + "," +
           std::to_string(r.violations) + "\n";
  }
  return out;
}

}  // namespace jpl
