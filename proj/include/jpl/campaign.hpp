#pragma once

#include "jpl/classification.hpp"
#include "jpl/jacobi.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace jpl {

enum class BoundMode { Classified, Universal };

struct CampaignConfig {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<PivotOrdering> orderings;
  BoundMode mode = BoundMode::Classified;
  /// Cycles per run; raised to t0 + tau when a bound needs more.
  int cycles = 8;
  unsigned jobs = 1;
};

struct CampaignRow {
  int index;
  PivotOrdering ordering;
  std::string label;
  ConvergenceBound bound;
  double worst_ratio = 0;
  double worst_ratio_squared = 0;
  int violations = 0;
  double worst_step_identity = 0;
  double worst_off_norm_increase = 0;
};

struct CampaignReport {
  std::uint64_t seed;
  int samples;
  BoundMode mode;
  std::vector<CampaignRow> rows;

  int total_violations() const;
};

/// Draws `samples` matrices from random_symmetric(Rng(seed), 4) in sequence,
/// then runs every ordering on every matrix. Rows follow the input order.
CampaignReport verification_campaign(const CampaignConfig& config);

std::string campaign_csv(const CampaignReport& report);

}  // namespace jpl
