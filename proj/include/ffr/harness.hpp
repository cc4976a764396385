#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ffr/resultant.hpp"
#include "ffr/varieties.hpp"

namespace ffr {

// Reproducible sweep configuration. Per-trial seeds are derived from the
// master seed and the row counter, so any row can be replayed in isolation.
struct ExperimentConfig {
  int p = 5;
  int n = 1;
  int d = 2;
  int k = 3;
  std::string variety = "sphere:1";  // sphere:J | paraboloid | poly:EXPR
  double threshold_constant = 4.0;
  std::optional<std::array<long long, 3>> sizes;  // lo, hi, step; default: just the threshold
  int trials = 20;
  std::uint64_t seed = 0;
  bool exhaustive = false;               // enumerate every subset (tiny |V| only)
  std::uint64_t exhaustive_cap = 2000000;
};

struct TrialResult {
  std::uint32_t q = 0;
  int d = 0;
  int k = 0;
  std::string variety;
  std::size_t size = 0;
  int trial = 0;  // -1 marks an injected control row
  bool covers_star = false;
  bool covers_full = false;
  long long missing = 0;  // against the sweep's coverage target
  std::uint64_t seed = 0;
};

struct SizeSummary {
  std::size_t size = 0;
  bool meets_threshold = false;
  int trials = 0;
  int covered = 0;  // trials that met the coverage target
  std::optional<std::uint64_t> exhaustive_checked;
  std::optional<std::uint64_t> exhaustive_violations;
  std::string note;
};

struct SweepResult {
  std::string theorem;  // "t1" | "t2"
  ExperimentConfig config;
  std::uint32_t q = 0;
  std::string variety_name;
  double exponent = 0.0;
  long long threshold_size = 0;   // ceil(C * q^exponent)
  long long effective_threshold = 0;  // clamped to |V|
  bool clamped = false;
  std::size_t variety_size = 0;
  bool regularity_certified = false;
  RegularityReport regularity;
  bool coverage_target_full = false;  // otherwise F_q^*
  std::vector<TrialResult> rows;
  std::vector<SizeSummary> summaries;
  std::vector<std::string> notes;

  bool all_trials_covered() const;
  std::string to_csv() const;
};

// uniform sample without replacement via a seeded partial Fisher-Yates
// shuffle of the sorted member list
PointSet sample_subset(const PointSet& variety, std::size_t size, std::uint64_t seed);

// resolves "sphere:J" / "paraboloid" / "poly:EXPR"; fills the defining
// polynomial when one is available
PointSet build_variety(FieldPtr field, int d, const std::string& spec,
                       std::optional<PolynomialExpr>* poly_out = nullptr);

// randomized coverage evidence for the regular-variety sweep (k >= 3):
// threshold exponent (d-1)/2 + 1/(k-1), target F_q^* for even d and F_q
// for odd d
SweepResult run_theorem1_sweep(const ExperimentConfig& config);

// nondegenerate-curve sweep (d = 2, k >= 4): threshold exponent
// 1/2 + 1/(2k-4), target F_q^*; a linear factor in the defining polynomial
// is a hard error
SweepResult run_theorem2_sweep(const ExperimentConfig& config);

struct SharpnessCase {
  std::string construction;  // sharp-odd | isotropic | subfield
  std::uint32_t q = 0;
  int d = 0;
  int k = 0;
  std::size_t expected_size = 0;
  std::size_t actual_size = 0;
  std::string expected;
  std::string observed;
  bool pass = false;
  bool skipped = false;
  std::string reason;
};

struct SharpnessReport {
  std::vector<SharpnessCase> cases;
  bool all_pass() const;
};

// deterministic side of the evidence: the three extremal constructions with
// their exact resultant-set outcomes
SharpnessReport run_sharpness_suite(const std::vector<std::uint32_t>& field_orders, int d,
                                    const std::vector<int>& ks);

struct ThresholdResult {
  bool transition_found = false;
  std::size_t threshold_size = 0;
  double log_q_threshold = 0.0;
  double exponent_regular = 0.0;            // (d-1)/2 + 1/(k-1)
  std::optional<double> exponent_curve;     // 1/2 + 1/(2k-4) when d = 2, k >= 4
  bool verified_at_threshold = false;
  std::optional<bool> failed_at_half;
  std::size_t variety_size = 0;
  bool regularity_certified = false;
  std::vector<std::string> notes;
};

// binary search for the smallest size at which all seeded trials meet the
// coverage target; endpoints are re-verified since monotonicity is not
// assumed
ThresholdResult threshold_search(const PointSet& variety, int k, int trials, std::uint64_t seed);

}  // namespace ffr
