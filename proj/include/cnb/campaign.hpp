#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnb/ensemble.hpp"

namespace cnb {

// Per-trial checks a campaign can run. Bound checks (bw, kyfan, cdck,
// infnorm) verify lhs <= value at relative slack 1e-9 and report ratio =
// lhs/value. Two-sided checks (gap, scalar) verify lhs <= rhs the same way.
// Identity checks (pythagorean, cov, spectrum) report ratio = residual as a
// fraction of its tolerance, so ratio <= 1 always means pass. extremal checks
// the chain lambda_max <= 2(s1²+s2²) <= 2||X||² and reports ratio =
// lambda_max / (2(s1²+s2²)).
enum class CheckId {
  kBw,
  kKyfan,
  kCdck,
  kGap,
  kInfnorm,
  kPythagorean,
  kScalar,
  kCov,
  kSpectrum,
  kExtremal,
};

CheckId parse_check(std::string_view name);
std::string to_string(CheckId id);

// Comma-separated names, or "all", or "bounds" (the four bound families).
std::vector<CheckId> parse_check_list(std::string_view csv);

struct TrialCheckResult {
  CheckId id = CheckId::kBw;
  bool applicable = false;
  double lhs = 0.0;
  double value = 0.0;
  double ratio = 0.0;
  bool equality = false;
  bool violation = false;
  std::string detail;  // set on violation or per-check error
};

struct TrialRecord {
  std::uint64_t trial = 0;
  int n = 0;
  std::vector<TrialCheckResult> results;
};

struct CheckStats {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t equality_hits = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

struct SpectrumCheckStats {
  std::uint64_t instances = 0;
  double max_residual = 0.0;
};

// Everything needed to replay the offending pair: draw(spec_x, trial) and
// draw(spec_y, trial) with the recorded seeds.
struct ViolationRecord {
  std::string check;
  std::uint64_t trial = 0;
  std::uint64_t seed_x = 0;
  std::uint64_t seed_y = 0;
  std::string detail;
};

struct CampaignConfig {
  EnsembleSpec x;
  EnsembleSpec y;
  std::vector<CheckId> checks;
  double equality_tol = 1e-9;
};

struct CampaignSummary {
  CampaignConfig config;
  std::uint64_t trials = 0;
  std::uint64_t trial_failures = 0;  // per-check module errors, not violations
  std::vector<std::pair<std::string, CheckStats>> checks;  // config order
  std::optional<SpectrumCheckStats> spectrum;
  std::vector<ViolationRecord> violations;
  std::int64_t runtime_ms = 0;  // reported on the console; not part of the canonical JSON

  bool passed() const { return violations.empty() && trial_failures == 0; }
};

using TrialSink = std::function<void(const TrialRecord&)>;

// Runs every requested check on `count` independent (X, Y) pairs. Module
// errors and violations never abort the campaign; they are collected and fail
// the summary at the end. The optional sink receives every trial record (used
// for the flat CSV emission).
CampaignSummary run_campaign(const CampaignConfig& config, const TrialSink& sink = {});

// Win-rate comparison of the bound families over the ensembles where all of
// them compete: gaussian, symmetric and diagonal X against gaussian Y.
struct CompareRow {
  std::string ensemble;
  std::uint64_t trials = 0;
  std::vector<std::pair<std::string, std::uint64_t>> wins;        // tightest-bound counts
  std::vector<std::pair<std::string, double>> mean_ratio;         // per applicable family
};
std::vector<CompareRow> run_compare(int n, std::uint64_t count, std::uint64_t seed,
                                    double equality_tol = 1e-9);

}  // namespace cnb
