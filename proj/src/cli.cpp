#include "cnb/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "cnb/bounds.hpp"
#include "cnb/campaign.hpp"
#include "cnb/extremal.hpp"
#include "cnb/matrix_io.hpp"
#include "cnb/reports.hpp"
#include "cnb/spectral.hpp"

namespace cnb {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::string format = "json";
  double tol = 1e-9;
  bool quiet = false;
  std::string out_path;
};

void emit(const GlobalOptions& opts, const std::string& payload, std::ostream& out) {
  if (!opts.out_path.empty()) {
    std::ofstream file(opts.out_path);
    if (!file) throw std::runtime_error("cannot write output file: " + opts.out_path);
    file << payload;
  }
  out << payload;
}

std::string json_payload(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutator norm bounds workbench"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--tol", opts.tol, "Equality detection threshold (relative)")
      ->capture_default_str();
  app.add_flag("--quiet", opts.quiet, "Suppress log lines on stderr");
  app.add_option("--out", opts.out_path, "Also write the report to this file");

  // verify
  auto* verify = app.add_subcommand("verify", "Evaluate every applicable bound for a pair (X, Y)");
  std::string x_path, y_path;
  verify->add_option("xfile", x_path, "Matrix X (text or JSON)")->required();
  verify->add_option("yfile", y_path, "Matrix Y (text or JSON)")->required();

  // spectrum
  auto* spectrum = app.add_subcommand(
      "spectrum", "Closed-form block-operator spectrum vs the dense eigensolve");
  std::vector<double> sigma;
  bool perturb = false;
  std::uint64_t spectrum_seed = 1;
  spectrum->add_option("values", sigma, "Singular values (nonnegative)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  spectrum->add_flag("--perturb", perturb, "Nudge non-generic values into a generic point");
  spectrum->add_option("--seed", spectrum_seed, "Perturbation seed");

  // extremal
  auto* extremal = app.add_subcommand("extremal", "Unit-norm Y maximizing ||[X, Y]||");
  std::string ext_path;
  std::string mode = "auto";
  extremal->add_option("xfile", ext_path, "Matrix X (text or JSON)")->required();
  extremal->add_option("--mode", mode, "Solver path")
      ->check(CLI::IsMember({"auto", "dense", "matrix-free"}));

  // campaign
  auto* campaign = app.add_subcommand("campaign", "Seeded Monte Carlo verification campaign");
  int camp_n = 4;
  std::string kind_x = "gaussian", kind_y = "gaussian", checks_csv = "bounds";
  std::uint64_t camp_count = 1000, camp_seed = 1;
  campaign->add_option("--n", camp_n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
  campaign->add_option("--kind-x", kind_x, "X ensemble kind")->capture_default_str();
  campaign->add_option("--kind-y", kind_y, "Y ensemble kind")->capture_default_str();
  campaign->add_option("--count", camp_count, "Trial count")->required()
      ->check(CLI::PositiveNumber);
  campaign->add_option("--seed", camp_seed, "Campaign seed (per-ensemble seeds derive from it)")
      ->required();
  campaign->add_option("--checks", checks_csv, "Comma-separated checks, or 'bounds'/'all'")
      ->capture_default_str();

  // compare
  auto* compare = app.add_subcommand("compare", "Win-rate table of the bound families");
  int cmp_n = 4;
  std::uint64_t cmp_count = 1000, cmp_seed = 1;
  compare->add_option("--n", cmp_n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
  compare->add_option("--count", cmp_count, "Trial count per ensemble")->required()
      ->check(CLI::PositiveNumber);
  compare->add_option("--seed", cmp_seed, "Seed")->required();

  // Global flags remain usable after the subcommand name.
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cnb");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*verify) {
      const Matrix x = read_matrix_file(x_path);
      const Matrix y = read_matrix_file(y_path);
      const BoundReport report = evaluate_all(x, y, opts.tol);
      emit(opts, opts.format == "csv" ? bound_report_csv(report) : json_payload(to_json(report)),
           out);
      for (const auto& e : report.entries) {
        if (e.applicable && report.lhs > e.value * (1.0 + 1e-9)) return kExitViolation;
      }
      return kExitOk;
    }

    if (*spectrum) {
      SpectrumOptions sopts;
      sopts.allow_perturbation = perturb;
      sopts.seed = spectrum_seed;
      SpectrumReport report;
      try {
        report = spectrum_report(sigma, sopts);
      } catch (const GenericityError& e) {
        err << "error: " << e.what() << "\n";
        err << "hint: pass --perturb to nudge the values into a generic point\n";
        return kExitUsage;
      }
      emit(opts,
           opts.format == "csv" ? spectrum_report_csv(report) : json_payload(to_json(report)),
           out);
      const double s1_sq = report.sigma_used[0] * report.sigma_used[0];
      const bool multiplicities_ok = report.multiplicity.size() >= 2 &&
                                     report.multiplicity[0].count == 1 &&
                                     report.multiplicity[1].count == 2;
      if (report.eigenvalue_multiset_distance > 1e-9 * s1_sq ||
          report.max_eigenvector_residual > 1e-10 || !multiplicities_ok) {
        if (!opts.quiet) err << "residual breach in spectrum cross-check\n";
        return kExitViolation;
      }
      return kExitOk;
    }

    if (*extremal) {
      const Matrix x = read_matrix_file(ext_path);
      ExtremalResult result;
      if (mode == "dense") {
        result = find_extremal(x, ExtremalMode::kDense);
      } else if (mode == "matrix-free") {
        result = find_extremal(x, ExtremalMode::kMatrixFree);
      } else {
        result = find_extremal(x);
      }
      const double ratio_bw = result.lambda_max / (2.0 * frobenius_norm_sq(x));
      emit(opts,
           opts.format == "csv" ? extremal_csv(result, ratio_bw)
                                : json_payload(to_json(result, ratio_bw)),
           out);
      const SvdResult s = svd(x);
      const double kyfan_unit = 2.0 * (s.sigma[0] * s.sigma[0] +
                                       (x.dim() > 1 ? s.sigma[1] * s.sigma[1] : 0.0));
      if (result.residual > 1e-8 * std::max(1.0, result.lambda_max) ||
          result.lambda_max > kyfan_unit * (1.0 + 1e-8)) {
        if (!opts.quiet) err << "residual breach in extremal solve\n";
        return kExitViolation;
      }
      return kExitOk;
    }

    if (*campaign) {
      CampaignConfig config;
      config.x = {camp_n, parse_ensemble_kind(kind_x), camp_count, Rng::mix(camp_seed, 0)};
      config.y = {camp_n, parse_ensemble_kind(kind_y), camp_count, Rng::mix(camp_seed, 1)};
      config.checks = parse_check_list(checks_csv);
      config.equality_tol = opts.tol;

      CampaignSummary summary;
      if (opts.format == "csv") {
        std::string rows = trial_csv_header(config.checks);
        summary = run_campaign(config, [&rows](const TrialRecord& r) { rows += trial_csv_row(r); });
        emit(opts, rows, out);
      } else {
        summary = run_campaign(config);
        emit(opts, json_payload(to_json(summary)), out);
      }
      if (!opts.quiet) {
        err << "campaign: " << summary.trials << " trials, " << summary.violations.size()
            << " violations, " << summary.trial_failures << " failures, " << summary.runtime_ms
            << " ms\n";
      }
      return summary.passed() ? kExitOk : kExitViolation;
    }

    if (*compare) {
      const auto rows = run_compare(cmp_n, cmp_count, cmp_seed, opts.tol);
      emit(opts, opts.format == "csv" ? compare_csv(rows) : json_payload(compare_to_json(rows)),
           out);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  return kExitUsage;
}

}  // namespace cnb
