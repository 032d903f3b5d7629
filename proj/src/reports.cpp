#include "cnb/reports.hpp"

#include <cstdio>

namespace cnb {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json b{{"name", e.name}, {"applicable", e.applicable}};
    if (e.applicable) {
      b["value"] = e.value;
      b["ratio"] = e.ratio;
      b["equality"] = e.equality;
    }
    bounds.push_back(std::move(b));
  }
  return nlohmann::json{
      {"n", report.n}, {"lhs", report.lhs}, {"bounds", std::move(bounds)}, {"tightest", report.tightest}};
}

nlohmann::json to_json(const GenericityReport& report) {
  return nlohmann::json{{"is_generic", report.is_generic},
                        {"violations", report.violations},
                        {"suggested_perturbation", report.suggested_perturbation}};
}

nlohmann::json to_json(const SpectrumReport& report) {
  nlohmann::json predicted = nlohmann::json::array();
  for (const auto& p : report.predicted) {
    predicted.push_back(
        {{"value", p.value}, {"kind", to_string(p.kind)}, {"i", p.i}, {"j", p.j}});
  }
  nlohmann::json multiplicity = nlohmann::json::array();
  for (const auto& c : report.multiplicity) {
    multiplicity.push_back({{"value", c.value}, {"count", c.count}});
  }
  nlohmann::json j{{"n", report.n},
                   {"sigma", report.sigma_input},
                   {"sigma_used", report.sigma_used},
                   {"perturbed", report.perturbed},
                   {"predicted", std::move(predicted)},
                   {"computed", report.computed},
                   {"eigenvalue_multiset_distance", report.eigenvalue_multiset_distance},
                   {"max_eigenvector_residual", report.max_eigenvector_residual},
                   {"multiplicity", std::move(multiplicity)}};
  if (report.certification) {
    const auto& c = *report.certification;
    j["second_pair_certification"] = {{"eigenvalue", c.eigenvalue},
                                      {"derived_coefficient", c.derived_coefficient},
                                      {"derived_residual", c.derived_residual},
                                      {"mirrored_coefficient", c.mirrored_coefficient},
                                      {"mirrored_residual", c.mirrored_residual}};
  }
  return j;
}

nlohmann::json to_json(const ExtremalResult& result, double ratio_bw) {
  return nlohmann::json{{"n", result.y_star.dim()},
                        {"lambda_max", result.lambda_max},
                        {"ratio_bw", ratio_bw},
                        {"residual", result.residual},
                        {"iterations", result.iterations},
                        {"y_star", to_json(result.y_star)}};
}

nlohmann::json to_json(const CampaignSummary& summary) {
  nlohmann::json checks_requested = nlohmann::json::array();
  for (CheckId id : summary.config.checks) checks_requested.push_back(to_string(id));
  nlohmann::json campaign{{"n", summary.config.x.n},
                          {"kind_x", to_string(summary.config.x.kind)},
                          {"kind_y", to_string(summary.config.y.kind)},
                          {"count", summary.config.x.count},
                          {"seed_x", summary.config.x.seed},
                          {"seed_y", summary.config.y.seed},
                          {"checks", std::move(checks_requested)},
                          {"tol", summary.config.equality_tol}};

  nlohmann::json checks;
  for (const auto& [name, s] : summary.checks) {
    checks[name] = {{"checked", s.checked},
                    {"violations", s.violations},
                    {"max_ratio", s.max_ratio},
                    {"mean_ratio", s.mean_ratio},
                    {"equality_hits", s.equality_hits}};
  }

  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : summary.violations) {
    violations.push_back({{"check", v.check},
                          {"trial", v.trial},
                          {"seed_x", v.seed_x},
                          {"seed_y", v.seed_y},
                          {"detail", v.detail}});
  }

  nlohmann::json j{{"campaign", std::move(campaign)},
                   {"trials", summary.trials},
                   {"failures", summary.trial_failures},
                   {"checks", std::move(checks)},
                   {"violations", std::move(violations)},
                   {"passed", summary.passed()}};
  if (summary.spectrum) {
    j["spectrum_check"] = {{"instances", summary.spectrum->instances},
                           {"max_residual", summary.spectrum->max_residual}};
  }
  return j;
}

nlohmann::json compare_to_json(const std::vector<CompareRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json wins, ratios;
    for (const auto& [name, w] : row.wins) wins[name] = w;
    for (const auto& [name, r] : row.mean_ratio) ratios[name] = r;
    out.push_back({{"ensemble", row.ensemble},
                   {"trials", row.trials},
                   {"wins", std::move(wins)},
                   {"mean_ratio", std::move(ratios)}});
  }
  return out;
}

std::string bound_report_csv(const BoundReport& report) {
  std::string header = "n,lhs";
  std::string row = std::to_string(report.n) + "," + format_double(report.lhs);
  for (const auto& e : report.entries) {
    header += "," + e.name + "_applicable," + e.name + "_value," + e.name + "_ratio," + e.name +
              "_equality";
    if (e.applicable) {
      row += ",1," + format_double(e.value) + "," + format_double(e.ratio) + "," +
             (e.equality ? "1" : "0");
    } else {
      row += ",0,,,";
    }
  }
  header += ",tightest";
  row += "," + report.tightest;
  return header + "\n" + row + "\n";
}

std::string spectrum_report_csv(const SpectrumReport& report) {
  std::string out = "index,predicted,computed,kind,i,j\n";
  for (size_t k = 0; k < report.predicted.size(); ++k) {
    const auto& p = report.predicted[k];
    out += std::to_string(k) + "," + format_double(p.value) + "," +
           format_double(report.computed[k]) + "," + to_string(p.kind) + "," +
           std::to_string(p.i) + "," + std::to_string(p.j) + "\n";
  }
  return out;
}

std::string extremal_csv(const ExtremalResult& result, double ratio_bw) {
  return "n,lambda_max,ratio_bw,residual,iterations\n" + std::to_string(result.y_star.dim()) +
         "," + format_double(result.lambda_max) + "," + format_double(ratio_bw) + "," +
         format_double(result.residual) + "," + std::to_string(result.iterations) + "\n";
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::string out = "ensemble,family,wins,win_rate,mean_ratio\n";
  for (const auto& row : rows) {
    for (size_t k = 0; k < row.wins.size(); ++k) {
      const double rate =
          row.trials > 0 ? static_cast<double>(row.wins[k].second) / row.trials : 0.0;
      out += row.ensemble + "," + row.wins[k].first + "," + std::to_string(row.wins[k].second) +
             "," + format_double(rate) + "," + format_double(row.mean_ratio[k].second) + "\n";
    }
  }
  return out;
}

std::string trial_csv_header(const std::vector<CheckId>& checks) {
  std::string out = "trial,n";
  for (CheckId id : checks) {
    const std::string name = to_string(id);
    out += "," + name + "_applicable," + name + "_lhs," + name + "_value," + name + "_ratio," +
           name + "_equality," + name + "_violation";
  }
  return out + "\n";
}

std::string trial_csv_row(const TrialRecord& record) {
  std::string out = std::to_string(record.trial) + "," + std::to_string(record.n);
  for (const auto& r : record.results) {
    if (r.applicable) {
      out += ",1," + format_double(r.lhs) + "," + format_double(r.value) + "," +
             format_double(r.ratio) + "," + (r.equality ? "1" : "0") + "," +
             (r.violation ? "1" : "0");
    } else {
      out += ",0,,,,,";
    }
  }
  return out + "\n";
}

}  // namespace cnb
