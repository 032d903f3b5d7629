#pragma once

#include <string>

#include "json.hpp"

#include "cnb/bounds.hpp"
#include "cnb/campaign.hpp"
#include "cnb/extremal.hpp"
#include "cnb/operators.hpp"

namespace cnb {

// Canonical JSON forms. nlohmann objects keep keys sorted, and every number
// serializes via the shortest round-trip representation, so equal values
// always produce byte-identical dumps; campaign summaries deliberately leave
// out wall-clock fields for the same reason.
nlohmann::json to_json(const Matrix& m);  // array of arrays
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const SpectrumReport& report);
nlohmann::json to_json(const GenericityReport& report);
nlohmann::json to_json(const ExtremalResult& result, double ratio_bw);
nlohmann::json to_json(const CampaignSummary& summary);
nlohmann::json compare_to_json(const std::vector<CompareRow>& rows);

// Flat CSV forms ("%.17g" doubles, 0/1 booleans). Campaign CSV is one row per
// trial and is emitted through the trial sink; the helpers below provide the
// header and row encodings for it.
std::string format_double(double v);
std::string bound_report_csv(const BoundReport& report);
std::string spectrum_report_csv(const SpectrumReport& report);
std::string extremal_csv(const ExtremalResult& result, double ratio_bw);
std::string compare_csv(const std::vector<CompareRow>& rows);
std::string trial_csv_header(const std::vector<CheckId>& checks);
std::string trial_csv_row(const TrialRecord& record);

}  // namespace cnb
