#pragma once

#include "fss/harness.hpp"

#include <string>

namespace fss {

// Report JSON ("fss-report/1"). Key order and number formatting are fixed,
// so equal reports serialize to identical bytes.
std::string report_to_json(const ExperimentReport& report);
// Restores results, failures and plans; summaries are recomputed from the
// per-partition rows.
ExperimentReport report_from_json(const std::string& text);
ExperimentReport load_report(const std::string& path);

// One row per (method, partition) cell.
std::string report_to_csv(const ExperimentReport& report);

// Per-method mean testing MMRE / PRED and selected-feature counts.
std::string format_summary(const ExperimentReport& report);
// Per-method feature ids (with codes) selected in every partition and in at
// least 80% of them; "none" when empty.
std::string format_consistency(const ExperimentReport& report);
// Full min/mean/max table for every phase.
std::string format_aggregates(const ExperimentReport& report);

std::string config_to_json(const ExperimentConfig& cfg);

} // namespace fss
