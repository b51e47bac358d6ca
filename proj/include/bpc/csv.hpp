#pragma once

#include <string>

#include "bpc/config.hpp"
#include "bpc/coupled.hpp"

namespace bpc {

/// Full-precision float formatting used by every CSV writer (17 significant
/// digits, bitwise reproducible).
std::string format_g17(double v);

void write_timeseries_csv(const std::string& path, const std::vector<DiagRecord>& diag);
void write_snapshot_csv(const std::string& path, const CoupledState& state, int n_points);

struct ReportRow {
    std::string scenario;
    StrategyReport report;
};
void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows);

void write_manifest(const std::string& path, const IniDoc& doc);

/// "u_<t>.csv" with a compact time tag.
std::string snapshot_filename(double t);

} // namespace bpc
