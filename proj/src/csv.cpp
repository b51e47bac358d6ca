#include "bpc/csv.hpp"

#include <cstdio>
#include <fstream>

#include "bpc/norms.hpp"

namespace bpc {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

const char* phase_name(StrategyPhase p) {
    switch (p) {
    case StrategyPhase::Smoothing: return "smoothing";
    case StrategyPhase::Tracking: return "tracking";
    case StrategyPhase::Hold: return "hold";
    default: return "none";
    }
}

} // namespace

void write_timeseries_csv(const std::string& path, const std::vector<DiagRecord>& diag) {
    auto f = open_out(path);
    f << "t,h,ell,g,l2_norm,linf_norm,energy,jump\n";
    for (const auto& d : diag)
        f << format_g17(d.t) << ',' << format_g17(d.h) << ',' << format_g17(d.ell) << ','
          << format_g17(d.g) << ',' << format_g17(d.l2) << ',' << format_g17(d.linf) << ','
          << format_g17(d.energy) << ',' << format_g17(d.jump) << '\n';
}

void write_snapshot_csv(const std::string& path, const CoupledState& state, int n_points) {
    auto f = open_out(path);
    f << "x,u\n";
    for (const auto& [x, u] : reconstruct_physical(state, n_points))
        f << format_g17(x) << ',' << format_g17(u) << '\n';
}

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
    auto f = open_out(path);
    f << "scenario,pass,failed_phase,T0,T1,T2,delta,h_target,err_h,err_ell,l2,linf,"
         "handoff_err_h,handoff_err_ell,ref_h_min,ref_h_max,smoothing_h1,smoothing_retries\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        f << row.scenario << ',' << (r.pass ? 1 : 0) << ',' << phase_name(r.failed_phase) << ','
          << format_g17(r.T0) << ',' << format_g17(r.T1) << ',' << format_g17(r.T2) << ','
          << format_g17(r.delta) << ',' << format_g17(r.h_target) << ',' << format_g17(r.err_h)
          << ',' << format_g17(r.err_ell) << ',' << format_g17(r.l2) << ',' << format_g17(r.linf)
          << ',' << format_g17(r.handoff_err_h) << ',' << format_g17(r.handoff_err_ell) << ','
          << format_g17(r.ref_h_min) << ',' << format_g17(r.ref_h_max) << ','
          << format_g17(r.smoothing_h1) << ',' << r.smoothing_retries << '\n';
    }
}

void write_manifest(const std::string& path, const IniDoc& doc) {
    auto f = open_out(path);
    f << doc.serialize();
}

std::string snapshot_filename(double t) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "u_%.6g.csv", t);
    return buf;
}

} // namespace bpc
