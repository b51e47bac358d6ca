#pragma once

#include <string>
#include <vector>

#include "bpc/control.hpp"

namespace bpc {

struct CheckRow {
    std::string name;
    double observed = 0.0;
    double threshold = 0.0;
    std::string relation; // ">=", "<=", "in" ...
    bool pass = false;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckRow> rows;
    bool pass = true;

    void add(CheckRow row) {
        pass = pass && row.pass;
        rows.push_back(std::move(row));
    }
};

/// Manufactured solution used by the convergence suite: interface-compatible
/// on both subdomains of a moving particle, with the forcing derived
/// symbolically (verified independently).
namespace mms {
double h(double t);
double hp(double t);
double hpp(double t);
double exact(double t, double x);
double source(double t, double x);
PrescribedMotion motion(double t_end);
} // namespace mms

SuiteResult verify_convergence();
SuiteResult verify_weak_form();
SuiteResult verify_energy();
SuiteResult verify_oleinik();

SuiteResult run_suite(const std::string& name); // throws on unknown suite

void write_suite_csv(const std::string& path, const SuiteResult& result);
std::string format_suite(const SuiteResult& result);

} // namespace bpc
