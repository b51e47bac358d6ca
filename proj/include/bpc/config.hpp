#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpc/control.hpp"
#include "bpc/presets.hpp"
#include "bpc/types.hpp"

namespace bpc {

/// Configuration error carrying the offending key (or section).
struct ConfigError : std::runtime_error {
    std::string key;
    ConfigError(std::string k, const std::string& what)
        : std::runtime_error("config: key '" + k + "': " + what), key(std::move(k)) {}
};

/// Order-preserving INI document: [section] headers, key = value lines,
/// comments starting with '#' or ';'.
struct IniDoc {
    using Section = std::vector<std::pair<std::string, std::string>>;
    std::vector<std::pair<std::string, Section>> sections;

    const std::string* find(const std::string& sec, const std::string& key) const;
    void set(const std::string& sec, const std::string& key, const std::string& value);
    std::string serialize() const;
};

IniDoc parse_ini(const std::string& text);
IniDoc load_ini_file(const std::string& path);

enum class RunMode { Free, Hold, Strategy };

struct InitSpec {
    std::string kind = "zero"; // zero | sine | step | random_fourier | file
    double amplitude = 1.0;
    int sine_k = 1;
    int fourier_modes = 8;
    uint32_t fourier_seed = 12345;
    std::string file;

    InitialField make() const;
};

struct OutputSpec {
    std::string dir = "out";
    int store_every = 10;
    std::vector<double> snapshot_times;
    int snapshot_points = 512;
};

struct Scenario {
    std::string name = "scenario";
    SimConfig sim;
    double h0 = 0.5;
    double ell0 = 0.0;
    InitSpec init;
    RunMode mode = RunMode::Free;
    double t_end = 1.0;
    StrategyParams strategy;
    OutputSpec output;
};

/// Parses and validates a scenario; unknown sections/keys and malformed or
/// missing required values raise ConfigError naming the key. The particle
/// mass has no default and must be present.
Scenario scenario_from_ini(const IniDoc& doc);

/// Fully resolved scenario as an INI document (the manifest payload).
IniDoc scenario_to_ini(const Scenario& s);

/// Sweep axes: [sweep] entries "section.key = v1,v2,...". Expansion is the
/// cartesian product in declaration order.
struct SweepAxis {
    std::string section, key;
    std::vector<std::string> values;
};
std::vector<SweepAxis> sweep_axes(const IniDoc& doc);
std::vector<IniDoc> expand_sweep(const IniDoc& doc);

/// Built-in scenario presets addressable by name from the CLI.
std::optional<std::string> builtin_preset(const std::string& name);
std::vector<std::string> builtin_preset_names();

} // namespace bpc
