#include "bpc/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "bpc/presets.hpp"

namespace bpc {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(v);
    while (std::getline(ss, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

const std::string* IniDoc::find(const std::string& sec, const std::string& key) const {
    for (const auto& s : sections) {
        if (s.first != sec) continue;
        for (const auto& kv : s.second)
            if (kv.first == key) return &kv.second;
    }
    return nullptr;
}

void IniDoc::set(const std::string& sec, const std::string& key, const std::string& value) {
    for (auto& s : sections) {
        if (s.first != sec) continue;
        for (auto& kv : s.second)
            if (kv.first == key) {
                kv.second = value;
                return;
            }
        s.second.emplace_back(key, value);
        return;
    }
    sections.push_back({sec, {{key, value}}});
}

std::string IniDoc::serialize() const {
    std::string out;
    for (const auto& s : sections) {
        out += "[" + s.first + "]\n";
        for (const auto& kv : s.second) out += kv.first + " = " + kv.second + "\n";
        out += "\n";
    }
    return out;
}

IniDoc parse_ini(const std::string& text) {
    IniDoc doc;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(line, "malformed section header at line " +
                                            std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(line, "empty section name");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "expected 'key = value' at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "empty key at line " + std::to_string(lineno));
        doc.set(section, key, val);
    }
    return doc;
}

IniDoc load_ini_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_ini(ss.str());
}

InitialField InitSpec::make() const {
    if (kind == "zero") return preset_zero();
    if (kind == "sine") return preset_sine(sine_k, amplitude);
    if (kind == "step") return preset_step(amplitude);
    if (kind == "random_fourier") return preset_random_fourier(fourier_seed, amplitude, fourier_modes);
    if (kind == "file") {
        std::ifstream f(file);
        if (!f) throw ConfigError("init_file", "cannot open '" + file + "'");
        std::vector<double> xs, us;
        double x, u;
        while (f >> x >> u) {
            xs.push_back(x);
            us.push_back(u);
        }
        return field_from_samples(std::move(xs), std::move(us));
    }
    throw ConfigError("init", "unknown initial-data kind '" + kind + "'");
}

namespace {

const std::set<std::string> kFluidKeys = {"n_left",  "n_right",       "dt",
                                          "cfl_safety", "dt_max",     "init",
                                          "amplitude",  "sine_k",     "fourier_modes",
                                          "fourier_seed", "init_file"};
const std::set<std::string> kParticleKeys = {"m",   "h0",  "ell0", "contact_tol",
                                             "coupling_iters", "coupling_tol"};
const std::set<std::string> kControlKeys = {"mode",        "t_end",      "delta",
                                            "h_target",    "t0_duration", "t1_duration",
                                            "hold_norm",   "closed_loop", "slack",
                                            "tol_h",       "tol_ell"};
const std::set<std::string> kOutputKeys = {"dir", "store_every", "snapshots", "snapshot_points"};
const std::set<std::string> kScenarioKeys = {"name"};

} // namespace

Scenario scenario_from_ini(const IniDoc& doc) {
    for (const auto& sec : doc.sections) {
        const std::set<std::string>* allowed = nullptr;
        if (sec.first == "fluid") allowed = &kFluidKeys;
        else if (sec.first == "particle") allowed = &kParticleKeys;
        else if (sec.first == "control") allowed = &kControlKeys;
        else if (sec.first == "output") allowed = &kOutputKeys;
        else if (sec.first == "scenario") allowed = &kScenarioKeys;
        else if (sec.first == "sweep") continue; // handled by expand_sweep
        else throw ConfigError(sec.first, "unknown section");
        for (const auto& kv : sec.second)
            if (!allowed->count(kv.first))
                throw ConfigError(sec.first + "." + kv.first, "unknown key");
    }

    Scenario s;
    auto get = [&](const char* sec, const char* key) { return doc.find(sec, key); };
    if (const auto* v = get("scenario", "name")) s.name = *v;

    if (const auto* v = get("fluid", "n_left")) s.sim.n_left = static_cast<int>(parse_int("n_left", *v));
    if (const auto* v = get("fluid", "n_right")) s.sim.n_right = static_cast<int>(parse_int("n_right", *v));
    if (const auto* v = get("fluid", "dt")) s.sim.dt = parse_double("dt", *v);
    if (const auto* v = get("fluid", "cfl_safety")) s.sim.cfl_safety = parse_double("cfl_safety", *v);
    if (const auto* v = get("fluid", "dt_max")) s.sim.dt_max = parse_double("dt_max", *v);
    if (const auto* v = get("fluid", "init")) s.init.kind = *v;
    if (const auto* v = get("fluid", "amplitude")) s.init.amplitude = parse_double("amplitude", *v);
    if (const auto* v = get("fluid", "sine_k")) s.init.sine_k = static_cast<int>(parse_int("sine_k", *v));
    if (const auto* v = get("fluid", "fourier_modes"))
        s.init.fourier_modes = static_cast<int>(parse_int("fourier_modes", *v));
    if (const auto* v = get("fluid", "fourier_seed"))
        s.init.fourier_seed = static_cast<uint32_t>(parse_int("fourier_seed", *v));
    if (const auto* v = get("fluid", "init_file")) s.init.file = *v;

    const auto* mass = get("particle", "m");
    if (!mass) throw ConfigError("m", "required key missing in section [particle]");
    s.sim.m = parse_double("m", *mass);
    if (const auto* v = get("particle", "h0")) s.h0 = parse_double("h0", *v);
    if (const auto* v = get("particle", "ell0")) s.ell0 = parse_double("ell0", *v);
    if (const auto* v = get("particle", "contact_tol")) s.sim.contact_tol = parse_double("contact_tol", *v);
    if (const auto* v = get("particle", "coupling_iters"))
        s.sim.coupling_iters = static_cast<int>(parse_int("coupling_iters", *v));
    if (const auto* v = get("particle", "coupling_tol")) s.sim.coupling_tol = parse_double("coupling_tol", *v);

    if (const auto* v = get("control", "mode")) {
        if (*v == "free") s.mode = RunMode::Free;
        else if (*v == "hold") s.mode = RunMode::Hold;
        else if (*v == "strategy") s.mode = RunMode::Strategy;
        else throw ConfigError("mode", "expected free|hold|strategy, got '" + *v + "'");
    }
    if (const auto* v = get("control", "t_end")) s.t_end = parse_double("t_end", *v);
    if (const auto* v = get("control", "delta")) s.sim.delta = parse_double("delta", *v);
    if (const auto* v = get("control", "h_target")) s.sim.h_target = parse_double("h_target", *v);
    if (const auto* v = get("control", "t0_duration"))
        s.strategy.t0_duration = parse_double("t0_duration", *v);
    if (const auto* v = get("control", "t1_duration"))
        s.strategy.tracking_duration = parse_double("t1_duration", *v);
    if (const auto* v = get("control", "hold_norm")) {
        if (*v == "sup") s.strategy.norm_kind = DecayNorm::Sup;
        else if (*v == "l2") s.strategy.norm_kind = DecayNorm::L2;
        else throw ConfigError("hold_norm", "expected sup|l2, got '" + *v + "'");
    }
    if (const auto* v = get("control", "closed_loop"))
        s.strategy.closed_loop_tracking = parse_bool("closed_loop", *v);
    if (const auto* v = get("control", "slack")) s.strategy.slack = parse_double("slack", *v);
    if (const auto* v = get("control", "tol_h")) s.strategy.tol_h = parse_double("tol_h", *v);
    if (const auto* v = get("control", "tol_ell")) s.strategy.tol_ell = parse_double("tol_ell", *v);

    if (const auto* v = get("output", "dir")) s.output.dir = *v;
    if (const auto* v = get("output", "store_every"))
        s.output.store_every = static_cast<int>(parse_int("store_every", *v));
    if (const auto* v = get("output", "snapshots"))
        for (const auto& item : split_list(*v)) s.output.snapshot_times.push_back(parse_double("snapshots", item));
    if (const auto* v = get("output", "snapshot_points"))
        s.output.snapshot_points = static_cast<int>(parse_int("snapshot_points", *v));

    s.sim.store_every = s.output.store_every;
    try {
        s.sim.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("(fluid/particle)", e.what());
    }
    if (!(s.h0 > s.sim.contact_tol && s.h0 < 1.0 - s.sim.contact_tol))
        throw ConfigError("h0", "must lie in (contact_tol, 1-contact_tol)");
    if (s.mode != RunMode::Strategy && !(s.t_end > 0.0))
        throw ConfigError("t_end", "must be positive");
    return s;
}

IniDoc scenario_to_ini(const Scenario& s) {
    IniDoc d;
    d.set("scenario", "name", s.name);
    d.set("fluid", "n_left", std::to_string(s.sim.n_left));
    d.set("fluid", "n_right", std::to_string(s.sim.n_right));
    d.set("fluid", "dt", fmt(s.sim.dt));
    d.set("fluid", "cfl_safety", fmt(s.sim.cfl_safety));
    d.set("fluid", "dt_max", fmt(s.sim.dt_max));
    d.set("fluid", "init", s.init.kind);
    d.set("fluid", "amplitude", fmt(s.init.amplitude));
    d.set("fluid", "sine_k", std::to_string(s.init.sine_k));
    d.set("fluid", "fourier_modes", std::to_string(s.init.fourier_modes));
    d.set("fluid", "fourier_seed", std::to_string(s.init.fourier_seed));
    if (!s.init.file.empty()) d.set("fluid", "init_file", s.init.file);
    d.set("particle", "m", fmt(s.sim.m));
    d.set("particle", "h0", fmt(s.h0));
    d.set("particle", "ell0", fmt(s.ell0));
    d.set("particle", "contact_tol", fmt(s.sim.contact_tol));
    d.set("particle", "coupling_iters", std::to_string(s.sim.coupling_iters));
    d.set("particle", "coupling_tol", fmt(s.sim.coupling_tol));
    const char* mode = s.mode == RunMode::Free ? "free" : s.mode == RunMode::Hold ? "hold" : "strategy";
    d.set("control", "mode", mode);
    d.set("control", "t_end", fmt(s.t_end));
    d.set("control", "delta", fmt(s.sim.delta));
    d.set("control", "h_target", fmt(s.sim.h_target));
    d.set("control", "t0_duration", fmt(s.strategy.t0_duration));
    d.set("control", "t1_duration", fmt(s.strategy.tracking_duration));
    d.set("control", "hold_norm", s.strategy.norm_kind == DecayNorm::Sup ? "sup" : "l2");
    d.set("control", "closed_loop", s.strategy.closed_loop_tracking ? "true" : "false");
    d.set("control", "slack", fmt(s.strategy.slack));
    d.set("control", "tol_h", fmt(s.strategy.tol_h));
    d.set("control", "tol_ell", fmt(s.strategy.tol_ell));
    d.set("output", "dir", s.output.dir);
    d.set("output", "store_every", std::to_string(s.output.store_every));
    if (!s.output.snapshot_times.empty()) {
        std::string list;
        for (size_t i = 0; i < s.output.snapshot_times.size(); ++i)
            list += (i ? "," : "") + fmt(s.output.snapshot_times[i]);
        d.set("output", "snapshots", list);
    }
    d.set("output", "snapshot_points", std::to_string(s.output.snapshot_points));
    return d;
}

std::vector<SweepAxis> sweep_axes(const IniDoc& doc) {
    std::vector<SweepAxis> axes;
    for (const auto& sec : doc.sections) {
        if (sec.first != "sweep") continue;
        for (const auto& kv : sec.second) {
            const size_t dot = kv.first.find('.');
            if (dot == std::string::npos)
                throw ConfigError("sweep." + kv.first, "expected 'section.key'");
            SweepAxis ax;
            ax.section = kv.first.substr(0, dot);
            ax.key = kv.first.substr(dot + 1);
            ax.values = split_list(kv.second);
            if (ax.values.empty()) throw ConfigError("sweep." + kv.first, "empty value list");
            axes.push_back(std::move(ax));
        }
    }
    return axes;
}

std::vector<IniDoc> expand_sweep(const IniDoc& doc) {
    const auto axes = sweep_axes(doc);
    IniDoc base = doc;
    base.sections.erase(std::remove_if(base.sections.begin(), base.sections.end(),
                                       [](const auto& s) { return s.first == "sweep"; }),
                        base.sections.end());
    std::vector<IniDoc> out{base};
    for (const auto& ax : axes) {
        std::vector<IniDoc> next;
        for (const auto& cfg : out)
            for (const auto& v : ax.values) {
                IniDoc c = cfg;
                c.set(ax.section, ax.key, v);
                const std::string* name = c.find("scenario", "name");
                const std::string base_name = name ? *name : std::string("scenario");
                c.set("scenario", "name", base_name + "__" + ax.key + "=" + v);
                next.push_back(std::move(c));
            }
        out = std::move(next);
    }
    return out;
}

std::optional<std::string> builtin_preset(const std::string& name) {
    if (name == "rest")
        return std::string(R"([scenario]
name = rest
[fluid]
n_left = 64
n_right = 64
init = zero
[particle]
m = 1.0
[control]
mode = free
t_end = 0.5
[output]
store_every = 20
)");
    if (name == "sine")
        return std::string(R"([scenario]
name = sine
[fluid]
n_left = 200
n_right = 200
init = sine
sine_k = 1
amplitude = 2.0
[particle]
m = 1.0
h0 = 0.45
[control]
mode = free
t_end = 1.0
[output]
store_every = 20
)");
    if (name == "step")
        return std::string(R"([scenario]
name = step
[fluid]
n_left = 200
n_right = 200
init = step
amplitude = 2.0
[particle]
m = 1.0
[control]
mode = free
t_end = 1.0
[output]
store_every = 20
)");
    if (name == "global_sweep")
        return std::string(R"([scenario]
name = global
[fluid]
n_left = 400
n_right = 400
init = sine
sine_k = 2
amplitude = 5
[particle]
m = 1.0
h0 = 0.5
[control]
mode = strategy
delta = 0.05
h_target = 0.6
t0_duration = 0.01
t1_duration = 1.0
[output]
store_every = 200
[sweep]
fluid.init = sine,step
fluid.amplitude = 0.5,5,50
)");
    return std::nullopt;
}

std::vector<std::string> builtin_preset_names() { return {"rest", "sine", "step", "global_sweep"}; }

} // namespace bpc
