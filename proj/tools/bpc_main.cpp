#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "bpc/csv.hpp"
#include "bpc/verify.hpp"

namespace fs = std::filesystem;
using namespace bpc;

namespace {

struct GlobalOpts {
    std::string out;
    int threads = 1;
    long seed = -1;
};

IniDoc load_config_or_preset(const std::string& arg) {
    if (fs::exists(arg)) return load_ini_file(arg);
    if (auto preset = builtin_preset(arg)) return parse_ini(*preset);
    throw std::runtime_error("'" + arg + "' is neither a config file nor a preset (presets: " +
                             [] {
                                 std::string s;
                                 for (const auto& n : builtin_preset_names())
                                     s += (s.empty() ? "" : ", ") + n;
                                 return s;
                             }());
}

std::string resolve_out_root(const GlobalOpts& g, const Scenario& s) {
    if (const char* env = std::getenv("BPC_OUT")) return env;
    if (!g.out.empty()) return g.out;
    return s.output.dir;
}

void write_run_outputs(const fs::path& dir, const Scenario& sc, const RunResult& run) {
    write_timeseries_csv((dir / "timeseries.csv").string(), run.diag);
    for (double t : sc.output.snapshot_times) {
        const CoupledState* best = nullptr;
        double dist = 1e300;
        for (const auto& st : run.states) {
            const double d = std::abs(st.t - t);
            if (d < dist) {
                dist = d;
                best = &st;
            }
        }
        if (best)
            write_snapshot_csv((dir / snapshot_filename(best->t)).string(), *best,
                               sc.output.snapshot_points);
    }
    if (!run.states.empty())
        write_snapshot_csv((dir / snapshot_filename(run.states.back().t)).string(),
                           run.states.back(), sc.output.snapshot_points);
}

struct ScenarioOutcome {
    int exit_code = 0;
    std::optional<ReportRow> report;
};

ScenarioOutcome execute_scenario(const Scenario& sc, const fs::path& dir) {
    fs::create_directories(dir);
    write_manifest((dir / "manifest.ini").string(), scenario_to_ini(sc));
    const InitialField u0 = sc.init.make();

    ScenarioOutcome out;
    if (sc.mode == RunMode::Strategy) {
        const StrategyOutcome so = run_global_strategy(u0, sc.h0, sc.ell0, sc.sim.h_target,
                                                       sc.sim.delta, sc.sim, sc.strategy);
        std::vector<DiagRecord> diag = so.smoothing.diag;
        auto append = [&diag](const std::vector<DiagRecord>& d) {
            diag.insert(diag.end(), d.begin() + (d.empty() ? 0 : 1), d.end());
        };
        if (!so.replay.diag.empty()) append(so.replay.diag);
        if (!so.hold.diag.empty()) append(so.hold.diag);
        write_timeseries_csv((dir / "timeseries.csv").string(), diag);
        if (!so.hold.states.empty())
            write_snapshot_csv((dir / snapshot_filename(so.hold.states.back().t)).string(),
                               so.hold.states.back(), sc.output.snapshot_points);
        write_report_csv((dir / "report.csv").string(), {{sc.name, so.report}});
        if (!so.report.pass) {
            std::cerr << "strategy '" << sc.name << "' failed";
            if (so.report.failed_phase != StrategyPhase::None) std::cerr << " (" << so.report.message << ")";
            std::cerr << "\n";
            out.exit_code = 2;
        }
        out.report = ReportRow{sc.name, so.report};
        return out;
    }

    const double t_end = sc.t_end;
    const CoupledState s0 = make_initial_state(u0, sc.h0, sc.ell0, sc.sim.n_left, sc.sim.n_right);
    const ControlLaw law = sc.mode == RunMode::Hold ? hold_law() : zero_control();
    const RunResult run = solve(s0, law, t_end, sc.sim);
    write_run_outputs(dir, sc, run);
    if (run.termination == Termination::NumericalFailure) {
        std::cerr << "numerical failure at t=" << format_g17(run.t_term) << "\n";
        out.exit_code = 1;
    } else if (run.termination == Termination::Contact) {
        std::cout << "contact at T_c=" << format_g17(run.t_term) << "\n";
    }
    return out;
}

int cmd_run(const std::string& config_arg, const GlobalOpts& g) {
    const IniDoc doc = load_config_or_preset(config_arg);
    if (!sweep_axes(doc).empty()) {
        std::cerr << "config declares [sweep] axes; use the sweep subcommand\n";
        return 1;
    }
    Scenario sc = scenario_from_ini(doc);
    if (g.seed >= 0) sc.init.fourier_seed = static_cast<uint32_t>(g.seed);
    const fs::path dir = fs::path(resolve_out_root(g, sc)) / sc.name;
    const ScenarioOutcome o = execute_scenario(sc, dir);
    if (o.exit_code == 0) std::cout << "run '" << sc.name << "' done -> " << dir.string() << "\n";
    return o.exit_code;
}

int cmd_sweep(const std::string& config_arg, const GlobalOpts& g) {
    const IniDoc doc = load_config_or_preset(config_arg);
    const std::vector<IniDoc> entries = expand_sweep(doc);
    if (entries.empty()) return 0;

    std::vector<Scenario> scenarios;
    for (const auto& e : entries) {
        scenarios.push_back(scenario_from_ini(e));
        if (g.seed >= 0) scenarios.back().init.fourier_seed = static_cast<uint32_t>(g.seed);
    }
    const fs::path root = fs::path(resolve_out_root(g, scenarios.front()));
    fs::create_directories(root);

    std::vector<ScenarioOutcome> outcomes(scenarios.size());
    std::atomic<size_t> next{0};
    const int nthreads = std::max(1, std::min<int>(g.threads, static_cast<int>(scenarios.size())));
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < scenarios.size(); i = next.fetch_add(1)) {
            char tag[16];
            std::snprintf(tag, sizeof tag, "%03zu_", i);
            const fs::path dir = root / (tag + scenarios[i].name);
            try {
                outcomes[i] = execute_scenario(scenarios[i], dir);
            } catch (const std::exception& e) {
                std::cerr << "entry " << i << " error: " << e.what() << "\n";
                outcomes[i].exit_code = 1;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 1; k < nthreads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<ReportRow> rows;
    int rc = 0;
    for (const auto& o : outcomes) {
        if (o.report) rows.push_back(*o.report);
        rc = std::max(rc, o.exit_code);
    }
    if (!rows.empty()) write_report_csv((root / "report.csv").string(), rows);
    std::cout << "sweep: " << scenarios.size() << " entries -> " << root.string() << "\n";
    return rc;
}

int cmd_verify(const std::string& suite, const GlobalOpts& g) {
    const SuiteResult res = run_suite(suite);
    std::cout << format_suite(res);
    const fs::path root = [&] {
        if (const char* env = std::getenv("BPC_OUT")) return fs::path(env);
        return fs::path(g.out.empty() ? "out" : g.out);
    }();
    fs::create_directories(root);
    write_suite_csv((root / ("verify_" + suite + ".csv")).string(), res);
    return res.pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled Burgers/particle simulator and control synthesis"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--out", g.out, "output root directory (BPC_OUT overrides)");
    app.add_option("--threads", g.threads, "worker pool size for sweeps");
    app.add_option("--seed", g.seed, "seed override of the random-fourier preset");

    std::string run_cfg, sweep_cfg, suite;
    auto* run = app.add_subcommand("run", "run one scenario (config path or preset name)");
    run->add_option("config", run_cfg, "config file or preset")->required();
    auto* sweep = app.add_subcommand("sweep", "expand [sweep] axes and run all entries");
    sweep->add_option("config", sweep_cfg, "config file or preset")->required();
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "convergence | weak_form | energy | oleinik")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (run->parsed()) return cmd_run(run_cfg, g);
        if (sweep->parsed()) return cmd_sweep(sweep_cfg, g);
        if (verify->parsed()) return cmd_verify(suite, g);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
