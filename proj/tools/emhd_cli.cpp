// Command-line surface: configuration in, CSV series + snapshots out.
// Exit codes: 0 success, 2 validation failure, 3 blow-up abort.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "emhd/config.hpp"
#include "emhd/csv.hpp"
#include "emhd/errors.hpp"
#include "emhd/experiments.hpp"
#include "emhd/integrator.hpp"
#include "emhd/seed.hpp"
#include "emhd/snapshot.hpp"
#include "emhd/spectral_ops.hpp"
#include "emhd/wavenumber.hpp"

namespace {

namespace fs = std::filesystem;
using namespace emhd;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::string snapshot_path;
};

RunConfig prepare(const CommonArgs& args) {
    RunConfig cfg = args.config_path.empty() ? RunConfig{} : load_config_file(args.config_path);
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.seed) cfg.seed = *args.seed;
    fs::create_directories(cfg.out_dir);
    // provenance echo next to the outputs
    std::ofstream echo(fs::path(cfg.out_dir) / "config_echo.txt");
    echo << echo_config(cfg);
    return cfg;
}

std::string out_file(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

/// Ledger observer for plain simulate runs: energy CSV on the cadence.
class SimulateRecorder : public StepObserver {
  public:
    SimulateRecorder(CsvWriter& csv, double mu, int cadence) : csv_(csv), mu_(mu),
                                                               cadence_(cadence) {}

    void on_start(const StateAB& state) override {
        const auto [e, d] = energy_and_dissipation(state);
        e0_ = e;
        last_t_ = state.time;
        last_d_ = d;
        csv_.append({state.time, e, d, 0.0, 0.0});
    }
    void on_step(const StateAB& state, std::size_t step_index) override {
        const auto [e, d] = energy_and_dissipation(state);
        int_d_ += 0.5 * (state.time - last_t_) * (last_d_ + d);
        last_t_ = state.time;
        last_d_ = d;
        if (step_index % static_cast<std::size_t>(cadence_) == 0)
            csv_.append({state.time, e, d, 0.0, e - e0_ + mu_ * int_d_});
    }

  private:
    CsvWriter& csv_;
    double mu_;
    int cadence_;
    double e0_ = 0.0, int_d_ = 0.0, last_t_ = 0.0, last_d_ = 0.0;
};

int cmd_simulate(const CommonArgs& args) {
    const RunConfig cfg = prepare(args);
    StateAB state = args.snapshot_path.empty()
                        ? seeded_low_mode_state(cfg.grid(), cfg.seed, cfg.e0, cfg.mu)
                        : load_snapshot_file(args.snapshot_path);
    CsvWriter csv(out_file(cfg, "energy.csv"), {"t", "E", "D", "work", "residual"});
    SimulateRecorder recorder(csv, cfg.mu, cfg.cadence);
    const StateAB final_state = integrate(std::move(state), cfg.t_end, cfg.variant, cfg.forcing,
                                          cfg.policy, {&recorder});
    if (cfg.final_snapshot) save_snapshot_file(final_state, out_file(cfg, "final.snap"));
    const auto [e, d] = energy_and_dissipation(final_state);
    std::printf("simulate: reached t = %.17g, E = %.17g, D = %.17g\n", final_state.time, e, d);
    std::printf("outputs: %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_audit(const CommonArgs& args) {
    const RunConfig cfg = prepare(args);
    CsvWriter csv(out_file(cfg, "energy.csv"), {"t", "E", "D", "work", "residual"});
    const EnergyLedger ledger = run_energy_audit(cfg, &csv);
    std::printf("audit: %zu steps, final residual %.3e\n", ledger.steps,
                ledger.final_residual);
    std::printf("outputs: %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_sync(const CommonArgs& args) {
    const RunConfig cfg = prepare(args);
    CsvWriter csv(out_file(cfg, "sync.csv"), {"t", "hs_norm", "Q_index", "lambda_Q"});
    const SyncReport rep = run_sync_experiment(cfg, &csv);
    if (rep.aborted) {
        std::cerr << "sync: " << rep.abort_reason << " (partial series of " << rep.rows.size()
                  << " samples kept)\n";
        return 3;
    }
    std::printf("sync: ||h||_{H^%g}: initial %.6e, final %.6e (ratio %.3e)\n", rep.s,
                rep.initial_hs, rep.final_hs,
                rep.final_hs > 0.0 ? rep.final_hs / rep.initial_hs : 0.0);
    std::printf("sync: monotone after %.0f%% transient: %s; max enforced-hypothesis ratio "
                "%.2e; %zu steps\n",
                100.0 * rep.transient_fraction, rep.monotone_after_transient ? "yes" : "no",
                rep.max_hypothesis_ratio, rep.steps);
    double max_drift = 0.0;
    for (size_t i = 1; i < rep.rows.size(); ++i)  // row 0 is the pre-protocol baseline
        max_drift = std::max(max_drift, rep.rows[i].lowmode_drift);
    std::printf("sync: max inter-step low-mode drift %.3e\n", max_drift);
    std::printf("outputs: %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_radial(const CommonArgs& args) {
    const RunConfig cfg = prepare(args);
    CsvWriter csv(out_file(cfg, "radial.csv"), {"check", "value", "scale", "ratio"});
    const RadialReport rep = run_radial_suite(cfg, &csv, /*with_heat_run=*/true);
    std::printf("radial: periodization bound %.3e\n", rep.periodization_bound);
    std::printf("radial: ||J2||_inf = %.3e, scale %.3e, ratio %.3e\n", rep.j2_sup, rep.j2_scale,
                rep.j2_ratio);
    std::printf("radial: ||Hall||_2 = %.3e, scale %.3e, ratio %.3e\n", rep.hall_l2,
                rep.hall_scale, rep.hall_ratio);
    std::printf("radial: ||div B||_inf ratio %.3e\n", rep.div_ratio);
    std::printf("radial: heat mode ratio %.9f vs %.9f (rel err %.3e)\n", rep.heat_measured,
                rep.heat_expected, rep.heat_rel_err);
    std::printf("outputs: %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_wavenumber(const CommonArgs& args) {
    const RunConfig cfg = prepare(args);
    if (args.snapshot_path.empty())
        throw ValidationError("wavenumber: --snapshot PATH is required");
    const StateAB state = load_snapshot_file(args.snapshot_path);
    const DyadicFilterBank bank(state.grid());

    CsvWriter csv(out_file(cfg, "wavenumber.csv"),
                  {"kind", "q", "shell_quantity", "lowpass_inf", "tail_pass", "inf_pass"});
    const char* names[] = {"B", "a", "b"};
    const WavenumberReport reports[] = {
        dissipation_wavenumber_B(state, cfg.r, cfg.c_r, bank),
        wavenumber_a(state, cfg.r, cfg.c_r, bank),
        wavenumber_b(state, cfg.r, cfg.c_r, bank),
    };
    for (int k = 0; k < 3; ++k) {
        for (const auto& row : reports[k].rows)
            csv.append({static_cast<double>(k), static_cast<double>(row.q), row.shell_quantity,
                        row.lowpass_inf, row.tail_pass ? 1.0 : 0.0, row.inf_pass ? 1.0 : 0.0});
        if (reports[k].finite())
            std::printf("wavenumber: Q(%s) = %d, lambda_Q = %.17g\n", names[k],
                        reports[k].q_index, reports[k].lambda_q);
        else
            std::printf("wavenumber: Q(%s) = inf (defining set empty)\n", names[k]);
    }
    std::printf("outputs: %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_monitor(const CommonArgs& args) {
    const RunConfig cfg = prepare(args);
    CsvWriter csv(out_file(cfg, "monitor.csv"),
                  {"t", "f1", "f2", "lr_norm_b", "int_f1", "int_f2", "int_lps", "Q_a", "Q_b"});
    const MonitorSeries series = run_monitors(cfg, &csv);
    const auto& last = series.rows.back();
    std::printf("monitor: %zu samples; int f1 = %.6e, int f2 = %.6e, int ||b||_%g^%g = %.6e\n",
                series.rows.size(), last.int_f1, last.int_f2, cfg.r, cfg.s, last.int_lps);
    std::printf("outputs: %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_scale_check(const CommonArgs& args) {
    const RunConfig cfg = prepare(args);
    const StateAB state = args.snapshot_path.empty()
                              ? seeded_low_mode_state(cfg.grid(), cfg.seed, cfg.e0, cfg.mu)
                              : load_snapshot_file(args.snapshot_path);
    CsvWriter csv(out_file(cfg, "scale_check.csv"),
                  {"family", "q", "source", "target", "rel_err"});
    const ScalingReport rep = run_scaling_check(state, cfg.scale_m, cfg.scale_r, &csv);
    std::printf("scale-check: m = %d, r = %g\n", rep.m, rep.r);
    std::printf("scale-check: max shell-quantity rel err %.3e (index shift verified by "
                "construction)\n",
                rep.max_shell_rel_err);
    std::printf("scale-check: max lowpass sup-norm rel err %.3e\n", rep.max_lowpass_rel_err);
    std::printf("outputs: %s\n", cfg.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral solver and dyadic diagnostics for 2.5D electron MHD in "
                 "scalar potentials (a, b)"};
    app.require_subcommand(1);

    CommonArgs args;
    int (*handler)(const CommonArgs&) = nullptr;

    auto add_common = [&](CLI::App* sub, bool with_snapshot) {
        sub->add_option("--config", args.config_path, "key=value configuration file");
        sub->add_option("--out", args.out_dir, "output directory (overrides output.dir)");
        sub->add_option("--seed", args.seed, "seed for random initial data (overrides init.seed)");
        if (with_snapshot)
            sub->add_option("--snapshot", args.snapshot_path, "input snapshot file");
    };

    auto* simulate = app.add_subcommand("simulate", "plain run with an energy ledger");
    add_common(simulate, true);
    simulate->callback([&] { handler = cmd_simulate; });

    auto* audit = app.add_subcommand("audit", "energy-law audit along a run");
    add_common(audit, false);
    audit->callback([&] { handler = cmd_audit; });

    auto* sync = app.add_subcommand("sync", "two-solution low-mode synchronization experiment");
    add_common(sync, false);
    sync->callback([&] { handler = cmd_sync; });

    auto* radial = app.add_subcommand("radial", "radial-data cancellation suite");
    add_common(radial, false);
    radial->callback([&] { handler = cmd_radial; });

    auto* wavenumber = app.add_subcommand("wavenumber", "wavenumber reports from a snapshot");
    add_common(wavenumber, true);
    wavenumber->callback([&] { handler = cmd_wavenumber; });

    auto* monitor = app.add_subcommand("monitor", "f1/f2 and LPS monitors along a run");
    add_common(monitor, false);
    monitor->callback([&] { handler = cmd_monitor; });

    auto* scale = app.add_subcommand("scale-check", "dyadic rescaling covariance check");
    add_common(scale, true);
    scale->callback([&] { handler = cmd_scale_check; });

    CLI11_PARSE(app, argc, argv);

    try {
        return handler(args);
    } catch (const BlowUpError& err) {
        std::cerr << "blow-up abort at t = " << err.time() << ": " << err.what() << "\n";
        return 3;
    } catch (const ValidationError& err) {
        std::cerr << "validation failure: " << err.what() << "\n";
        return 2;
    } catch (const IoError& err) {
        std::cerr << "I/O failure: " << err.what() << "\n";
        return 2;
    }
}
