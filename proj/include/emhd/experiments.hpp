#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emhd/config.hpp"
#include "emhd/csv.hpp"
#include "emhd/littlewood_paley.hpp"
#include "emhd/wavenumber.hpp"

namespace emhd {

/// Low-mode synchronization (nudging) run of two solutions under identical
/// forcing: after every step the shells q <= Q(t) of solution 2 are
/// overwritten with solution 1's, Q(t) = max of the two Eq.-(wave)
/// wavenumbers, and ||B1 - B2||_{H^s} is tracked.
struct SyncReport {
    struct Row {
        double t;
        double hs_norm;       // ||h||_{H^s} after enforcement
        int q_index;          // kShellInf when sentinel
        double lambda_q;
        double lowmode_drift; // ||h_{<=Q}||_{H^s} accumulated since last overwrite
        double lowmode_after; // ||h_{<=Q}||_{H^s} after enforcement
    };

    double s = -0.5;
    double r = 3.0;
    double c_r = 0.01;
    std::vector<Row> rows;
    double initial_hs = 0.0;
    double final_hs = 0.0;
    double decay_ratio = 0.0;           // initial / final (inf when final is 0)
    bool monotone_after_transient = false;
    double transient_fraction = 0.1;
    double max_hypothesis_ratio = 0.0;  // max over samples of after / ||h||
    std::size_t steps = 0;
    // blow-up of either run aborts the experiment but keeps the rows so far
    bool aborted = false;
    double abort_time = 0.0;
    std::string abort_reason;
};

SyncReport run_sync_experiment(const RunConfig& config, CsvWriter* csv = nullptr);

/// Same protocol from explicit initial states (testing / restarts).
SyncReport run_sync_experiment(const RunConfig& config, StateAB s1, StateAB s2,
                               CsvWriter* csv = nullptr);

/// Radial-data checks: the J2 cancellation for radial a, the Hall-term
/// steady state for radial (a, b), divergence-free reconstruction, and the
/// heat-kernel decay of b under the reduced variant.
struct RadialReport {
    double periodization_bound = 0.0;
    double j2_sup = 0.0, j2_scale = 0.0, j2_ratio = 0.0;
    double hall_l2 = 0.0, hall_scale = 0.0, hall_ratio = 0.0;
    double div_sup = 0.0, div_scale = 0.0, div_ratio = 0.0;
    double heat_expected = 0.0, heat_measured = 0.0, heat_rel_err = 0.0;
    // ||J2(a(t))||_inf along the heat run: measures how far a drifts from
    // radial symmetry once the (non-radial) b mode acts on it
    std::vector<std::pair<double, double>> j2_history;
};

RadialReport run_radial_suite(const RunConfig& config, CsvWriter* csv = nullptr,
                              bool with_heat_run = true);

/// Energy-law audit along a run: E, D, forcing work and the running
/// residual E(t) - E(0) + mu int D - int work. The dissipation integral
/// uses composite Simpson on fixed-dt runs, trapezoid otherwise.
struct EnergyLedger {
    struct Row {
        double t, energy, dissipation, work, residual;
    };
    std::vector<Row> rows;
    double final_residual = 0.0;
    std::size_t steps = 0;
};

EnergyLedger run_energy_audit(const RunConfig& config, CsvWriter* csv = nullptr);

/// Scaling covariance of the Eq.-(wave) quantities under the dyadic
/// rescaling: shell index shifts by exactly m, values agree (up to the
/// quadrature of the norms involved).
struct ScalingReport {
    struct Row {
        int q_source;       // compared against shell q_source + m of the target
        double source;
        double target;
        double rel_err;     // NaN when the source quantity is negligible
    };
    int m = 1;
    double r = 3.0;
    std::vector<Row> shell_rows;    // lambda_p^{n/r} ||B_p||_{L^r}
    std::vector<Row> lowpass_rows;  // ||B_{<=q}||_inf
    double max_shell_rel_err = 0.0;
    double max_lowpass_rel_err = 0.0;
};

ScalingReport run_scaling_check(const StateAB& state, int m, double r, CsvWriter* csv = nullptr);
ScalingReport run_scaling_check(const StateAB& state, int m, double r,
                                const DyadicFilterBank& bank, CsvWriter* csv = nullptr);

/// Monitor series (f1, f2, LPS accumulator) along a run.
struct MonitorSeries {
    struct Row {
        double t, f1, f2, lr_norm_b, int_f1, int_f2, int_lps;
        int q_a, q_b;
    };
    std::vector<Row> rows;
};

MonitorSeries run_monitors(const RunConfig& config, CsvWriter* csv = nullptr);

/// Empirical commutator-estimate constants (recorded, not bounded a
/// priori): per-draw ratios of the commutator norm against the estimate's
/// right-hand side.
std::vector<double> lemma_transport_ratios(int n, int draws, std::uint64_t seed);
std::vector<double> lemma_curl_ratios(int n, int draws, std::uint64_t seed);

/// Gaussian bump exp(-((x-cx)^2 + (y-cy)^2)/sigma^2) sampled on the grid,
/// centered at the box midpoint: radial to within the periodization bound
/// exp(-(L/2)^2/sigma^2).
ScalarField radial_bump(const TorusGrid& grid, double sigma, double amplitude = 1.0);

/// H^s norm of the difference of the reconstructed magnetic fields.
double hs_norm_of_difference(const StateAB& s1, const StateAB& s2, double s,
                             const DyadicFilterBank& bank);

}  // namespace emhd
