#pragma once

#include <cstdint>
#include <string>

#include "emhd/integrator.hpp"
#include "emhd/model.hpp"

namespace emhd {

/// Full run configuration with every default filled. Loading validates all
/// cross-field constraints and reports every violation at once; echo()
/// produces canonical text whose reload yields an identical config.
struct RunConfig {
    // grid.*
    int n = 128;
    double l = 1.0;

    // physics.*
    Variant variant = Variant::emhd1;
    double mu = 0.1;
    ForcingSpec forcing;

    // integrator.*
    StepPolicy policy;  // adaptive, cfl 0.5, dt_max 1e-2, dt_min 1e-12

    // diag.*
    double r = 3.0;
    double c_r = 0.01;
    double s = 0.0;  // 0 = resolve to the critical LPS exponent 2r/(r-2)
    int cadence = 10;

    // init.*
    double e0 = 1.0;
    std::uint64_t seed = 1;

    // run.*
    double t_end = 1.0;

    // sync.*
    std::uint64_t sync_seed2 = 2;
    double sync_s = -0.5;
    double sync_e0 = 1e-7;
    double sync_t_end = 5.0;
    double sync_dt_max = 2e-3;

    // radial.*
    double radial_sigma_a = 0.08;
    double radial_sigma_b = 0.05;
    double radial_mu = 0.05;
    double radial_t_end = 1.0;
    double radial_dt = 1.5e-3;
    int radial_heat_k = 1;  // heat-check mode b0 = cos(2 pi k y / L)

    // scale.*
    int scale_m = 1;
    double scale_r = 3.0;

    // output.*
    std::string out_dir = "out";
    bool final_snapshot = true;
    int snapshot_cadence = 0;  // steps between periodic snapshots, 0 = off

    TorusGrid grid() const { return TorusGrid(n, l); }
};

/// Parse key=value text ('#' comments, dotted keys). Throws
/// ValidationError listing all unknown keys, parse failures and
/// constraint violations.
RunConfig load_config(const std::string& text);

/// Load from a file path.
RunConfig load_config_file(const std::string& path);

/// Canonical echo: every key, fixed order, full precision.
std::string echo_config(const RunConfig& config);

}  // namespace emhd
