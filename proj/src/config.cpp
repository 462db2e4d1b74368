#include "emhd/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "emhd/csv.hpp"
#include "emhd/errors.hpp"

namespace emhd {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct Parser {
    RunConfig cfg;
    std::vector<std::string> errors;
    std::map<std::string, std::function<void(const std::string&)>> handlers;
    // forcing.modeK.* arrives in arbitrary order; staged here
    std::map<int, ForcingMode> forcing_modes;
    int forcing_count = 0;

    void fail(const std::string& msg) { errors.push_back(msg); }

    bool parse_double(const std::string& key, const std::string& value, double& out) {
        try {
            size_t used = 0;
            out = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument("");
            return true;
        } catch (...) {
            fail(key + ": cannot parse '" + value + "' as a real number");
            return false;
        }
    }

    bool parse_int(const std::string& key, const std::string& value, long long& out) {
        try {
            size_t used = 0;
            out = std::stoll(value, &used);
            if (used != value.size()) throw std::invalid_argument("");
            return true;
        } catch (...) {
            fail(key + ": cannot parse '" + value + "' as an integer");
            return false;
        }
    }

    void handle(const std::string& key, const std::string& value);
    void finish_forcing();
    void validate();
};

void Parser::handle(const std::string& key, const std::string& value) {
    auto num = [&](double& slot) {
        double v;
        if (parse_double(key, value, v)) slot = v;
    };
    auto integer = [&](int& slot) {
        long long v;
        if (parse_int(key, value, v)) slot = static_cast<int>(v);
    };
    auto uint64 = [&](std::uint64_t& slot) {
        long long v = 0;
        if (!parse_int(key, value, v)) return;
        if (v < 0)
            fail(key + ": must be non-negative");
        else
            slot = static_cast<std::uint64_t>(v);
    };

    if (key == "grid.n") { integer(cfg.n); return; }
    if (key == "grid.l") { num(cfg.l); return; }
    if (key == "physics.variant") {
        if (value == "emhd1") cfg.variant = Variant::emhd1;
        else if (value == "emhd2") cfg.variant = Variant::emhd2;
        else fail(key + ": expected emhd1 or emhd2, got '" + value + "'");
        return;
    }
    if (key == "physics.mu") { num(cfg.mu); return; }
    if (key == "integrator.mode") {
        if (value == "fixed") cfg.policy.mode = StepPolicy::Mode::fixed;
        else if (value == "adaptive") cfg.policy.mode = StepPolicy::Mode::adaptive;
        else fail(key + ": expected fixed or adaptive, got '" + value + "'");
        return;
    }
    if (key == "integrator.dt") { num(cfg.policy.dt); return; }
    if (key == "integrator.cfl") { num(cfg.policy.cfl); return; }
    if (key == "integrator.dt_max") { num(cfg.policy.dt_max); return; }
    if (key == "integrator.dt_min") { num(cfg.policy.dt_min); return; }
    if (key == "diag.r") { num(cfg.r); return; }
    if (key == "diag.c_r") { num(cfg.c_r); return; }
    if (key == "diag.s") { num(cfg.s); return; }
    if (key == "diag.cadence") { integer(cfg.cadence); return; }
    if (key == "init.e0") { num(cfg.e0); return; }
    if (key == "init.seed") { uint64(cfg.seed); return; }
    if (key == "run.t_end") { num(cfg.t_end); return; }
    if (key == "sync.seed2") { uint64(cfg.sync_seed2); return; }
    if (key == "sync.s") { num(cfg.sync_s); return; }
    if (key == "sync.e0") { num(cfg.sync_e0); return; }
    if (key == "sync.t_end") { num(cfg.sync_t_end); return; }
    if (key == "sync.dt_max") { num(cfg.sync_dt_max); return; }
    if (key == "radial.sigma_a") { num(cfg.radial_sigma_a); return; }
    if (key == "radial.sigma_b") { num(cfg.radial_sigma_b); return; }
    if (key == "radial.mu") { num(cfg.radial_mu); return; }
    if (key == "radial.t_end") { num(cfg.radial_t_end); return; }
    if (key == "radial.dt") { num(cfg.radial_dt); return; }
    if (key == "radial.heat_k") { integer(cfg.radial_heat_k); return; }
    if (key == "scale.m") { integer(cfg.scale_m); return; }
    if (key == "scale.r") { num(cfg.scale_r); return; }
    if (key == "output.dir") { cfg.out_dir = value; return; }
    if (key == "output.final_snapshot") {
        if (value == "true" || value == "1") cfg.final_snapshot = true;
        else if (value == "false" || value == "0") cfg.final_snapshot = false;
        else fail(key + ": expected true/false, got '" + value + "'");
        return;
    }
    if (key == "output.snapshot_cadence") { integer(cfg.snapshot_cadence); return; }
    if (key == "forcing.mode_count") {
        long long v;
        if (parse_int(key, value, v)) forcing_count = static_cast<int>(v);
        return;
    }
    if (key.rfind("forcing.mode", 0) == 0) {
        const auto dot = key.find('.', 12);
        if (dot != std::string::npos) {
            const std::string idx_str = key.substr(12, dot - 12);
            const std::string attr = key.substr(dot + 1);
            try {
                const int idx = std::stoi(idx_str);
                ForcingMode& m = forcing_modes[idx];
                if (attr == "target") {
                    if (value == "a") m.target = ForcingMode::Target::a;
                    else if (value == "b") m.target = ForcingMode::Target::b;
                    else fail(key + ": expected a or b, got '" + value + "'");
                } else if (attr == "k1") { long long v; if (parse_int(key, value, v)) m.k1 = static_cast<int>(v); }
                else if (attr == "k2") { long long v; if (parse_int(key, value, v)) m.k2 = static_cast<int>(v); }
                else if (attr == "amplitude") parse_double(key, value, m.amplitude);
                else if (attr == "phase") parse_double(key, value, m.phase);
                else if (attr == "omega") parse_double(key, value, m.omega);
                else fail("unknown forcing attribute: " + key);
                return;
            } catch (...) {
                // falls through to unknown-key below
            }
        }
    }
    fail("unknown key: " + key);
}

void Parser::finish_forcing() {
    for (const auto& [idx, mode] : forcing_modes) {
        if (idx < 0 || idx >= forcing_count)
            fail("forcing.mode" + std::to_string(idx) +
                 ".* given but forcing.mode_count = " + std::to_string(forcing_count));
    }
    for (int i = 0; i < forcing_count; ++i) {
        auto it = forcing_modes.find(i);
        if (it == forcing_modes.end()) {
            fail("forcing.mode" + std::to_string(i) + ".* missing (mode_count = " +
                 std::to_string(forcing_count) + ")");
        } else {
            cfg.forcing.modes.push_back(it->second);
        }
    }
}

void Parser::validate() {
    if (cfg.n < 16 || cfg.n % 2 != 0)
        fail("grid.n: must be even and >= 16, got " + std::to_string(cfg.n));
    if (!(cfg.l > 0.0)) fail("grid.l: must be positive");
    if (!(cfg.mu > 0.0)) fail("physics.mu: must be positive");
    if (!(cfg.policy.cfl > 0.0 && cfg.policy.cfl <= 1.0))
        fail("integrator.cfl: must lie in (0, 1]");
    if (!(cfg.policy.dt_min < cfg.policy.dt_max))
        fail("integrator.dt_min: must be smaller than integrator.dt_max");
    if (cfg.policy.mode == StepPolicy::Mode::fixed && !(cfg.policy.dt > 0.0))
        fail("integrator.dt: must be positive in fixed mode");
    // One exponent serves all diagnostic entry points; their intersection
    // demands 2 < r < infinity (wave-a/b allow [2, inf), LPS needs (2, inf]).
    const bool r_ok = cfg.r > 2.0 && !std::isinf(cfg.r);
    if (!r_ok) fail("diag.r: must be a finite exponent > 2");
    if (!(cfg.c_r > 0.0)) fail("diag.c_r: must be positive");
    if (cfg.s == 0.0) {
        cfg.s = r_ok ? 2.0 * cfg.r / (cfg.r - 2.0) : 6.0;
    } else if (!(cfg.s > 0.0) || (r_ok && 2.0 / cfg.s + 2.0 / cfg.r > 1.0 + 1e-15)) {
        fail("diag.s: exponent pair must satisfy 2/s + 2/r <= 1 (got s = " +
             csv_format(cfg.s) + ", r = " + csv_format(cfg.r) + ")");
    }
    if (cfg.cadence < 1) fail("diag.cadence: must be >= 1");
    if (cfg.e0 < 0.0) fail("init.e0: must be non-negative");
    if (!(cfg.t_end >= 0.0)) fail("run.t_end: must be non-negative");
    if (cfg.sync_e0 < 0.0) fail("sync.e0: must be non-negative");
    if (!(cfg.sync_t_end > 0.0)) fail("sync.t_end: must be positive");
    if (!(cfg.sync_dt_max > 0.0)) fail("sync.dt_max: must be positive");
    // Valid range for the sync H^s exponent: s in (-n/r, n/r - 1), n = 2.
    // Empty for r >= 4 (synchronization needs r in (2, 4)); the sync
    // experiment re-validates at its entry point, so a config meant for
    // other subcommands may carry r >= 4.
    if (r_ok && cfg.r < 4.0 && !(cfg.sync_s > -2.0 / cfg.r && cfg.sync_s < 2.0 / cfg.r - 1.0))
        fail("sync.s: must lie in (-2/r, 2/r - 1) = (" + csv_format(-2.0 / cfg.r) + ", " +
             csv_format(2.0 / cfg.r - 1.0) + ") for diag.r = " + csv_format(cfg.r));
    // Periodized Gaussian bumps must be radial to round-off: boundary value
    // exp(-(L/2)^2 / sigma^2) below 1e-15.
    for (const auto& [name, sigma] :
         {std::pair<const char*, double>{"radial.sigma_a", cfg.radial_sigma_a},
          {"radial.sigma_b", cfg.radial_sigma_b}}) {
        if (!(sigma > 0.0)) {
            fail(std::string(name) + ": must be positive");
        } else {
            const double half = 0.5 * cfg.l;
            const double boundary = std::exp(-(half * half) / (sigma * sigma));
            if (boundary > 1e-15)
                fail(std::string(name) + ": bump too wide, periodization error " +
                     csv_format(boundary) + " exceeds 1e-15");
        }
    }
    if (!(cfg.radial_mu > 0.0)) fail("radial.mu: must be positive");
    if (!(cfg.radial_dt > 0.0)) fail("radial.dt: must be positive");
    if (!(cfg.radial_t_end > 0.0)) fail("radial.t_end: must be positive");
    if (cfg.radial_heat_k == 0) fail("radial.heat_k: must be nonzero");
    if (cfg.scale_m < 0) fail("scale.m: must be non-negative");
    if (!(cfg.scale_r >= 1.0)) fail("scale.r: must be >= 1");

    if (cfg.n >= 16 && cfg.n % 2 == 0) {
        const int cut = cfg.n / 3;
        if (std::abs(cfg.radial_heat_k) > cut)
            fail("radial.heat_k: mode above the dealias cutoff " + std::to_string(cut));
        for (size_t i = 0; i < cfg.forcing.modes.size(); ++i) {
            const auto& m = cfg.forcing.modes[i];
            if (std::abs(m.k1) > cut || std::abs(m.k2) > cut)
                fail("forcing.mode" + std::to_string(i) + ": k = (" + std::to_string(m.k1) +
                     "," + std::to_string(m.k2) + ") above the dealias cutoff " +
                     std::to_string(cut));
        }
    }
}

}  // namespace

RunConfig load_config(const std::string& text) {
    Parser parser;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            parser.fail("line " + std::to_string(line_no) + ": expected key=value, got '" + line +
                        "'");
            continue;
        }
        parser.handle(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    parser.finish_forcing();
    parser.validate();
    if (!parser.errors.empty()) {
        std::string msg = "config invalid (" + std::to_string(parser.errors.size()) +
                          " violation(s)):";
        for (const auto& e : parser.errors) msg += "\n  - " + e;
        throw ValidationError(msg);
    }
    return parser.cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

std::string echo_config(const RunConfig& config) {
    std::ostringstream out;
    out << "# emhd run configuration (canonical echo)\n";
    out << "grid.n=" << config.n << '\n';
    out << "grid.l=" << csv_format(config.l) << '\n';
    out << "physics.variant=" << (config.variant == Variant::emhd1 ? "emhd1" : "emhd2") << '\n';
    out << "physics.mu=" << csv_format(config.mu) << '\n';
    out << "integrator.mode="
        << (config.policy.mode == StepPolicy::Mode::fixed ? "fixed" : "adaptive") << '\n';
    out << "integrator.dt=" << csv_format(config.policy.dt) << '\n';
    out << "integrator.cfl=" << csv_format(config.policy.cfl) << '\n';
    out << "integrator.dt_max=" << csv_format(config.policy.dt_max) << '\n';
    out << "integrator.dt_min=" << csv_format(config.policy.dt_min) << '\n';
    out << "diag.r=" << csv_format(config.r) << '\n';
    out << "diag.c_r=" << csv_format(config.c_r) << '\n';
    out << "diag.s=" << csv_format(config.s) << '\n';
    out << "diag.cadence=" << config.cadence << '\n';
    out << "init.e0=" << csv_format(config.e0) << '\n';
    out << "init.seed=" << config.seed << '\n';
    out << "run.t_end=" << csv_format(config.t_end) << '\n';
    out << "sync.seed2=" << config.sync_seed2 << '\n';
    out << "sync.s=" << csv_format(config.sync_s) << '\n';
    out << "sync.e0=" << csv_format(config.sync_e0) << '\n';
    out << "sync.t_end=" << csv_format(config.sync_t_end) << '\n';
    out << "sync.dt_max=" << csv_format(config.sync_dt_max) << '\n';
    out << "radial.sigma_a=" << csv_format(config.radial_sigma_a) << '\n';
    out << "radial.sigma_b=" << csv_format(config.radial_sigma_b) << '\n';
    out << "radial.mu=" << csv_format(config.radial_mu) << '\n';
    out << "radial.t_end=" << csv_format(config.radial_t_end) << '\n';
    out << "radial.dt=" << csv_format(config.radial_dt) << '\n';
    out << "radial.heat_k=" << config.radial_heat_k << '\n';
    out << "scale.m=" << config.scale_m << '\n';
    out << "scale.r=" << csv_format(config.scale_r) << '\n';
    out << "output.dir=" << config.out_dir << '\n';
    out << "output.final_snapshot=" << (config.final_snapshot ? "true" : "false") << '\n';
    out << "forcing.mode_count=" << config.forcing.modes.size() << '\n';
    for (size_t i = 0; i < config.forcing.modes.size(); ++i) {
        const auto& m = config.forcing.modes[i];
        const std::string prefix = "forcing.mode" + std::to_string(i) + ".";
        out << prefix << "target=" << (m.target == ForcingMode::Target::a ? 'a' : 'b') << '\n';
        out << prefix << "k1=" << m.k1 << '\n';
        out << prefix << "k2=" << m.k2 << '\n';
        out << prefix << "amplitude=" << csv_format(m.amplitude) << '\n';
        out << prefix << "phase=" << csv_format(m.phase) << '\n';
        out << prefix << "omega=" << csv_format(m.omega) << '\n';
    }
    return out.str();
}

}  // namespace emhd
