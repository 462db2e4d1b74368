#pragma once

#include <cstddef>
#include <vector>

#include "emhd/model.hpp"

namespace emhd {

struct StepPolicy {
    enum class Mode { fixed, adaptive };

    Mode mode = Mode::adaptive;
    double dt = 1e-3;       // fixed mode
    double cfl = 0.5;       // adaptive mode, C_cfl in (0, 1]
    double dt_max = 1e-2;
    double dt_min = 1e-12;  // abort threshold

    void validate() const;
};

/// One integrating-factor RK4 step of length dt: every spectral mode
/// carries the exact heat factor exp(-mu kappa^2 delta) between stage
/// evaluations, so the linear part is integrated exactly; the nonlinear
/// stages come from nonlinear_rhs (+ forcing). Result is dealiased.
/// Throws BlowUpError when the step produces non-finite fields.
StateAB step(const StateAB& state, double dt, Variant variant,
             const ForcingSpec& forcing = {});

/// Whistler-aware step suggestion:
///   dt = min(dt_max, C_cfl / ((||grad a||_inf + ||b||_inf + eps) kappa_max^2))
/// with kappa_max = 2 pi floor(N/3) / L. Throws BlowUpError below dt_min.
double suggest_dt(const StateAB& state, const StepPolicy& policy);

/// Observation hook: on_start fires once before stepping, on_step after
/// every accepted step. Observers see consistent state snapshots.
class StepObserver {
  public:
    virtual ~StepObserver() = default;
    virtual void on_start(const StateAB&) {}
    virtual void on_step(const StateAB&, std::size_t /*step_index*/) {}
};

/// Advance to t_end. The final step is clipped to land on t_end exactly.
/// Deterministic for identical inputs. Propagates step/suggest_dt aborts.
StateAB integrate(StateAB state, double t_end, Variant variant, const ForcingSpec& forcing,
                  const StepPolicy& policy, const std::vector<StepObserver*>& observers = {});

}  // namespace emhd
