#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>

#include "emhd/grid.hpp"

namespace emhd {

/// One real periodic scalar with synchronized physical / spectral
/// representations. Whichever side was written last is authoritative; the
/// other is produced lazily through the transform. Value-semantic: copies
/// are independent and the type is safe to move between threads.
class ScalarField {
  public:
    enum class Valid { physical, spectral, both };

    explicit ScalarField(const TorusGrid& grid);

    static ScalarField from_physical(const TorusGrid& grid, Eigen::ArrayXXd samples);
    static ScalarField from_spectral(const TorusGrid& grid, Eigen::ArrayXXcd coefficients);

    const TorusGrid& grid() const { return grid_; }
    Valid valid() const { return valid_; }

    /// Read access; transforms on demand.
    const Eigen::ArrayXXd& physical() const;
    const Eigen::ArrayXXcd& spectral() const;

    /// Write access; invalidates the other representation.
    Eigen::ArrayXXd& physical_mut();
    Eigen::ArrayXXcd& spectral_mut();

    /// Restore u_hat(-k) = conj(u_hat(k)) exactly (averages the two half
    /// lattices). Call after hand-edits of spectral data; multiplier ops
    /// preserve the symmetry by construction.
    void enforce_hermitian();

    /// Max |u_hat(-k) - conj(u_hat(k))| over the lattice.
    double hermitian_defect() const;

    void set_zero();

  private:
    TorusGrid grid_;
    mutable Eigen::ArrayXXd phys_;
    mutable Eigen::ArrayXXcd spec_;
    mutable Valid valid_;
};

/// Forward-then-inverse transform; post: same samples to round-off.
ScalarField transform_roundtrip(const ScalarField& field);

/// Three scalar components on one 2D grid (a 2.5D vector field: no
/// z-dependence, all three components present).
struct VectorField3 {
    std::array<ScalarField, 3> comp;

    explicit VectorField3(const TorusGrid& grid)
        : comp{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}
    VectorField3(ScalarField c1, ScalarField c2, ScalarField c3)
        : comp{std::move(c1), std::move(c2), std::move(c3)} {}

    const TorusGrid& grid() const { return comp[0].grid(); }
    ScalarField& operator[](int i) { return comp[static_cast<size_t>(i)]; }
    const ScalarField& operator[](int i) const { return comp[static_cast<size_t>(i)]; }
};

}  // namespace emhd
