#pragma once

#include <cstdint>

#include "emhd/model.hpp"

namespace emhd {

/// Random initial data: fills the lattice points of shells q <= 2
/// (0 < |k| < 8, inside the dealias square) with unit-variance complex
/// Gaussian amplitudes, Hermitian-symmetrizes, and scales both fields so
/// that E(0) equals e0. Mean-free by construction (k = 0 untouched).
/// Identical (seed, grid, e0) always produces identical bits.
StateAB seeded_low_mode_state(const TorusGrid& grid, std::uint64_t seed, double e0, double mu);

/// Test/ensemble helper: one real field with Gaussian spectrum on
/// kmin <= |k| <= kmax, amplitudes damped by |k|^{-decay}.
ScalarField random_band_limited(const TorusGrid& grid, std::uint64_t seed, double kmin,
                                double kmax, double decay = 0.0);

}  // namespace emhd
