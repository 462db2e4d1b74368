#pragma once

#include <cmath>
#include <numbers>

#include "emhd/errors.hpp"

namespace emhd {

/// Periodic box [0, L)^2 sampled on an N x N lattice, with the integer
/// wavenumber lattice k in {-N/2, ..., N/2-1}^2. The Fourier basis is
/// e^{i (2*pi/L) k.x}, so the physical wavenumber of index k is (2*pi/L) k.
class TorusGrid {
  public:
    TorusGrid(int points_per_dim, double period = 1.0)
        : n_(points_per_dim), length_(period) {
        if (n_ < 16 || n_ % 2 != 0)
            throw ValidationError("TorusGrid: N must be even and >= 16, got " +
                                  std::to_string(n_));
        if (!(length_ > 0.0))
            throw ValidationError("TorusGrid: period L must be positive");
    }

    int n() const { return n_; }
    double length() const { return length_; }

    /// Signed integer wavenumber of storage index i in [0, N).
    int wavenumber(int i) const { return i <= n_ / 2 - 1 ? i : i - n_; }

    /// Storage index of signed wavenumber k in [-N/2, N/2).
    int index_of(int k) const { return k >= 0 ? k : k + n_; }

    /// 2/3-rule cutoff: modes with max(|k1|,|k2|) > cutoff are dropped
    /// by dealiasing.
    int dealias_cutoff() const { return n_ / 3; }

    double physical_wavenumber(int k) const {
        return 2.0 * std::numbers::pi * static_cast<double>(k) / length_;
    }

    /// Grid coordinate x_j = (j/N) L.
    double coordinate(int j) const { return length_ * static_cast<double>(j) / n_; }

    /// Quadrature weight of one sample in the uniform-grid rule, L^2/N^2.
    double cell_area() const { return length_ * length_ / (static_cast<double>(n_) * n_); }

    friend bool operator==(const TorusGrid& a, const TorusGrid& b) {
        return a.n_ == b.n_ && a.length_ == b.length_;
    }

  private:
    int n_;
    double length_;
};

}  // namespace emhd
