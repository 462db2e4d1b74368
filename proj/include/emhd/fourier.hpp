#pragma once

#include <Eigen/Core>
#include <complex>

namespace emhd {

/// Discrete transform contract: forward maps physical samples to Fourier
/// coefficients normalized so that u_hat(0) is the mean of u; inverse is its
/// exact inverse (up to round-off). Full complex N x N storage; Hermitian
/// symmetry of real fields is the caller's invariant.
///
/// One transformer per thread per size: plans are created under a global
/// lock and executed on instance-owned buffers, so distinct instances are
/// safe to drive concurrently. Use transform_for() for the per-thread cache.
class SpectralTransform {
  public:
    explicit SpectralTransform(int n);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    int n() const { return n_; }

    /// Physical -> spectral. Throws ValidationError on non-finite samples.
    void forward(const Eigen::ArrayXXd& physical, Eigen::ArrayXXcd& spectral);

    /// Spectral -> physical (real part; the imaginary residual of a
    /// Hermitian input is round-off and is discarded).
    void inverse(const Eigen::ArrayXXcd& spectral, Eigen::ArrayXXd& physical);

  private:
    int n_;
    std::complex<double>* buf_in_;
    std::complex<double>* buf_out_;
    void* plan_fwd_;
    void* plan_inv_;
};

/// Thread-local transformer for lattice size n (created on first use).
SpectralTransform& transform_for(int n);

}  // namespace emhd
