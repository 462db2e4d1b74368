#include "emhd/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "emhd/errors.hpp"

namespace emhd {

namespace {
// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

SpectralTransform::SpectralTransform(int n) : n_(n) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    buf_in_ = reinterpret_cast<std::complex<double>*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n) * n));
    buf_out_ = reinterpret_cast<std::complex<double>*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n) * n));
    // FFTW_ESTIMATE keeps planning deterministic (no timing-dependent
    // algorithm choice); the bit-identical-output contract needs that.
    plan_fwd_ = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(buf_in_),
                                 reinterpret_cast<fftw_complex*>(buf_out_), FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(buf_in_),
                                 reinterpret_cast<fftw_complex*>(buf_out_), FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(buf_in_);
    fftw_free(buf_out_);
}

void SpectralTransform::forward(const Eigen::ArrayXXd& physical, Eigen::ArrayXXcd& spectral) {
    const auto count = static_cast<Eigen::Index>(n_) * n_;
    if (physical.rows() != n_ || physical.cols() != n_)
        throw ValidationError("SpectralTransform::forward: size mismatch");
    if (!physical.isFinite().all())
        throw NonFiniteFieldError("SpectralTransform::forward: non-finite physical samples");
    for (Eigen::Index i = 0; i < count; ++i) buf_in_[i] = physical.data()[i];
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    spectral.resize(n_, n_);
    const double scale = 1.0 / static_cast<double>(count);
    for (Eigen::Index i = 0; i < count; ++i) spectral.data()[i] = buf_out_[i] * scale;
}

void SpectralTransform::inverse(const Eigen::ArrayXXcd& spectral, Eigen::ArrayXXd& physical) {
    const auto count = static_cast<Eigen::Index>(n_) * n_;
    if (spectral.rows() != n_ || spectral.cols() != n_)
        throw ValidationError("SpectralTransform::inverse: size mismatch");
    for (Eigen::Index i = 0; i < count; ++i) buf_in_[i] = spectral.data()[i];
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    physical.resize(n_, n_);
    for (Eigen::Index i = 0; i < count; ++i) physical.data()[i] = buf_out_[i].real();
}

SpectralTransform& transform_for(int n) {
    thread_local std::map<int, std::unique_ptr<SpectralTransform>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<SpectralTransform>(n)).first;
    return *it->second;
}

}  // namespace emhd
