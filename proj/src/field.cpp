#include "emhd/field.hpp"

#include "emhd/errors.hpp"
#include "emhd/fourier.hpp"

namespace emhd {

ScalarField::ScalarField(const TorusGrid& grid)
    : grid_(grid),
      phys_(Eigen::ArrayXXd::Zero(grid.n(), grid.n())),
      spec_(Eigen::ArrayXXcd::Zero(grid.n(), grid.n())),
      valid_(Valid::both) {}

ScalarField ScalarField::from_physical(const TorusGrid& grid, Eigen::ArrayXXd samples) {
    if (samples.rows() != grid.n() || samples.cols() != grid.n())
        throw ValidationError("ScalarField::from_physical: sample array does not match grid");
    ScalarField f(grid);
    f.phys_ = std::move(samples);
    f.valid_ = Valid::physical;
    return f;
}

ScalarField ScalarField::from_spectral(const TorusGrid& grid, Eigen::ArrayXXcd coefficients) {
    if (coefficients.rows() != grid.n() || coefficients.cols() != grid.n())
        throw ValidationError("ScalarField::from_spectral: coefficient array does not match grid");
    ScalarField f(grid);
    f.spec_ = std::move(coefficients);
    f.valid_ = Valid::spectral;
    return f;
}

const Eigen::ArrayXXd& ScalarField::physical() const {
    if (valid_ == Valid::spectral) {
        transform_for(grid_.n()).inverse(spec_, phys_);
        valid_ = Valid::both;
    }
    return phys_;
}

const Eigen::ArrayXXcd& ScalarField::spectral() const {
    if (valid_ == Valid::physical) {
        transform_for(grid_.n()).forward(phys_, spec_);
        valid_ = Valid::both;
    }
    return spec_;
}

Eigen::ArrayXXd& ScalarField::physical_mut() {
    physical();
    valid_ = Valid::physical;
    return phys_;
}

Eigen::ArrayXXcd& ScalarField::spectral_mut() {
    spectral();
    valid_ = Valid::spectral;
    return spec_;
}

void ScalarField::enforce_hermitian() {
    const int n = grid_.n();
    auto& s = spectral_mut();
    for (int j = 0; j < n; ++j) {
        const int jm = (n - j) % n;
        for (int i = 0; i < n; ++i) {
            const int im = (n - i) % n;
            if (j > jm || (j == jm && i > im)) continue;  // visit each pair once
            const std::complex<double> u = s(i, j);
            const std::complex<double> v = s(im, jm);
            const std::complex<double> avg = 0.5 * (u + std::conj(v));
            s(i, j) = avg;
            s(im, jm) = std::conj(avg);
        }
    }
    // Self-conjugate points must be real.
    for (int j : {0, n / 2})
        for (int i : {0, n / 2}) s(i, j) = std::complex<double>(s(i, j).real(), 0.0);
}

double ScalarField::hermitian_defect() const {
    const int n = grid_.n();
    const auto& s = spectral();
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        const int jm = (n - j) % n;
        for (int i = 0; i < n; ++i) {
            const int im = (n - i) % n;
            worst = std::max(worst, std::abs(s(i, j) - std::conj(s(im, jm))));
        }
    }
    return worst;
}

void ScalarField::set_zero() {
    phys_.setZero(grid_.n(), grid_.n());
    spec_.setZero(grid_.n(), grid_.n());
    valid_ = Valid::both;
}

ScalarField transform_roundtrip(const ScalarField& field) {
    Eigen::ArrayXXcd spec;
    Eigen::ArrayXXd phys;
    auto& tf = transform_for(field.grid().n());
    tf.forward(field.physical(), spec);
    tf.inverse(spec, phys);
    return ScalarField::from_physical(field.grid(), std::move(phys));
}

}  // namespace emhd
