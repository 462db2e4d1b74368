#pragma once

#include <limits>
#include <string>
#include <vector>

#include "emhd/field.hpp"

namespace emhd {

/// Shell index value meaning "no finite shell" (empty defining set of a
/// wavenumber, or "low-pass everything" in monitor context).
inline constexpr int kShellInf = std::numeric_limits<int>::max();

/// The radial cutoff bump: 1 on |xi| <= 3/4, 0 on |xi| >= 1, C-infinity
/// in between (normalized exp(-1/t) partition bump). Plateau and support
/// values are exact, not approximated.
double chi(double xi);

/// phi(xi) = chi(xi/2) - chi(xi): supported on 3/4 < |xi| < 2.
double phi(double xi);

/// Precomputed dyadic multipliers phi_q on the integer lattice:
///   phi_q(k) = phi(|k| / 2^q) for q >= 0,   phi_{-1}(k) = chi(|k|),
/// with lambda_q = 2^q / L. Shells run q = -1 .. q_max where q_max is the
/// smallest q whose cumulative plateau covers every retained mode,
/// including the dealias-square corners at |k| = sqrt(2) floor(N/3).
/// Immutable after construction; safe to share across threads.
class DyadicFilterBank {
  public:
    explicit DyadicFilterBank(const TorusGrid& grid);

    const TorusGrid& grid() const { return grid_; }
    int q_min() const { return -1; }
    int q_max() const { return q_max_; }
    int shell_count() const { return q_max_ + 2; }

    double lambda(int q) const;  // 2^q / L (infinity for the sentinel)

    /// Multiplier table for shell q (q in [-1, q_max]).
    const Eigen::ArrayXXd& multiplier(int q) const;

    /// Cumulative low-pass multiplier sum_{p <= q} phi_p (q in [-1, q_max]).
    const Eigen::ArrayXXd& lowpass_multiplier(int q) const;

  private:
    TorusGrid grid_;
    int q_max_;
    std::vector<Eigen::ArrayXXd> mult_;  // index q + 1
    std::vector<Eigen::ArrayXXd> cum_;
};

/// Delta_q u: spectral multiplication by phi_q. q outside [-1, q_max]
/// yields the zero field (those shells carry no retained content).
ScalarField lp_project(const ScalarField& field, int q, const DyadicFilterBank& bank);

/// u_{<= q}. q < -1 gives zero; q = kShellInf gives the field itself;
/// finite q >= q_max applies the full cumulative multiplier.
ScalarField lowpass(const ScalarField& field, int q, const DyadicFilterBank& bank);

/// u_tilde_q = u_{q-1} + u_q + u_{q+1}.
ScalarField tilde_project(const ScalarField& field, int q, const DyadicFilterBank& bank);

struct ShellSpectrum {
    double r = 2.0;                // the L^r exponent used
    std::string source;            // identity of the analysed field (caller-supplied)
    std::vector<double> l2;        // per shell, index q + 1
    std::vector<double> lr;
    std::vector<double> linf;
};

/// Per-shell L^2 / L^r / L^inf quadrature norms.
ShellSpectrum shell_spectrum(const ScalarField& field, double r, const DyadicFilterBank& bank,
                             std::string source = {});

/// Equivalent H^s norm (sum_q lambda_q^{2s} ||u_q||_2^2)^{1/2}, s in [-2, 4].
/// Shell L^2 content is evaluated spectrally (identical to the quadrature
/// value for retained content, which is alias-free).
double sobolev_norm(const ScalarField& field, double s, const DyadicFilterBank& bank);

/// Besov B^1_{inf,inf} norm: sup_q lambda_q ||u_q||_inf.
double besov_b1inf_norm(const ScalarField& field, const DyadicFilterBank& bank);

struct BonyDecomposition {
    ScalarField low_high;   // sum_{|p-q|<=2} Delta_q(u_{<=p-2} v_p)
    ScalarField high_low;   // sum_{|p-q|<=2} Delta_q(u_p v_{<=p-2})
    ScalarField high_high;  // sum_{p>=q-2} Delta_q(u_tilde_p v_p)
};

/// Bony paraproduct split of Delta_q(u v) (plain products, pseudo-spectral
/// with dealiasing). The three parts sum to Delta_q(dealias(u v)) on
/// retained modes.
BonyDecomposition bony_decompose(const ScalarField& u, const ScalarField& v, int q,
                                 const DyadicFilterBank& bank);

/// [Delta_q, u_{<=p-2} . grad] v_p
///   = Delta_q(u_{<=p-2} . grad v_p) - u_{<=p-2} . grad Delta_q v_p,
/// with dealiased products; u = (u1, u2) need not be divergence-free.
ScalarField commutator_transport(const ScalarField& u1, const ScalarField& u2,
                                 const ScalarField& v, int q, int p,
                                 const DyadicFilterBank& bank);

/// [Delta_q, u x (curl .)] v = Delta_q(u x (curl v)) - u x (curl v_q),
/// componentwise in the 2.5D representation (d/dz == 0).
VectorField3 commutator_curl(const VectorField3& u, const VectorField3& v, int q,
                             const DyadicFilterBank& bank);

}  // namespace emhd
