#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "irgmotif/model.hpp"

namespace irg {

struct PhiInput {
    int m = 1;
    Tau tau;
    std::vector<double> t;  // m coordinates in [0,1]

    PhiInput(int m_, Tau tau_, std::vector<double> t_) : m(m_), tau(tau_), t(std::move(t_)) {
        if (m < 1) throw_invalid("phi needs m >= 1");
        if (t.size() != static_cast<std::size_t>(m)) throw_invalid("phi input length mismatch");
    }
};

// Normalized corner-profile functions on the unit cube: Phi_1 is the m=1
// closed form, m >= 2 share one expression (the inner sum is empty for m=2).
// Vanishes at the origin, equals 1 at the all-ones corner, increases in each
// coordinate.
double phi(const PhiInput& input);

// Same evaluation without the [0,1]^m domain check; the formula extends
// smoothly past the corner, which finite-difference checks need.
double phi_raw(int m, Tau tau, std::span<const double> t);

// Bounded factor Psi_m >= 1 in the decomposition
// Phi_m = t_1 * (t_2 ... t_m)^(tau-1) * Psi_m; lets integrands assemble
// log(Phi_m) without underflow near the origin.
double phi_psi(int m, Tau tau, std::span<const double> t);

// Hessian at the all-ones corner: entry (i,j) = -(tau-1)*min(i,j), 1-based.
std::vector<std::vector<double>> phi_hessian_ones(int m, Tau tau);

// Exponentially tilted kernel j(u) = e^{-(tau-1)u/2} f(e^u); decays
// exponentially in both directions.
double kernel_j(double u, Tau tau, const KernelSpec& kernel);

// Closed form of the moment integral over x in (0,inf) of x^{-(tau+1)/2} f(x).
double kernel_moment(Tau tau, const KernelSpec& kernel);

// Closed form of the Fourier-type transform J(v); J(0) equals kernel_moment
// and |J(v)| <= J(0).
std::complex<double> kernel_fourier(double v, Tau tau, const KernelSpec& kernel);

// Log-gamma on the half-plane Re(z) > 0 (Lanczos approximation); principal
// branch. Used by the exp-complement Fourier closed form.
std::complex<double> log_gamma_complex(std::complex<double> z);

struct CirculantSpec {
    int k = 0;
    std::vector<std::vector<int>> matrix;            // 0/1 entries, ones at (r,r) and (r,r+1 mod k)
    std::vector<std::complex<double>> eigenvalues;   // lambda_m = 1 + e^{2 pi i m / k}, m = 1..k
};

CirculantSpec circulant_build(int k);

// Exact determinant by fraction-free integer elimination: 2 for odd k, 0 for
// even k.
long long circulant_det(int k);

// Product of all eigenvalues except the vanishing one (even k only); equals k.
double circulant_reduced_det(int k);

// Unit null vector (-1,1,...,-1,1)/sqrt(k) of the even-k circulant.
std::vector<double> circulant_null_vector(int k);

}  // namespace irg
