#include "irgmotif/special.hpp"

#include <cmath>
#include <numbers>

namespace irg {

double phi_psi(int m, Tau tau, std::span<const double> t) {
    const double tv = tau.value();
    if (m == 1) {
        return (tv - 1.0) / (tv - 2.0) - std::pow(t[0], tv - 2.0) / (tv - 2.0);
    }
    // Shared m >= 2 expression; the inner sum over j = 3..m is empty at m = 2
    // and its j-th term carries the prefix product t_2^{3-tau} ... t_{j-1}^{j-tau}.
    double bracket = (tv - 1.0) / ((3.0 - tv) * (tv - 2.0)) -
                     std::pow(t[0], tv - 2.0) / (tv - 2.0);
    double prefix = 1.0;  // running product t_2^{3-tau} ... t_{j-1}^{j-tau}
    for (int j = 3; j <= m; ++j) {
        prefix *= std::pow(t[static_cast<std::size_t>(j) - 2], static_cast<double>(j) - tv);
        bracket -= (tv - 1.0) / ((static_cast<double>(j) + 1.0 - tv) * (static_cast<double>(j) - tv)) *
                   prefix;
    }
    prefix *= std::pow(t[static_cast<std::size_t>(m) - 1], static_cast<double>(m) + 1.0 - tv);
    bracket -= (tv - 1.0) / (static_cast<double>(m) + 1.0 - tv) * prefix;
    return bracket;
}

double phi_raw(int m, Tau tau, std::span<const double> t) {
    const double tv = tau.value();
    double front = t[0];
    for (int i = 2; i <= m; ++i) {
        front *= std::pow(t[static_cast<std::size_t>(i) - 1], tv - 1.0);
    }
    return front * phi_psi(m, tau, t);
}

double phi(const PhiInput& input) {
    for (double ti : input.t) {
        if (!(ti >= 0.0 && ti <= 1.0)) throw_domain("phi coordinates must lie in [0,1]");
    }
    return phi_raw(input.m, input.tau, input.t);
}

std::vector<std::vector<double>> phi_hessian_ones(int m, Tau tau) {
    if (m < 1) throw_invalid("phi_hessian_ones needs m >= 1");
    std::vector<std::vector<double>> h(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            h[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] =
                -(tau.value() - 1.0) * static_cast<double>(std::min(i, j));
        }
    }
    return h;
}

double kernel_j(double u, Tau tau, const KernelSpec& kernel) {
    double log_f = kernel.log_f_exp(u);
    if (std::isinf(log_f) && log_f < 0.0) return 0.0;
    return std::exp(-0.5 * (tau.value() - 1.0) * u + log_f);
}

double kernel_moment(Tau tau, const KernelSpec& kernel) {
    const double tv = tau.value();
    switch (kernel.kind) {
        case KernelSpec::Kind::min_one:
            return 4.0 / ((3.0 - tv) * (tv - 1.0));
        case KernelSpec::Kind::ratio:
            return std::numbers::pi / std::sin(0.5 * std::numbers::pi * (tv - 1.0));
        case KernelSpec::Kind::exp_complement:
            return std::tgamma(0.5 * (3.0 - tv)) / (0.5 * (tv - 1.0));
    }
    throw_invalid("unreachable kernel kind");
}

std::complex<double> log_gamma_complex(std::complex<double> z) {
    if (z.real() <= 0.0) throw_domain("log_gamma_complex requires Re(z) > 0");
    // Lanczos, g = 7, 9 coefficients.
    static constexpr double kCoef[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    std::complex<double> zm1 = z - 1.0;
    std::complex<double> acc = kCoef[0];
    for (int i = 1; i < 9; ++i) acc += kCoef[i] / (zm1 + static_cast<double>(i));
    std::complex<double> t = zm1 + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (zm1 + 0.5) * std::log(t) - t +
           std::log(acc);
}

std::complex<double> kernel_fourier(double v, Tau tau, const KernelSpec& kernel) {
    const double tv = tau.value();
    const std::complex<double> i2pv(0.0, 2.0 * std::numbers::pi * v);
    switch (kernel.kind) {
        case KernelSpec::Kind::min_one:
            return 4.0 / ((3.0 - tv - 2.0 * i2pv) * (tv - 1.0 + 2.0 * i2pv));
        case KernelSpec::Kind::ratio:
            return std::numbers::pi /
                   std::sin(std::numbers::pi * (0.5 * (tv - 1.0) + i2pv));
        case KernelSpec::Kind::exp_complement:
            return std::exp(log_gamma_complex(0.5 * (3.0 - tv) - i2pv)) /
                   (0.5 * (tv - 1.0) + i2pv);
    }
    throw_invalid("unreachable kernel kind");
}

CirculantSpec circulant_build(int k) {
    if (k < 3) throw_invalid("circulant needs k >= 3");
    CirculantSpec spec;
    spec.k = k;
    spec.matrix.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
    for (int r = 0; r < k; ++r) {
        spec.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] = 1;
        spec.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>((r + 1) % k)] = 1;
    }
    spec.eigenvalues.reserve(static_cast<std::size_t>(k));
    for (int m = 1; m <= k; ++m) {
        double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(k);
        spec.eigenvalues.push_back(1.0 + std::complex<double>(std::cos(angle), std::sin(angle)));
    }
    return spec;
}

long long circulant_det(int k) {
    CirculantSpec spec = circulant_build(k);
    // Bareiss fraction-free elimination over the integers.
    auto a = spec.matrix;
    std::vector<std::vector<long long>> m(static_cast<std::size_t>(k),
                                          std::vector<long long>(static_cast<std::size_t>(k)));
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
    }
    long long sign = 1;
    long long prev = 1;
    for (int p = 0; p < k - 1; ++p) {
        if (m[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] == 0) {
            int swap_row = -1;
            for (int r = p + 1; r < k; ++r) {
                if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)] != 0) {
                    swap_row = r;
                    break;
                }
            }
            if (swap_row < 0) return 0;
            std::swap(m[static_cast<std::size_t>(p)], m[static_cast<std::size_t>(swap_row)]);
            sign = -sign;
        }
        for (int r = p + 1; r < k; ++r) {
            for (int c = p + 1; c < k; ++c) {
                auto& cell = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                cell = (cell * m[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] -
                        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)] *
                            m[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)]) /
                       prev;
            }
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)] = 0;
        }
        prev = m[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)];
    }
    return sign * m[static_cast<std::size_t>(k) - 1][static_cast<std::size_t>(k) - 1];
}

double circulant_reduced_det(int k) {
    if (k < 4 || k % 2 != 0) throw_invalid("reduced determinant is defined for even k >= 4");
    CirculantSpec spec = circulant_build(k);
    std::complex<double> prod = 1.0;
    for (int m = 1; m <= k; ++m) {
        if (m == k / 2) continue;
        prod *= spec.eigenvalues[static_cast<std::size_t>(m) - 1];
    }
    return prod.real();
}

std::vector<double> circulant_null_vector(int k) {
    if (k < 4 || k % 2 != 0) throw_invalid("null vector exists only for even k >= 4");
    std::vector<double> c(static_cast<std::size_t>(k));
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    for (int r = 0; r < k; ++r) {
        c[static_cast<std::size_t>(r)] = (r % 2 == 0 ? -scale : scale);
    }
    return c;
}

}  // namespace irg
