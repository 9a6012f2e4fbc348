#include "qcorr/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr::kernels {
namespace {

double payoff_sum_scalar(const double* x, const double* y, const double* z,
                         const double* w, std::size_t n, const double* e) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v0 = e[0] * x[i] + e[1] * y[i] + e[2] * z[i];
        const double v1 = e[3] * x[i] + e[4] * y[i] + e[5] * z[i];
        const double v2 = e[6] * x[i] + e[7] * y[i] + e[8] * z[i];
        acc += w[i] * (v0 * v0 + v1 * v1 + v2 * v2);
    }
    return acc;
}

double xlog2x(double t) {
    return t <= 1e-300 ? 0.0 : t * std::log2(t);
}

// p * S(rho_B|outcome) where the conditional Bloch vector has length
// wnorm / (2p). Outcomes below the probability floor contribute zero.
double outcome_term(double p, double wnorm) {
    if (p <= 1e-12) return 0.0;
    const double m = std::min(wnorm / (2.0 * p), 1.0);
    const double xp = 0.5 * (1.0 + m);
    const double xm = 0.5 * (1.0 - m);
    return p * -(xlog2x(xp) + xlog2x(xm));
}

void entropy_scan_scalar(const double* x, const double* y, const double* z,
                         std::size_t n, const double* a, const double* b,
                         const double* e, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double nx = x[i], ny = y[i], nz = z[i];
        const double q = a[0] * nx + a[1] * ny + a[2] * nz;
        // (E^T n)_j = sum_i E_ij n_i: columns of the row-major e.
        const double t0 = e[0] * nx + e[3] * ny + e[6] * nz;
        const double t1 = e[1] * nx + e[4] * ny + e[7] * nz;
        const double t2 = e[2] * nx + e[5] * ny + e[8] * nz;
        const double wp = std::sqrt((b[0] + t0) * (b[0] + t0) + (b[1] + t1) * (b[1] + t1) +
                                    (b[2] + t2) * (b[2] + t2));
        const double wm = std::sqrt((b[0] - t0) * (b[0] - t0) + (b[1] - t1) * (b[1] - t1) +
                                    (b[2] - t2) * (b[2] - t2));
        out[i] = outcome_term(0.5 * (1.0 + q), wp) + outcome_term(0.5 * (1.0 - q), wm);
    }
}

std::uint64_t count_below_scalar(std::uint64_t seed, std::uint64_t counter0,
                                 std::uint64_t n, std::uint64_t threshold) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t u = splitmix(seed, counter0 + i) >> 11;
        hits += u < threshold ? 1u : 0u;
    }
    return hits;
}

}  // namespace

const Funcs& scalar() {
    static const Funcs f{payoff_sum_scalar, entropy_scan_scalar, count_below_scalar};
    return f;
}

}  // namespace qcorr::kernels
