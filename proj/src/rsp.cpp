#include "qcorr/rsp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qcorr/kernels.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {
namespace {

void require_unit(const Vec3& v, const char* name) {
    if (std::abs(norm(v) - 1.0) > 1e-10)
        throw std::invalid_argument(std::string(name) + " must be a unit vector, |v| = " +
                                    fmt17(norm(v)));
}

struct GaussLegendre {
    std::vector<double> x, w;  // nodes ascending in [-1, 1]
};

GaussLegendre gauss_legendre(int n) {
    GaussLegendre out;
    out.x.resize(static_cast<std::size_t>(n));
    out.w.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double p1 = 1.0, dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
            }
            dp = n * (x * p1 - p2) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const std::size_t hi = static_cast<std::size_t>(n - 1 - k);
        out.x[static_cast<std::size_t>(k)] = -x;
        out.x[hi] = x;
        out.w[static_cast<std::size_t>(k)] = out.w[hi] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return out;
}

}  // namespace

ConditionalOutcome conditional_state(const BlochDecomposition& d, const Vec3& alpha_dir,
                                     int outcome) {
    require_unit(alpha_dir, "alpha");
    if (outcome != 1 && outcome != -1)
        throw std::invalid_argument("outcome must be +1 or -1");
    const double o = outcome;
    ConditionalOutcome res;
    res.prob = 0.5 * (1.0 + o * dot(alpha_dir, d.a));
    res.occurs = res.prob > 1e-12;
    if (res.occurs) {
        const Vec3 etn = transpose(d.e) * alpha_dir;
        res.bloch = (d.b + o * etn) / (1.0 + o * dot(alpha_dir, d.a));
    }
    return res;
}

Vec3 corrected_state(const BlochDecomposition& d, const Vec3& alpha_dir) {
    const ConditionalOutcome plus = conditional_state(d, alpha_dir, +1);
    const ConditionalOutcome minus = conditional_state(d, alpha_dir, -1);
    // Bob inverts the minus branch (R = -1); branches that never occur carry
    // no weight.
    Vec3 r{};
    if (plus.occurs) r = r + plus.prob * plus.bloch;
    if (minus.occurs) r = r - minus.prob * minus.bloch;
    return r;
}

double rsp_fidelity(const BlochDecomposition& d, const Vec3& alpha_dir, const Vec3& s) {
    require_unit(s, "target");
    return 0.5 * (1.0 + dot(corrected_state(d, alpha_dir), s));
}

double rsp_payoff(const BlochDecomposition& d, const Vec3& alpha_dir, const Vec3& s) {
    const double f = rsp_fidelity(d, alpha_dir, s);
    return (2.0 * f - 1.0) * (2.0 * f - 1.0);
}

RspResult rsp_run(const BlochDecomposition& d, const Vec3& alpha_dir, const Vec3& s) {
    require_unit(s, "target");
    const ConditionalOutcome plus = conditional_state(d, alpha_dir, +1);
    const ConditionalOutcome minus = conditional_state(d, alpha_dir, -1);
    RspResult r;
    r.prob_plus = plus.prob;
    r.prob_minus = minus.prob;
    r.b_plus = plus.bloch;
    r.b_minus = minus.bloch;
    r.r = corrected_state(d, alpha_dir);
    r.fidelity = 0.5 * (1.0 + dot(r.r, s));
    r.payoff = (2.0 * r.fidelity - 1.0) * (2.0 * r.fidelity - 1.0);
    return r;
}

OptimalAlpha optimal_alpha(const BlochDecomposition& d, const Vec3& s) {
    require_unit(s, "target");
    const Vec3 es = d.e * s;
    const double n = norm(es);
    if (n <= 1e-12) return {Vec3{0.0, 0.0, 1.0}, true};
    return {es / n, false};
}

double optimal_payoff(const BlochDecomposition& d, const Vec3& s) {
    require_unit(s, "target");
    return norm2(d.e * s);
}

double circular_average_payoff(const BlochDecomposition& d, const Vec3& beta) {
    require_unit(beta, "beta");
    return 0.5 * (frobenius2(d.e) - norm2(d.e * beta));
}

MinAveragePayoff min_average_payoff(const BlochDecomposition& d) {
    const SymEigen3 eig = sym_eigen3(transpose(d.e) * d.e);  // ascending
    MinAveragePayoff out;
    out.value = 0.5 * (eig.values[0] + eig.values[1]);
    out.beta_star = {eig.vectors(0, 2), eig.vectors(1, 2), eig.vectors(2, 2)};
    return out;
}

double spherical_average_payoff(const BlochDecomposition& d) { return frobenius2(d.e) / 3.0; }

IdentityCheck payoff_coherence_identity(const DensityMatrix& rho) {
    IdentityCheck c;
    c.lhs = spherical_average_payoff(pauli_decompose(rho));
    c.rhs = correlated_coherence(rho) / 3.0;
    c.defect = std::abs(c.lhs - c.rhs);
    return c;
}

void orthonormal_frame(const Vec3& beta, Vec3& u, Vec3& v) {
    const Vec3 w = normalized(beta);
    // seed with the coordinate axis least aligned with beta
    const double ax = std::abs(w.x), ay = std::abs(w.y), az = std::abs(w.z);
    Vec3 seed{0.0, 0.0, 1.0};
    if (ax <= ay && ax <= az)
        seed = {1.0, 0.0, 0.0};
    else if (ay <= az)
        seed = {0.0, 1.0, 0.0};
    u = normalized(cross(w, seed));
    v = cross(w, u);
}

double quadrature_spherical_average(const BlochDecomposition& d, int n_theta, int n_phi) {
    if (n_theta < 8 || n_phi < 8)
        throw std::invalid_argument("spherical quadrature needs at least 8x8 nodes");
    const GaussLegendre gl = gauss_legendre(n_theta);
    const std::size_t n = static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi);
    std::vector<double> x, y, z, w;
    x.reserve(n);
    y.reserve(n);
    z.reserve(n);
    w.reserve(n);
    for (int i = 0; i < n_theta; ++i) {
        const double ct = gl.x[static_cast<std::size_t>(i)];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        // (1/4pi) * w_gl * (2pi/n_phi) = w_gl / (2 n_phi)
        const double wi = gl.w[static_cast<std::size_t>(i)] / (2.0 * n_phi);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = j * 2.0 * std::numbers::pi / n_phi;
            x.push_back(st * std::cos(phi));
            y.push_back(st * std::sin(phi));
            z.push_back(ct);
            w.push_back(wi);
        }
    }
    return kernels::active().weighted_payoff_sum(x.data(), y.data(), z.data(), w.data(), n,
                                                 d.e.data());
}

double quadrature_circle_average(const BlochDecomposition& d, const Vec3& beta, int n_points) {
    if (n_points < 8) throw std::invalid_argument("circle quadrature needs at least 8 nodes");
    Vec3 u, v;
    orthonormal_frame(beta, u, v);
    const std::size_t n = static_cast<std::size_t>(n_points);
    std::vector<double> x(n), y(n), z(n), w(n, 1.0 / n_points);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j) * 2.0 * std::numbers::pi / n_points;
        const Vec3 s = std::cos(t) * u + std::sin(t) * v;
        x[j] = s.x;
        y[j] = s.y;
        z[j] = s.z;
    }
    return kernels::active().weighted_payoff_sum(x.data(), y.data(), z.data(), w.data(), n,
                                                 d.e.data());
}

SimulationResult simulate_rsp(const DensityMatrix& rho, const Vec3& s, std::uint64_t shots,
                              std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("simulate_rsp needs at least one shot");
    require_unit(s, "target");
    const BlochDecomposition d = pauli_decompose(rho);
    const OptimalAlpha oa = optimal_alpha(d, s);

    const Vec3 etn = transpose(d.e) * oa.alpha;
    const double q = dot(oa.alpha, d.a);
    const double p_plus = 0.5 * (1.0 + q);
    const double p_minus = 0.5 * (1.0 - q);
    const Vec3 b_plus = p_plus > 0.0 ? (d.b + etn) / (2.0 * p_plus) : Vec3{};
    const Vec3 b_minus = p_minus > 0.0 ? (d.b - etn) / (2.0 * p_minus) : Vec3{};

    // Draw u_i = 53 high bits of the counter stream; shot i is "plus" iff
    // u_i < round(p_plus * 2^53). The count is chunk-order independent.
    const double scale = 9007199254740992.0;  // 2^53
    std::uint64_t threshold =
        static_cast<std::uint64_t>(std::llround(std::min(1.0, std::max(0.0, p_plus)) * scale));
    const std::uint64_t plus =
        kernels::active().count_below(seed, 0, shots, threshold);
    const std::uint64_t minus = shots - plus;

    SimulationResult r;
    r.alpha = oa.alpha;
    r.degenerate = oa.degenerate;
    r.shots = shots;
    r.plus_count = plus;
    const double fp = static_cast<double>(plus) / static_cast<double>(shots);
    const double fm = static_cast<double>(minus) / static_cast<double>(shots);
    r.empirical_r = fp * b_plus - fm * b_minus;
    r.empirical_fidelity = 0.5 * (1.0 + dot(r.empirical_r, s));
    r.empirical_payoff =
        (2.0 * r.empirical_fidelity - 1.0) * (2.0 * r.empirical_fidelity - 1.0);
    r.analytic_fidelity = rsp_fidelity(d, oa.alpha, s);
    r.analytic_payoff = rsp_payoff(d, oa.alpha, s);
    // F = ((b_+ + b_-).s) * (k/N) + const, k binomial
    r.fidelity_stderr = 0.5 * std::abs(dot(b_plus + b_minus, s)) *
                        std::sqrt(p_plus * p_minus / static_cast<double>(shots));
    return r;
}

}  // namespace qcorr
