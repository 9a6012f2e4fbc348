#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qcorr/kernels.hpp"

namespace qcorr {
namespace {

// Eigenvalues below 1e-12 are treated as exact zeros (0 log 0 = 0); this also
// absorbs the small negative values allowed by the PSD tolerance.
double xlog2(double t) { return t < 1e-12 ? 0.0 : t * std::log2(t); }

double entropy_bits(const double* vals, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s -= xlog2(vals[i]);
    return s;
}

void require_two_qubit(const DensityMatrix& rho, const char* who) {
    if (rho.dim() != 4) throw std::invalid_argument(std::string(who) + " needs a two-qubit state");
}

}  // namespace

double purity(const DensityMatrix& rho) { return frobenius2(rho.m); }

double c2_coherence(const DensityMatrix& rho) { return rho.dim() * purity(rho) - 1.0; }

double c_l2_coherence(const DensityMatrix& rho) { return c2_coherence(rho) / rho.dim(); }

double l1_coherence(const DensityMatrix& rho) {
    double s = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j)
            if (i != j) s += std::abs(rho.m(i, j));
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const HermitianEigen eig = hermitian_eigen(rho.m);
    return entropy_bits(eig.values.data(), rho.dim());
}

double rel_entropy_coherence(const DensityMatrix& rho) {
    double diag[4] = {};
    for (int i = 0; i < rho.dim(); ++i) diag[i] = rho.m(i, i).real();
    return entropy_bits(diag, rho.dim()) - von_neumann_entropy(rho);
}

double correlated_coherence(const DensityMatrix& rho) {
    require_two_qubit(rho, "correlated_coherence");
    const double c_ab = 4.0 * purity(rho) - 1.0;
    const double c_a = 2.0 * frobenius2(partial_trace(rho.m, Keep::A)) - 1.0;
    const double c_b = 2.0 * frobenius2(partial_trace(rho.m, Keep::B)) - 1.0;
    return c_ab - c_a - c_b;
}

GeometricDiscord geometric_discord(const DensityMatrix& rho) {
    require_two_qubit(rho, "geometric_discord");
    const BlochDecomposition d = pauli_decompose(rho);
    const Mat3 k = outer(d.a, d.a) + d.e * transpose(d.e);
    GeometricDiscord g;
    g.k_max = sym_eigen3(k).values[2];
    g.raw = 0.5 * (norm2(d.a) + frobenius2(d.e) - g.k_max);
    g.normalized = (g.raw < 0.0 && g.raw >= -1e-9) ? 0.0 : g.raw;
    g.renormalized = (2.0 / 3.0) * g.normalized;
    return g;
}

namespace {

// Fixed scan grid over the measurement hemisphere (antipodal directions give
// the same projector pair), stored as SoA for the batch kernel.
struct Grid {
    static constexpr int kTheta = 64;
    static constexpr int kPhi = 128;
    std::vector<double> x, y, z;
};

const Grid& grid() {
    static const Grid g = [] {
        Grid out;
        const std::size_t n = Grid::kTheta * Grid::kPhi;
        out.x.reserve(n);
        out.y.reserve(n);
        out.z.reserve(n);
        for (int i = 0; i < Grid::kTheta; ++i) {
            const double theta = (i + 0.5) * std::numbers::pi / 2.0 / Grid::kTheta;
            const double st = std::sin(theta), ct = std::cos(theta);
            for (int j = 0; j < Grid::kPhi; ++j) {
                const double phi = j * 2.0 * std::numbers::pi / Grid::kPhi;
                out.x.push_back(st * std::cos(phi));
                out.y.push_back(st * std::sin(phi));
                out.z.push_back(ct);
            }
        }
        return out;
    }();
    return g;
}

struct DiscordContext {
    double a[3], b[3], e[9];
};

double eval_direction(const DiscordContext& c, double theta, double phi) {
    const double nx = std::sin(theta) * std::cos(phi);
    const double ny = std::sin(theta) * std::sin(phi);
    const double nz = std::cos(theta);
    double out = 0.0;
    kernels::active().conditional_entropy_scan(&nx, &ny, &nz, 1, c.a, c.b, c.e, &out);
    return out;
}

// Coordinate descent with a shrinking step. Once the step is below 1e-9 rad
// any remaining per-move improvement is below 1e-10 for this smooth
// objective, which is the stopping contract.
void refine(const DiscordContext& c, double& theta, double& phi, double& best) {
    double step = 0.025;
    for (int iter = 0; iter < 2000 && step > 1e-9; ++iter) {
        double cand_val = best;
        double cand_theta = theta, cand_phi = phi;
        const double moves[4][2] = {
            {step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
        for (const auto& mv : moves) {
            const double t = theta + mv[0], p = phi + mv[1];
            const double v = eval_direction(c, t, p);
            if (v < cand_val) {
                cand_val = v;
                cand_theta = t;
                cand_phi = p;
            }
        }
        if (cand_val < best) {
            best = cand_val;
            theta = cand_theta;
            phi = cand_phi;
        } else {
            step *= 0.5;
        }
    }
}

}  // namespace

EntropicDiscord entropic_discord(const DensityMatrix& rho) {
    require_two_qubit(rho, "entropic_discord");
    const BlochDecomposition d = pauli_decompose(rho);
    DiscordContext c;
    for (int i = 0; i < 3; ++i) {
        c.a[i] = d.a[i];
        c.b[i] = d.b[i];
        for (int j = 0; j < 3; ++j) c.e[3 * i + j] = d.e(i, j);
    }

    const Grid& g = grid();
    const std::size_t n = g.x.size();
    std::vector<double> vals(n);
    kernels::active().conditional_entropy_scan(g.x.data(), g.y.data(), g.z.data(), n, c.a, c.b,
                                               c.e, vals.data());

    // A few well-separated starts from the grid guard against refining into a
    // shallow local valley.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t shortlist = std::min<std::size_t>(n, 64);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(shortlist),
                      order.end(), [&](std::size_t l, std::size_t r) { return vals[l] < vals[r]; });
    std::vector<std::size_t> starts;
    for (std::size_t k = 0; k < shortlist && starts.size() < 4; ++k) {
        const std::size_t i = order[k];
        bool separated = true;
        for (const std::size_t s : starts) {
            const double cosang =
                g.x[i] * g.x[s] + g.y[i] * g.y[s] + g.z[i] * g.z[s];
            if (cosang > 0.99) separated = false;
        }
        if (separated) starts.push_back(i);
    }

    double best = vals[order[0]];
    double best_theta = std::acos(std::clamp(g.z[order[0]], -1.0, 1.0));
    double best_phi = std::atan2(g.y[order[0]], g.x[order[0]]);
    for (const std::size_t s : starts) {
        double theta = std::acos(std::clamp(g.z[s], -1.0, 1.0));
        double phi = std::atan2(g.y[s], g.x[s]);
        double v = vals[s];
        refine(c, theta, phi, v);
        if (v < best) {
            best = v;
            best_theta = theta;
            best_phi = phi;
        }
    }

    const double s_a =
        von_neumann_entropy(DensityMatrix{partial_trace(rho.m, Keep::A)});
    const double s_ab = von_neumann_entropy(rho);

    EntropicDiscord out;
    out.raw = s_a - s_ab + best;
    out.bits = (out.raw < 0.0 && out.raw >= -1e-7) ? 0.0 : out.raw;
    out.direction = {std::sin(best_theta) * std::cos(best_phi),
                     std::sin(best_theta) * std::sin(best_phi), std::cos(best_theta)};
    return out;
}

double negativity(const DensityMatrix& rho) {
    require_two_qubit(rho, "negativity");
    const HermitianEigen eig = hermitian_eigen(partial_transpose_b(rho.m));
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::max(0.0, -eig.values[i]);
    return s;
}

MeasurementProjector projector_pair(const Vec3& n) {
    const Vec3 u = normalized(n);
    MeasurementProjector p;
    p.direction = u;
    p.plus = CMat::zero(2);
    p.minus = CMat::zero(2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            cdouble ns = 0.0;
            for (int i = 1; i <= 3; ++i) ns += u[i - 1] * pauli_sigma(i)(r, c);
            const cdouble id = identity2()(r, c);
            p.plus(r, c) = 0.5 * (id + ns);
            p.minus(r, c) = 0.5 * (id - ns);
        }
    return p;
}

MeasureReport compute_measures(const DensityMatrix& rho) {
    require_two_qubit(rho, "compute_measures");
    MeasureReport r;
    r.purity = purity(rho);
    r.c2 = c2_coherence(rho);
    r.c_l2 = c_l2_coherence(rho);
    r.correlated_coherence = correlated_coherence(rho);
    r.l1_coherence = l1_coherence(rho);
    r.rel_entropy_coherence = rel_entropy_coherence(rho);
    const GeometricDiscord g = geometric_discord(rho);
    r.geometric_discord_normalized = g.normalized;
    r.geometric_discord_renormalized = g.renormalized;
    r.entropic_discord = entropic_discord(rho).bits;
    r.negativity = negativity(rho);
    return r;
}

}  // namespace qcorr
