#pragma once

#include <cstdint>

#include "qcorr/state.hpp"

// Remote-state-preparation engine: conditional states, the corrected average
// state r, fidelity and payoff, optimal measurement direction, circle/sphere
// payoff averages with quadrature oracles, and a shot-based simulation.
//
// Conventions: Alice measures along unit alpha_dir with outcome +-1; Bob's
// correction on the minus branch is the inversion R = -1; the payoff is the
// squared rescaled fidelity (2F - 1)^2.

namespace qcorr {

struct ConditionalOutcome {
    Vec3 bloch;  // conditional Bloch vector of B; zero when !occurs
    double prob = 0.0;
    bool occurs = false;  // prob > 1e-12
};

// b_out = (b + outcome * E^T alpha) / (1 + outcome * alpha.a),
// prob = (1 + outcome * alpha.a)/2; outcome is +1 or -1.
ConditionalOutcome conditional_state(const BlochDecomposition& d, const Vec3& alpha_dir,
                                     int outcome);

// Mixture r = p_+ b_+ - p_- b_-; equals E^T alpha for physical states.
Vec3 corrected_state(const BlochDecomposition& d, const Vec3& alpha_dir);

double rsp_fidelity(const BlochDecomposition& d, const Vec3& alpha_dir, const Vec3& s);
double rsp_payoff(const BlochDecomposition& d, const Vec3& alpha_dir, const Vec3& s);

struct RspResult {
    double prob_plus = 0.0, prob_minus = 0.0;
    Vec3 b_plus, b_minus;
    Vec3 r;
    double fidelity = 0.0, payoff = 0.0;
};

RspResult rsp_run(const BlochDecomposition& d, const Vec3& alpha_dir, const Vec3& s);

struct OptimalAlpha {
    Vec3 alpha;
    bool degenerate = false;  // |E s| <= 1e-12: every direction ties at payoff 0
};

// E s / |E s|; the degenerate case falls back to +z by convention.
OptimalAlpha optimal_alpha(const BlochDecomposition& d, const Vec3& s);
double optimal_payoff(const BlochDecomposition& d, const Vec3& s);  // |E s|^2

// Average of the optimal payoff over unit targets in the plane normal to
// beta: (|E|_F^2 - beta^T E^T E beta)/2.
double circular_average_payoff(const BlochDecomposition& d, const Vec3& beta);

struct MinAveragePayoff {
    double value = 0.0;
    Vec3 beta_star;  // top eigenvector of E^T E
};

MinAveragePayoff min_average_payoff(const BlochDecomposition& d);

// Average of the optimal payoff over the full target sphere: |E|_F^2 / 3.
double spherical_average_payoff(const BlochDecomposition& d);

struct IdentityCheck {
    double lhs = 0.0;  // spherical average payoff
    double rhs = 0.0;  // correlated coherence / 3
    double defect = 0.0;
};

IdentityCheck payoff_coherence_identity(const DensityMatrix& rho);

// Numerical averages used as oracles for the closed forms above.
// Gauss-Legendre in cos(theta) composed with a uniform trapezoid in phi; the
// integrand is quadratic in the target, so the rule is exact at low order.
double quadrature_spherical_average(const BlochDecomposition& d, int n_theta, int n_phi);
double quadrature_circle_average(const BlochDecomposition& d, const Vec3& beta, int n_points);

// Completes beta to a right-handed orthonormal frame (u, v, beta).
void orthonormal_frame(const Vec3& beta, Vec3& u, Vec3& v);

struct SimulationResult {
    Vec3 empirical_r;
    double empirical_fidelity = 0.0;
    double empirical_payoff = 0.0;
    double analytic_fidelity = 0.0;
    double analytic_payoff = 0.0;
    double fidelity_stderr = 0.0;  // binomial propagation through r.s
    Vec3 alpha;
    bool degenerate = false;
    std::uint64_t shots = 0;
    std::uint64_t plus_count = 0;
};

// Finite-shot protocol run at the optimal measurement direction, using a
// counter-based generator: the outcome stream depends only on (seed, shot
// index), so results are bit-identical across runs and chunkings.
SimulationResult simulate_rsp(const DensityMatrix& rho, const Vec3& s, std::uint64_t shots,
                              std::uint64_t seed);

}  // namespace qcorr
