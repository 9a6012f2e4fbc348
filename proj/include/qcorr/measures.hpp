#pragma once

#include "qcorr/state.hpp"

// Scalar correlation and coherence measures. Entropies are in bits; measures
// that are nonnegative by theory are clamped to zero inside a small negative
// tolerance, with the raw value kept for diagnostics.

namespace qcorr {

struct MeasureReport {
    double purity = 0.0;
    double c2 = 0.0;
    double c_l2 = 0.0;
    double correlated_coherence = 0.0;
    double l1_coherence = 0.0;
    double rel_entropy_coherence = 0.0;
    double geometric_discord_normalized = 0.0;
    double geometric_discord_renormalized = 0.0;
    double entropic_discord = 0.0;
    double negativity = 0.0;
};

double purity(const DensityMatrix& rho);        // tr rho^2
double c2_coherence(const DensityMatrix& rho);  // dim * tr rho^2 - 1
double c_l2_coherence(const DensityMatrix& rho);
double l1_coherence(const DensityMatrix& rho);  // sum_{i != j} |rho_ij|
double von_neumann_entropy(const DensityMatrix& rho);
double rel_entropy_coherence(const DensityMatrix& rho);  // S(diag rho) - S(rho)

// C2(rho) - C2(rho_A) - C2(rho_B); 4x4 input.
double correlated_coherence(const DensityMatrix& rho);

struct GeometricDiscord {
    double normalized = 0.0;    // (|a|^2 + |E|^2 - k_max)/2, clamped
    double renormalized = 0.0;  // (2/3) * normalized
    double k_max = 0.0;         // top eigenvalue of K = a a^T + E E^T
    double raw = 0.0;           // normalized value before clamping
};

GeometricDiscord geometric_discord(const DensityMatrix& rho);

struct EntropicDiscord {
    double bits = 0.0;  // clamped at 0 inside [-1e-7, 0)
    double raw = 0.0;
    Vec3 direction;     // argmin measurement direction on A
};

// S(rho_A) - S(rho_AB) + min_n sum_k p_k S(rho_B | k), minimized over
// projective directions n on A (grid scan plus local refinement).
EntropicDiscord entropic_discord(const DensityMatrix& rho);

// Sum of |negative eigenvalues| of the B-partial transpose; zero iff
// separable for two qubits.
double negativity(const DensityMatrix& rho);

// Projector pair (I +- n.sigma)/2 on qubit A; n is normalized on entry.
struct MeasurementProjector {
    Vec3 direction;
    CMat plus, minus;  // 2x2
};

MeasurementProjector projector_pair(const Vec3& n);

MeasureReport compute_measures(const DensityMatrix& rho);  // 4x4 input

}  // namespace qcorr
