#pragma once

#include "qcorr/linalg.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

// Best average fidelity of the standard teleportation scheme through rho:
// 1/2 (1 + (s1 + s2 + s3)/3) over the singular values of the correlation
// matrix. 1/2 exactly when the correlations vanish.
double teleport_fidelity(const DensityMatrix& rho);

struct TeleportReport {
    double fidelity = 0.0;
    SpectrumTriple singular_values;  // decreasing
    double bound_lower = 0.0;        // (1 + d)/2, d = renormalized geometric discord
    double bound_upper = 0.0;        // (2 + sqrt(d))/3
    bool bounds_satisfied = false;   // diagnostic only; see fidelity_discord_bounds
    double correlated_coherence = 0.0;
};

// Evaluates the discord-based bound pair verbatim and records whether the
// fidelity lands inside. The bound is a literature claim, not an invariant of
// this code: it fails on maximally entangled states, so callers must treat
// bounds_satisfied as a log line, never a correctness gate.
TeleportReport fidelity_discord_bounds(const DensityMatrix& rho);

struct ZeroCcCertificate {
    bool is_useless = false;  // correlated coherence at zero forces fidelity 1/2
    double fidelity = 0.0;
    double correlated_coherence = 0.0;
};

ZeroCcCertificate zero_cc_certificate(const DensityMatrix& rho);

}  // namespace qcorr
