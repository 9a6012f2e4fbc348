#include "qcorr/teleport.hpp"

#include <cmath>

#include "qcorr/measures.hpp"

namespace qcorr {
namespace {

double fidelity_from(const SpectrumTriple& s) {
    return 0.5 * (1.0 + (s.values[0] + s.values[1] + s.values[2]) / 3.0);
}

}  // namespace

double teleport_fidelity(const DensityMatrix& rho) {
    return fidelity_from(singular_values_3x3(pauli_decompose(rho).e));
}

TeleportReport fidelity_discord_bounds(const DensityMatrix& rho) {
    TeleportReport r;
    r.singular_values = singular_values_3x3(pauli_decompose(rho).e);
    r.fidelity = fidelity_from(r.singular_values);
    r.correlated_coherence = correlated_coherence(rho);
    const double d = geometric_discord(rho).renormalized;
    r.bound_lower = 0.5 * (1.0 + d);
    r.bound_upper = (2.0 + std::sqrt(d)) / 3.0;
    r.bounds_satisfied =
        r.fidelity >= r.bound_lower - 1e-12 && r.fidelity <= r.bound_upper + 1e-12;
    return r;
}

ZeroCcCertificate zero_cc_certificate(const DensityMatrix& rho) {
    ZeroCcCertificate c;
    c.correlated_coherence = correlated_coherence(rho);
    c.fidelity = teleport_fidelity(rho);
    c.is_useless = c.correlated_coherence <= 1e-12;
    return c;
}

}  // namespace qcorr
