#pragma once

#include <cstdint>
#include <string>

#include "qcorr/linalg.hpp"

// Density-matrix domain type, Bloch/Pauli decomposition and its inverse,
// state factories, and the state-file format (JSON; see README).

namespace qcorr {

struct ValidityReport {
    bool finite = true;
    double hermiticity_defect = 0.0;  // max_ij |m_ij - conj(m_ji)|
    double trace_defect = 0.0;        // |tr m - 1|
    double min_eigenvalue = 0.0;      // of the hermitized matrix
    bool hermitian_ok = false;
    bool trace_ok = false;
    bool psd_ok = false;

    bool ok() const { return finite && hermitian_ok && trace_ok && psd_ok; }
    std::string describe() const;  // names every violated invariant
};

// Tolerances: Hermitian within 1e-10 entrywise, unit trace within 1e-10,
// minimum eigenvalue >= -1e-9. File-ingested states may carry rounding; the
// stored matrix is never mutated (entropy code clamps transiently instead).
struct DensityMatrix {
    CMat m;

    int dim() const { return m.n; }
};

ValidityReport validate(const CMat& m);
DensityMatrix make_density(const CMat& m);  // throws std::invalid_argument when invalid

// a_i = tr[rho (sigma_i x I)], b_j = tr[rho (I x sigma_j)],
// E_ij = tr[rho (sigma_i x sigma_j)]; basis |00>,|01>,|10>,|11>, qubit A first.
struct BlochDecomposition {
    Vec3 a, b;
    Mat3 e;
};

BlochDecomposition pauli_decompose(const DensityMatrix& rho);  // 4x4 input only

// Literal quarter-weighted Pauli expansion of (a, b, E); not validated.
CMat bloch_matrix(const BlochDecomposition& d);
// Same expansion, rejected when the result is not a valid density matrix.
DensityMatrix reconstruct(const BlochDecomposition& d);

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

DensityMatrix make_qubit(const Vec3& bloch);  // (I + v.sigma)/2, |v| <= 1
DensityMatrix make_bell(Bell which);
DensityMatrix make_werner(double p);  // p in [0,1]: p*PhiPlus + (1-p)*I/4
DensityMatrix make_bell_diagonal(double c1, double c2, double c3);
DensityMatrix make_product(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

// Ginibre construction G G^dag / tr(G G^dag), G of shape dim x rank with
// i.i.d. complex-normal entries; deterministic for a fixed seed.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

// Worked reference fixtures used throughout the README and tests: a product
// of two diagonal qubits, and a correlated channel state that is useful for
// teleportation while carrying zero discord and zero entanglement.
DensityMatrix reference_product_state();
DensityMatrix reference_channel_state();

struct LoadedState {
    DensityMatrix rho;
    std::string label;
};

// Throws std::runtime_error when unreadable, std::invalid_argument when
// malformed or not a valid density matrix.
LoadedState load_state(const std::string& path);
std::string write_state_json(const DensityMatrix& rho, const std::string& label);
void save_state(const DensityMatrix& rho, const std::string& label, const std::string& path);

// FNV-1a 64 over the canonical byte stream (dim, then row-major re/im pairs
// as little-endian doubles); 16 hex characters.
std::string state_digest(const DensityMatrix& rho);

// %.17g rendering: enough digits to round-trip any double.
std::string fmt17(double x);

}  // namespace qcorr
