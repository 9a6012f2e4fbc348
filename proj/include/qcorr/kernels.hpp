#pragma once

#include <cstddef>
#include <cstdint>

// Batch kernels for the data-parallel inner loops: weighted payoff sums over
// direction batches (sphere/circle quadrature), the measured-conditional-
// entropy scan used by the discord optimizer, and counter-based Monte Carlo
// outcome counting. A scalar reference implementation is always available;
// an AVX2 variant is selected at runtime on capable x86-64 CPUs. The two
// backends are equivalence-tested; count_below is bit-identical by design
// (same integer stream evaluated per counter).

namespace qcorr::kernels {

struct Funcs {
    // sum_i w[i] * |E s_i|^2 with s_i = (x[i], y[i], z[i]); e is row-major 3x3.
    double (*weighted_payoff_sum)(const double* x, const double* y, const double* z,
                                  const double* w, std::size_t n, const double* e);

    // Per measurement direction n_i on qubit A: the averaged conditional
    // entropy of B in bits, sum_k p_k S(rho_B|k), from Bloch data (a, b, E).
    // Outcomes with p_k <= 1e-12 contribute zero.
    void (*conditional_entropy_scan)(const double* x, const double* y, const double* z,
                                     std::size_t n, const double* a, const double* b,
                                     const double* e, double* out);

    // Number of i in [0, n) whose counter-based draw u_i (53 bits) is below
    // `threshold`; u_i depends only on (seed, counter0 + i), so any chunked
    // evaluation merges to the same count.
    std::uint64_t (*count_below)(std::uint64_t seed, std::uint64_t counter0,
                                 std::uint64_t n, std::uint64_t threshold);
};

enum class Backend { Scalar, Avx2 };

// Counter-based 64-bit generator (splitmix finalizer over an affine counter).
inline std::uint64_t splitmix(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

const Funcs& scalar();
const Funcs* avx2();      // nullptr when unsupported by the build or the CPU
const Funcs& active();
Backend active_backend();
const char* active_name();

// Explicit backend selection (tests, QCORR_KERNELS env override).
// Returns false and leaves the selection unchanged if unavailable.
bool select(Backend b);
void select_auto();

}  // namespace qcorr::kernels
