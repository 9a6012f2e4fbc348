#pragma once

#include <array>
#include <complex>
#include <cstddef>

// Small dense linear algebra for two-qubit work: complex matrices up to 4x4,
// real 3-vectors and 3x3 matrices, Jacobi eigensolvers, Kronecker products,
// partial trace and partial transpose. Everything is a value type.

namespace qcorr {

using cdouble = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double c, const Vec3& a) { return {c * a.x, c * a.y, c * a.z}; }
inline Vec3 operator/(const Vec3& a, double c) { return {a.x / c, a.y / c, a.z / c}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const Vec3& a);
double norm2(const Vec3& a);
Vec3 normalized(const Vec3& a);  // throws std::invalid_argument on (near-)zero input

/// Real 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> m{};

    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
    const double* data() const { return m.data(); }

    static Mat3 identity();
};

Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);
Mat3 operator*(double c, const Mat3& a);
Mat3 transpose(const Mat3& a);
Mat3 outer(const Vec3& a, const Vec3& b);
double frobenius2(const Mat3& a);  // sum of squared entries
double max_abs(const Mat3& a);

/// Complex matrix with runtime dimension in {2,3,4}; row-major, capacity 4x4.
struct CMat {
    int n = 0;
    std::array<cdouble, 16> a{};

    cdouble operator()(int r, int c) const { return a[static_cast<std::size_t>(n * r + c)]; }
    cdouble& operator()(int r, int c) { return a[static_cast<std::size_t>(n * r + c)]; }

    static CMat zero(int n);
    static CMat identity(int n);
};

CMat operator+(const CMat& a, const CMat& b);
CMat operator-(const CMat& a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);
CMat operator*(cdouble c, const CMat& a);
CMat adjoint(const CMat& a);
cdouble trace(const CMat& a);
double frobenius2(const CMat& a);
double max_abs_diff(const CMat& a, const CMat& b);
double hermiticity_defect(const CMat& a);  // max_ij |a_ij - conj(a_ji)|
bool all_finite(const CMat& a);

// Pauli matrices, standard convention (sigma_y = ((0,-i),(i,0))).
const CMat& pauli_sigma(int i);  // i in {1,2,3}
const CMat& identity2();

/// Three nonnegative reals, sorted decreasing (singular values of a 3x3 E).
struct SpectrumTriple {
    std::array<double, 3> values{};
};

struct HermitianEigen {
    std::array<double, 4> values{};  // ascending; first `vectors.n` entries valid
    CMat vectors;                    // orthonormal eigenvectors as columns
};

// Cyclic complex Jacobi. Input must be Hermitian within 1e-12 entrywise,
// otherwise throws std::invalid_argument carrying the max asymmetry.
// Off-diagonal Frobenius norm is driven below 1e-13 (at most 100 sweeps).
HermitianEigen hermitian_eigen(const CMat& h);

struct SymEigen3 {
    std::array<double, 3> values{};  // ascending
    Mat3 vectors;                    // columns
};

SymEigen3 sym_eigen3(const Mat3& s);

// Square roots of the eigenvalues of E^T E, sorted decreasing.
SpectrumTriple singular_values_3x3(const Mat3& e);

// Kronecker product of two 2x2 matrices, basis order |00>,|01>,|10>,|11>
// with the first factor on qubit A.
CMat tensor_product(const CMat& a, const CMat& b);

enum class Keep { A, B };

CMat partial_trace(const CMat& rho4, Keep keep);
CMat partial_transpose_b(const CMat& rho4);

}  // namespace qcorr
