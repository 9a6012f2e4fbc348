#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcorr {

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
double norm2(const Vec3& a) { return dot(a, a); }

Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    if (n < 1e-300) throw std::invalid_argument("cannot normalize (near-)zero vector");
    return a / n;
}

Mat3 Mat3::identity() {
    Mat3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
    Vec3 r;
    for (int i = 0; i < 3; ++i) r[i] = a(i, 0) * v.x + a(i, 1) * v.y + a(i, 2) * v.z;
    return r;
}

Mat3 operator*(double c, const Mat3& a) {
    Mat3 r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = c * a.m[i];
    return r;
}

Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
    return r;
}

Mat3 outer(const Vec3& a, const Vec3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
    return r;
}

double frobenius2(const Mat3& a) {
    double s = 0.0;
    for (double v : a.m) s += v * v;
    return s;
}

double max_abs(const Mat3& a) {
    double s = 0.0;
    for (double v : a.m) s = std::max(s, std::abs(v));
    return s;
}

CMat CMat::zero(int n) {
    CMat r;
    r.n = n;
    return r;
}

CMat CMat::identity(int n) {
    CMat r = zero(n);
    for (int i = 0; i < n; ++i) r(i, i) = 1.0;
    return r;
}

CMat operator+(const CMat& a, const CMat& b) {
    CMat r = CMat::zero(a.n);
    const std::size_t sz = static_cast<std::size_t>(a.n) * a.n;
    for (std::size_t i = 0; i < sz; ++i) r.a[i] = a.a[i] + b.a[i];
    return r;
}

CMat operator-(const CMat& a, const CMat& b) {
    CMat r = CMat::zero(a.n);
    const std::size_t sz = static_cast<std::size_t>(a.n) * a.n;
    for (std::size_t i = 0; i < sz; ++i) r.a[i] = a.a[i] - b.a[i];
    return r;
}

CMat operator*(const CMat& a, const CMat& b) {
    CMat r = CMat::zero(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            cdouble s = 0.0;
            for (int k = 0; k < a.n; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

CMat operator*(cdouble c, const CMat& a) {
    CMat r = CMat::zero(a.n);
    const std::size_t sz = static_cast<std::size_t>(a.n) * a.n;
    for (std::size_t i = 0; i < sz; ++i) r.a[i] = c * a.a[i];
    return r;
}

CMat adjoint(const CMat& a) {
    CMat r = CMat::zero(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

cdouble trace(const CMat& a) {
    cdouble s = 0.0;
    for (int i = 0; i < a.n; ++i) s += a(i, i);
    return s;
}

double frobenius2(const CMat& a) {
    double s = 0.0;
    const std::size_t sz = static_cast<std::size_t>(a.n) * a.n;
    for (std::size_t i = 0; i < sz; ++i) s += std::norm(a.a[i]);
    return s;
}

double max_abs_diff(const CMat& a, const CMat& b) {
    double s = 0.0;
    const std::size_t sz = static_cast<std::size_t>(a.n) * a.n;
    for (std::size_t i = 0; i < sz; ++i) s = std::max(s, std::abs(a.a[i] - b.a[i]));
    return s;
}

double hermiticity_defect(const CMat& a) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) s = std::max(s, std::abs(a(i, j) - std::conj(a(j, i))));
    return s;
}

bool all_finite(const CMat& a) {
    const std::size_t sz = static_cast<std::size_t>(a.n) * a.n;
    for (std::size_t i = 0; i < sz; ++i)
        if (!std::isfinite(a.a[i].real()) || !std::isfinite(a.a[i].imag())) return false;
    return true;
}

const CMat& pauli_sigma(int i) {
    static const CMat sx = [] {
        CMat m = CMat::zero(2);
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        return m;
    }();
    static const CMat sy = [] {
        CMat m = CMat::zero(2);
        m(0, 1) = cdouble(0.0, -1.0);
        m(1, 0) = cdouble(0.0, 1.0);
        return m;
    }();
    static const CMat sz = [] {
        CMat m = CMat::zero(2);
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        return m;
    }();
    switch (i) {
        case 1: return sx;
        case 2: return sy;
        case 3: return sz;
        default: throw std::invalid_argument("pauli index must be 1, 2 or 3");
    }
}

const CMat& identity2() {
    static const CMat id = CMat::identity(2);
    return id;
}

namespace {

double offdiag_frobenius(const CMat& a) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). Updates a in place and
// accumulates the rotation into v (columns remain orthonormal).
void jacobi_rotate(CMat& a, CMat& v, int p, int q) {
    const cdouble apq = a(p, q);
    const double r = std::abs(apq);
    if (r < 1e-300) return;
    const cdouble phase = apq / r;  // e^{i phi}

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * r);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const cdouble s = t * c * phase;

    // A <- U^dag A U with U = [[c, s],[-conj(s), c]] in the (p,q) plane.
    for (int k = 0; k < a.n; ++k) {
        const cdouble akp = a(k, p);
        const cdouble akq = a(k, q);
        a(k, p) = c * akp - std::conj(s) * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (int k = 0; k < a.n; ++k) {
        const cdouble apk = a(p, k);
        const cdouble aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = std::conj(s) * apk + c * aqk;
    }
    for (int k = 0; k < a.n; ++k) {
        const cdouble vkp = v(k, p);
        const cdouble vkq = v(k, q);
        v(k, p) = c * vkp - std::conj(s) * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

}  // namespace

HermitianEigen hermitian_eigen(const CMat& h) {
    if (h.n < 2 || h.n > 4) throw std::invalid_argument("hermitian_eigen: dimension must be 2..4");
    if (!all_finite(h)) throw std::invalid_argument("hermitian_eigen: non-finite entries");
    const double defect = hermiticity_defect(h);
    if (defect > 1e-12) {
        std::ostringstream os;
        os << "hermitian_eigen: input not Hermitian, max asymmetry " << defect;
        throw std::invalid_argument(os.str());
    }

    CMat a = h;
    // Work on the exactly Hermitian part; the defect bound keeps this within 5e-13.
    for (int i = 0; i < a.n; ++i) {
        a(i, i) = a(i, i).real();
        for (int j = i + 1; j < a.n; ++j) {
            const cdouble m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }

    CMat v = CMat::identity(a.n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_frobenius(a) <= 1e-13) break;
        for (int p = 0; p < a.n - 1; ++p)
            for (int q = p + 1; q < a.n; ++q) jacobi_rotate(a, v, p, q);
    }

    HermitianEigen out;
    out.vectors = CMat::zero(a.n);
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.begin() + a.n,
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    for (int col = 0; col < a.n; ++col) {
        const int src = order[static_cast<std::size_t>(col)];
        out.values[static_cast<std::size_t>(col)] = a(src, src).real();
        for (int rowi = 0; rowi < a.n; ++rowi) out.vectors(rowi, col) = v(rowi, src);
    }
    return out;
}

namespace {

void jacobi_rotate_real(Mat3& a, Mat3& v, int p, int q) {
    const double apq = a(p, q);
    if (std::abs(apq) < 1e-300) return;
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    for (int k = 0; k < 3; ++k) {
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (int k = 0; k < 3; ++k) {
        const double apk = a(p, k);
        const double aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    for (int k = 0; k < 3; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

double offdiag_frobenius(const Mat3& a) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

SymEigen3 sym_eigen3(const Mat3& s) {
    Mat3 a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));

    Mat3 v = Mat3::identity();
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_frobenius(a) <= 1e-13) break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) jacobi_rotate_real(a, v, p, q);
    }

    SymEigen3 out;
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
    for (int col = 0; col < 3; ++col) {
        const int src = order[static_cast<std::size_t>(col)];
        out.values[static_cast<std::size_t>(col)] = a(src, src);
        for (int rowi = 0; rowi < 3; ++rowi) out.vectors(rowi, col) = v(rowi, src);
    }
    return out;
}

SpectrumTriple singular_values_3x3(const Mat3& e) {
    for (double x : e.m)
        if (!std::isfinite(x)) throw std::invalid_argument("singular_values_3x3: non-finite entries");
    const SymEigen3 eig = sym_eigen3(transpose(e) * e);
    SpectrumTriple out;
    for (int i = 0; i < 3; ++i) {
        const double ev = std::max(eig.values[static_cast<std::size_t>(2 - i)], 0.0);
        out.values[static_cast<std::size_t>(i)] = std::sqrt(ev);
    }
    return out;
}

CMat tensor_product(const CMat& a, const CMat& b) {
    if (a.n != 2 || b.n != 2) throw std::invalid_argument("tensor_product: both factors must be 2x2");
    CMat r = CMat::zero(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

CMat partial_trace(const CMat& rho4, Keep keep) {
    if (rho4.n != 4) throw std::invalid_argument("partial_trace: input must be 4x4");
    CMat r = CMat::zero(2);
    if (keep == Keep::A) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = rho4(2 * i, 2 * j) + rho4(2 * i + 1, 2 * j + 1);
    } else {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = rho4(i, j) + rho4(2 + i, 2 + j);
    }
    return r;
}

CMat partial_transpose_b(const CMat& rho4) {
    if (rho4.n != 4) throw std::invalid_argument("partial_transpose_b: input must be 4x4");
    CMat r = CMat::zero(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp)
                    r(2 * a + b, 2 * ap + bp) = rho4(2 * a + bp, 2 * ap + b);
    return r;
}

}  // namespace qcorr
