#include "qcorr/state.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qcorr {
namespace {

// sigma_i (x) sigma_j with sigma_0 = I, cached for decompose/reconstruct.
const CMat& pauli_tensor(int i, int j) {
    static const std::array<CMat, 16> basis = [] {
        std::array<CMat, 16> t{};
        const auto sig = [](int k) -> const CMat& {
            return k == 0 ? identity2() : pauli_sigma(k);
        };
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) t[static_cast<std::size_t>(4 * a + b)] = tensor_product(sig(a), sig(b));
        return t;
    }();
    return basis[static_cast<std::size_t>(4 * i + j)];
}

CMat hermitized(const CMat& m) {
    CMat h = CMat::zero(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return h;
}

}  // namespace

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string ValidityReport::describe() const {
    if (ok()) return "valid";
    std::string out;
    const auto add = [&](const std::string& s) {
        if (!out.empty()) out += "; ";
        out += s;
    };
    if (!finite) add("non-finite entries");
    if (finite && !hermitian_ok)
        add("hermiticity defect " + fmt17(hermiticity_defect) + " exceeds 1e-10");
    if (finite && !trace_ok) add("trace defect " + fmt17(trace_defect) + " exceeds 1e-10");
    if (finite && !psd_ok) add("minimum eigenvalue " + fmt17(min_eigenvalue) + " below -1e-9");
    return out;
}

ValidityReport validate(const CMat& m) {
    ValidityReport r;
    r.finite = all_finite(m);
    if (!r.finite || (m.n != 2 && m.n != 4)) {
        r.finite = false;
        r.hermiticity_defect = std::numeric_limits<double>::infinity();
        r.trace_defect = std::numeric_limits<double>::infinity();
        r.min_eigenvalue = -std::numeric_limits<double>::infinity();
        return r;
    }
    r.hermiticity_defect = hermiticity_defect(m);
    r.trace_defect = std::abs(trace(m) - 1.0);
    r.min_eigenvalue = hermitian_eigen(hermitized(m)).values[0];
    r.hermitian_ok = r.hermiticity_defect <= 1e-10;
    r.trace_ok = r.trace_defect <= 1e-10;
    r.psd_ok = r.min_eigenvalue >= -1e-9;
    return r;
}

DensityMatrix make_density(const CMat& m) {
    const ValidityReport v = validate(m);
    if (!v.ok()) throw std::invalid_argument("not a valid density matrix: " + v.describe());
    return DensityMatrix{m};
}

BlochDecomposition pauli_decompose(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("pauli_decompose needs a two-qubit state");
    const auto comp = [&](int i, int j) {
        const CMat& x = pauli_tensor(i, j);
        cdouble t = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) t += rho.m(r, c) * x(c, r);
        if (std::abs(t.imag()) > 1e-10)
            throw std::invalid_argument("pauli component has imaginary residue " +
                                        fmt17(std::abs(t.imag())));
        return t.real();
    };
    BlochDecomposition d;
    for (int i = 1; i <= 3; ++i) d.a[i - 1] = comp(i, 0);
    for (int j = 1; j <= 3; ++j) d.b[j - 1] = comp(0, j);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) d.e(i - 1, j - 1) = comp(i, j);
    return d;
}

CMat bloch_matrix(const BlochDecomposition& d) {
    CMat m = CMat::zero(4);
    const auto add = [&](double c, const CMat& x) {
        for (int r = 0; r < 4; ++r)
            for (int col = 0; col < 4; ++col) m(r, col) += 0.25 * c * x(r, col);
    };
    add(1.0, pauli_tensor(0, 0));
    for (int i = 1; i <= 3; ++i) add(d.a[i - 1], pauli_tensor(i, 0));
    for (int j = 1; j <= 3; ++j) add(d.b[j - 1], pauli_tensor(0, j));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) add(d.e(i - 1, j - 1), pauli_tensor(i, j));
    return m;
}

DensityMatrix reconstruct(const BlochDecomposition& d) {
    const CMat m = bloch_matrix(d);
    const ValidityReport v = validate(m);
    if (!v.ok())
        throw std::invalid_argument("decomposition is outside the physical set: " + v.describe());
    return DensityMatrix{m};
}

DensityMatrix make_qubit(const Vec3& bloch) {
    if (norm(bloch) > 1.0 + 1e-9)
        throw std::invalid_argument("bloch vector leaves the unit ball: |v| = " +
                                    fmt17(norm(bloch)));
    CMat m = CMat::zero(2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            m(r, c) = 0.5 * identity2()(r, c);
            for (int i = 1; i <= 3; ++i) m(r, c) += 0.5 * bloch[i - 1] * pauli_sigma(i)(r, c);
        }
    return make_density(m);
}

DensityMatrix make_bell(Bell which) {
    CMat m = CMat::zero(4);
    switch (which) {
        case Bell::PhiPlus:
            m(0, 0) = m(3, 3) = 0.5;
            m(0, 3) = m(3, 0) = 0.5;
            break;
        case Bell::PhiMinus:
            m(0, 0) = m(3, 3) = 0.5;
            m(0, 3) = m(3, 0) = -0.5;
            break;
        case Bell::PsiPlus:
            m(1, 1) = m(2, 2) = 0.5;
            m(1, 2) = m(2, 1) = 0.5;
            break;
        case Bell::PsiMinus:
            m(1, 1) = m(2, 2) = 0.5;
            m(1, 2) = m(2, 1) = -0.5;
            break;
    }
    return make_density(m);
}

DensityMatrix make_werner(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("werner parameter must lie in [0,1], got " + fmt17(p));
    const CMat bell = make_bell(Bell::PhiPlus).m;
    CMat m = CMat::zero(4);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) m(r, c) = p * bell(r, c);
        m(r, r) += (1.0 - p) * 0.25;
    }
    return make_density(m);
}

DensityMatrix make_bell_diagonal(double c1, double c2, double c3) {
    BlochDecomposition d;
    d.e(0, 0) = c1;
    d.e(1, 1) = c2;
    d.e(2, 2) = c3;
    return reconstruct(d);
}

DensityMatrix make_product(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
    if (rho_a.dim() != 2 || rho_b.dim() != 2)
        throw std::invalid_argument("make_product needs two single-qubit states");
    return make_density(tensor_product(rho_a.m, rho_b.m));
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
    if ((dim != 2 && dim != 4) || rank < 1 || rank > dim)
        throw std::invalid_argument("random_density: need dim in {2,4} and 1 <= rank <= dim");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n;
    std::array<std::array<cdouble, 4>, 4> g{};
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < rank; ++k) {
            const double re = n(gen);
            const double im = n(gen);
            g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = cdouble(re, im);
        }
    CMat m = CMat::zero(dim);
    double tr = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            cdouble s = 0.0;
            for (int k = 0; k < rank; ++k)
                s += g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                     std::conj(g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
            m(i, j) = s;
        }
        tr += m(i, i).real();
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) /= tr;
    return make_density(m);
}

DensityMatrix reference_product_state() {
    return make_product(make_qubit({0.0, 0.0, 0.8}), make_qubit({0.0, 0.0, 0.6}));
}

DensityMatrix reference_channel_state() {
    // Diagonal 1/4 with off-diagonal magnitude 1/16. The phases are arranged
    // so the only Pauli correlation is sigma_x (x) sigma_y; the state is then
    // classical-quantum along x on A: separable and discord-free, yet with
    // nonzero correlated coherence.
    CMat m = CMat::zero(4);
    const double q = 1.0 / 16.0;
    const cdouble iq(0.0, q);
    for (int k = 0; k < 4; ++k) m(k, k) = 0.25;
    m(0, 1) = -iq;
    m(0, 2) = q;
    m(0, 3) = -iq;
    m(1, 2) = iq;
    m(1, 3) = q;
    m(2, 3) = -iq;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < r; ++c) m(r, c) = std::conj(m(c, r));
    return make_density(m);
}

LoadedState load_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open state file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path + ": not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("rho"))
        throw std::invalid_argument(path + ": expected an object with \"dim\" and \"rho\"");
    if (!doc["dim"].is_number_integer())
        throw std::invalid_argument(path + ": \"dim\" must be an integer");
    const int dim = doc["dim"].get<int>();
    if (dim != 2 && dim != 4) throw std::invalid_argument(path + ": \"dim\" must be 2 or 4");
    const auto& rows = doc["rho"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw std::invalid_argument(path + ": \"rho\" must have dim rows");
    CMat m = CMat::zero(dim);
    for (int i = 0; i < dim; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw std::invalid_argument(path + ": \"rho\" row " + std::to_string(i) +
                                        " must have dim entries");
        for (int j = 0; j < dim; ++j) {
            const auto& entry = row[static_cast<std::size_t>(j)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                throw std::invalid_argument(path + ": entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") must be [re, im]");
            m(i, j) = cdouble(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    std::string label = doc.value("label", std::string{});
    return {make_density(m), std::move(label)};
}

std::string write_state_json(const DensityMatrix& rho, const std::string& label) {
    std::ostringstream out;
    out << "{\n  \"dim\": " << rho.dim() << ",\n";
    if (!label.empty()) out << "  \"label\": " << nlohmann::json(label).dump() << ",\n";
    out << "  \"rho\": [\n";
    for (int i = 0; i < rho.dim(); ++i) {
        out << "    [";
        for (int j = 0; j < rho.dim(); ++j) {
            const cdouble v = rho.m(i, j);
            out << (j ? ", " : "") << '[' << fmt17(v.real()) << ", " << fmt17(v.imag()) << ']';
        }
        out << (i + 1 < rho.dim() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

void save_state(const DensityMatrix& rho, const std::string& label, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write state file: " + path);
    out << write_state_json(rho, label);
    if (!out) throw std::runtime_error("short write to state file: " + path);
}

std::string state_digest(const DensityMatrix& rho) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto eat = [&](std::uint8_t byte) { h = (h ^ byte) * 0x100000001b3ULL; };
    const auto eat_double = [&](double v) {
        const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
        for (int k = 0; k < 8; ++k) eat(static_cast<std::uint8_t>(bits >> (8 * k)));
    };
    eat(static_cast<std::uint8_t>(rho.dim()));
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j) {
            eat_double(rho.m(i, j).real());
            eat_double(rho.m(i, j).imag());
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qcorr
