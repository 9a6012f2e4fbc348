#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/measures.hpp"
#include "qcorr/report.hpp"
#include "qcorr/rsp.hpp"
#include "qcorr/state.hpp"
#include "qcorr/teleport.hpp"

namespace {

using qcorr::Vec3;

Vec3 parse_vec3(const std::string& text) {
    Vec3 v;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &v.x, &v.y, &v.z, &tail) != 3)
        throw std::invalid_argument("expected three comma-separated numbers, got '" + text +
                                    "'");
    return v;
}

std::vector<Vec3> parse_vecs(const std::vector<std::string>& texts) {
    std::vector<Vec3> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(parse_vec3(t));
    return out;
}

std::string format_vec(const Vec3& v) {
    return "[" + qcorr::fmt17(v.x) + ", " + qcorr::fmt17(v.y) + ", " + qcorr::fmt17(v.z) + "]";
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << payload;
}

Vec3 random_unit(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    while (true) {
        const Vec3 v{n(g), n(g), n(g)};
        const double r = qcorr::norm(v);
        if (r > 1e-6) return v / r;
    }
}

Vec3 random_ball(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u;
    return std::cbrt(u(g)) * random_unit(g);
}

// a, b free, E forced to zero; shrink into the strict interior so the
// expansion stays positive semidefinite
qcorr::DensityMatrix random_zero_correlation_state(std::mt19937_64& g) {
    Vec3 a = random_ball(g);
    Vec3 b = random_ball(g);
    const double s = qcorr::norm(a) + qcorr::norm(b);
    if (s > 0.999) {
        a = (0.999 / s) * a;
        b = (0.999 / s) * b;
    }
    qcorr::BlochDecomposition d{};
    d.a = a;
    d.b = b;
    return qcorr::reconstruct(d);
}

struct SuiteResult {
    std::string name;
    std::uint64_t trials = 0;
    double max_defect = 0.0;
    std::uint64_t worst_seed = 0;
    std::string worst_digest;
    std::string worst_note;
};

void record(SuiteResult& s, double defect, std::uint64_t seed, const qcorr::DensityMatrix& rho,
            const std::string& note = "") {
    if (defect > s.max_defect) {
        s.max_defect = defect;
        s.worst_seed = seed;
        s.worst_digest = qcorr::state_digest(rho);
        s.worst_note = note;
    }
}

std::string pad(std::string s, std::size_t width) {
    while (s.size() < width) s += ' ';
    return s;
}

int run_verify(std::uint64_t trials, std::uint64_t seed, double tol) {
    if (trials < 1) throw std::invalid_argument("verify needs at least one trial");
    std::vector<SuiteResult> suites;

    // the central identities: spherical payoff = C_c/3 and C_c = |E|^2,
    // with the two sides computed through unrelated code paths
    {
        SuiteResult s;
        s.name = "payoff-coherence identity";
        s.trials = trials;
        for (std::uint64_t i = 0; i < trials; ++i) {
            const std::uint64_t trial_seed = seed + i;
            const auto rho = qcorr::random_density(4, 1 + static_cast<int>(i % 4), trial_seed);
            const auto check = qcorr::payoff_coherence_identity(rho);
            const double cc = qcorr::correlated_coherence(rho);
            const double e2 = qcorr::frobenius2(qcorr::pauli_decompose(rho).e);
            record(s, std::max(check.defect, std::abs(cc - e2)), trial_seed, rho);
        }
        suites.push_back(s);
    }

    // steered mixture vs the closed form E^T alpha
    {
        SuiteResult s;
        s.name = "corrected-state closed form";
        s.trials = trials;
        for (std::uint64_t i = 0; i < trials; ++i) {
            const std::uint64_t trial_seed = seed + i;
            const auto rho = qcorr::random_density(4, 1 + static_cast<int>(i % 4), trial_seed);
            const auto d = qcorr::pauli_decompose(rho);
            std::mt19937_64 g(trial_seed ^ 0x9e3779b97f4a7c15ull);
            const Vec3 alpha = random_unit(g);
            const Vec3 want = qcorr::transpose(d.e) * alpha;
            record(s, qcorr::norm(qcorr::corrected_state(d, alpha) - want), trial_seed, rho);
        }
        suites.push_back(s);
    }

    // zero correlated coherence must pin the protocols at their floors, and
    // any visible coherence must lift the teleport fidelity off 1/2
    {
        SuiteResult s;
        s.name = "zero-coherence certificates";
        s.trials = trials;
        for (std::uint64_t i = 0; i < trials; ++i) {
            const std::uint64_t trial_seed = seed + i;
            std::mt19937_64 g(trial_seed ^ 0xda942042e4dd58b5ull);
            if (i % 2 == 0) {
                const auto rho = random_zero_correlation_state(g);
                const auto d = qcorr::pauli_decompose(rho);
                const auto cert = qcorr::zero_cc_certificate(rho);
                double defect = std::abs(cert.fidelity - 0.5);
                defect = std::max(defect, qcorr::optimal_payoff(d, random_unit(g)));
                defect = std::max(defect, qcorr::spherical_average_payoff(d));
                if (!cert.is_useless) defect = std::max(defect, 1.0);
                record(s, defect, trial_seed, rho, "zero-correlation draw");
            } else {
                const auto rho =
                    qcorr::random_density(4, 1 + static_cast<int>(i % 4), trial_seed);
                const auto cert = qcorr::zero_cc_certificate(rho);
                if (cert.correlated_coherence > 1e-6)
                    record(s, std::max(0.0, 0.5 + 1e-12 - cert.fidelity), trial_seed, rho,
                           "ginibre draw");
            }
        }
        suites.push_back(s);
    }

    // werner family closed forms on a fixed grid
    {
        SuiteResult s;
        s.name = "werner closed forms";
        s.trials = 101;
        for (int i = 0; i <= 100; ++i) {
            const double p = i / 100.0;
            const auto rho = qcorr::make_werner(p);
            const auto d = qcorr::pauli_decompose(rho);
            double defect = std::abs(qcorr::teleport_fidelity(rho) - 0.5 * (1.0 + p));
            defect = std::max(defect, std::abs(qcorr::spherical_average_payoff(d) - p * p));
            defect = std::max(defect, std::abs(qcorr::min_average_payoff(d).value - p * p));
            defect = std::max(defect, std::abs(qcorr::negativity(rho) -
                                               std::max(0.0, (3.0 * p - 1.0) / 4.0)));
            record(s, defect, static_cast<std::uint64_t>(i), rho,
                   "p=" + qcorr::fmt17(p));
        }
        suites.push_back(s);
    }

    std::cout << pad("suite", 32) << pad("trials", 10) << "max defect\n";
    bool ok = true;
    for (const SuiteResult& s : suites) {
        std::cout << pad(s.name, 32) << pad(std::to_string(s.trials), 10)
                  << qcorr::fmt17(s.max_defect) << '\n';
        if (s.max_defect > tol) ok = false;
    }
    for (const SuiteResult& s : suites) {
        if (s.max_defect <= tol) continue;
        std::cout << "suite '" << s.name << "' exceeds tolerance: " << qcorr::fmt17(s.max_defect)
                  << " > " << qcorr::fmt17(tol) << '\n';
        std::cout << "  offending seed " << s.worst_seed << "  state digest " << s.worst_digest;
        if (!s.worst_note.empty()) std::cout << "  (" << s.worst_note << ")";
        std::cout << '\n';
    }
    std::cout << "verdict: " << (ok ? "PASS" : "FAIL") << "  (tolerance "
              << qcorr::fmt17(tol) << ")\n";
    return ok ? 0 : 2;
}

int run_simulate(const std::string& path, const std::string& target_text, std::uint64_t shots,
                 std::uint64_t seed, const std::string& format) {
    const auto loaded = qcorr::load_state(path);
    if (loaded.rho.dim() != 4)
        throw std::invalid_argument("simulate requires a two-qubit state");
    const Vec3 s = qcorr::normalized(parse_vec3(target_text));
    const auto r = qcorr::simulate_rsp(loaded.rho, s, shots, seed);
    const std::string digest = qcorr::state_digest(loaded.rho);

    if (format == "json") {
        std::string o = "{\n";
        o += "  \"label\": " + nlohmann::json(loaded.label).dump() + ",\n";
        o += "  \"input_digest\": \"" + digest + "\",\n";
        o += "  \"target\": " + format_vec(s) + ",\n";
        o += "  \"alpha\": " + format_vec(r.alpha) + ",\n";
        o += std::string("  \"degenerate\": ") + (r.degenerate ? "true" : "false") + ",\n";
        o += "  \"shots\": " + std::to_string(r.shots) + ",\n";
        o += "  \"seed\": " + std::to_string(seed) + ",\n";
        o += "  \"plus_count\": " + std::to_string(r.plus_count) + ",\n";
        o += "  \"empirical_r\": " + format_vec(r.empirical_r) + ",\n";
        o += "  \"empirical_fidelity\": " + qcorr::fmt17(r.empirical_fidelity) + ",\n";
        o += "  \"empirical_payoff\": " + qcorr::fmt17(r.empirical_payoff) + ",\n";
        o += "  \"analytic_fidelity\": " + qcorr::fmt17(r.analytic_fidelity) + ",\n";
        o += "  \"analytic_payoff\": " + qcorr::fmt17(r.analytic_payoff) + ",\n";
        o += "  \"fidelity_stderr\": " + qcorr::fmt17(r.fidelity_stderr) + "\n}\n";
        std::cout << o;
        return 0;
    }

    std::cout << "state " << (loaded.label.empty() ? "(unlabeled)" : loaded.label)
              << "  digest " << digest << '\n';
    std::cout << "target " << format_vec(s) << "  alpha " << format_vec(r.alpha) << '\n';
    if (r.degenerate)
        std::cout << "note: correlations vanish along this target; alpha fell back to +z\n";
    std::cout << "shots " << r.shots << "  seed " << seed << "  plus_count " << r.plus_count
              << '\n';
    std::cout << "empirical_r " << format_vec(r.empirical_r) << '\n';
    std::cout << "empirical fidelity " << qcorr::fmt17(r.empirical_fidelity) << "  payoff "
              << qcorr::fmt17(r.empirical_payoff) << '\n';
    std::cout << "analytic  fidelity " << qcorr::fmt17(r.analytic_fidelity) << "  payoff "
              << qcorr::fmt17(r.analytic_payoff) << '\n';
    std::cout << "fidelity_stderr " << qcorr::fmt17(r.fidelity_stderr) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit correlation toolkit: coherence, discord, RSP, teleportation"};
    app.require_subcommand(1);

    auto* mk = app.add_subcommand("make", "construct a state and write it as a state file");
    std::string family;
    mk->add_option("family", family, "one of: bell, werner, bell-diagonal, product, random, "
                                     "reference-product, reference-channel")
        ->required()
        ->check(CLI::IsMember({"bell", "werner", "bell-diagonal", "product", "random",
                               "reference-product", "reference-channel"}));
    std::string variant = "phi+";
    mk->add_option("--variant", variant, "bell variant")
        ->check(CLI::IsMember({"phi+", "phi-", "psi+", "psi-"}));
    double werner_p = 0.5;
    mk->add_option("--p", werner_p, "werner mixing weight in [0,1]");
    std::string c_text = "0,0,0";
    mk->add_option("--c", c_text, "bell-diagonal correlations c1,c2,c3");
    std::string a_text = "0,0,0";
    std::string b_text = "0,0,0";
    mk->add_option("--a", a_text, "product family: Bloch vector of qubit A");
    mk->add_option("--b", b_text, "product family: Bloch vector of qubit B");
    int rank = 4;
    mk->add_option("--rank", rank, "random family: Ginibre rank")->check(CLI::Range(1, 4));
    std::uint64_t mk_seed = 0;
    mk->add_option("--seed", mk_seed, "random family: seed");
    std::string mk_label;
    mk->add_option("--label", mk_label, "override the stored label");
    std::string mk_out;
    mk->add_option("-o,--out", mk_out, "output path (stdout when omitted)");

    auto* rp = app.add_subcommand("report", "compute every measure for a state file");
    std::string rp_path;
    rp->add_option("state", rp_path, "state file path")->required();
    std::string rp_format = "text";
    rp->add_option("--format", rp_format, "text, json, or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    std::vector<std::string> rp_targets;
    rp->add_option("--target", rp_targets, "RSP target x,y,z (repeatable)");
    std::vector<std::string> rp_betas;
    rp->add_option("--beta", rp_betas, "circle-average plane normal x,y,z (repeatable)");
    std::string rp_out;
    rp->add_option("-o,--out", rp_out, "output path (stdout when omitted)");

    auto* vf = app.add_subcommand("verify", "run the identity suites over random states");
    std::uint64_t vf_trials = 1000;
    vf->add_option("--trials", vf_trials, "states per suite");
    std::uint64_t vf_seed = 0;
    vf->add_option("--seed", vf_seed, "base seed; trial i uses seed+i");
    double vf_tol = 1e-10;
    vf->add_option("--tol", vf_tol, "max tolerated defect");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo RSP run against a state file");
    std::string sim_path;
    sim->add_option("state", sim_path, "state file path")->required();
    std::string sim_target = "0,0,1";
    sim->add_option("--target", sim_target, "target direction x,y,z (normalized)");
    std::uint64_t sim_shots = 10000;
    sim->add_option("--shots", sim_shots, "number of measurement shots")
        ->check(CLI::PositiveNumber);
    std::uint64_t sim_seed = 0;
    sim->add_option("--seed", sim_seed, "counter-based RNG seed");
    std::string sim_format = "text";
    sim->add_option("--format", sim_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // stable contract: bad input is always 1
    }

    try {
        if (*mk) {
            qcorr::DensityMatrix rho = qcorr::make_bell(qcorr::Bell::PhiPlus);
            std::string label;
            if (family == "bell") {
                static const std::map<std::string, qcorr::Bell> kinds = {
                    {"phi+", qcorr::Bell::PhiPlus},
                    {"phi-", qcorr::Bell::PhiMinus},
                    {"psi+", qcorr::Bell::PsiPlus},
                    {"psi-", qcorr::Bell::PsiMinus}};
                rho = qcorr::make_bell(kinds.at(variant));
                label = "bell(" + variant + ")";
            } else if (family == "werner") {
                rho = qcorr::make_werner(werner_p);
                label = "werner(p=" + qcorr::fmt17(werner_p) + ")";
            } else if (family == "bell-diagonal") {
                const Vec3 c = parse_vec3(c_text);
                rho = qcorr::make_bell_diagonal(c.x, c.y, c.z);
                label = "bell-diagonal(" + qcorr::fmt17(c.x) + "," + qcorr::fmt17(c.y) + "," +
                        qcorr::fmt17(c.z) + ")";
            } else if (family == "product") {
                rho = qcorr::make_product(qcorr::make_qubit(parse_vec3(a_text)),
                                          qcorr::make_qubit(parse_vec3(b_text)));
                label = "product(a=" + a_text + ";b=" + b_text + ")";
            } else if (family == "random") {
                rho = qcorr::random_density(4, rank, mk_seed);
                label = "random(seed=" + std::to_string(mk_seed) +
                        ",rank=" + std::to_string(rank) + ")";
            } else if (family == "reference-product") {
                rho = qcorr::reference_product_state();
                label = "reference-product";
            } else {
                rho = qcorr::reference_channel_state();
                label = "reference-channel";
            }
            if (!mk_label.empty()) label = mk_label;
            emit(mk_out, qcorr::write_state_json(rho, label));
            return 0;
        }
        if (*rp) {
            const auto loaded = qcorr::load_state(rp_path);
            const auto doc = qcorr::build_report(loaded.rho, loaded.label,
                                                 parse_vecs(rp_targets), parse_vecs(rp_betas));
            std::string payload;
            if (rp_format == "json")
                payload = qcorr::to_json(doc);
            else if (rp_format == "csv")
                payload = qcorr::to_csv({doc});
            else
                payload = qcorr::to_text(doc);
            emit(rp_out, payload);
            return 0;
        }
        if (*vf) return run_verify(vf_trials, vf_seed, vf_tol);
        if (*sim) return run_simulate(sim_path, sim_target, sim_shots, sim_seed, sim_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
