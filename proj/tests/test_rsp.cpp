#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "qcorr/kernels.hpp"
#include "qcorr/rsp.hpp"
#include "qcorr/state.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using qcorr::Vec3;

namespace {

const Vec3 kX{1.0, 0.0, 0.0};
const Vec3 kY{0.0, 1.0, 0.0};
const Vec3 kZ{0.0, 0.0, 1.0};

}  // namespace

TEST_CASE("conditional outcomes on fixtures") {
    // maximally mixed: both outcomes are fair coins steering to the origin
    const auto mixed = qcorr::pauli_decompose(qcorr::make_density(
        [] { auto m = qcorr::CMat::identity(4); for (int i = 0; i < 4; ++i) m(i, i) = 0.25; return m; }()));
    for (const Vec3& alpha : {kX, kY, kZ}) {
        for (int o : {+1, -1}) {
            const auto c = qcorr::conditional_state(mixed, alpha, o);
            CHECK(c.prob == 0.5);
            CHECK(c.occurs);
            CHECK(qcorr::norm(c.bloch) < 1e-15);
        }
    }

    // Phi+ : measuring A along z leaves B pointing the same way
    const auto bell = qcorr::pauli_decompose(qcorr::make_bell(qcorr::Bell::PhiPlus));
    const auto up = qcorr::conditional_state(bell, kZ, +1);
    CHECK(up.prob == 0.5);
    CHECK(qcorr::norm(up.bloch - kZ) < 1e-15);
    const auto down = qcorr::conditional_state(bell, kZ, -1);
    CHECK(down.prob == 0.5);
    CHECK(qcorr::norm(down.bloch + kZ) < 1e-15);

    // product state: Bob's side is untouched whatever Alice sees
    const auto prod = qcorr::pauli_decompose(qcorr::reference_product_state());
    const auto plus = qcorr::conditional_state(prod, kZ, +1);
    CHECK(std::abs(plus.prob - 0.9) < 1e-15);
    CHECK(qcorr::norm(plus.bloch - 0.6 * kZ) < 1e-13);
    const auto minus = qcorr::conditional_state(prod, kZ, -1);
    CHECK(std::abs(minus.prob - 0.1) < 1e-15);
    CHECK(qcorr::norm(minus.bloch - 0.6 * kZ) < 1e-13);
}

TEST_CASE("conditional state argument checks") {
    const auto d = qcorr::pauli_decompose(qcorr::make_bell(qcorr::Bell::PhiPlus));
    CHECK_THROWS_AS(qcorr::conditional_state(d, {0.0, 0.0, 2.0}, +1), std::invalid_argument);
    CHECK_THROWS_AS(qcorr::conditional_state(d, kZ, 0), std::invalid_argument);
    CHECK_THROWS_AS(qcorr::rsp_fidelity(d, kZ, {0.5, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("corrected state is the transposed correlation image of alpha") {
    std::mt19937_64 rng(401);
    for (int it = 0; it < 1000; ++it) {
        const auto rho = qcorr::random_density(4, 1 + it % 4, rng());
        const auto d = qcorr::pauli_decompose(rho);
        const Vec3 alpha = support::random_unit_vec3(rng);
        // p+ b+ - p- b-  ==  E^T alpha; the marginal b cancels between branches
        const Vec3 want = qcorr::transpose(d.e) * alpha;
        CHECK(qcorr::norm(qcorr::corrected_state(d, alpha) - want) < 1e-12);
    }
}

TEST_CASE("fidelity and payoff fixtures") {
    qcorr::BlochDecomposition mixed{};
    CHECK(qcorr::rsp_fidelity(mixed, kZ, kX) == 0.5);
    CHECK(qcorr::rsp_payoff(mixed, kZ, kX) == 0.0);

    const auto bell = qcorr::pauli_decompose(qcorr::make_bell(qcorr::Bell::PhiPlus));
    CHECK(std::abs(qcorr::rsp_fidelity(bell, kX, kX) - 1.0) < 1e-15);
    CHECK(std::abs(qcorr::rsp_payoff(bell, kX, kX) - 1.0) < 1e-15);

    const auto prod = qcorr::pauli_decompose(qcorr::reference_product_state());
    CHECK(std::abs(qcorr::rsp_fidelity(prod, kZ, kZ) - 0.74) < 1e-13);
    CHECK(std::abs(qcorr::rsp_payoff(prod, kZ, kZ) - 0.2304) < 1e-13);

    std::mt19937_64 rng(402);
    for (int it = 0; it < 200; ++it) {
        const auto d = qcorr::pauli_decompose(qcorr::random_density(4, 4, rng()));
        const Vec3 alpha = support::random_unit_vec3(rng);
        const Vec3 s = support::random_unit_vec3(rng);
        const double f = qcorr::rsp_fidelity(d, alpha, s);
        CHECK(std::abs(qcorr::rsp_payoff(d, alpha, s) - (2.0 * f - 1.0) * (2.0 * f - 1.0)) <
              1e-14);
        const auto run = qcorr::rsp_run(d, alpha, s);
        CHECK(std::abs(run.prob_plus + run.prob_minus - 1.0) < 1e-14);
        CHECK(qcorr::norm(run.r - qcorr::corrected_state(d, alpha)) == 0.0);
        CHECK(run.fidelity == f);
    }
}

TEST_CASE("optimal steering direction") {
    const auto bell = qcorr::pauli_decompose(qcorr::make_bell(qcorr::Bell::PhiPlus));
    const auto oa = qcorr::optimal_alpha(bell, kX);
    CHECK_FALSE(oa.degenerate);
    CHECK(qcorr::norm(oa.alpha - kX) < 1e-15);
    CHECK(std::abs(qcorr::optimal_payoff(bell, kX) - 1.0) < 1e-15);

    // product correlations vanish off the z axis: nothing to steer with
    const auto prod = qcorr::pauli_decompose(qcorr::reference_product_state());
    const auto deg = qcorr::optimal_alpha(prod, kX);
    CHECK(deg.degenerate);
    CHECK(qcorr::norm(deg.alpha - kZ) == 0.0);
    CHECK(qcorr::optimal_payoff(prod, kX) == 0.0);

    std::mt19937_64 rng(403);
    for (int it = 0; it < 1000; ++it) {
        const auto d = qcorr::pauli_decompose(qcorr::random_density(4, 4, rng()));
        const Vec3 s = support::random_unit_vec3(rng);
        const double best = qcorr::optimal_payoff(d, s);
        const auto got = qcorr::optimal_alpha(d, s);
        if (!got.degenerate)
            CHECK(std::abs(qcorr::rsp_payoff(d, got.alpha, s) - best) < 1e-12);
        // no probe beats the claimed optimum
        CHECK(qcorr::rsp_payoff(d, support::random_unit_vec3(rng), s) <= best + 1e-12);
    }
}

TEST_CASE("circular averages on fixtures and bounds") {
    const auto bell = qcorr::pauli_decompose(qcorr::make_bell(qcorr::Bell::PhiPlus));
    CHECK(std::abs(qcorr::circular_average_payoff(bell, kZ) - 1.0) < 1e-15);

    qcorr::BlochDecomposition mixed{};
    CHECK(qcorr::circular_average_payoff(mixed, kZ) == 0.0);

    const auto prod = qcorr::pauli_decompose(qcorr::reference_product_state());
    CHECK(std::abs(qcorr::circular_average_payoff(prod, kZ)) < 1e-13);
    CHECK(std::abs(qcorr::circular_average_payoff(prod, kX) - 0.1152) < 1e-13);

    std::mt19937_64 rng(404);
    for (int it = 0; it < 500; ++it) {
        const auto d = qcorr::pauli_decompose(qcorr::random_density(4, 4, rng()));
        const double c = qcorr::circular_average_payoff(d, support::random_unit_vec3(rng));
        CHECK(c >= qcorr::min_average_payoff(d).value - 1e-12);
        CHECK(c <= 0.5 * qcorr::frobenius2(d.e) + 1e-12);
    }
}

TEST_CASE("minimum circular average") {
    const auto bell = qcorr::pauli_decompose(qcorr::make_bell(qcorr::Bell::PhiPlus));
    CHECK(std::abs(qcorr::min_average_payoff(bell).value - 1.0) < 1e-14);

    for (int i = 0; i <= 20; ++i) {
        const double p = i / 20.0;
        const auto d = qcorr::pauli_decompose(qcorr::make_werner(p));
        const auto mn = qcorr::min_average_payoff(d);
        CHECK(std::abs(mn.value - p * p) < 1e-12);
        CHECK(std::abs(qcorr::norm(mn.beta_star) - 1.0) < 1e-12);
    }

    std::mt19937_64 rng(405);
    for (int it = 0; it < 300; ++it) {
        const auto d = qcorr::pauli_decompose(qcorr::random_density(4, 4, rng()));
        const auto mn = qcorr::min_average_payoff(d);
        // the reported plane attains the reported minimum...
        CHECK(std::abs(qcorr::circular_average_payoff(d, mn.beta_star) - mn.value) < 1e-10);
        // ...and no sampled plane does better
        CHECK(qcorr::circular_average_payoff(d, support::random_unit_vec3(rng)) >=
              mn.value - 1e-10);
    }
}

TEST_CASE("spherical average and the payoff-coherence identity") {
    CHECK(std::abs(qcorr::spherical_average_payoff(
                       qcorr::pauli_decompose(qcorr::reference_product_state())) -
                   0.0768) < 1e-13);
    CHECK(std::abs(qcorr::spherical_average_payoff(
                       qcorr::pauli_decompose(qcorr::make_bell(qcorr::Bell::PsiMinus))) -
                   1.0) < 1e-14);
    CHECK(std::abs(qcorr::spherical_average_payoff(
                       qcorr::pauli_decompose(qcorr::make_werner(0.5))) -
                   0.25) < 1e-14);

    std::mt19937_64 rng(406);
    for (int it = 0; it < 500; ++it) {
        const auto rho = qcorr::random_density(4, 1 + it % 4, rng());
        const auto check = qcorr::payoff_coherence_identity(rho);
        CHECK(check.defect < 1e-10);
    }

    // local basis changes keep every average intact
    std::mt19937_64 urng(407);
    for (int it = 0; it < 20; ++it) {
        const auto rho = qcorr::random_density(4, 4, urng());
        const auto rot = support::apply_local_unitary(rho, support::random_unitary(2, urng),
                                                      support::random_unitary(2, urng));
        const auto d0 = qcorr::pauli_decompose(rho);
        const auto d1 = qcorr::pauli_decompose(rot);
        CHECK(std::abs(qcorr::spherical_average_payoff(d0) -
                       qcorr::spherical_average_payoff(d1)) < 1e-10);
        CHECK(std::abs(qcorr::min_average_payoff(d0).value -
                       qcorr::min_average_payoff(d1).value) < 1e-10);
    }
}

TEST_CASE("spherical quadrature reproduces the closed form") {
    // the integrand is quadratic in the target direction, so modest grids
    // are already exact up to roundoff
    std::mt19937_64 rng(408);
    for (int it = 0; it < 25; ++it) {
        const auto d = qcorr::pauli_decompose(qcorr::random_density(4, 4, rng()));
        const double want = qcorr::spherical_average_payoff(d);
        CHECK(std::abs(qcorr::quadrature_spherical_average(d, 16, 16) - want) < 1e-12);
    }
    const auto bell = qcorr::pauli_decompose(qcorr::make_bell(qcorr::Bell::PhiPlus));
    CHECK(std::abs(qcorr::quadrature_spherical_average(bell, 128, 256) - 1.0) < 1e-11);

    qcorr::BlochDecomposition mixed{};
    CHECK(qcorr::quadrature_spherical_average(mixed, 16, 16) == 0.0);

    CHECK_THROWS_AS(qcorr::quadrature_spherical_average(bell, 4, 64), std::invalid_argument);
    CHECK_THROWS_AS(qcorr::quadrature_spherical_average(bell, 64, 4), std::invalid_argument);
}

TEST_CASE("circle quadrature reproduces the closed form") {
    std::mt19937_64 rng(409);
    for (int it = 0; it < 25; ++it) {
        const auto d = qcorr::pauli_decompose(qcorr::random_density(4, 4, rng()));
        const Vec3 beta = support::random_unit_vec3(rng);
        const double want = qcorr::circular_average_payoff(d, beta);
        CHECK(std::abs(qcorr::quadrature_circle_average(d, beta, 16) - want) < 1e-13);
        CHECK(std::abs(qcorr::quadrature_circle_average(d, beta, 257) - want) < 1e-13);
    }
    CHECK_THROWS_AS(
        qcorr::quadrature_circle_average(qcorr::pauli_decompose(qcorr::make_werner(0.3)), kZ, 4),
        std::invalid_argument);
}

TEST_CASE("orthonormal frames") {
    std::mt19937_64 rng(410);
    auto check_frame = [](const Vec3& beta) {
        Vec3 u, v;
        qcorr::orthonormal_frame(beta, u, v);
        const Vec3 w = qcorr::normalized(beta);
        CHECK(std::abs(qcorr::norm(u) - 1.0) < 1e-12);
        CHECK(std::abs(qcorr::norm(v) - 1.0) < 1e-12);
        CHECK(std::abs(qcorr::dot(u, v)) < 1e-12);
        CHECK(std::abs(qcorr::dot(u, w)) < 1e-12);
        CHECK(std::abs(qcorr::dot(v, w)) < 1e-12);
        CHECK(qcorr::norm(qcorr::cross(u, v) - w) < 1e-12);  // right handed
    };
    for (const Vec3& axis : {kX, kY, kZ, Vec3{0.0, 0.0, -1.0}, Vec3{1e-9, 0.0, 1.0}})
        check_frame(axis);
    for (int it = 0; it < 100; ++it) check_frame(support::random_unit_vec3(rng));
}

TEST_CASE("simulation: deterministic cases") {
    // Phi+ along x: both branches land on +-x and the correction folds them
    // together, so the empirical estimate is exact whatever the coin does
    const auto bell = qcorr::make_bell(qcorr::Bell::PhiPlus);
    const auto r = qcorr::simulate_rsp(bell, kX, 1u << 20, 5);
    CHECK_FALSE(r.degenerate);
    CHECK(r.empirical_fidelity == 1.0);
    CHECK(r.empirical_payoff == 1.0);
    CHECK(r.analytic_payoff == 1.0);
    CHECK(r.fidelity_stderr == 0.0);

    auto mixed = qcorr::CMat::identity(4);
    for (int i = 0; i < 4; ++i) mixed(i, i) = 0.25;
    const auto m = qcorr::simulate_rsp(qcorr::make_density(mixed), kX, 1000, 5);
    CHECK(m.degenerate);
    CHECK(m.empirical_fidelity == 0.5);
    CHECK(m.empirical_payoff == 0.0);
    CHECK(m.analytic_fidelity == 0.5);

    CHECK_THROWS_AS(qcorr::simulate_rsp(bell, kX, 0, 5), std::invalid_argument);
}

TEST_CASE("simulation: determinism and backend agreement") {
    using qcorr::kernels::Backend;
    const auto rho = qcorr::make_werner(0.7);
    const auto r1 = qcorr::simulate_rsp(rho, kZ, 100000, 42);
    const auto r2 = qcorr::simulate_rsp(rho, kZ, 100000, 42);
    CHECK(r1.plus_count == r2.plus_count);
    CHECK(r1.empirical_fidelity == r2.empirical_fidelity);
    const auto r3 = qcorr::simulate_rsp(rho, kZ, 100000, 43);
    CHECK(r1.plus_count != r3.plus_count);

    REQUIRE(qcorr::kernels::select(Backend::Scalar));
    const auto rs = qcorr::simulate_rsp(rho, kZ, 100000, 42);
    if (qcorr::kernels::select(Backend::Avx2)) {
        const auto ra = qcorr::simulate_rsp(rho, kZ, 100000, 42);
        CHECK(rs.plus_count == ra.plus_count);
        CHECK(rs.empirical_fidelity == ra.empirical_fidelity);
    }
    qcorr::kernels::select_auto();
    CHECK(rs.plus_count == r1.plus_count);
}

TEST_CASE("simulation: binomial statistics on the biased fixture") {
    const auto rho = qcorr::reference_product_state();
    const auto r = qcorr::simulate_rsp(rho, kZ, 1000000, 7);
    CHECK(std::abs(r.analytic_fidelity - 0.74) < 1e-12);
    CHECK(std::abs(r.analytic_payoff - 0.2304) < 1e-12);
    CHECK(std::abs(r.fidelity_stderr - 1.8e-4) < 1e-9);
    CHECK(std::abs(r.empirical_fidelity - r.analytic_fidelity) <= 3.0 * r.fidelity_stderr);
    // the coin itself is binomial(N, 0.9); 5 sigma of slack
    const double phat = static_cast<double>(r.plus_count) / 1e6;
    CHECK(std::abs(phat - 0.9) < 5.0 * 3.0e-4);
}
