#include "cyclic/errors.hpp"
#include "cyclic/polariton.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

using namespace cyclic;

namespace {

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("energies at resonance are plus and minus g") {
    const auto e = polariton_energies(1.0, 0.0);
    CHECK(e[0] == doctest::Approx(1.0));
    CHECK(e[1] == doctest::Approx(-1.0));
    CHECK(e[2] == doctest::Approx(-1.0));
    CHECK(e[3] == doctest::Approx(1.0));
    CHECK(mixing_angle(1.0, 0.0) == doctest::Approx(pi / 4));
}

TEST_CASE("energy branches stay accurate for a strong drive") {
    // (Omega - sqrt(Omega^2 + 4g^2))/2 ~ -g^2/Omega would cancel catastrophically.
    const auto e = polariton_energies(1.0, 1e8);
    CHECK(e[2] == doctest::Approx(-1e-8).epsilon(1e-12));
    CHECK(e[0] * e[2] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("mixing angle runs continuously from 0 to pi/2") {
    CHECK(mixing_angle(1.0, 1e9) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(mixing_angle(1.0, -1e9) == doctest::Approx(pi / 2).epsilon(1e-8));
    CHECK(mixing_angle(0.0, 3.0) == 0.0);
    CHECK(mixing_angle(0.0, -3.0) == doctest::Approx(pi / 2));
    double previous = 0.0;
    for (double w = 50.0; w >= -50.0; w -= 0.5) {
        const double th = mixing_angle(1.0, w);
        CHECK(th >= previous);
        previous = th;
    }
}

TEST_CASE("polariton matrix diagonalizes h for random configurations") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const CouplingConfig cfg = oracle_test::random_config(rng);
        const PolaritonBasis p = polariton_basis(cfg);
        const Mat4 h = single_particle_hamiltonian(cfg);
        Mat4 diag = Mat4::Zero();
        for (int k = 0; k < 4; ++k) diag(k, k) = p.eps[static_cast<std::size_t>(k)];
        CHECK(max_abs(p.M * h * p.M.adjoint() - diag) < 1e-12);
        CHECK(max_abs(p.M * p.M.adjoint() - Mat4::Identity()) < 1e-12);
    }
}

TEST_CASE("spectral evolution matrix agrees with a generic matrix exponential") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> time(-20.0, 20.0);
    for (int i = 0; i < 30; ++i) {
        const CouplingConfig cfg = oracle_test::random_config(rng);
        const double t = time(rng);
        const Mat4 h = single_particle_hamiltonian(cfg);
        const Eigen::MatrixXcd reference = (Eigen::MatrixXcd(h) * cplx(0.0, -t)).exp();
        CHECK((evolution_matrix(cfg, t).F - reference).cwiseAbs().maxCoeff() < 1e-11);
        CHECK((evolution_matrix_expm(cfg, t).F - reference).cwiseAbs().maxCoeff() < 1e-11);
        const Mat4 F = evolution_matrix(cfg, t).F;
        CHECK(max_abs(F * F.adjoint() - Mat4::Identity()) < 1e-12);
    }
}

TEST_CASE("closed-form coefficients match the spectral route at phi = 0") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> w(-6.0, 6.0), time(0.0, 15.0);
    for (int i = 0; i < 30; ++i) {
        const CouplingConfig cfg = CouplingConfig::make(0.8, w(rng), 0.0);
        const double t = time(rng);
        const auto e = polariton_energies(cfg.g_N, cfg.omega);
        const Mat4 closed = closed_form_coefficients(mixing_angle(cfg.g_N, cfg.omega), e[0] * t, e[2] * t);
        CHECK(max_abs(closed - evolution_matrix(cfg, t).F) < 1e-12);
    }
}

TEST_CASE("x(t) at Omega = 0, t = pi/2 sends a to -i times the A mode") {
    const EvolutionMatrix F = evolution_matrix(CouplingConfig::make(1.0, 0.0), pi / 2);
    CHECK(std::abs(F(Mode::a, Mode::A) - cplx(0.0, -1.0)) < 1e-12);
    CHECK(std::abs(F(Mode::a, Mode::a)) < 1e-12);
    CHECK(std::abs(F(Mode::b, Mode::C) - cplx(0.0, -1.0)) < 1e-12);
}

TEST_CASE("limit models reduce to a single phase") {
    const double t = 0.37;
    const Mat4 pos = propagate(ClosedFormModel::strong_positive_drive(-2.0), t).F;
    CHECK(std::abs(pos(0, 0) - std::cos(2.0 * t)) < 1e-12);
    CHECK(std::abs(std::abs(pos(0, 1)) - std::sin(2.0 * t)) < 1e-12);
    CHECK(std::abs(pos(0, 2)) < 1e-12);
    const Mat4 neg = propagate(ClosedFormModel::strong_negative_drive(1.5), t).F;
    CHECK(std::abs(std::abs(neg(0, 1)) - std::sin(1.5 * t)) < 1e-12);
    CHECK(std::abs(neg(0, 2)) < 1e-12);
    CHECK(std::abs(neg(0, 3)) < 1e-12);
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(CouplingConfig::make(-1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(CouplingConfig::make(1.0, std::nan("")), InvalidArgument);
    CHECK(CouplingConfig::make(1.0, 0.0, 7.0).phi == doctest::Approx(7.0 - 2.0 * pi));
    CHECK_THROWS_AS(polariton_basis(CouplingConfig::make(0.0, 0.0)), DegenerateModel);
}
