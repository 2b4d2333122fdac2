#include "cyclic/dicke.hpp"
#include "cyclic/dynamics.hpp"
#include "cyclic/errors.hpp"
#include "cyclic/oracle.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace cyclic;

TEST_CASE("sector bases enumerate every occupation with the right count") {
    for (int s = 0; s <= 5; ++s) {
        const oracle::SectorBasis basis(s);
        CHECK(basis.dim() == static_cast<std::size_t>((s + 1) * (s + 2) * (s + 3) / 6));
        for (std::size_t i = 0; i < basis.dim(); ++i) CHECK(basis.index_of(basis.state(i)) == i);
    }
    CHECK_THROWS_AS(oracle::SectorBasis(2).index_of({1, 0, 0, 0}), InvalidArgument);
}

TEST_CASE("sector Hamiltonian is the dense Hamiltonian restricted to the sector") {
    const CouplingConfig cfg = CouplingConfig::make(0.9, -1.4, 2.2);
    const oracle_test::DenseModel dense(4, cfg.g_N, cfg.omega, cfg.phi);
    const oracle::SectorBasis basis(3);
    const Eigen::MatrixXcd h = oracle::sector_hamiltonian(basis, cfg);
    const double t = 1.7;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dim()));
        unit(static_cast<Eigen::Index>(i)) = 1.0;
        FockState s(Cutoffs{4, 4, 4, 4}, 3);
        basis.scatter(unit, s);
        const Eigen::VectorXcd expected = dense.propagate(dense.embed(s), t);
        CHECK((dense.embed(oracle::expm_propagate(s, cfg, t)) - expected).norm() < 1e-12);
    }
    CHECK((h - h.adjoint()).norm() < 1e-15);
}

TEST_CASE("expm propagation needs sector metadata") {
    FockState s(Cutoffs{2, 2, 2, 2});
    s.set_amplitude({1, 0, 0, 0}, 1.0);
    CHECK_THROWS_AS(oracle::expm_propagate(s, CouplingConfig::make(1.0, 0.0), 1.0), SectorMissing);
}

TEST_CASE("multi-sector propagation drops nothing below the cap") {
    const CouplingConfig cfg = CouplingConfig::make(1.0, 0.4);
    const CoherentAmplitudes amps{0.3, cplx(0.0, 0.2), 0.0, 0.0};
    const FockState in = coherent_fock_state(amps, 9);
    const oracle::BosonicPropagator prop(cfg, 14);
    const FockState out = prop.propagate(in, 2.0);
    const CoherentAmplitudes expected = evolve_coherent(amps, cfg, 2.0);
    for (Mode m : all_modes) CHECK(std::abs(out.expect_annihilation(m) - expected[m]) < 1e-8);
}

TEST_CASE("symmetric-subspace operators match the full product space") {
    for (int n = 1; n <= 3; ++n) {
        const oracle::AtomicOperators sym = oracle::atomic_operators(n);
        const oracle::AtomicOperators full = oracle::tensor_product_operators(n);
        CHECK((sym.A - full.A).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((sym.C - full.C).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((sym.t_plus - full.t_plus).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((sym.t_minus - full.t_minus).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((sym.t_z - full.t_z).cwiseAbs().maxCoeff() < 1e-13);
    }
    CHECK_THROWS_AS(oracle::tensor_product_operators(4), InvalidArgument);
}

TEST_CASE("collective commutators at finite N") {
    const int n = 10;
    const oracle::AtomicOperators op = oracle::atomic_operators(n);
    const Eigen::MatrixXd Ad = op.A.transpose(), Cd = op.C.transpose();
    // [T-, A^dag] = C^dag holds exactly, [A, C^dag] = -T-/N only vanishes as N grows.
    CHECK((op.t_minus * Ad - Ad * op.t_minus - Cd).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((op.A * Cd - Cd * op.A + op.t_minus / n).cwiseAbs().maxCoeff() < 1e-13);
    // [A, A^dag] = 1 - (2 n_a + n_c)/N on the state with n_a, n_c excitations.
    const oracle::AtomicBasis basis(n);
    const Eigen::MatrixXd comm = op.A * Ad - Ad * op.A;
    const std::size_t k = basis.index_of(2, 1);
    CHECK(comm(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) == doctest::Approx(1.0 - 5.0 / n));
}

TEST_CASE("Dicke operators keep photon and atom factors apart") {
    const oracle::DickeOperators d = oracle::dicke_operators(4, 3, 3);
    CHECK((d.a * d.A - d.A * d.a).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((d.b * d.C.transpose() - d.C.transpose() * d.b).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(oracle::dicke_operators(0, 2, 2), InvalidArgument);
}

TEST_CASE("finite-N dynamics of one photon is exactly bosonic") {
    const CouplingConfig cfg = CouplingConfig::make(1.0, 0.6, 0.4);
    const oracle::DickeState in = oracle::DickeState::basis(12, 3, 3, 1, 0);
    const oracle::FiniteNPropagator finite(cfg, 12, 3, 3, 1);
    const FockState boson = FockState::basis({1, 0, 0, 0}, Cutoffs{3, 3, 3, 3});
    const oracle::BosonicPropagator bosonic(cfg, 1);
    for (double t : {0.5, 2.0, 5.0}) {
        const double d = oracle::trace_distance(finite.propagate(in, t).photon_density(2),
                                                oracle::photon_density(bosonic.propagate(boson, t), 2));
        CHECK(d < 1e-12);
    }
    CHECK_THROWS_AS(oracle::FiniteNPropagator(cfg, 12, 2, 2, 2), CutoffOverflow);
}

TEST_CASE("two-excitation bosonization error halves when N doubles") {
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(2.0 * pi * i / 200);
    const auto report = oracle::bosonization_error({20, 40}, 2, CouplingConfig::make(1.0, 0.0), grid, 2);
    REQUIRE(report.entries.size() == 2);
    CHECK(report.initial == Occupation{1, 1, 0, 0});
    CHECK(report.ratios[0] > 1.8);
    CHECK(report.ratios[0] < 2.2);
    CHECK_THROWS_AS(oracle::bosonization_error({6}, 2, CouplingConfig::make(1.0, 0.0), grid), InvalidArgument);
}
