#include "cyclic/errors.hpp"
#include "cyclic/fock.hpp"
#include "cyclic/json_io.hpp"

#include <doctest.h>

using namespace cyclic;

TEST_CASE("ladder operators carry the bosonic factors") {
    const FockState s = FockState::basis({2, 0, 1, 0}, Cutoffs{4, 2, 3, 2});
    const FockState down = s.annihilate(Mode::a);
    CHECK(std::abs(down.amplitude({1, 0, 1, 0}) - std::sqrt(2.0)) < 1e-15);
    const FockState up = s.create(Mode::a);
    CHECK(std::abs(up.amplitude({3, 0, 1, 0}) - std::sqrt(3.0)) < 1e-15);
    CHECK_THROWS_AS(up.create(Mode::a), CutoffOverflow);
    CHECK(s.mean_occupation(Mode::a) == doctest::Approx(2.0));
    CHECK(s.sector() == 3);
}

TEST_CASE("out-of-range amplitudes read as zero") {
    const FockState s = FockState::basis({1, 0, 0, 0});
    CHECK(s.amplitude({5, 0, 0, 0}) == cplx{});
    CHECK_THROWS_AS(FockState(Cutoffs{0, 1, 1, 1}), BadCutoff);
}

TEST_CASE("inner products across different cutoffs") {
    FockState a = FockState::basis({1, 1, 0, 0}, Cutoffs{3, 3, 1, 1});
    FockState b = FockState::basis({1, 1, 0, 0}, Cutoffs{2, 2, 2, 2});
    CHECK(std::abs(inner(a, b) - 1.0) < 1e-15);
    b *= cplx(0.0, 1.0);
    CHECK(fidelity(a, b) == doctest::Approx(1.0));
}

TEST_CASE("creation polynomials build the two-photon Hong-Ou-Mandel state") {
    // ((a + b)/sqrt2) ((a - b)/sqrt2) |0> = (|2,0> - |0,2>)/sqrt2
    const double r = 1.0 / std::sqrt(2.0);
    const CreationPolynomial p = CreationPolynomial::linear(Vec4(r, r, 0, 0)) * CreationPolynomial::linear(Vec4(r, -r, 0, 0));
    const FockState s = apply_creation_polynomial(p, FockState::vacuum({3, 3, 1, 1}));
    CHECK(std::abs(s.amplitude({2, 0, 0, 0}) - r) < 1e-15);
    CHECK(std::abs(s.amplitude({0, 2, 0, 0}) + r) < 1e-15);
    CHECK(std::abs(s.amplitude({1, 1, 0, 0})) < 1e-15);
    CHECK(entanglement_entropy(s, ModeSet{Mode::a}) == doctest::Approx(1.0));
}

TEST_CASE("reduced density of a product state is pure") {
    FockState s(Cutoffs{2, 2, 1, 1});
    s.set_amplitude({0, 0, 0, 0}, 0.6);
    s.set_amplitude({1, 0, 0, 0}, 0.8);
    const Eigen::MatrixXcd rho = reduced_density(s, ModeSet{Mode::a});
    CHECK(rho.rows() == 2);
    CHECK(std::abs(rho(0, 1) - 0.48) < 1e-15);
    CHECK(entanglement_entropy(s, ModeSet{Mode::a}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sector metadata is inferred from the support") {
    FockState s(Cutoffs{3, 3, 1, 1});
    s.set_amplitude({2, 0, 0, 0}, 1.0);
    s.set_amplitude({1, 1, 0, 0}, 1.0);
    s.infer_sector();
    CHECK(s.sector() == 2);
    s.set_amplitude({0, 0, 0, 0}, 1.0);
    s.infer_sector();
    CHECK_FALSE(s.sector().has_value());
}

TEST_CASE("JSON round trip is exact") {
    FockState s(Cutoffs{3, 2, 2, 1}, 2);
    s.set_amplitude({2, 0, 0, 0}, cplx(0.1, -1.0 / 3.0));
    s.set_amplitude({1, 1, 0, 0}, cplx(std::sqrt(2.0) / 7.0, 0.0));
    s.set_amplitude({0, 1, 1, 0}, cplx(-2e-300, 1e-14));
    const json j = json::parse(dump_json(fock_state_to_json(s)));
    const FockState back = fock_state_from_json(j);
    CHECK(back.cutoffs() == s.cutoffs());
    CHECK(back.sector() == 2);
    CHECK(back.amplitude({2, 0, 0, 0}) == s.amplitude({2, 0, 0, 0}));
    CHECK(back.amplitude({1, 1, 0, 0}) == s.amplitude({1, 1, 0, 0}));
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK_THROWS_AS(fock_state_from_json(json{{"cutoffs", {1, 2}}}), InvalidArgument);
}
