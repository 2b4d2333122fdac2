#include "cyclic/adiabatic.hpp"
#include "cyclic/dynamics.hpp"
#include "cyclic/errors.hpp"
#include "cyclic/schedule.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace cyclic;

namespace {

FockState photons(int m, int n) {
    const int c = m + n + 1;
    return FockState::basis({m, n, 0, 0}, Cutoffs{c, c, c, c});
}

double wrapped(double phase) { return std::remainder(phase, 2.0 * pi); }

IntegratorOptions fast() {
    IntegratorOptions o;
    o.verify_convergence = false;
    return o;
}

}  // namespace

TEST_CASE("polariton decomposition rebuilds |m, n> for every m + n <= 4") {
    const Mat4 M = polariton_matrix(0.0);
    for (int m = 0; m <= 4; ++m) {
        for (int n = 0; m + n <= 4; ++n) {
            const FockState rebuilt = reconstruct_from_polaritons(m, n, decomposition_coefficients(m, n), M);
            CHECK(1.0 - fidelity(rebuilt, photons(m, n)) < 1e-12);
            CHECK(rebuilt.norm() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("the squared-binomial coefficients do not rebuild the state") {
    const Mat4 M = polariton_matrix(0.0);
    int failures = 0;
    for (int m = 0; m <= 4; ++m) {
        for (int n = 0; m + n <= 4; ++n) {
            const FockState rebuilt =
                reconstruct_from_polaritons(m, n, oracle_test::squared_binomial_coefficients(m, n), M);
            const double overlap = std::abs(inner(photons(m, n), rebuilt));
            if (std::abs(overlap - 1.0) > 1e-6 || std::abs(rebuilt.norm() - 1.0) > 1e-6) ++failures;
        }
    }
    // Identical whenever every binomial is 1, i.e. m, n <= 1.
    CHECK(failures == 15 - 4);
}

TEST_CASE("decomposition coefficients for a single photon") {
    const auto f = decomposition_coefficients(1, 0);
    CHECK(f.at({0, 0}) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(f.at({1, 0}) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(decomposition_coefficients(0, 1).at({0, 0}) == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK_THROWS_AS(decomposition_coefficients(-1, 0), InvalidArgument);
}

TEST_CASE("tanh schedule hits its endpoints and integrates constant segments exactly") {
    const Schedule s = Schedule::tanh(1.0, 20.0, -20.0, 100.0, 1.5);
    CHECK(s.omega(0.0) == 20.0);
    CHECK(s.omega(100.0) == doctest::Approx(-20.0).epsilon(1e-15));
    CHECK(s.omega(50.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.storage_grade());
    const Schedule c = Schedule::constant(1.0, 2.0, 3.0).with_hold(1.0).with_lead(0.5);
    const auto e = polariton_energies(1.0, 2.0);
    const PhaseIntegrals p = phase_integrals(c);
    CHECK(p.eps1 == doctest::Approx(e[0] * 4.5).epsilon(1e-13));
    CHECK(p.eps3 == doctest::Approx(e[2] * 4.5).epsilon(1e-13));
    CHECK(c.t_end() == doctest::Approx(4.5));
}

TEST_CASE("monotone cubic samples do not overshoot") {
    const Schedule s = Schedule::sampled(1.0, {{0, 10}, {1, 9}, {2, 0}, {3, -9.5}, {4, -10}}, Interpolation::monotone_cubic);
    for (double t = 0.0; t <= 4.0; t += 0.01) {
        CHECK(s.omega(t) <= 10.0);
        CHECK(s.omega(t) >= -10.0);
    }
    CHECK_THROWS_AS(Schedule::sampled(1.0, {{0, 1}, {1, 2}, {2, 3}}, Interpolation::monotone_cubic), InvalidArgument);
    CHECK_THROWS_AS(Schedule::sampled(1.0, {{0, 1}, {0, 2}}), InvalidArgument);
}

TEST_CASE("trailing-hold tuning lands eps3 on a multiple of 2 pi") {
    const Schedule s = phase_tuned(Schedule::tanh(1.0, 20.0, -20.0, 200.0));
    CHECK(std::abs(wrapped(dynamic_phase(s))) < 1e-8);
    CHECK(s.hold() > 0.0);
    CHECK(s.hold() < 2.0 * pi / std::abs(polariton_energies(1.0, -20.0)[2]));
    CHECK_THROWS_AS(phase_tuned(Schedule::tanh(0.0, 20.0, -20.0, 10.0)), InvalidArgument);
}

TEST_CASE("two-hold tuning fixes both integrals") {
    for (double residue : {0.0, pi}) {
        const Schedule s = phase_tuned_both(Schedule::tanh(1.0, -20.0, 20.0, 150.0), residue);
        const PhaseIntegrals p = phase_integrals(s);
        CHECK(std::abs(wrapped(p.eps3)) < 1e-8);
        CHECK(std::abs(wrapped(p.eps1 - residue)) < 1e-8);
        CHECK(s.lead() >= 0.0);
        CHECK(s.hold() >= 0.0);
    }
    CHECK_THROWS_AS(phase_tuned_both(Schedule::constant(1.0, 5.0, 10.0)), InvalidArgument);
}

TEST_CASE("schedule JSON round trip") {
    const Schedule s = phase_tuned_both(Schedule::tanh(1.0, 20.0, -20.0, 80.0, 2.0));
    const json j = json::parse(dump_json(schedule_to_json(s)));
    const Schedule back = schedule_from_json(j);
    CHECK(back.lead() == s.lead());
    CHECK(back.hold() == s.hold());
    CHECK(back.steepness() == 2.0);
    for (double t : {0.0, 13.0, 40.0, s.t_end()}) CHECK(back.omega(t) == s.omega(t));
    json tuned = {{"g_N", 1.0}, {"family", "linear"}, {"omega_from", 15.0}, {"omega_to", -15.0},
                  {"duration", 60.0}, {"hold_tail", true}};
    CHECK(std::abs(wrapped(dynamic_phase(schedule_from_json(tuned)))) < 1e-8);
    CHECK_THROWS_AS(schedule_from_json(json{{"g_N", 1.0}, {"family", "cosine"}}), InvalidArgument);
    CHECK_THROWS_AS(schedule_from_json(json{{"family", "tanh"}}), InvalidArgument);
}

TEST_CASE("constant schedule reproduces the time-independent evolution") {
    const double g = 1.0, w = 0.8, T = 7.3;
    const Schedule s = Schedule::constant(g, w, T);
    for (auto [m, n] : {std::pair{1, 0}, {1, 1}, {2, 1}}) {
        const FockState exact = exact_timeordered_evolve(photons(m, n), s);
        const FockState closed = evolve_fock(CouplingConfig::make(g, w), m, n, T);
        CHECK(std::abs(inner(closed, exact) - 1.0) < 1e-9);
    }
}

TEST_CASE("a sudden quench leaves the photon in the photon modes") {
    const Schedule s = Schedule::sampled(1.0, {{0.0, 20.0}, {1e-9, -20.0}, {0.5, -20.0}});
    const FockState out = exact_timeordered_evolve(photons(1, 0), s);
    const double atomic = out.mean_occupation(Mode::A) + out.mean_occupation(Mode::C);
    CHECK(atomic < 0.01);
    CHECK_THROWS_AS(exact_timeordered_evolve(FockState(Cutoffs{2, 2, 2, 2}), s), SectorMissing);
}

TEST_CASE("slow sweeps store photons with the predicted signs") {
    const Schedule s = phase_tuned_both(Schedule::tanh(1.0, 20.0, -20.0, 100.0));
    const PassageResult a = adiabatic_evolve(1, 0, s, fast());
    CHECK(std::abs(a.target.amplitude({0, 0, 0, 1}) + 1.0) < 1e-15);
    CHECK(a.exact_fidelity_vs_target > 0.99);
    CHECK(std::real(inner(a.target, a.exact_state)) > 0.99);
    const PassageResult b = adiabatic_evolve(0, 1, s, fast());
    CHECK(std::real(inner(b.target, b.exact_state)) > 0.99);
    const PassageResult ab = adiabatic_evolve(1, 1, s, fast());
    CHECK(std::abs(ab.target.amplitude({0, 0, 1, 1}) - 1.0) < 1e-15);
    CHECK(std::real(inner(ab.target, ab.exact_state)) > 0.98);
    CHECK(ab.fidelity_vs_exact > 0.99);
}

TEST_CASE("retrieval returns C to a and A to b") {
    const Schedule s = phase_tuned_both(Schedule::tanh(1.0, -20.0, 20.0, 100.0));
    const PassageResult r = inverse_passage(0, 1, s, fast());
    CHECK(std::abs(r.target.amplitude({1, 0, 0, 0}) + 1.0) < 1e-15);
    CHECK(std::real(inner(r.target, r.exact_state)) > 0.99);
}

TEST_CASE("dynamic phase enters as exp(-i (2j + 2k - m - n) int eps3)") {
    // |1,1> = (D3^2 - D4^2)/2 at theta = 0: the two branches pick up exp(-+2i int eps3),
    // so a quarter turn makes them cancel against the target while a half turn is invisible.
    const Schedule tuned = phase_tuned(Schedule::tanh(1.0, 20.0, -20.0, 100.0));
    const double rate = std::abs(polariton_energies(1.0, -20.0)[2]);
    const Schedule quarter = tuned.with_hold(tuned.hold() + (pi / 4) / rate);
    const Schedule half = tuned.with_hold(tuned.hold() + pi / rate);
    CHECK(std::abs(std::abs(wrapped(dynamic_phase(half))) - pi) < 1e-8);
    const double f_tuned = adiabatic_evolve(1, 1, tuned, fast()).fidelity_vs_target;
    CHECK(f_tuned - adiabatic_evolve(1, 1, quarter, fast()).fidelity_vs_target > 0.1);
    CHECK(std::abs(f_tuned - adiabatic_evolve(1, 1, half, fast()).fidelity_vs_target) < 1e-9);
}

TEST_CASE("prediction needs a nonzero starting drive") {
    const Schedule s = Schedule::linear(1.0, 0.0, -20.0, 10.0);
    CHECK_THROWS_AS(adiabatic_prediction(photons(1, 0), s), InvalidArgument);
}

TEST_CASE("integrator validates its options") {
    IntegratorOptions bad;
    bad.max_step = 0.0;
    CHECK_THROWS_AS(exact_timeordered_evolve(photons(1, 0), Schedule::constant(1.0, 1.0, 1.0), bad), InvalidArgument);
}
