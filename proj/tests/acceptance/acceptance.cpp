// Acceptance run: one PASS/FAIL line per criterion, each with its runtime.
// Exit status is the number of failed criteria (capped at 9).

#include "cyclic/adiabatic.hpp"
#include "cyclic/dicke.hpp"
#include "cyclic/dynamics.hpp"
#include "cyclic/oracle.hpp"
#include "cyclic/polariton.hpp"
#include "cyclic/schedule.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cyclic;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    // Records a named check; the measured value is always reported.
    void check(bool ok, const std::string& what, double value) {
        if (!ok) pass = false;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", value);
        detail << "\n    " << (ok ? "ok   " : "FAIL ") << what << ": " << buf;
    }
    void note(const std::string& text) { detail << "\n    info " << text; }
};

double distance_to_lattice(double x, double offset, double step) {
    const double r = std::remainder(x - offset, step);
    return std::abs(r);
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

void criterion_1(Outcome& out) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> time(0.0, 20.0);
    double diag = 0.0, unitary = 0.0;
    for (int i = 0; i < 100; ++i) {
        const CouplingConfig cfg = oracle_test::random_config(rng);
        const PolaritonBasis pb = polariton_basis(cfg);
        const Mat4 h = single_particle_hamiltonian(cfg);
        Mat4 d = Mat4::Zero();
        for (int k = 0; k < 4; ++k) d(k, k) = pb.eps[static_cast<std::size_t>(k)];
        diag = std::max(diag, max_abs(pb.M * h * pb.M.adjoint() - d));
        const Mat4 F = evolution_matrix(cfg, time(rng)).F;
        unitary = std::max(unitary, max_abs(F * F.adjoint() - Mat4::Identity()));
    }
    out.check(diag < 1e-12, "max |M h M^dag - diag(eps)| over 100 configs", diag);
    out.check(unitary < 1e-12, "max |F F^dag - I| over 100 configs", unitary);

    double closed = 0.0;
    std::uniform_real_distribution<double> g(0.1, 3.0), w(-5.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const CouplingConfig cfg = CouplingConfig::make(g(rng), w(rng), 0.0);
        const double t = time(rng);
        const auto eps = polariton_energies(cfg.g_N, cfg.omega);
        const Mat4 cf = closed_form_coefficients(mixing_angle(cfg.g_N, cfg.omega), eps[0] * t, eps[2] * t);
        closed = std::max(closed, max_abs(cf - evolution_matrix_expm(cfg, t).F));
    }
    out.check(closed < 1e-12, "max |closed form - exp(-i h t)| at phi = 0", closed);
}

double case_one_entropy_at(double phi3) {
    const FockState s = evolve_fock(ClosedFormModel::strong_positive_drive(1.0), 1, 1, phi3);
    return entanglement_entropy(s, ModeSet{Mode::a});
}

void criterion_2(Outcome& out) {
    double one = 0.0, log3 = 0.0, zero = 0.0;
    const double target = std::log2(3.0);
    for (int k = 0; k <= 2; ++k) {
        for (double sign : {-1.0, 1.0}) {
            const double phi = (k + 0.25 * sign) * pi;
            if (phi < 0.0) continue;
            one = std::max(one, std::abs(case_one_entropy_at(phi) - 1.0));
        }
        for (double sign : {-1.0, 1.0}) {
            const double root = std::asin(std::sqrt((3.0 + sign * std::sqrt(3.0)) / 6.0));
            for (double phi : {k * pi + root, k * pi - root}) {
                if (phi < 0.0) continue;
                log3 = std::max(log3, std::abs(case_one_entropy_at(phi) - target));
            }
        }
        zero = std::max(zero, std::abs(case_one_entropy_at(k * pi / 2.0)));
    }
    out.check(one < 1e-9, "max |E - 1| at phi3 = (k +- 1/4) pi", one);
    out.check(log3 < 1e-9, "max |E - log2 3| at sin^2 phi3 = (3 +- sqrt 3)/6", log3);
    out.check(zero < 1e-9, "max |E| at phi3 = k pi / 2", zero);
}

void criterion_3(Outcome& out) {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> time(0.0, 20.0);
    double defect = 0.0;
    for (int i = 0; i < 20; ++i) {
        const CouplingConfig cfg = oracle_test::random_config(rng);
        const double t = time(rng);
        for (int m = 0; m <= 4; ++m) {
            for (int n = 0; m + n <= 4; ++n) {
                const FockState closed = evolve_fock(cfg, m, n, t);
                const FockState exact = oracle::expm_propagate(FockState::basis({m, n, 0, 0}), cfg, t);
                defect = std::max(defect, 1.0 - fidelity(closed, exact));
            }
        }
    }
    out.check(defect < 1e-10, "max fidelity defect, m + n <= 4, 20 random (cfg, t)", defect);
}

double photon_fidelity(const CouplingConfig& cfg, int m, int n, double t, int m_target, int n_target) {
    return fidelity(evolve_fock(cfg, m, n, t), FockState::basis({m_target, n_target, 0, 0}));
}

void criterion_4(Outcome& out) {
    const CouplingConfig cfg = CouplingConfig::make(1.0, 2.0 / std::sqrt(3.0));
    const std::vector<std::pair<int, int>> inputs = {{1, 0}, {1, 1}, {2, 1}};
    double revival = 0.0, swap = 0.0;
    for (const auto& [m, n] : inputs) {
        for (int k = 1; k <= 3; ++k) {
            revival = std::max(revival, std::abs(1.0 - photon_fidelity(cfg, m, n, 2.0 * pi * std::sqrt(3.0) * k, m, n)));
        }
        for (int k = 0; k <= 2; ++k) {
            swap = std::max(swap, std::abs(1.0 - photon_fidelity(cfg, m, n, pi * std::sqrt(3.0) * (2 * k + 1), n, m)));
        }
    }
    out.check(revival < 1e-10, "max |1 - F(|m,n>)| at t = 2 pi sqrt3 k", revival);
    out.check(swap < 1e-10, "max |1 - F(|n,m>)| at t = pi sqrt3 (2k+1)", swap);

    // Times derived from the base period 2 pi / sqrt(Omega^2 + 4 g^2).
    const ResonanceTimes rt = resonance_times(cfg);
    double derived = 0.0;
    for (const auto& [m, n] : inputs) {
        for (int k = 0; k <= 2; ++k) {
            derived = std::max(derived, std::abs(1.0 - photon_fidelity(cfg, m, n, rt.revival.at(k + 1), m, n)));
            derived = std::max(derived, std::abs(1.0 - photon_fidelity(cfg, m, n, rt.swap->at(k), n, m)));
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "revivals at pi sqrt3 k = %.10f k, swaps at pi sqrt3 (2k+1)/2: max defect %.3e",
                  rt.revival.period, derived);
    out.note(buf);

    // Omega / sqrt(Omega^2 + 4) = 2/3.
    const double omega23 = 4.0 / std::sqrt(5.0);
    const CouplingConfig odd = CouplingConfig::make(1.0, omega23);
    const double base = 2.0 * pi / std::sqrt(omega23 * omega23 + 4.0);
    const int samples = 20000;
    double best = 0.0;
    for (const auto& [m, n] : std::vector<std::pair<int, int>>{{1, 0}, {2, 1}}) {
        for (int i = 1; i <= samples; ++i) {
            best = std::max(best, photon_fidelity(odd, m, n, 10.0 * base * i / samples, n, m));
        }
    }
    out.check(best < 1.0 - 1e-3, "p/q = 2/3: max swap fidelity over 10 base periods", best);
}

void criterion_5(Outcome& out) {
    const Mat4 M = polariton_matrix(0.0);
    double defect = 0.0;
    int failures = 0, cases = 0;
    for (int m = 0; m <= 4; ++m) {
        for (int n = 0; m + n <= 4; ++n) {
            const FockState target = FockState::basis({m, n, 0, 0});
            const FockState rebuilt = reconstruct_from_polaritons(m, n, decomposition_coefficients(m, n), M);
            defect = std::max(defect, 1.0 - fidelity(rebuilt, target));
            const FockState printed =
                reconstruct_from_polaritons(m, n, oracle_test::squared_binomial_coefficients(m, n), M);
            // An unnormalized state also fails: the norm must come out as 1.
            const double bad = std::max(1.0 - fidelity(printed, target), std::abs(printed.norm() - 1.0));
            if (bad > 1e-12) ++failures;
            ++cases;
        }
    }
    out.check(defect < 1e-12, "max reconstruction defect, m + n <= 4", defect);
    out.check(failures > 0, "squared-binomial control: failing (m, n) cases out of " + std::to_string(cases),
              failures);
}

void criterion_6(Outcome& out) {
    const IntegratorOptions opts{};
    const Schedule base = phase_tuned_both(Schedule::tanh(1.0, 20.0, -20.0, 200.0));
    const Schedule doubled = phase_tuned_both(Schedule::tanh(1.0, 20.0, -20.0, 400.0));
    for (const Schedule* s : {&base, &doubled}) {
        const double phase = dynamic_phase(*s);
        out.check(distance_to_lattice(phase, 0.0, 2.0 * pi) < 1e-8,
                  "T = " + std::to_string(static_cast<int>(s->sweep_end() - s->sweep_start())) +
                      ": distance of int eps3 from 2 pi Z",
                  distance_to_lattice(phase, 0.0, 2.0 * pi));
    }
    for (const auto& [m, n] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}}) {
        const PassageResult r200 = adiabatic_evolve(m, n, base, opts);
        const PassageResult r400 = adiabatic_evolve(m, n, doubled, opts);
        const std::string tag = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
        out.check(r200.exact_fidelity_vs_target > 0.99, "store " + tag + " T = 200 exact fidelity",
                  r200.exact_fidelity_vs_target);
        out.check(r400.exact_fidelity_vs_target >= r200.exact_fidelity_vs_target - 1e-3,
                  "store " + tag + " T = 400 exact fidelity", r400.exact_fidelity_vs_target);
    }
    const Schedule back = phase_tuned_both(Schedule::tanh(1.0, -20.0, 20.0, 200.0));
    for (const auto& [nA, nC] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}}) {
        const PassageResult r = inverse_passage(nA, nC, back, opts);
        out.check(r.exact_fidelity_vs_target > 0.99,
                  "retrieve (nA,nC) = (" + std::to_string(nA) + "," + std::to_string(nC) + ") exact fidelity",
                  r.exact_fidelity_vs_target);
    }
}

void criterion_7(Outcome& out) {
    const CatState cat = CatState::make(Mode::a, 1.0, Parity::even);
    const ClosedFormModel model = ClosedFormModel::strong_positive_drive(1.0);
    const FockState moved = evolve_cat(cat, model, pi / 2.0).materialize(16);
    const FockState target = cat_branches(CatState::make(Mode::b, cplx{0.0, -1.0}, Parity::even)).materialize(16);
    const double f = fidelity(moved, target);
    out.check(f > 1.0 - 1e-8, "phi = pi/2: fidelity with the even cat of amplitude -i on b", f);

    const TwoBranchState half = evolve_cat(cat, model, pi / 4.0);
    const double numeric = entanglement_entropy(half.materialize(16), ModeSet{Mode::a});
    const double gram = two_branch_entropy(half, ModeSet{Mode::a});
    const double closed = oracle_test::cat_pair_entropy(0.5, 0.5, true);
    out.check(std::abs(numeric - gram) < 1e-6, "phi = pi/4: |materialized entropy - Gram prediction|",
              std::abs(numeric - gram));
    out.check(std::abs(gram - closed) < 1e-6, "phi = pi/4: |Gram prediction - cat-pair formula|",
              std::abs(gram - closed));
}

void criterion_8(Outcome& out) {
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(2.0 * pi * i / 400.0);
    const CouplingConfig cfg = CouplingConfig::make(1.0, 0.0);
    const oracle::BosonizationReport s1 = oracle::bosonization_error({20, 40}, 1, cfg, grid, 0);
    const double ratio = s1.ratios.at(0);
    out.check(ratio >= 1.5 && ratio <= 2.5, "s = 1 ratio err(20)/err(40)", ratio);
    char buf[160];
    std::snprintf(buf, sizeof buf, "s = 1 errors: N=20 %.3e, N=40 %.3e", s1.entries[0].max_trace_distance,
                  s1.entries[1].max_trace_distance);
    out.note(buf);
    const oracle::BosonizationReport s2 = oracle::bosonization_error({20, 40}, 2, cfg, grid, 0);
    std::snprintf(buf, sizeof buf, "s = 2 ratio err(20)/err(40) = %.4f (errors %.3e, %.3e)", s2.ratios.at(0),
                  s2.entries[0].max_trace_distance, s2.entries[1].max_trace_distance);
    out.note(buf);

    double tensor = 0.0;
    for (int n = 1; n <= 3; ++n) {
        const oracle::AtomicOperators sym = oracle::atomic_operators(n);
        const oracle::AtomicOperators full = oracle::tensor_product_operators(n);
        for (auto field : {&oracle::AtomicOperators::A, &oracle::AtomicOperators::C, &oracle::AtomicOperators::t_plus,
                           &oracle::AtomicOperators::t_minus, &oracle::AtomicOperators::t_z}) {
            tensor = std::max(tensor, max_abs(sym.*field - full.*field));
        }
    }
    out.check(tensor < 1e-13, "Dicke vs tensor product, N <= 3", tensor);

    const oracle::AtomicOperators op = oracle::atomic_operators(10);
    const Eigen::MatrixXd Ad = op.A.transpose(), Cd = op.C.transpose();
    const double ac = max_abs(Eigen::MatrixXd(op.A * Cd - Cd * op.A));
    const double tm = max_abs(Eigen::MatrixXd(op.t_minus * Ad - Ad * op.t_minus - Cd));
    out.check(ac < 1e-13, "N = 10: max |[A, C^dag]|", ac);
    out.check(tm < 1e-13, "N = 10: max |[T-, A^dag] - C^dag|", tm);
    const double ac_exact = max_abs(Eigen::MatrixXd(op.A * Cd - Cd * op.A + op.t_minus / 10.0));
    std::snprintf(buf, sizeof buf, "N = 10: max |[A, C^dag] + T-/N| = %.3e", ac_exact);
    out.note(buf);
}

void criterion_9(Outcome& out) {
    std::mt19937_64 rng(909);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0), time(0.0, 20.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const CouplingConfig cfg = oracle_test::random_config(rng);
        Vec4 v;
        for (int k = 0; k < 4; ++k) v(k) = cplx{normal(rng), normal(rng)};
        v *= unit(rng) / v.norm();
        const CoherentAmplitudes amps = CoherentAmplitudes::from_vector(v);
        const double t = time(rng);

        FockState initial = coherent_fock_state(amps, 12);
        initial.normalize();
        const oracle::BosonicPropagator prop(cfg, 12);
        const FockState evolved = prop.propagate(initial, t);
        const CoherentAmplitudes predicted = evolve_coherent(amps, cfg, t);
        for (Mode m : {Mode::a, Mode::b, Mode::A, Mode::C}) {
            worst = std::max(worst, std::abs(evolved.expect_annihilation(m) - predicted[m]));
        }
    }
    out.check(worst < 1e-6, "max |<x(t)> - evolve_coherent| over 10 random (cfg, amps, t)", worst);
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "polariton diagonalization", 1.0, criterion_1},
        {2, "Case-I entanglement points", 1.0, criterion_2},
        {3, "closed form vs sector expm", 5.0, criterion_3},
        {4, "revival and swap certificate", 5.0, criterion_4},
        {5, "polariton reconstruction", 1.0, criterion_5},
        {6, "adiabatic storage and retrieval", 30.0, criterion_6},
        {7, "cat-state transfer", 5.0, criterion_7},
        {8, "bosonization and Dicke algebra", 60.0, criterion_8},
        {9, "coherent first moments", 10.0, criterion_9},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << "\n    FAIL exception: " << e.what();
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char budget[96];
        std::snprintf(budget, sizeof budget, "runtime %.3f s (limit %.0f s)", elapsed, c.budget_s);
        out.check(elapsed < c.budget_s, budget, elapsed);
        std::printf("criterion %d %s: %s (%.3f s)%s\n", c.id, c.title, out.pass ? "PASS" : "FAIL", elapsed,
                    out.detail.str().c_str());
        std::fflush(stdout);
        if (!out.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return std::min(failed, 9);
}
