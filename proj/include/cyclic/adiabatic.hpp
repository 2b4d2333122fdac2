// adiabatic.hpp - photon storage and retrieval by sweeping Omega(t).
//
// Slowly sweeping Omega from large positive to large negative values carries
// each photon-like polariton D_3, D_4 continuously into an atom-like one, so
// a^dag -> -C^dag and b^dag -> -A^dag once the accumulated dynamic phase is a
// multiple of 2 pi. The reverse sweep retrieves the excitations.

#pragma once

#include "cyclic/fock.hpp"
#include "cyclic/polariton.hpp"
#include "cyclic/schedule.hpp"

#include <map>
#include <utility>

namespace cyclic {

// f(j, k) = (-1)^{n-k} C(m,j) C(n,k) / sqrt(2^{m+n} m! n!): the weight of
// (D_3^dag)^{j+k} (D_4^dag)^{m+n-j-k} |0> in |m, n>_ab at theta = 0.
std::map<std::pair<int, int>, double> decomposition_coefficients(int m, int n);

// D_i^dag = sum_x conj(M(i, x)) x^dag.
CreationPolynomial polariton_creation(const Mat4& M, int i);

// sum_{j,k} f(j, k) (D_3^dag)^{j+k} (D_4^dag)^{m+n-j-k} |0> for the given
// coefficients and polariton matrix; cutoffs m+n+1.
FockState reconstruct_from_polaritons(int m, int n, const std::map<std::pair<int, int>, double>& f,
                                      const Mat4& M);

// Adiabatic-following prediction for an arbitrary initial state: expand in
// the ideal polaritons of the starting sign of Omega (theta = 0 or pi/2),
// attach exp(-i sum_i p_i int eps_i dt), and rebuild from the polaritons at
// the final Omega. Throws InvalidArgument if Omega starts at 0.
FockState adiabatic_prediction(const FockState& initial, const Schedule& s);

struct IntegratorOptions {
    double tolerance = 1e-11;  // local error per unit time
    double max_step = 0.25;
    bool verify_convergence = true;  // rerun with max_step / 2, compare to 1e-8
};

// Solves i d/dt psi = H(t) psi inside the initial sector with an adaptive
// step-doubling sixth-order Magnus integrator. Throws SectorMissing without
// sector metadata and IntegratorFailure when the norm drifts by more than
// 1e-9 or the convergence check fails.
FockState exact_timeordered_evolve(const FockState& initial, const Schedule& s, const IntegratorOptions& opts = {});

struct PassageResult {
    FockState final_state;          // adiabatic prediction
    double dynamic_phase_integral;  // integral of eps3 over the schedule
    double fidelity_vs_target;      // prediction vs ideal transfer
    double fidelity_vs_exact;       // prediction vs exact propagation
    FockState target;
    FockState exact_state;
    double exact_fidelity_vs_target;
};

// |m, n>_ab -> (-1)^{m+n} |0, 0, n, m> for an Omega: + -> - sweep.
PassageResult adiabatic_evolve(int m, int n, const Schedule& s, const IntegratorOptions& opts = {});

// |0, 0, n_A, n_C> -> (-1)^{n_A+n_C} |n_C, n_A, 0, 0> for an Omega: - -> + sweep.
PassageResult inverse_passage(int n_A, int n_C, const Schedule& s, const IntegratorOptions& opts = {});

}  // namespace cyclic
