// polariton.hpp - reduced cyclic-ensemble model, polariton diagonalization and
// the time-t linear map on mode operators.
//
// The bosonized Hamiltonian is H = sum_jk h_jk x_j^dag x_k over x = (a, b, A, C),
// with h[a,A] = h[b,C] = g_N and h[A,C] = Omega e^{i phi}. Heisenberg evolution
// of the mode operators is x(t) = exp(-i h t) x(0).

#pragma once

#include "cyclic/types.hpp"

#include <array>
#include <variant>

namespace cyclic {

struct CouplingConfig {
    double g_N = 1.0;    // collective coupling, >= 0
    double omega = 0.0;  // classical Rabi frequency (signed)
    double phi = 0.0;    // combined phase, stored in [0, 2pi)

    // Validating constructor: rejects g_N < 0 or non-finite inputs, wraps phi.
    static CouplingConfig make(double g_N, double omega, double phi = 0.0);
};

// Spectrum of h: eps1 = -eps2 = (Omega + r)/2, eps3 = -eps4 = (Omega - r)/2
// with r = sqrt(Omega^2 + 4 g_N^2). Computed without cancellation.
std::array<double, 4> polariton_energies(double g_N, double omega);

// Mixing angle in [0, pi/2]: tan(2 theta) = 2 g_N / Omega.
double mixing_angle(double g_N, double omega);

// Rows D_1..D_4 of the polariton transform in the (a, b, A, C) basis.
Mat4 polariton_matrix(double theta, double phi = 0.0);

struct PolaritonBasis {
    double theta = 0.0;
    std::array<double, 4> eps{};
    Mat4 M = Mat4::Identity();  // D_i = sum_j M(i, j) x_j
};

Mat4 single_particle_hamiltonian(const CouplingConfig& cfg);

// Throws DegenerateModel when g_N = Omega = 0.
PolaritonBasis polariton_basis(const CouplingConfig& cfg);

struct EvolutionMatrix {
    double t = 0.0;
    Mat4 F = Mat4::Identity();

    // x_out(t) = sum_in F(out, in) x_in(0)
    cplx operator()(Mode out, Mode in) const { return F(index(out), index(in)); }
};

// Spectral route: F = M^dag diag(exp(-i eps t)) M.
EvolutionMatrix evolution_matrix(const CouplingConfig& cfg, double t);

// General route: Pade matrix exponential of -i h t, no polariton basis involved.
EvolutionMatrix evolution_matrix_expm(const CouplingConfig& cfg, double t);

// Closed-form coefficients for phi = 0 parametrized directly by the mixing
// angle and the two polariton phases phase_j = eps_j t. Also serves the
// limit cases theta = 0 and theta = pi/2 where only one phase matters.
Mat4 closed_form_coefficients(double theta, double phase1, double phase3);

// A phi = 0 model given directly by (theta, eps1, eps3). Used for the
// Omega/g_N -> +inf (theta = 0) and -inf (theta = pi/2) limits, where the
// relevant phase rate is a free parameter.
struct ClosedFormModel {
    double theta = 0.0;
    double eps1 = 0.0;
    double eps3 = 0.0;

    static ClosedFormModel strong_positive_drive(double eps3_rate) { return {0.0, 0.0, eps3_rate}; }
    static ClosedFormModel strong_negative_drive(double eps1_rate) { return {pi / 2, eps1_rate, 0.0}; }
};

using EvolutionSource = std::variant<CouplingConfig, ClosedFormModel>;

EvolutionMatrix propagate(const EvolutionSource& source, double t);

}  // namespace cyclic
