#include "cyclic/polariton.hpp"

#include "cyclic/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace cyclic {

CouplingConfig CouplingConfig::make(double g_N, double omega, double phi) {
    if (!std::isfinite(g_N) || !std::isfinite(omega) || !std::isfinite(phi)) {
        throw InvalidArgument("coupling parameters must be finite");
    }
    if (g_N < 0.0) {
        throw InvalidArgument("g_N must be non-negative");
    }
    double wrapped = std::fmod(phi, 2 * pi);
    if (wrapped < 0.0) wrapped += 2 * pi;
    if (wrapped >= 2 * pi) wrapped = 0.0;
    return {g_N, omega, wrapped};
}

std::array<double, 4> polariton_energies(double g_N, double omega) {
    const double r = std::hypot(omega, 2 * g_N);
    double e1 = 0.0;
    double e3 = 0.0;
    // eps1 * eps3 = -g_N^2; take the non-cancelling root first.
    if (omega >= 0.0) {
        e1 = 0.5 * (omega + r);
        e3 = e1 > 0.0 ? -g_N * g_N / e1 : 0.0;
    } else {
        e3 = 0.5 * (omega - r);
        e1 = -g_N * g_N / e3;
    }
    return {e1, -e1, e3, -e3};
}

double mixing_angle(double g_N, double omega) {
    return 0.5 * std::atan2(2 * g_N, omega);
}

Mat4 polariton_matrix(double theta, double phi) {
    const double s = std::sin(theta) / std::sqrt(2.0);
    const double c = std::cos(theta) / std::sqrt(2.0);
    const cplx e = std::polar(1.0, phi);
    Mat4 M;
    //      a        b        A        C
    M << cplx(s), s * e, cplx(c), c * e,     // D1
         cplx(s), -s * e, cplx(-c), c * e,   // D2
         cplx(c), c * e, cplx(-s), -s * e,   // D3
         cplx(c), -c * e, cplx(s), -s * e;   // D4
    return M;
}

Mat4 single_particle_hamiltonian(const CouplingConfig& cfg) {
    Mat4 h = Mat4::Zero();
    const int a = index(Mode::a), b = index(Mode::b), A = index(Mode::A), C = index(Mode::C);
    h(a, A) = h(A, a) = cfg.g_N;
    h(b, C) = h(C, b) = cfg.g_N;
    h(A, C) = cfg.omega * std::polar(1.0, cfg.phi);
    h(C, A) = std::conj(h(A, C));
    return h;
}

PolaritonBasis polariton_basis(const CouplingConfig& cfg) {
    if (cfg.g_N == 0.0 && cfg.omega == 0.0) {
        throw DegenerateModel("g_N = Omega = 0 leaves the polariton basis undefined");
    }
    PolaritonBasis basis;
    basis.theta = mixing_angle(cfg.g_N, cfg.omega);
    basis.eps = polariton_energies(cfg.g_N, cfg.omega);
    basis.M = polariton_matrix(basis.theta, cfg.phi);
    return basis;
}

EvolutionMatrix evolution_matrix(const CouplingConfig& cfg, double t) {
    if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
    if (cfg.g_N == 0.0 && cfg.omega == 0.0) return {t, Mat4::Identity()};
    const PolaritonBasis basis = polariton_basis(cfg);
    Vec4 phases;
    for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, -basis.eps[i] * t);
    return {t, basis.M.adjoint() * phases.asDiagonal() * basis.M};
}

EvolutionMatrix evolution_matrix_expm(const CouplingConfig& cfg, double t) {
    if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
    const Mat4 generator = -I * t * single_particle_hamiltonian(cfg);
    return {t, generator.exp()};
}

Mat4 closed_form_coefficients(double theta, double phase1, double phase3) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double s2 = s * s, c2 = c * c, sc = s * c;
    const double c1 = std::cos(phase1), c3 = std::cos(phase3);
    const double n1 = std::sin(phase1), n3 = std::sin(phase3);

    const cplx photon_diag = c1 * s2 + c3 * c2;
    const cplx photon_cross = -I * (n1 * s2 + n3 * c2);
    const cplx atom_diag = c1 * c2 + c3 * s2;
    const cplx atom_cross = -I * (n1 * c2 + n3 * s2);
    const cplx mix_sin = -I * sc * (n1 - n3);
    const cplx mix_cos = sc * (c1 - c3);

    Mat4 F;
    //   a             b             A             C
    F << photon_diag,  photon_cross, mix_sin,      mix_cos,       // a(t)
         photon_cross, photon_diag,  mix_cos,      mix_sin,       // b(t)
         mix_sin,      mix_cos,      atom_diag,    atom_cross,    // A(t)
         mix_cos,      mix_sin,      atom_cross,   atom_diag;     // C(t)
    return F;
}

EvolutionMatrix propagate(const EvolutionSource& source, double t) {
    if (const auto* cfg = std::get_if<CouplingConfig>(&source)) {
        return evolution_matrix(*cfg, t);
    }
    const auto& model = std::get<ClosedFormModel>(source);
    return {t, closed_form_coefficients(model.theta, model.eps1 * t, model.eps3 * t)};
}

}  // namespace cyclic
