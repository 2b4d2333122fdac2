#include "cyclic/adiabatic.hpp"

#include "cyclic/errors.hpp"
#include "cyclic/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace cyclic {

namespace {

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

FockState vacuum_for_sector(int s) { return FockState::vacuum({s + 1, s + 1, s + 1, s + 1}); }

}  // namespace

std::map<std::pair<int, int>, double> decomposition_coefficients(int m, int n) {
    if (m < 0 || n < 0) throw InvalidArgument("photon numbers must be non-negative");
    const double scale = 1.0 / std::sqrt(std::pow(2.0, m + n) * factorial(m) * factorial(n));
    std::map<std::pair<int, int>, double> f;
    for (int j = 0; j <= m; ++j) {
        for (int k = 0; k <= n; ++k) {
            const double sign = (n - k) % 2 == 0 ? 1.0 : -1.0;
            f[{j, k}] = sign * binomial(m, j) * binomial(n, k) * scale;
        }
    }
    return f;
}

CreationPolynomial polariton_creation(const Mat4& M, int i) {
    if (i < 0 || i > 3) throw InvalidArgument("polariton index must be 0..3");
    return CreationPolynomial::linear(M.row(i).conjugate().transpose());
}

FockState reconstruct_from_polaritons(int m, int n, const std::map<std::pair<int, int>, double>& f,
                                      const Mat4& M) {
    const CreationPolynomial d3 = polariton_creation(M, 2);
    const CreationPolynomial d4 = polariton_creation(M, 3);
    CreationPolynomial total;
    for (const auto& [jk, coeff] : f) {
        const int p = jk.first + jk.second;
        total = total + d3.pow(p) * d4.pow(m + n - p) * coeff;
    }
    return apply_creation_polynomial(total, vacuum_for_sector(m + n));
}

FockState adiabatic_prediction(const FockState& initial, const Schedule& s) {
    if (s.omega_from() == 0.0) throw InvalidArgument("adiabatic passage needs a nonzero starting Omega");
    const Mat4 start = polariton_matrix(s.omega_from() > 0.0 ? 0.0 : pi / 2);
    const Mat4 end = polariton_matrix(mixing_angle(s.g_N(), s.omega_to()));
    const PhaseIntegrals phases = phase_integrals(s);
    const std::array<double, 4> phi{phases.eps1, -phases.eps1, phases.eps3, -phases.eps3};

    // Expand the initial state in polariton creation operators: the mode
    // slots of these polynomials stand for D_1..D_4. Since x = M^dag D,
    // x_j^dag = sum_i M(i, j) D_i^dag.
    int top = 0;
    CreationPolynomial in_polaritons;
    for (std::size_t k = 0; k < initial.size(); ++k) {
        const cplx amp = initial.data()[k];
        if (amp == cplx{}) continue;
        const Occupation occ = initial.occupation(k);
        top = std::max(top, occ[0] + occ[1] + occ[2] + occ[3]);
        CreationPolynomial term = CreationPolynomial::constant(amp);
        double norm = 1.0;
        for (Mode x : all_modes) {
            term = term * CreationPolynomial::linear(start.col(index(x))).pow(occ[index(x)]);
            norm *= factorial(occ[index(x)]);
        }
        in_polaritons = in_polaritons + term * (1.0 / std::sqrt(norm));
    }

    std::array<CreationPolynomial, 4> d_end;
    for (int i = 0; i < 4; ++i) d_end[static_cast<std::size_t>(i)] = polariton_creation(end, i);
    CreationPolynomial out;
    for (const Monomial& mono : in_polaritons.terms()) {
        double phase = 0.0;
        for (int i = 0; i < 4; ++i) phase += mono.powers[i] * phi[static_cast<std::size_t>(i)];
        CreationPolynomial term = CreationPolynomial::constant(mono.coeff * std::polar(1.0, -phase));
        for (int i = 0; i < 4; ++i) term = term * d_end[static_cast<std::size_t>(i)].pow(mono.powers[i]);
        out = out + term;
    }
    FockState result = apply_creation_polynomial(out, vacuum_for_sector(top));
    result.set_sector(initial.sector());
    return result;
}

namespace {

class MagnusIntegrator {
public:
    MagnusIntegrator(const oracle::SectorHamiltonianParts& parts, const Schedule& s, double tolerance)
        : parts_(parts), schedule_(s), tolerance_(tolerance) {}

    Eigen::VectorXcd run(Eigen::VectorXcd psi, double max_step) const {
        const std::vector<double> knots = schedule_.knots();
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) psi = segment(std::move(psi), knots[i], knots[i + 1], max_step);
        return psi;
    }

private:
    Eigen::MatrixXcd hamiltonian(double t) const {
        return schedule_.g_N() * parts_.coupling + schedule_.omega(t) * parts_.drive;
    }

    // Three-point Gauss sixth-order Magnus step for psi' = A psi, A = -i H.
    Eigen::VectorXcd step(const Eigen::VectorXcd& psi, double t, double h) const {
        const double r = std::sqrt(15.0) / 10.0;
        const cplx mi(0.0, -1.0);
        const Eigen::MatrixXcd a1 = mi * hamiltonian(t + (0.5 - r) * h);
        const Eigen::MatrixXcd a2 = mi * hamiltonian(t + 0.5 * h);
        const Eigen::MatrixXcd a3 = mi * hamiltonian(t + (0.5 + r) * h);
        const Eigen::MatrixXcd b1 = h * a2;
        const Eigen::MatrixXcd b2 = (std::sqrt(15.0) * h / 3.0) * (a3 - a1);
        const Eigen::MatrixXcd b3 = (10.0 * h / 3.0) * (a3 - 2.0 * a2 + a1);
        const auto comm = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) -> Eigen::MatrixXcd {
            return x * y - y * x;
        };
        const Eigen::MatrixXcd c12 = comm(b1, b2);
        const Eigen::MatrixXcd inner = -20.0 * b1 - b3 + c12;
        const Eigen::MatrixXcd outer = b2 - comm(b1, 2.0 * b3 + c12) / 60.0;
        const Eigen::MatrixXcd omega = b1 + b3 / 12.0 + comm(inner, outer) / 240.0;
        // omega is anti-Hermitian; exponentiate through the Hermitian i * omega.
        Eigen::MatrixXcd k = cplx(0.0, 1.0) * omega;
        k = 0.5 * (k + k.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(k);
        Eigen::VectorXcd c = eig.eigenvectors().adjoint() * psi;
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -eig.eigenvalues()(i));
        return eig.eigenvectors() * c;
    }

    Eigen::VectorXcd segment(Eigen::VectorXcd psi, double a, double b, double max_step) const {
        double t = a;
        double h = std::min(max_step, b - a);
        while (t < b) {
            const bool last = h >= b - t;
            if (last) h = b - t;
            const Eigen::VectorXcd full = step(psi, t, h);
            const Eigen::VectorXcd half = step(step(psi, t, 0.5 * h), t + 0.5 * h, 0.5 * h);
            const double err = (full - half).norm();
            // Errors at roundoff level pass regardless of how short the step is.
            const double allowed = std::max(tolerance_ * h, 1e-14);
            const double factor = err > 0.0 ? 0.9 * std::pow(allowed / err, 1.0 / 6.0) : 2.0;
            if (err <= allowed) {
                psi = half;
                t = last ? b : t + h;
                h = std::min(max_step, h * std::clamp(factor, 0.2, 2.0));
            } else {
                h *= std::clamp(factor, 0.1, 0.9);
                if (h < 1e-10 * std::max(1.0, std::abs(t))) {
                    throw IntegratorFailure("step size underflow at t = " + std::to_string(t));
                }
            }
        }
        return psi;
    }

    const oracle::SectorHamiltonianParts& parts_;
    const Schedule& schedule_;
    double tolerance_;
};

}  // namespace

FockState exact_timeordered_evolve(const FockState& initial, const Schedule& s, const IntegratorOptions& opts) {
    if (!initial.sector()) throw SectorMissing("time-ordered propagation needs sector metadata");
    if (!(opts.tolerance > 0.0) || !(opts.max_step > 0.0)) {
        throw InvalidArgument("integrator tolerance and max_step must be > 0");
    }
    const int sector = *initial.sector();
    const oracle::SectorBasis basis(sector);
    const oracle::SectorHamiltonianParts parts = oracle::sector_hamiltonian_parts(basis, 0.0);
    const MagnusIntegrator integrator(parts, s, opts.tolerance);

    const Eigen::VectorXcd v0 = basis.extract(initial);
    const Eigen::VectorXcd v = integrator.run(v0, opts.max_step);
    const double drift = std::abs(v.norm() - v0.norm());
    if (drift > 1e-9) throw IntegratorFailure("norm drift " + std::to_string(drift) + " exceeds 1e-9");
    if (opts.verify_convergence) {
        const Eigen::VectorXcd refined = integrator.run(v0, 0.5 * opts.max_step);
        const double change = (refined - v).norm();
        if (change > 1e-8) {
            throw IntegratorFailure("halving the base step changed the final state by " + std::to_string(change));
        }
    }

    Cutoffs c = initial.cutoffs();
    for (int& x : c) x = std::max(x, sector + 1);
    FockState out(c, sector);
    basis.scatter(v, out);
    return out;
}

namespace {

PassageResult run_passage(const FockState& initial, const FockState& target, const Schedule& s,
                          const IntegratorOptions& opts) {
    FockState prediction = adiabatic_prediction(initial, s);
    FockState exact = exact_timeordered_evolve(initial, s, opts);
    const double phase = dynamic_phase(s);
    const double f_target = fidelity(target, prediction);
    const double f_exact = fidelity(exact, prediction);
    const double f_exact_target = fidelity(target, exact);
    return {std::move(prediction), phase, f_target, f_exact, target, std::move(exact), f_exact_target};
}

void require_counts(int m, int n) {
    if (m < 0 || n < 0) throw InvalidArgument("excitation numbers must be non-negative");
}

}  // namespace

PassageResult adiabatic_evolve(int m, int n, const Schedule& s, const IntegratorOptions& opts) {
    require_counts(m, n);
    const int c = m + n + 1;
    const Cutoffs cut{c, c, c, c};
    const FockState initial = FockState::basis({m, n, 0, 0}, cut);
    FockState target = FockState::basis({0, 0, n, m}, cut);
    if ((m + n) % 2 == 1) target *= -1.0;
    return run_passage(initial, target, s, opts);
}

PassageResult inverse_passage(int n_A, int n_C, const Schedule& s, const IntegratorOptions& opts) {
    require_counts(n_A, n_C);
    const int c = n_A + n_C + 1;
    const Cutoffs cut{c, c, c, c};
    const FockState initial = FockState::basis({0, 0, n_A, n_C}, cut);
    FockState target = FockState::basis({n_C, n_A, 0, 0}, cut);
    if ((n_A + n_C) % 2 == 1) target *= -1.0;
    return run_passage(initial, target, s, opts);
}

}  // namespace cyclic
