#include "cyclic/oracle.hpp"

#include "cyclic/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace cyclic::oracle {

SectorBasis::SectorBasis(int sector) : sector_(sector) {
    if (sector < 0) throw InvalidArgument("sector must be non-negative");
    for (int na = 0; na <= sector; ++na) {
        for (int nb = 0; nb <= sector - na; ++nb) {
            for (int nA = 0; nA <= sector - na - nb; ++nA) {
                const Occupation occ{na, nb, nA, sector - na - nb - nA};
                lookup_[occ] = states_.size();
                states_.push_back(occ);
            }
        }
    }
}

std::size_t SectorBasis::index_of(const Occupation& occ) const {
    const auto it = lookup_.find(occ);
    if (it == lookup_.end()) {
        throw InvalidArgument("occupation outside sector " + std::to_string(sector_));
    }
    return it->second;
}

Eigen::VectorXcd SectorBasis::extract(const FockState& s) const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) v(static_cast<Eigen::Index>(i)) = s.amplitude(states_[i]);
    return v;
}

void SectorBasis::scatter(const Eigen::VectorXcd& v, FockState& s) const {
    for (std::size_t i = 0; i < dim(); ++i) {
        const cplx z = v(static_cast<Eigen::Index>(i));
        if (z == cplx{}) continue;
        s.set_amplitude(states_[i], s.amplitude(states_[i]) + z);
    }
}

SectorHamiltonianParts sector_hamiltonian_parts(const SectorBasis& basis, double phi) {
    const auto n = static_cast<Eigen::Index>(basis.dim());
    SectorHamiltonianParts parts{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};
    const cplx drive_phase = std::polar(1.0, phi);

    // Each "forward" term maps |occ> to |target>; its adjoint fills the mirror entry.
    const auto hop = [&](Eigen::MatrixXcd& m, const Occupation& occ, int from, int to, cplx weight) {
        if (occ[from] == 0) return;
        Occupation target = occ;
        --target[from];
        ++target[to];
        const double amp = std::sqrt(static_cast<double>(occ[from]) * (occ[to] + 1));
        const auto j = static_cast<Eigen::Index>(basis.index_of(occ));
        const auto i = static_cast<Eigen::Index>(basis.index_of(target));
        m(i, j) += weight * amp;
        m(j, i) += std::conj(weight) * amp;
    };

    for (const Occupation& occ : basis.states()) {
        hop(parts.coupling, occ, index(Mode::a), index(Mode::A), 1.0);  // a A^dag
        hop(parts.coupling, occ, index(Mode::b), index(Mode::C), 1.0);  // b C^dag
        hop(parts.drive, occ, index(Mode::C), index(Mode::A), drive_phase);  // A^dag C
    }
    return parts;
}

Eigen::MatrixXcd sector_hamiltonian(const SectorBasis& basis, const CouplingConfig& cfg) {
    const SectorHamiltonianParts parts = sector_hamiltonian_parts(basis, cfg.phi);
    return cfg.g_N * parts.coupling + cfg.omega * parts.drive;
}

SectorPropagator::SectorPropagator(const CouplingConfig& cfg, int sector)
    : basis_(sector), h_(sector_hamiltonian(basis_, cfg)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h_);
    if (solver.info() != Eigen::Success) {
        throw IntegratorFailure("sector eigendecomposition failed");
    }
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
}

Eigen::VectorXcd SectorPropagator::propagate(const Eigen::VectorXcd& v, double t) const {
    Eigen::VectorXcd coeffs = vectors_.adjoint() * v;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) *= std::polar(1.0, -energies_(i) * t);
    return vectors_ * coeffs;
}

namespace {

Cutoffs widened(const Cutoffs& c, int sector) {
    Cutoffs out = c;
    for (int& x : out) x = std::max(x, sector + 1);
    return out;
}

}  // namespace

FockState expm_propagate(const FockState& initial, const CouplingConfig& cfg, double t) {
    if (!initial.sector()) throw SectorMissing("exact propagation needs sector metadata");
    const int s = *initial.sector();
    const SectorPropagator prop(cfg, s);
    FockState out(widened(initial.cutoffs(), s), s);
    prop.basis().scatter(prop.propagate(prop.basis().extract(initial), t), out);
    return out;
}

BosonicPropagator::BosonicPropagator(const CouplingConfig& cfg, int max_sector) {
    if (max_sector < 0) throw InvalidArgument("max_sector must be non-negative");
    sectors_.reserve(static_cast<std::size_t>(max_sector) + 1);
    for (int s = 0; s <= max_sector; ++s) sectors_.emplace_back(cfg, s);
}

FockState BosonicPropagator::propagate(const FockState& initial, double t) const {
    FockState out(widened(initial.cutoffs(), max_sector()), initial.sector());
    for (const SectorPropagator& prop : sectors_) {
        const Eigen::VectorXcd v = prop.basis().extract(initial);
        if (v.squaredNorm() == 0.0) continue;
        prop.basis().scatter(prop.propagate(v, t), out);
    }
    return out;
}

}  // namespace cyclic::oracle
