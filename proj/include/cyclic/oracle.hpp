// oracle.hpp - brute-force reference propagators.
//
// The bosonized Hamiltonian conserves n_a + n_b + n_A + n_C, so each
// excitation sector is a finite block that can be exponentiated exactly by
// Hermitian eigendecomposition. The many-body block is assembled from the
// operator terms directly and never goes through the single-particle h.

#pragma once

#include "cyclic/fock.hpp"
#include "cyclic/polariton.hpp"

#include <map>
#include <vector>

namespace cyclic::oracle {

class SectorBasis {
public:
    explicit SectorBasis(int sector);

    int sector() const noexcept { return sector_; }
    std::size_t dim() const noexcept { return states_.size(); }
    const Occupation& state(std::size_t i) const { return states_.at(i); }
    const std::vector<Occupation>& states() const noexcept { return states_; }
    // Throws InvalidArgument if occ is not in this sector.
    std::size_t index_of(const Occupation& occ) const;

    Eigen::VectorXcd extract(const FockState& s) const;
    // Writes coefficients into s (cutoffs must admit the whole sector).
    void scatter(const Eigen::VectorXcd& v, FockState& s) const;

private:
    int sector_;
    std::vector<Occupation> states_;  // lexicographic in (n_a, n_b, n_A, n_C)
    std::map<Occupation, std::size_t> lookup_;
};

// Unit-strength pieces: H = g_N * coupling + Omega * drive.
struct SectorHamiltonianParts {
    Eigen::MatrixXcd coupling;  // a A^dag + b C^dag + h.c.
    Eigen::MatrixXcd drive;     // e^{i phi} A^dag C + h.c.
};

SectorHamiltonianParts sector_hamiltonian_parts(const SectorBasis& basis, double phi);
Eigen::MatrixXcd sector_hamiltonian(const SectorBasis& basis, const CouplingConfig& cfg);

// Cached eigendecomposition of one sector block; immutable after construction.
class SectorPropagator {
public:
    SectorPropagator(const CouplingConfig& cfg, int sector);

    const SectorBasis& basis() const noexcept { return basis_; }
    const Eigen::MatrixXcd& hamiltonian() const noexcept { return h_; }
    Eigen::VectorXcd propagate(const Eigen::VectorXcd& v, double t) const;

private:
    SectorBasis basis_;
    Eigen::MatrixXcd h_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
};

// Exact propagation of a single-sector state. Throws SectorMissing if the
// state carries no sector metadata. Output cutoffs are max(input, sector + 1).
FockState expm_propagate(const FockState& initial, const CouplingConfig& cfg, double t);

// Multi-sector propagation: every sector 0..max_sector is propagated exactly,
// higher sectors are discarded. Propagators are built once per instance.
class BosonicPropagator {
public:
    BosonicPropagator(const CouplingConfig& cfg, int max_sector);

    int max_sector() const noexcept { return static_cast<int>(sectors_.size()) - 1; }
    FockState propagate(const FockState& initial, double t) const;

private:
    std::vector<SectorPropagator> sectors_;
};

}  // namespace cyclic::oracle
