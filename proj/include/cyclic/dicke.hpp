// dicke.hpp - exact finite-N collective-atom simulator.
//
// N identical three-level atoms (ground b, excited a and c) restricted to the
// symmetric subspace, labelled |n_a, n_c> with n_b = N - n_a - n_c. The
// collective operators keep their spin form, so the bosonic algebra of the
// reduced model only emerges for n_a + n_c << N.

#pragma once

#include "cyclic/fock.hpp"
#include "cyclic/oracle.hpp"
#include "cyclic/polariton.hpp"

#include <utility>
#include <vector>

namespace cyclic::oracle {

class AtomicBasis {
public:
    explicit AtomicBasis(int n_atoms);

    int atoms() const noexcept { return n_atoms_; }
    std::size_t dim() const noexcept { return states_.size(); }
    // (n_a, n_c), ordered lexicographically.
    const std::pair<int, int>& state(std::size_t i) const { return states_.at(i); }
    std::size_t index_of(int n_a, int n_c) const;

private:
    int n_atoms_;
    std::vector<std::pair<int, int>> states_;
};

// Collective operators on the symmetric subspace (real matrices).
struct AtomicOperators {
    Eigen::MatrixXd A;        // (1/sqrt N) sum_j |b><a|_j
    Eigen::MatrixXd C;        // (1/sqrt N) sum_j |b><c|_j
    Eigen::MatrixXd t_plus;   // sum_j |a><c|_j
    Eigen::MatrixXd t_minus;  // sum_j |c><a|_j
    Eigen::MatrixXd t_z;      // sum_j (|a><a| - |c><c|)_j
};

AtomicOperators atomic_operators(int n_atoms);

// Operators on photon_a (x) photon_b (x) atoms, with photon Fock cutoffs.
struct DickeOperators {
    int cutoff_a = 0;
    int cutoff_b = 0;
    Eigen::MatrixXd a, b, A, C, t_plus, t_minus, t_z;
};

// Throws InvalidArgument if n_atoms < 1 or a cutoff < 1.
DickeOperators dicke_operators(int n_atoms, int cutoff_a, int cutoff_b);

// Full 3^N product-space construction for N <= 3, projected onto the
// symmetric subspace through explicit symmetrized basis vectors.
AtomicOperators tensor_product_operators(int n_atoms);

class DickeState {
public:
    DickeState(int n_atoms, int cutoff_a, int cutoff_b);

    // |p_a, p_b>_photons (x) |n_a, n_c>_atoms.
    static DickeState basis(int n_atoms, int cutoff_a, int cutoff_b, int p_a, int p_b, int n_a = 0,
                            int n_c = 0);

    int atoms() const noexcept { return atoms_.atoms(); }
    int cutoff_a() const noexcept { return cutoff_a_; }
    int cutoff_b() const noexcept { return cutoff_b_; }
    const AtomicBasis& atomic_basis() const noexcept { return atoms_; }

    std::size_t flat_index(int p_a, int p_b, int n_a, int n_c) const;
    cplx amplitude(int p_a, int p_b, int n_a, int n_c) const;
    void set_amplitude(int p_a, int p_b, int n_a, int n_c, cplx value);
    Eigen::VectorXcd& data() noexcept { return amps_; }
    const Eigen::VectorXcd& data() const noexcept { return amps_; }

    double norm() const { return amps_.norm(); }
    double mean_excitation() const;
    // Reduced photon density, basis index p_a * dim + p_b for p_a, p_b < dim.
    Eigen::MatrixXcd photon_density(int dim) const;

private:
    AtomicBasis atoms_;
    int cutoff_a_;
    int cutoff_b_;
    Eigen::VectorXcd amps_;
};

// H = g_N (a A^dag + b C^dag) + Omega e^{i phi} T^+ + h.c. on the finite-N
// symmetric subspace, exponentiated sector by sector for sectors 0..max_sector.
class FiniteNPropagator {
public:
    // Throws CutoffOverflow if a photon cutoff cannot hold max_sector photons.
    FiniteNPropagator(const CouplingConfig& cfg, int n_atoms, int cutoff_a, int cutoff_b, int max_sector);

    int max_sector() const noexcept { return static_cast<int>(blocks_.size()) - 1; }
    // Throws CutoffOverflow if the state populates a sector above max_sector.
    DickeState propagate(const DickeState& initial, double t) const;

private:
    struct Block {
        std::vector<std::size_t> members;  // flat indices into DickeState::data()
        Eigen::VectorXd energies;
        Eigen::MatrixXcd vectors;
    };
    int n_atoms_;
    int cutoff_a_;
    int cutoff_b_;
    std::vector<Block> blocks_;
};

DickeState exact_finite_N_propagate(const DickeState& initial, const CouplingConfig& cfg, double t);

// Reduced (a, b) photon density of a bosonized state, same layout as
// DickeState::photon_density.
Eigen::MatrixXcd photon_density(const FockState& s, int dim);

double trace_distance(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);

struct BosonizationEntry {
    int atoms = 0;
    double max_trace_distance = 0.0;
    double t_at_max = 0.0;
};

struct BosonizationReport {
    int sector = 0;
    Occupation initial{};  // photons (ceil(s/2), floor(s/2)), atoms in the ground state
    std::vector<BosonizationEntry> entries;
    // entries[i] / entries[i + 1]; NaN when both errors vanish.
    std::vector<double> ratios;
};

// Max over t_grid of the photon trace distance between finite-N and bosonized
// dynamics, for each N in atom_counts. Throws InvalidArgument unless
// 4 s <= N for every N.
BosonizationReport bosonization_error(const std::vector<int>& atom_counts, int sector, const CouplingConfig& cfg,
                                      const std::vector<double>& t_grid, int jobs = 1);

}  // namespace cyclic::oracle
