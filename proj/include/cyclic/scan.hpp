// scan.hpp - time-grid kernels.
//
// Each kernel evaluates an independent quantity per grid point and writes it
// at the point's index. jobs == 1 runs the plain serial loop, which is the
// reference the OpenMP path (jobs > 1, or 0 for the runtime default) must
// reproduce bit for bit.

#pragma once

#include "cyclic/dicke.hpp"
#include "cyclic/fock.hpp"
#include "cyclic/oracle.hpp"
#include "cyclic/polariton.hpp"

#include <vector>

namespace cyclic::scan {

// Entanglement entropy (bits) of `keep` for evolve_fock(source, m, n, t).
std::vector<double> entropies(const EvolutionSource& source, int m, int n, const std::vector<double>& t_grid,
                              ModeSet keep, int jobs = 1);

// |<target | evolve_fock(source, m, n, t)>|.
std::vector<double> fidelities(const EvolutionSource& source, int m, int n, const FockState& target,
                               const std::vector<double>& t_grid, int jobs = 1);

// 1 - |<closed form | sector-exact>| for evolve_fock(cfg, m, n, t).
std::vector<double> oracle_defects(const CouplingConfig& cfg, int m, int n, const std::vector<double>& t_grid,
                                   int jobs = 1);

// Trace distance between the reduced photon states of the finite-N and the
// bosonized evolutions, both over photon numbers < dim.
std::vector<double> photon_trace_distances(const oracle::FiniteNPropagator& finite,
                                           const oracle::DickeState& finite_initial,
                                           const oracle::BosonicPropagator& bosonic,
                                           const FockState& bosonic_initial, int dim,
                                           const std::vector<double>& t_grid, int jobs = 1);

}  // namespace cyclic::scan
