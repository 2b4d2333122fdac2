#include "cyclic/scan.hpp"

#include "cyclic/dynamics.hpp"
#include "cyclic/errors.hpp"

#include <omp.h>

#include <exception>

namespace cyclic::scan {

namespace {

template <class Fn>
std::vector<double> tabulate(const std::vector<double>& t_grid, int jobs, Fn&& point) {
    if (jobs < 0) throw InvalidArgument("jobs must be >= 0");
    std::vector<double> out(t_grid.size());
    const auto n = static_cast<long>(t_grid.size());
    if (jobs == 1) {
        for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = point(t_grid[static_cast<std::size_t>(i)]);
        return out;
    }

    std::exception_ptr failure;
    const int threads = jobs == 0 ? omp_get_max_threads() : jobs;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = point(t_grid[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(cyclic_scan_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace

std::vector<double> entropies(const EvolutionSource& source, int m, int n, const std::vector<double>& t_grid,
                              ModeSet keep, int jobs) {
    return tabulate(t_grid, jobs, [&](double t) { return entanglement_entropy(evolve_fock(source, m, n, t), keep); });
}

std::vector<double> fidelities(const EvolutionSource& source, int m, int n, const FockState& target,
                               const std::vector<double>& t_grid, int jobs) {
    return tabulate(t_grid, jobs, [&](double t) { return fidelity(target, evolve_fock(source, m, n, t)); });
}

std::vector<double> oracle_defects(const CouplingConfig& cfg, int m, int n, const std::vector<double>& t_grid,
                                   int jobs) {
    const oracle::SectorPropagator exact(cfg, m + n);
    const FockState initial = FockState::basis({m, n, 0, 0}, Cutoffs{m + n + 1, m + n + 1, m + n + 1, m + n + 1});
    const Eigen::VectorXcd v0 = exact.basis().extract(initial);
    return tabulate(t_grid, jobs, [&](double t) {
        const FockState closed = evolve_fock(cfg, m, n, t);
        const Eigen::VectorXcd reference = exact.propagate(v0, t);
        const Eigen::VectorXcd candidate = exact.basis().extract(closed);
        return 1.0 - std::abs(reference.dot(candidate));
    });
}

std::vector<double> photon_trace_distances(const oracle::FiniteNPropagator& finite,
                                           const oracle::DickeState& finite_initial,
                                           const oracle::BosonicPropagator& bosonic,
                                           const FockState& bosonic_initial, int dim,
                                           const std::vector<double>& t_grid, int jobs) {
    return tabulate(t_grid, jobs, [&](double t) {
        const Eigen::MatrixXcd rho_finite = finite.propagate(finite_initial, t).photon_density(dim);
        const Eigen::MatrixXcd rho_boson = oracle::photon_density(bosonic.propagate(bosonic_initial, t), dim);
        return oracle::trace_distance(rho_finite, rho_boson);
    });
}

}  // namespace cyclic::scan
