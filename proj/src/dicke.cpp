#include "cyclic/dicke.hpp"

#include "cyclic/errors.hpp"
#include "cyclic/scan.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace cyclic::oracle {

AtomicBasis::AtomicBasis(int n_atoms) : n_atoms_(n_atoms) {
    if (n_atoms < 1) throw InvalidArgument("atom number must be >= 1");
    for (int na = 0; na <= n_atoms; ++na) {
        for (int nc = 0; nc <= n_atoms - na; ++nc) states_.emplace_back(na, nc);
    }
}

std::size_t AtomicBasis::index_of(int n_a, int n_c) const {
    if (n_a < 0 || n_c < 0 || n_a + n_c > n_atoms_) {
        throw InvalidArgument("atomic occupation outside the symmetric subspace");
    }
    // Rows with first label < n_a contribute (N - k + 1) states each.
    std::size_t offset = 0;
    for (int k = 0; k < n_a; ++k) offset += static_cast<std::size_t>(n_atoms_ - k + 1);
    return offset + static_cast<std::size_t>(n_c);
}

AtomicOperators atomic_operators(int n_atoms) {
    const AtomicBasis basis(n_atoms);
    const auto d = static_cast<Eigen::Index>(basis.dim());
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_atoms));
    AtomicOperators ops{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d),
                        Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d)};
    for (std::size_t j = 0; j < basis.dim(); ++j) {
        const auto [na, nc] = basis.state(j);
        const int nb = n_atoms - na - nc;
        const auto col = static_cast<Eigen::Index>(j);
        if (na > 0) {
            const auto row = static_cast<Eigen::Index>(basis.index_of(na - 1, nc));
            ops.A(row, col) = std::sqrt(static_cast<double>(na) * (nb + 1)) * inv_sqrt_n;
        }
        if (nc > 0) {
            const auto row = static_cast<Eigen::Index>(basis.index_of(na, nc - 1));
            ops.C(row, col) = std::sqrt(static_cast<double>(nc) * (nb + 1)) * inv_sqrt_n;
        }
        if (na > 0) {
            const auto row = static_cast<Eigen::Index>(basis.index_of(na - 1, nc + 1));
            ops.t_minus(row, col) = std::sqrt(static_cast<double>(na) * (nc + 1));
        }
        ops.t_z(col, col) = na - nc;
    }
    ops.t_plus = ops.t_minus.transpose();
    return ops;
}

DickeOperators dicke_operators(int n_atoms, int cutoff_a, int cutoff_b) {
    if (cutoff_a < 1 || cutoff_b < 1) throw InvalidArgument("photon cutoffs must be >= 1");
    const AtomicOperators atoms = atomic_operators(n_atoms);
    const auto ladder = [](int cutoff) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(cutoff, cutoff);
        for (int k = 1; k < cutoff; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
        return m;
    };
    const Eigen::MatrixXd id_a = Eigen::MatrixXd::Identity(cutoff_a, cutoff_a);
    const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(cutoff_b, cutoff_b);
    const auto d = atoms.A.rows();
    const Eigen::MatrixXd id_at = Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd id_ph = Eigen::kroneckerProduct(id_a, id_b).eval();
    const auto on_atoms = [&](const Eigen::MatrixXd& op) -> Eigen::MatrixXd {
        return Eigen::kroneckerProduct(id_ph, op).eval();
    };

    DickeOperators out;
    out.cutoff_a = cutoff_a;
    out.cutoff_b = cutoff_b;
    out.a = Eigen::kroneckerProduct(Eigen::kroneckerProduct(ladder(cutoff_a), id_b).eval(), id_at).eval();
    out.b = Eigen::kroneckerProduct(Eigen::kroneckerProduct(id_a, ladder(cutoff_b)).eval(), id_at).eval();
    out.A = on_atoms(atoms.A);
    out.C = on_atoms(atoms.C);
    out.t_plus = on_atoms(atoms.t_plus);
    out.t_minus = on_atoms(atoms.t_minus);
    out.t_z = on_atoms(atoms.t_z);
    return out;
}

AtomicOperators tensor_product_operators(int n_atoms) {
    if (n_atoms < 1 || n_atoms > 3) throw InvalidArgument("tensor-product construction supports 1 <= N <= 3");
    // Single-atom levels: 0 = b (ground), 1 = a, 2 = c.
    constexpr int b = 0, a = 1, c = 2;
    int full = 1;
    for (int k = 0; k < n_atoms; ++k) full *= 3;

    const auto digit = [](int code, int site) {
        for (int k = 0; k < site; ++k) code /= 3;
        return code % 3;
    };
    const auto with_digit = [](int code, int site, int value) {
        int scale = 1;
        for (int k = 0; k < site; ++k) scale *= 3;
        return code + (value - (code / scale) % 3) * scale;
    };
    // sum_j |to><from|_j on the product space
    const auto collective = [&](int to, int from) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(full, full);
        for (int code = 0; code < full; ++code) {
            for (int site = 0; site < n_atoms; ++site) {
                if (digit(code, site) == from) m(with_digit(code, site, to), code) += 1.0;
            }
        }
        return m;
    };

    // Symmetrized basis vectors, columns in AtomicBasis order.
    const AtomicBasis basis(n_atoms);
    Eigen::MatrixXd iso = Eigen::MatrixXd::Zero(full, static_cast<Eigen::Index>(basis.dim()));
    for (int code = 0; code < full; ++code) {
        int na = 0, nc = 0;
        for (int site = 0; site < n_atoms; ++site) {
            na += digit(code, site) == a ? 1 : 0;
            nc += digit(code, site) == c ? 1 : 0;
        }
        iso(code, static_cast<Eigen::Index>(basis.index_of(na, nc))) = 1.0;
    }
    for (Eigen::Index k = 0; k < iso.cols(); ++k) iso.col(k).normalize();

    const auto project = [&](const Eigen::MatrixXd& op) -> Eigen::MatrixXd {
        return iso.transpose() * op * iso;
    };
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_atoms));
    Eigen::MatrixXd t_z = collective(a, a) - collective(c, c);
    return {project(collective(b, a)) * inv_sqrt_n, project(collective(b, c)) * inv_sqrt_n,
            project(collective(a, c)), project(collective(c, a)), project(t_z)};
}

DickeState::DickeState(int n_atoms, int cutoff_a, int cutoff_b)
    : atoms_(n_atoms), cutoff_a_(cutoff_a), cutoff_b_(cutoff_b) {
    if (cutoff_a < 1 || cutoff_b < 1) throw BadCutoff("photon cutoffs must be >= 1");
    amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoff_a) * cutoff_b *
                                   static_cast<Eigen::Index>(atoms_.dim()));
}

DickeState DickeState::basis(int n_atoms, int cutoff_a, int cutoff_b, int p_a, int p_b, int n_a, int n_c) {
    DickeState s(n_atoms, cutoff_a, cutoff_b);
    s.set_amplitude(p_a, p_b, n_a, n_c, 1.0);
    return s;
}

std::size_t DickeState::flat_index(int p_a, int p_b, int n_a, int n_c) const {
    if (p_a < 0 || p_a >= cutoff_a_ || p_b < 0 || p_b >= cutoff_b_) {
        throw CutoffOverflow("photon occupation outside cutoffs");
    }
    const std::size_t ph = static_cast<std::size_t>(p_a) * static_cast<std::size_t>(cutoff_b_) +
                           static_cast<std::size_t>(p_b);
    return ph * atoms_.dim() + atoms_.index_of(n_a, n_c);
}

cplx DickeState::amplitude(int p_a, int p_b, int n_a, int n_c) const {
    return amps_(static_cast<Eigen::Index>(flat_index(p_a, p_b, n_a, n_c)));
}

void DickeState::set_amplitude(int p_a, int p_b, int n_a, int n_c, cplx value) {
    amps_(static_cast<Eigen::Index>(flat_index(p_a, p_b, n_a, n_c))) = value;
}

double DickeState::mean_excitation() const {
    double total = 0.0;
    for (int pa = 0; pa < cutoff_a_; ++pa) {
        for (int pb = 0; pb < cutoff_b_; ++pb) {
            for (std::size_t k = 0; k < atoms_.dim(); ++k) {
                const auto [na, nc] = atoms_.state(k);
                total += std::norm(amplitude(pa, pb, na, nc)) * (pa + pb + na + nc);
            }
        }
    }
    return total;
}

Eigen::MatrixXcd DickeState::photon_density(int dim) const {
    const auto d = static_cast<Eigen::Index>(dim) * dim;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    const int la = std::min(dim, cutoff_a_);
    const int lb = std::min(dim, cutoff_b_);
    const auto at = static_cast<Eigen::Index>(atoms_.dim());
    for (int pa = 0; pa < la; ++pa) {
        for (int pb = 0; pb < lb; ++pb) {
            const auto ri = static_cast<Eigen::Index>(pa) * dim + pb;
            const auto base_i = static_cast<Eigen::Index>(flat_index(pa, pb, 0, 0));
            for (int qa = 0; qa < la; ++qa) {
                for (int qb = 0; qb < lb; ++qb) {
                    const auto rj = static_cast<Eigen::Index>(qa) * dim + qb;
                    const auto base_j = static_cast<Eigen::Index>(flat_index(qa, qb, 0, 0));
                    rho(ri, rj) = amps_.segment(base_j, at).dot(amps_.segment(base_i, at));
                }
            }
        }
    }
    return rho;
}

FiniteNPropagator::FiniteNPropagator(const CouplingConfig& cfg, int n_atoms, int cutoff_a, int cutoff_b,
                                     int max_sector)
    : n_atoms_(n_atoms), cutoff_a_(cutoff_a), cutoff_b_(cutoff_b) {
    if (max_sector < 0) throw InvalidArgument("max_sector must be non-negative");
    if (max_sector >= cutoff_a || max_sector >= cutoff_b) {
        throw CutoffOverflow("photon cutoffs (" + std::to_string(cutoff_a) + ", " + std::to_string(cutoff_b) +
                             ") cannot hold sector " + std::to_string(max_sector));
    }
    const DickeState layout(n_atoms, cutoff_a, cutoff_b);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_atoms));
    const cplx drive = cfg.omega * std::polar(1.0, cfg.phi);

    for (int s = 0; s <= max_sector; ++s) {
        Block block;
        std::map<std::size_t, Eigen::Index> local;
        for (int pa = 0; pa <= s; ++pa) {
            for (int pb = 0; pb <= s - pa; ++pb) {
                for (int na = 0; na <= std::min(n_atoms, s - pa - pb); ++na) {
                    const int nc = s - pa - pb - na;
                    if (na + nc > n_atoms) continue;
                    const std::size_t flat = layout.flat_index(pa, pb, na, nc);
                    local[flat] = static_cast<Eigen::Index>(block.members.size());
                    block.members.push_back(flat);
                }
            }
        }
        const auto dim = static_cast<Eigen::Index>(block.members.size());
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
        const auto add = [&](std::size_t from, std::size_t to, cplx value) {
            const Eigen::Index j = local.at(from), i = local.at(to);
            h(i, j) += value;
            h(j, i) += std::conj(value);
        };
        for (int pa = 0; pa <= s; ++pa) {
            for (int pb = 0; pb <= s - pa; ++pb) {
                for (int na = 0; na <= std::min(n_atoms, s - pa - pb); ++na) {
                    const int nc = s - pa - pb - na;
                    if (na + nc > n_atoms) continue;
                    const int nb = n_atoms - na - nc;
                    const std::size_t from = layout.flat_index(pa, pb, na, nc);
                    if (pa > 0 && nb > 0) {  // a A^dag
                        add(from, layout.flat_index(pa - 1, pb, na + 1, nc),
                            cfg.g_N * std::sqrt(static_cast<double>(pa) * (na + 1) * nb) * inv_sqrt_n);
                    }
                    if (pb > 0 && nb > 0) {  // b C^dag
                        add(from, layout.flat_index(pa, pb - 1, na, nc + 1),
                            cfg.g_N * std::sqrt(static_cast<double>(pb) * (nc + 1) * nb) * inv_sqrt_n);
                    }
                    if (nc > 0) {  // T^+ = sum |a><c|
                        add(from, layout.flat_index(pa, pb, na + 1, nc - 1),
                            drive * std::sqrt(static_cast<double>(na + 1) * nc));
                    }
                }
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        if (solver.info() != Eigen::Success) throw IntegratorFailure("finite-N eigendecomposition failed");
        block.energies = solver.eigenvalues();
        block.vectors = solver.eigenvectors();
        blocks_.push_back(std::move(block));
    }
}

DickeState FiniteNPropagator::propagate(const DickeState& initial, double t) const {
    if (initial.atoms() != n_atoms_ || initial.cutoff_a() != cutoff_a_ || initial.cutoff_b() != cutoff_b_) {
        throw InvalidArgument("state layout does not match the propagator");
    }
    DickeState out(n_atoms_, cutoff_a_, cutoff_b_);
    double covered = 0.0;
    for (const Block& block : blocks_) {
        const auto dim = static_cast<Eigen::Index>(block.members.size());
        Eigen::VectorXcd v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = initial.data()(static_cast<Eigen::Index>(block.members[i]));
        const double weight = v.squaredNorm();
        if (weight == 0.0) continue;
        covered += weight;
        Eigen::VectorXcd c = block.vectors.adjoint() * v;
        for (Eigen::Index i = 0; i < dim; ++i) c(i) *= std::polar(1.0, -block.energies(i) * t);
        v = block.vectors * c;
        for (Eigen::Index i = 0; i < dim; ++i) out.data()(static_cast<Eigen::Index>(block.members[i])) = v(i);
    }
    if (initial.data().squaredNorm() - covered > 1e-14) {
        throw CutoffOverflow("state populates sectors above " + std::to_string(max_sector()));
    }
    return out;
}

DickeState exact_finite_N_propagate(const DickeState& initial, const CouplingConfig& cfg, double t) {
    int top = 0;
    const AtomicBasis& atoms = initial.atomic_basis();
    for (int pa = 0; pa < initial.cutoff_a(); ++pa) {
        for (int pb = 0; pb < initial.cutoff_b(); ++pb) {
            for (std::size_t k = 0; k < atoms.dim(); ++k) {
                const auto [na, nc] = atoms.state(k);
                if (initial.amplitude(pa, pb, na, nc) != cplx{}) top = std::max(top, pa + pb + na + nc);
            }
        }
    }
    const FiniteNPropagator prop(cfg, initial.atoms(), initial.cutoff_a(), initial.cutoff_b(), top);
    return prop.propagate(initial, t);
}

Eigen::MatrixXcd photon_density(const FockState& s, int dim) {
    const auto d = static_cast<Eigen::Index>(dim) * dim;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    const Cutoffs& c = s.cutoffs();
    const int la = std::min(dim, c[0]);
    const int lb = std::min(dim, c[1]);
    // rho(pa pb, qa qb) = sum_{nA, nC} psi(pa, pb, nA, nC) conj(psi(qa, qb, nA, nC))
    for (int nA = 0; nA < c[2]; ++nA) {
        for (int nC = 0; nC < c[3]; ++nC) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
            for (int pa = 0; pa < la; ++pa) {
                for (int pb = 0; pb < lb; ++pb) v(static_cast<Eigen::Index>(pa) * dim + pb) = s.amplitude({pa, pb, nA, nC});
            }
            if (v.squaredNorm() == 0.0) continue;
            rho += v * v.adjoint();
        }
    }
    return rho;
}

double trace_distance(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw InvalidArgument("trace distance between matrices of different shape");
    }
    const Eigen::MatrixXcd diff = rho - sigma;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

BosonizationReport bosonization_error(const std::vector<int>& atom_counts, int sector, const CouplingConfig& cfg,
                                      const std::vector<double>& t_grid, int jobs) {
    if (sector < 0) throw InvalidArgument("excitation number must be non-negative");
    if (t_grid.empty()) throw InvalidArgument("time grid is empty");
    BosonizationReport report;
    report.sector = sector;
    report.initial = {(sector + 1) / 2, sector / 2, 0, 0};
    const int dim = sector + 1;

    const BosonicPropagator bosonic(cfg, sector);
    const FockState boson_initial = FockState::basis(report.initial, Cutoffs{dim, dim, dim, dim});

    for (int n_atoms : atom_counts) {
        if (4 * sector > n_atoms) {
            throw InvalidArgument("bosonization check needs s <= N/4; got s=" + std::to_string(sector) +
                                  ", N=" + std::to_string(n_atoms));
        }
        const FiniteNPropagator finite(cfg, n_atoms, dim, dim, sector);
        const DickeState finite_initial =
            DickeState::basis(n_atoms, dim, dim, report.initial[0], report.initial[1]);
        const std::vector<double> d =
            scan::photon_trace_distances(finite, finite_initial, bosonic, boson_initial, dim, t_grid, jobs);
        const auto worst = std::max_element(d.begin(), d.end());
        report.entries.push_back({n_atoms, *worst, t_grid[static_cast<std::size_t>(worst - d.begin())]});
    }
    for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
        const double num = report.entries[i].max_trace_distance;
        const double den = report.entries[i + 1].max_trace_distance;
        report.ratios.push_back(num == 0.0 && den == 0.0 ? std::numeric_limits<double>::quiet_NaN() : num / den);
    }
    return report;
}

}  // namespace cyclic::oracle
