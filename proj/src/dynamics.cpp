#include "cyclic/dynamics.hpp"

#include "cyclic/errors.hpp"
#include "cyclic/scan.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cyclic {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

void require_counts(int m, int n) {
    if (m < 0 || n < 0) throw InvalidArgument("photon numbers must be non-negative");
}

}  // namespace

FockState evolve_fock(const Mat4& F, int m, int n) {
    require_counts(m, n);
    const CreationPolynomial pa = CreationPolynomial::linear(F.col(index(Mode::a)));
    const CreationPolynomial pb = CreationPolynomial::linear(F.col(index(Mode::b)));
    const CreationPolynomial p = pa.pow(m) * pb.pow(n) * (1.0 / std::sqrt(factorial(m) * factorial(n)));
    const int c = m + n + 1;
    return apply_creation_polynomial(p, FockState::vacuum({c, c, c, c}));
}

FockState evolve_fock(const EvolutionSource& source, int m, int n, double t) {
    return evolve_fock(propagate(source, t).F, m, n);
}

FockState propagate_state(const FockState& initial, const Mat4& F) {
    int top = 0;
    for (std::size_t k = 0; k < initial.size(); ++k) {
        if (initial.data()[k] == cplx{}) continue;
        const Occupation occ = initial.occupation(k);
        top = std::max(top, occ[0] + occ[1] + occ[2] + occ[3]);
    }

    std::array<std::vector<CreationPolynomial>, 4> powers;
    for (Mode x : all_modes) {
        powers[index(x)].push_back(CreationPolynomial::constant(1.0));
    }
    const auto power = [&](Mode x, int e) -> const CreationPolynomial& {
        auto& cache = powers[index(x)];
        while (static_cast<int>(cache.size()) <= e) {
            cache.push_back(cache.back() * CreationPolynomial::linear(F.col(index(x))));
        }
        return cache[static_cast<std::size_t>(e)];
    };

    CreationPolynomial total;
    for (std::size_t k = 0; k < initial.size(); ++k) {
        const cplx amp = initial.data()[k];
        if (amp == cplx{}) continue;
        const Occupation occ = initial.occupation(k);
        double norm = 1.0;
        for (int e : occ) norm *= factorial(e);
        const CreationPolynomial term = power(Mode::a, occ[0]) * power(Mode::b, occ[1]) *
                                        power(Mode::A, occ[2]) * power(Mode::C, occ[3]) *
                                        (amp / std::sqrt(norm));
        total = total + term;
    }
    FockState out = apply_creation_polynomial(total, FockState::vacuum({top + 1, top + 1, top + 1, top + 1}));
    out.set_sector(initial.sector());
    return out;
}

PhotonOnlyCheck photon_only_condition(const Mat4& F) {
    const int a = index(Mode::a), b = index(Mode::b), A = index(Mode::A), C = index(Mode::C);
    const double residual = std::max({std::abs(F(A, a)), std::abs(F(C, a)), std::abs(F(A, b)), std::abs(F(C, b))});
    return {residual, residual < 1e-10};
}

PhotonOnlyCheck photon_only_condition(const EvolutionSource& source, double t) {
    return photon_only_condition(propagate(source, t).F);
}

ResonanceTimes resonance_times(int p, int q, double g_N) {
    if (!(g_N > 0.0) || !std::isfinite(g_N)) throw DegenerateModel("resonance times need g_N > 0");
    if (q < 1 || std::abs(p) >= q || std::gcd(std::abs(p), q) != 1) {
        throw InvalidArgument("need q >= 1, |p| < q and gcd(|p|, q) = 1; got p=" + std::to_string(p) +
                              ", q=" + std::to_string(q));
    }
    const double qd = q, pd = p;
    const double r = 2.0 * g_N * qd / std::sqrt(qd * qd - pd * pd);
    ResonanceTimes out;
    out.p = p;
    out.q = q;
    out.base_period = 2.0 * pi / r;
    out.revival = {qd * out.base_period, qd * out.base_period};
    if (q % 2 == 0) out.swap = ArithmeticSequence{0.5 * qd * out.base_period, qd * out.base_period};
    return out;
}

ResonanceTimes resonance_times(const CouplingConfig& cfg) {
    if (!(cfg.g_N > 0.0)) throw DegenerateModel("resonance times need g_N > 0");
    const double r = std::hypot(cfg.omega, 2.0 * cfg.g_N);
    const double x = cfg.omega / r;
    for (int q = 1; q <= 64; ++q) {
        const double p = std::round(x * q);
        if (std::abs(x - p / q) > 1e-12) continue;
        const int num = static_cast<int>(p);
        if (std::gcd(std::abs(num), q) != 1) continue;
        ResonanceTimes out = resonance_times(num, q, cfg.g_N);
        // Use the configured r rather than the one implied by p/q.
        const double scale = (2.0 * pi / r) / out.base_period;
        out.base_period *= scale;
        out.revival.first *= scale;
        out.revival.period *= scale;
        if (out.swap) {
            out.swap->first *= scale;
            out.swap->period *= scale;
        }
        return out;
    }
    throw IrrationalRatio("Omega / sqrt(Omega^2 + 4 g_N^2) = " + std::to_string(x) +
                          " is not p/q with q <= 64 to within 1e-12");
}

std::vector<EntanglementPoint> entanglement_scan(const EvolutionSource& source, int m, int n,
                                                 const std::vector<double>& t_grid, int jobs) {
    require_counts(m, n);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!std::isfinite(t_grid[i]) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
            throw InvalidArgument("time grid must be finite and strictly ascending");
        }
    }
    const std::vector<double> e = scan::entropies(source, m, n, t_grid, ModeSet{Mode::a}, jobs);
    std::vector<EntanglementPoint> out(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) out[i] = {t_grid[i], e[i]};
    return out;
}

CoherentAmplitudes evolve_coherent(const CoherentAmplitudes& amps, const Mat4& F) {
    return CoherentAmplitudes::from_vector(F * amps.vector());
}

CoherentAmplitudes evolve_coherent(const CoherentAmplitudes& amps, const EvolutionSource& source, double t) {
    return evolve_coherent(amps, propagate(source, t).F);
}

std::vector<cplx> coherent_coefficients(cplx u, int cutoff) {
    if (cutoff < 1) throw BadCutoff("cutoff must be >= 1");
    std::vector<cplx> c(static_cast<std::size_t>(cutoff));
    c[0] = std::exp(-0.5 * std::norm(u));
    for (std::size_t k = 1; k < c.size(); ++k) c[k] = c[k - 1] * u / std::sqrt(static_cast<double>(k));
    return c;
}

namespace {

FockState coherent_product(const CoherentAmplitudes& amps, const Cutoffs& cutoffs) {
    std::array<std::vector<cplx>, 4> coeffs;
    for (Mode x : all_modes) coeffs[index(x)] = coherent_coefficients(amps[x], cutoffs[index(x)]);
    FockState s(cutoffs);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Occupation occ = s.occupation(k);
        s.data()[k] = coeffs[0][occ[0]] * coeffs[1][occ[1]] * coeffs[2][occ[2]] * coeffs[3][occ[3]];
    }
    return s;
}

// Modes whose amplitude is below 1e-13 in every branch keep only n = 0; the
// dropped weight is O(|amplitude|^2).
Cutoffs active_cutoffs(int cutoff, std::initializer_list<CoherentAmplitudes> branches) {
    Cutoffs c{1, 1, 1, 1};
    for (const CoherentAmplitudes& b : branches) {
        for (Mode x : all_modes) {
            if (std::abs(b[x]) > 1e-13) c[index(x)] = cutoff;
        }
    }
    return c;
}

}  // namespace

FockState coherent_fock_state(const CoherentAmplitudes& amps, int cutoff) {
    return coherent_product(amps, active_cutoffs(cutoff, {amps}));
}

int poisson_cutoff(double modulus) {
    const double lambda = modulus * modulus;
    if (lambda == 0.0) return 1;
    const auto term = [&](int n) { return std::exp(-lambda + n * std::log(lambda) - std::lgamma(n + 1.0)); };
    for (int c = 1;; ++c) {
        double tail = 0.0;
        for (int n = c;; ++n) {
            const double p = term(n);
            tail += p;
            if (n > lambda && p < 1e-18 * std::max(tail, 1e-300)) break;
        }
        if (tail < 1e-12) return c;
    }
}

int cat_cutoff(cplx alpha) { return 2 * poisson_cutoff(std::abs(alpha)); }

CatState CatState::make(Mode mode, cplx alpha, Parity parity) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw InvalidArgument("cat amplitude must be finite");
    }
    if (parity == Parity::odd && alpha == cplx{}) {
        throw InvalidArgument("odd cat state at alpha = 0 is the zero vector");
    }
    return {mode, alpha, parity};
}

double CatState::normalization() const {
    const double overlap = std::exp(-2.0 * std::norm(alpha));
    return 1.0 / std::sqrt(parity == Parity::even ? 2.0 + 2.0 * overlap : 2.0 - 2.0 * overlap);
}

cplx coherent_overlap(const CoherentAmplitudes& u, const CoherentAmplitudes& w) {
    cplx exponent{};
    for (Mode x : all_modes) {
        exponent += -0.5 * std::norm(u[x]) - 0.5 * std::norm(w[x]) + std::conj(u[x]) * w[x];
    }
    return std::exp(exponent);
}

double TwoBranchState::norm() const {
    const cplx cross = std::conj(weight_first) * weight_second * coherent_overlap(first, second);
    return std::sqrt(std::norm(weight_first) + std::norm(weight_second) + 2.0 * cross.real());
}

FockState TwoBranchState::materialize(int cutoff) const {
    const Cutoffs c = active_cutoffs(cutoff, {first, second});
    FockState s = coherent_product(first, c);
    s *= weight_first;
    FockState other = coherent_product(second, c);
    other *= weight_second;
    s += other;
    s.normalize();
    return s;
}

TwoBranchState cat_branches(const CatState& cat) {
    Vec4 v = Vec4::Zero();
    v(index(cat.mode)) = cat.alpha;
    const double n = cat.normalization();
    const double sign = cat.parity == Parity::even ? 1.0 : -1.0;
    return {n, sign * n, CoherentAmplitudes::from_vector(v), CoherentAmplitudes::from_vector(-v)};
}

TwoBranchState evolve_cat(const CatState& cat, const EvolutionSource& source, double t) {
    if (cat.mode != Mode::a) throw InvalidArgument("cat evolution expects the cat on mode a");
    const Mat4 F = propagate(source, t).F;
    const PhotonOnlyCheck check = photon_only_condition(F);
    if (check.residual > 1e-8) {
        throw NotPhotonOnly("t = " + std::to_string(t) + " has photon-atom residual " +
                            std::to_string(check.residual));
    }
    TwoBranchState s = cat_branches(cat);
    s.first = evolve_coherent(s.first, F);
    s.second = evolve_coherent(s.second, F);
    return s;
}

double two_branch_entropy(const TwoBranchState& state, ModeSet keep) {
    const auto restrict_to = [](const CoherentAmplitudes& c, ModeSet modes) {
        Vec4 v = c.vector();
        for (Mode x : all_modes) {
            if (!modes.contains(x)) v(index(x)) = 0.0;
        }
        return CoherentAmplitudes::from_vector(v);
    };
    const std::array<CoherentAmplitudes, 2> u{restrict_to(state.first, keep), restrict_to(state.second, keep)};
    const std::array<CoherentAmplitudes, 2> v{restrict_to(state.first, keep.complement()),
                                              restrict_to(state.second, keep.complement())};
    const std::array<cplx, 2> w{state.weight_first, state.weight_second};

    Eigen::Matrix2cd gram_u, x;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            gram_u(i, j) = coherent_overlap(u[i], u[j]);
            x(i, j) = w[i] * std::conj(w[j]) * coherent_overlap(v[j], v[i]);
        }
    }
    const double n2 = state.norm() * state.norm();
    if (!(n2 > 0.0)) throw InvalidArgument("two-branch state has zero norm");
    x /= n2;

    // rho = sum_ij x_ij |u_i><u_j| has the spectrum of S x S, S = gram_u^{1/2}.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> g(gram_u);
    const Eigen::Vector2d root = g.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix2cd s = g.eigenvectors() * root.cast<cplx>().asDiagonal() * g.eigenvectors().adjoint();
    const Eigen::Matrix2cd k = s * x * s;
    return von_neumann_entropy_bits(0.5 * (k + k.adjoint()));
}

}  // namespace cyclic
