// dynamics.hpp - closed-form time evolution of the reduced model.
//
// Every initial state here is a polynomial in creation operators acting on
// the vacuum, so propagation reduces to substituting x^dag -> sum_y F(y, x) y^dag.

#pragma once

#include "cyclic/fock.hpp"
#include "cyclic/polariton.hpp"

#include <optional>
#include <vector>

namespace cyclic {

// (1/sqrt(m! n!)) [sum_y F(y,a) y^dag]^m [sum_y F(y,b) y^dag]^n |0>, cutoffs m+n+1.
FockState evolve_fock(const Mat4& F, int m, int n);
FockState evolve_fock(const EvolutionSource& source, int m, int n, double t);

// Linear-optics propagation of an arbitrary truncated state: each basis
// component is rebuilt from transformed creation operators. The output
// cutoffs are (largest populated sector + 1) in every mode.
FockState propagate_state(const FockState& initial, const Mat4& F);

struct PhotonOnlyCheck {
    double residual = 0.0;  // max |F(A,a)|, |F(C,a)|, |F(A,b)|, |F(C,b)|
    bool satisfied = false;  // residual < 1e-10
};

PhotonOnlyCheck photon_only_condition(const Mat4& F);
PhotonOnlyCheck photon_only_condition(const EvolutionSource& source, double t);

struct ArithmeticSequence {
    double first = 0.0;
    double period = 0.0;

    double at(int k) const noexcept { return first + k * period; }
};

// Times at which the photon pair returns (revival) or has its occupations
// exchanged between a and b (swap), for Omega / sqrt(Omega^2 + 4 g_N^2) = p/q.
struct ResonanceTimes {
    int p = 0;
    int q = 1;
    double base_period = 0.0;  // T0 = 2 pi / sqrt(Omega^2 + 4 g_N^2)
    ArithmeticSequence revival;
    std::optional<ArithmeticSequence> swap;  // present iff q is even
};

// Throws InvalidArgument unless q >= 1, |p| < q and gcd(|p|, q) = 1;
// DegenerateModel if g_N <= 0.
ResonanceTimes resonance_times(int p, int q, double g_N);
// Detects p/q with q <= 64 to within 1e-12, else throws IrrationalRatio.
ResonanceTimes resonance_times(const CouplingConfig& cfg);

struct EntanglementPoint {
    double t = 0.0;
    double entropy_bits = 0.0;
};

// Entropy of mode a for evolve_fock(source, m, n, t) on every grid time.
// Throws InvalidArgument if the grid is not finite and ascending.
std::vector<EntanglementPoint> entanglement_scan(const EvolutionSource& source, int m, int n,
                                                 const std::vector<double>& t_grid, int jobs = 1);

struct CoherentAmplitudes {
    cplx alpha{}, beta{}, zeta{}, eta{};  // modes a, b, A, C

    Vec4 vector() const { return Vec4(alpha, beta, zeta, eta); }
    static CoherentAmplitudes from_vector(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }
    cplx operator[](Mode m) const { return vector()(index(m)); }
};

CoherentAmplitudes evolve_coherent(const CoherentAmplitudes& amps, const Mat4& F);
CoherentAmplitudes evolve_coherent(const CoherentAmplitudes& amps, const EvolutionSource& source, double t);

// exp(-|u|^2/2) u^n / sqrt(n!) for n < cutoff.
std::vector<cplx> coherent_coefficients(cplx u, int cutoff);

// Product coherent state over the four modes, truncated (not renormalized).
// Modes with |amplitude| <= 1e-13 get cutoff 1.
FockState coherent_fock_state(const CoherentAmplitudes& amps, int cutoff);

// Smallest c with sum_{n >= c} e^{-|u|^2} |u|^{2n} / n! < 1e-12.
int poisson_cutoff(double modulus);
// poisson_cutoff doubled, the default truncation for two-branch states.
int cat_cutoff(cplx alpha);

enum class Parity { even, odd };

struct CatState {
    Mode mode = Mode::a;
    cplx alpha{};
    Parity parity = Parity::even;

    // Throws InvalidArgument for an odd cat at alpha = 0 or non-finite alpha.
    static CatState make(Mode mode, cplx alpha, Parity parity);
    // (2 +- 2 exp(-2|alpha|^2))^{-1/2}
    double normalization() const;
};

// weight_first |first> + weight_second |second> with |first>, |second> product coherent
// states over (a, b, A, C).
struct TwoBranchState {
    cplx weight_first{};
    cplx weight_second{};
    CoherentAmplitudes first;
    CoherentAmplitudes second;

    double norm() const;
    // Truncated and renormalized Fock representation.
    FockState materialize(int cutoff) const;
};

TwoBranchState cat_branches(const CatState& cat);

// Requires cat.mode == a (InvalidArgument) and a photon-only time
// (NotPhotonOnly when the residual exceeds 1e-8).
TwoBranchState evolve_cat(const CatState& cat, const EvolutionSource& source, double t);

// <u|w> for four-mode product coherent states.
cplx coherent_overlap(const CoherentAmplitudes& u, const CoherentAmplitudes& w);

// Exact entropy (bits) of the kept modes from the 2x2 branch Gram matrices.
double two_branch_entropy(const TwoBranchState& state, ModeSet keep);

}  // namespace cyclic
