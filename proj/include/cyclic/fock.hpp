// fock.hpp - truncated four-mode bosonic Fock space.
//
// Amplitudes are stored densely, row-major over (n_a, n_b, n_A, n_C) with
// 0 <= n_x < cutoff_x. States are values; every operation returns a new state.

#pragma once

#include "cyclic/types.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cyclic {

using Cutoffs = std::array<int, 4>;
using Occupation = std::array<int, 4>;

class FockState {
public:
    // Zero vector over the given cutoffs. Throws BadCutoff if any cutoff < 1.
    explicit FockState(Cutoffs cutoffs, std::optional<int> sector = std::nullopt);

    static FockState vacuum(Cutoffs cutoffs);
    // |n_a, n_b, n_A, n_C>; cutoffs default to n_x + 1.
    static FockState basis(Occupation occ, std::optional<Cutoffs> cutoffs = std::nullopt);

    const Cutoffs& cutoffs() const noexcept { return cutoffs_; }
    std::optional<int> sector() const noexcept { return sector_; }
    std::size_t size() const noexcept { return amps_.size(); }

    bool in_range(const Occupation& occ) const noexcept;
    std::size_t flat_index(const Occupation& occ) const;
    Occupation occupation(std::size_t flat) const;

    cplx amplitude(const Occupation& occ) const;
    void set_amplitude(const Occupation& occ, cplx value);
    std::vector<cplx>& data() noexcept { return amps_; }
    const std::vector<cplx>& data() const noexcept { return amps_; }

    // Re-derives sector metadata: set iff all support lies in one sector.
    void infer_sector(double threshold = 0.0);
    void set_sector(std::optional<int> s) { sector_ = s; }

    double norm() const;
    FockState& normalize();
    FockState& operator*=(cplx factor);
    FockState& operator+=(const FockState& other);

    // Same state embedded in larger cutoffs (each new cutoff >= old).
    FockState resized(Cutoffs cutoffs) const;

    FockState annihilate(Mode m) const;
    FockState create(Mode m) const;  // throws CutoffOverflow
    double mean_occupation(Mode m) const;
    cplx expect_annihilation(Mode m) const;

private:
    Cutoffs cutoffs_;
    std::optional<int> sector_;
    std::vector<cplx> amps_;
};

// <lhs|rhs>; cutoffs may differ (missing entries are zero).
cplx inner(const FockState& lhs, const FockState& rhs);

// |<lhs|rhs>|: phase-insensitive fidelity between pure states.
double fidelity(const FockState& lhs, const FockState& rhs);

// Sum of monomials c * prod_x (x^dag)^{p_x}.
struct Monomial {
    cplx coeff;
    Occupation powers;
};

class CreationPolynomial {
public:
    CreationPolynomial() = default;
    explicit CreationPolynomial(std::vector<Monomial> terms);

    static CreationPolynomial constant(cplx c);
    static CreationPolynomial creation(Mode m, cplx c = 1.0);
    // sum_x coeffs(x) x^dag
    static CreationPolynomial linear(const Vec4& coeffs);

    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    // Total degree if every monomial has the same degree.
    std::optional<int> homogeneous_degree() const;

    CreationPolynomial operator*(const CreationPolynomial& rhs) const;
    CreationPolynomial operator+(const CreationPolynomial& rhs) const;
    CreationPolynomial operator*(cplx scale) const;
    CreationPolynomial pow(int exponent) const;

private:
    std::vector<Monomial> terms_;
};

// Applies p to s with the bosonic ladder factors sqrt(n+1). Not normalized.
// Throws CutoffOverflow when a monomial acting on a nonzero amplitude would
// exceed a cutoff.
FockState apply_creation_polynomial(const CreationPolynomial& p, const FockState& s);

// Density matrix over the kept modes, basis row-major over the kept modes'
// occupations in canonical (a, b, A, C) order.
Eigen::MatrixXcd reduced_density(const FockState& s, ModeSet keep);

// Von Neumann entropy in bits of the kept side of a pure state.
// Eigenvalues below 1e-14 are treated as zero.
double entanglement_entropy(const FockState& s, ModeSet keep);

// Same entropy from an explicit density matrix.
double von_neumann_entropy_bits(const Eigen::MatrixXcd& rho);

}  // namespace cyclic
