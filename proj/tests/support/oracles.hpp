// Reference computations used only by the tests. None of them goes through
// the polariton basis, the sector blocks or the creation-polynomial machinery
// of the library.

#pragma once

#include "cyclic/fock.hpp"
#include "cyclic/polariton.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace oracle_test {

using cyclic::cplx;

// All four modes truncated at the same cutoff; the Kronecker order a, b, A, C
// reproduces FockState's row-major layout.
class DenseModel {
public:
    DenseModel(int cutoff, double g, double omega, double phi) : cutoff_(cutoff) {
        using Sparse = Eigen::SparseMatrix<cplx>;
        Sparse ladder(cutoff, cutoff), id(cutoff, cutoff);
        for (int k = 1; k < cutoff; ++k) ladder.insert(k - 1, k) = std::sqrt(static_cast<double>(k));
        id.setIdentity();
        std::array<Sparse, 4> sparse;
        for (int mode = 0; mode < 4; ++mode) {
            Sparse op = mode == 0 ? ladder : id;
            for (int other = 1; other < 4; ++other) {
                op = Sparse(Eigen::kroneckerProduct(op, other == mode ? ladder : id));
            }
            sparse[static_cast<std::size_t>(mode)] = op;
            ops_[static_cast<std::size_t>(mode)] = Eigen::MatrixXcd(op);
        }
        const Sparse& a = sparse[0];
        const Sparse& b = sparse[1];
        const Sparse& A = sparse[2];
        const Sparse& C = sparse[3];
        const cplx e = std::polar(1.0, phi);
        const Sparse ad = a.adjoint(), bd = b.adjoint(), Ad = A.adjoint(), Cd = C.adjoint();
        const Sparse h = g * (ad * A + Ad * a + bd * C + Cd * b) + omega * (e * (Ad * C) + std::conj(e) * (Cd * A));
        h_ = Eigen::MatrixXcd(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h_);
        energies_ = eig.eigenvalues();
        vectors_ = eig.eigenvectors();
    }

    int cutoff() const { return cutoff_; }
    std::size_t dim() const { return static_cast<std::size_t>(h_.rows()); }
    const Eigen::MatrixXcd& op(cyclic::Mode m) const { return ops_[static_cast<std::size_t>(cyclic::index(m))]; }

    Eigen::VectorXcd propagate(const Eigen::VectorXcd& psi, double t) const {
        Eigen::VectorXcd c = vectors_.adjoint() * psi;
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -energies_(i) * t);
        return vectors_ * c;
    }

    Eigen::VectorXcd embed(const cyclic::FockState& s) const {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
        for (std::size_t k = 0; k < s.size(); ++k) {
            const cyclic::Occupation o = s.occupation(k);
            if (s.data()[k] == cplx{}) continue;
            v(flat(o)) = s.data()[k];
        }
        return v;
    }

    Eigen::Index flat(const cyclic::Occupation& o) const {
        Eigen::Index i = 0;
        for (int x : o) i = i * cutoff_ + x;
        return i;
    }

    // |m, n>_ab built directly from the dense creation operators.
    Eigen::VectorXcd fock(int m, int n) const {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
        v(flat({m, n, 0, 0})) = 1.0;
        return v;
    }

private:
    int cutoff_;
    std::array<Eigen::MatrixXcd, 4> ops_;
    Eigen::MatrixXcd h_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
};

inline double entropy_bits(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p) {
        if (x > 1e-300) s -= x * std::log2(x);
    }
    return s;
}

// Strong positive drive (photon-like polaritons only), |1,1>_ab input,
// phase phi3 = eps3 t: the state is cos(2 phi3)|1,1> - i sin(2 phi3)(|2,0> + |0,2>)/sqrt 2,
// so rho_a = diag(sin^2(2 phi3)/2, cos^2(2 phi3), sin^2(2 phi3)/2).
inline double case_one_entropy(double phi3) {
    const double c = std::cos(2.0 * phi3);
    const double s2 = 1.0 - c * c;
    return entropy_bits({0.5 * s2, c * c, 0.5 * s2});
}

// N_pm(|mu>|nu> +- |-mu>|-nu>): eigenvalues of either reduced state are
// (1 +- x)(1 +- y) / (2 (1 +- x y)) with x = <mu|-mu>, y = <nu|-nu>.
inline double cat_pair_entropy(double mu_abs2, double nu_abs2, bool even) {
    const double x = std::exp(-2.0 * mu_abs2);
    const double y = std::exp(-2.0 * nu_abs2);
    const double sgn = even ? 1.0 : -1.0;
    const double den = 2.0 * (1.0 + sgn * x * y);
    return entropy_bits({(1.0 + x) * (1.0 + sgn * y) / den, (1.0 - x) * (1.0 - sgn * y) / den});
}

inline double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// Variant of the coefficient with every binomial squared.
inline std::map<std::pair<int, int>, double> squared_binomial_coefficients(int m, int n) {
    std::map<std::pair<int, int>, double> f;
    const double scale = 1.0 / std::sqrt(std::pow(2.0, m + n) * std::tgamma(m + 1.0) * std::tgamma(n + 1.0));
    for (int j = 0; j <= m; ++j) {
        for (int k = 0; k <= n; ++k) {
            const double sign = (n - k) % 2 == 0 ? 1.0 : -1.0;
            f[{j, k}] = sign * binomial(m, j) * binomial(m, m - j) * binomial(n, k) * binomial(n, n - k) * scale;
        }
    }
    return f;
}

inline cyclic::CouplingConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> g(0.1, 3.0), w(-5.0, 5.0), p(0.0, 2.0 * cyclic::pi);
    return cyclic::CouplingConfig::make(g(rng), w(rng), p(rng));
}

}  // namespace oracle_test
