#include "cyclic/fock.hpp"

#include "cyclic/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace cyclic {

namespace {

std::size_t product(const Cutoffs& c) {
    return static_cast<std::size_t>(c[0]) * c[1] * c[2] * c[3];
}

// sqrt((n + p)! / n!)
double ladder_factor(int n, int p) {
    double f = 1.0;
    for (int k = 1; k <= p; ++k) f *= static_cast<double>(n + k);
    return std::sqrt(f);
}

std::string occupation_string(const Occupation& occ) {
    return "(" + std::to_string(occ[0]) + "," + std::to_string(occ[1]) + "," +
           std::to_string(occ[2]) + "," + std::to_string(occ[3]) + ")";
}

}  // namespace

FockState::FockState(Cutoffs cutoffs, std::optional<int> sector)
    : cutoffs_(cutoffs), sector_(sector) {
    for (int c : cutoffs_) {
        if (c < 1) throw BadCutoff("every cutoff must be >= 1, got " + std::to_string(c));
    }
    amps_.assign(product(cutoffs_), cplx{0.0, 0.0});
}

FockState FockState::vacuum(Cutoffs cutoffs) {
    FockState s(cutoffs, 0);
    s.amps_[0] = 1.0;
    return s;
}

FockState FockState::basis(Occupation occ, std::optional<Cutoffs> cutoffs) {
    Cutoffs c{};
    for (int i = 0; i < 4; ++i) {
        if (occ[i] < 0) throw InvalidArgument("occupations must be non-negative");
        c[i] = occ[i] + 1;
    }
    if (cutoffs) c = *cutoffs;
    FockState s(c, occ[0] + occ[1] + occ[2] + occ[3]);
    if (!s.in_range(occ)) throw CutoffOverflow("basis state " + occupation_string(occ) + " exceeds cutoffs");
    s.set_amplitude(occ, 1.0);
    return s;
}

bool FockState::in_range(const Occupation& occ) const noexcept {
    for (int i = 0; i < 4; ++i) {
        if (occ[i] < 0 || occ[i] >= cutoffs_[i]) return false;
    }
    return true;
}

std::size_t FockState::flat_index(const Occupation& occ) const {
    if (!in_range(occ)) throw CutoffOverflow("occupation " + occupation_string(occ) + " out of range");
    std::size_t idx = 0;
    for (int i = 0; i < 4; ++i) idx = idx * cutoffs_[i] + occ[i];
    return idx;
}

Occupation FockState::occupation(std::size_t flat) const {
    Occupation occ{};
    for (int i = 3; i >= 0; --i) {
        occ[i] = static_cast<int>(flat % cutoffs_[i]);
        flat /= cutoffs_[i];
    }
    return occ;
}

cplx FockState::amplitude(const Occupation& occ) const {
    return in_range(occ) ? amps_[flat_index(occ)] : cplx{0.0, 0.0};
}

void FockState::set_amplitude(const Occupation& occ, cplx value) {
    amps_[flat_index(occ)] = value;
}

void FockState::infer_sector(double threshold) {
    std::optional<int> found;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (std::abs(amps_[k]) <= threshold) continue;
        const Occupation occ = occupation(k);
        const int s = occ[0] + occ[1] + occ[2] + occ[3];
        if (found && *found != s) {
            sector_.reset();
            return;
        }
        found = s;
    }
    sector_ = found;
}

double FockState::norm() const {
    double sum = 0.0;
    for (const cplx& z : amps_) sum += std::norm(z);
    return std::sqrt(sum);
}

FockState& FockState::normalize() {
    const double n = norm();
    if (n == 0.0) throw InvalidArgument("cannot normalize the zero state");
    for (cplx& z : amps_) z /= n;
    return *this;
}

FockState& FockState::operator*=(cplx factor) {
    for (cplx& z : amps_) z *= factor;
    return *this;
}

FockState& FockState::operator+=(const FockState& other) {
    if (other.cutoffs_ != cutoffs_) throw InvalidArgument("cutoff mismatch in state addition");
    for (std::size_t k = 0; k < amps_.size(); ++k) amps_[k] += other.amps_[k];
    if (sector_ != other.sector_) sector_.reset();
    return *this;
}

FockState FockState::resized(Cutoffs cutoffs) const {
    FockState out(cutoffs, sector_);
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (amps_[k] == cplx{}) continue;
        const Occupation occ = occupation(k);
        if (!out.in_range(occ)) {
            throw CutoffOverflow("resize would drop occupation " + occupation_string(occ));
        }
        out.set_amplitude(occ, amps_[k]);
    }
    return out;
}

FockState FockState::annihilate(Mode m) const {
    const int i = index(m);
    std::optional<int> sector;
    if (sector_ && *sector_ > 0) sector = *sector_ - 1;
    FockState out(cutoffs_, sector);
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        Occupation occ = occupation(k);
        if (occ[i] == 0 || amps_[k] == cplx{}) continue;
        const double f = std::sqrt(static_cast<double>(occ[i]));
        --occ[i];
        out.amps_[out.flat_index(occ)] += f * amps_[k];
    }
    return out;
}

FockState FockState::create(Mode m) const {
    return apply_creation_polynomial(CreationPolynomial::creation(m), *this);
}

double FockState::mean_occupation(Mode m) const {
    const int i = index(m);
    double sum = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        sum += occupation(k)[i] * std::norm(amps_[k]);
    }
    return sum;
}

cplx FockState::expect_annihilation(Mode m) const {
    return inner(*this, annihilate(m));
}

cplx inner(const FockState& lhs, const FockState& rhs) {
    if (lhs.cutoffs() == rhs.cutoffs()) {
        cplx sum{0.0, 0.0};
        const auto& l = lhs.data();
        const auto& r = rhs.data();
        for (std::size_t k = 0; k < l.size(); ++k) sum += std::conj(l[k]) * r[k];
        return sum;
    }
    cplx sum{0.0, 0.0};
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        const cplx l = lhs.data()[k];
        if (l == cplx{}) continue;
        sum += std::conj(l) * rhs.amplitude(lhs.occupation(k));
    }
    return sum;
}

double fidelity(const FockState& lhs, const FockState& rhs) {
    return std::abs(inner(lhs, rhs));
}

CreationPolynomial::CreationPolynomial(std::vector<Monomial> terms) : terms_(std::move(terms)) {
    for (const Monomial& m : terms_) {
        for (int p : m.powers) {
            if (p < 0) throw InvalidArgument("monomial powers must be non-negative");
        }
    }
}

CreationPolynomial CreationPolynomial::constant(cplx c) {
    return CreationPolynomial({Monomial{c, {0, 0, 0, 0}}});
}

CreationPolynomial CreationPolynomial::creation(Mode m, cplx c) {
    Occupation p{0, 0, 0, 0};
    p[index(m)] = 1;
    return CreationPolynomial({Monomial{c, p}});
}

CreationPolynomial CreationPolynomial::linear(const Vec4& coeffs) {
    std::vector<Monomial> terms;
    for (Mode m : all_modes) {
        const cplx c = coeffs(index(m));
        if (c == cplx{}) continue;
        Occupation p{0, 0, 0, 0};
        p[index(m)] = 1;
        terms.push_back({c, p});
    }
    return CreationPolynomial(std::move(terms));
}

std::optional<int> CreationPolynomial::homogeneous_degree() const {
    std::optional<int> degree;
    for (const Monomial& m : terms_) {
        const int d = m.powers[0] + m.powers[1] + m.powers[2] + m.powers[3];
        if (degree && *degree != d) return std::nullopt;
        degree = d;
    }
    return degree;
}

CreationPolynomial CreationPolynomial::operator*(const CreationPolynomial& rhs) const {
    std::map<Occupation, cplx> merged;
    for (const Monomial& l : terms_) {
        for (const Monomial& r : rhs.terms_) {
            Occupation p{};
            for (int i = 0; i < 4; ++i) p[i] = l.powers[i] + r.powers[i];
            merged[p] += l.coeff * r.coeff;
        }
    }
    std::vector<Monomial> terms;
    terms.reserve(merged.size());
    for (const auto& [p, c] : merged) {
        if (c != cplx{}) terms.push_back({c, p});
    }
    return CreationPolynomial(std::move(terms));
}

CreationPolynomial CreationPolynomial::operator+(const CreationPolynomial& rhs) const {
    std::map<Occupation, cplx> merged;
    for (const Monomial& m : terms_) merged[m.powers] += m.coeff;
    for (const Monomial& m : rhs.terms_) merged[m.powers] += m.coeff;
    std::vector<Monomial> terms;
    for (const auto& [p, c] : merged) {
        if (c != cplx{}) terms.push_back({c, p});
    }
    return CreationPolynomial(std::move(terms));
}

CreationPolynomial CreationPolynomial::operator*(cplx scale) const {
    std::vector<Monomial> terms = terms_;
    for (Monomial& m : terms) m.coeff *= scale;
    return CreationPolynomial(std::move(terms));
}

CreationPolynomial CreationPolynomial::pow(int exponent) const {
    if (exponent < 0) throw InvalidArgument("negative polynomial power");
    CreationPolynomial out = constant(1.0);
    for (int k = 0; k < exponent; ++k) out = out * *this;
    return out;
}

FockState apply_creation_polynomial(const CreationPolynomial& p, const FockState& s) {
    std::optional<int> sector;
    if (const auto d = p.homogeneous_degree(); d && s.sector()) sector = *s.sector() + *d;
    FockState out(s.cutoffs(), sector);
    const auto& in = s.data();
    for (std::size_t k = 0; k < in.size(); ++k) {
        if (in[k] == cplx{}) continue;
        const Occupation occ = s.occupation(k);
        for (const Monomial& m : p.terms()) {
            Occupation target{};
            double factor = 1.0;
            for (int i = 0; i < 4; ++i) {
                target[i] = occ[i] + m.powers[i];
                factor *= ladder_factor(occ[i], m.powers[i]);
            }
            if (!out.in_range(target)) {
                throw CutoffOverflow("monomial maps " + occupation_string(occ) + " to " +
                                     occupation_string(target) + " beyond the cutoffs");
            }
            out.data()[out.flat_index(target)] += m.coeff * factor * in[k];
        }
    }
    return out;
}

namespace {

// Rows: kept-mode multi-index; columns: the complement's multi-index.
Eigen::MatrixXcd bipartition_matrix(const FockState& s, ModeSet keep) {
    const Cutoffs& c = s.cutoffs();
    Eigen::Index rows = 1, cols = 1;
    for (Mode m : all_modes) (keep.contains(m) ? rows : cols) *= c[index(m)];
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(rows, cols);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const cplx z = s.data()[k];
        if (z == cplx{}) continue;
        const Occupation occ = s.occupation(k);
        Eigen::Index r = 0, q = 0;
        for (Mode m : all_modes) {
            const int i = index(m);
            if (keep.contains(m)) r = r * c[i] + occ[i];
            else q = q * c[i] + occ[i];
        }
        psi(r, q) = z;
    }
    return psi;
}

}  // namespace

Eigen::MatrixXcd reduced_density(const FockState& s, ModeSet keep) {
    const Eigen::MatrixXcd psi = bipartition_matrix(s, keep);
    return psi * psi.adjoint();
}

double von_neumann_entropy_bits(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double p = solver.eigenvalues()(i);
        if (p < 1e-14) continue;
        entropy -= p * std::log2(p);
    }
    return std::max(entropy, 0.0);
}

double entanglement_entropy(const FockState& s, ModeSet keep) {
    if (keep.empty() || keep.size() == 4) return 0.0;
    const Eigen::MatrixXcd psi = bipartition_matrix(s, keep);
    // Both Gram matrices share their nonzero spectrum; use the smaller one.
    if (psi.rows() <= psi.cols()) return von_neumann_entropy_bits(psi * psi.adjoint());
    return von_neumann_entropy_bits(psi.adjoint() * psi);
}

}  // namespace cyclic
