#include "cyclic/schedule.hpp"

#include "cyclic/errors.hpp"
#include "cyclic/polariton.hpp"

#include <cmath>
// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <limits>
#include <string>

namespace cyclic {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + " must be finite");
}

void require_coupling(double g_N) {
    require_finite(g_N, "g_N");
    if (g_N < 0.0) throw InvalidArgument("g_N must be >= 0");
}

}  // namespace

Schedule Schedule::tanh(double g_N, double omega_from, double omega_to, double duration, double steepness) {
    require_coupling(g_N);
    require_finite(omega_from, "omega_from");
    require_finite(omega_to, "omega_to");
    if (!(duration > 0.0) || !std::isfinite(duration)) throw InvalidArgument("sweep duration must be > 0");
    if (!(steepness > 0.0) || !std::isfinite(steepness)) throw InvalidArgument("tanh steepness must be > 0");
    Schedule s;
    s.g_N_ = g_N;
    s.family_ = ScheduleFamily::tanh;
    s.steepness_ = steepness;
    s.samples_ = {{0.0, omega_from}, {duration, omega_to}};
    return s;
}

Schedule Schedule::linear(double g_N, double omega_from, double omega_to, double duration) {
    require_coupling(g_N);
    require_finite(omega_from, "omega_from");
    require_finite(omega_to, "omega_to");
    if (!(duration > 0.0) || !std::isfinite(duration)) throw InvalidArgument("sweep duration must be > 0");
    Schedule s;
    s.g_N_ = g_N;
    s.family_ = ScheduleFamily::linear;
    s.samples_ = {{0.0, omega_from}, {duration, omega_to}};
    return s;
}

Schedule Schedule::sampled(double g_N, std::vector<std::pair<double, double>> samples, Interpolation interpolation) {
    require_coupling(g_N);
    if (samples.size() < 2) throw InvalidArgument("a sampled schedule needs at least 2 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        require_finite(samples[i].first, "sample time");
        require_finite(samples[i].second, "sample Omega");
        if (i > 0 && !(samples[i].first > samples[i - 1].first)) {
            throw InvalidArgument("sample times must be strictly ascending");
        }
    }
    Schedule s;
    s.g_N_ = g_N;
    s.family_ = ScheduleFamily::samples;
    s.interpolation_ = interpolation;
    s.samples_ = std::move(samples);
    if (interpolation == Interpolation::monotone_cubic) {
        if (s.samples_.size() < 4) throw InvalidArgument("monotone cubic interpolation needs at least 4 samples");
        std::vector<double> x, y;
        for (const auto& [t, w] : s.samples_) {
            x.push_back(t);
            y.push_back(w);
        }
        s.pchip_ = std::make_shared<const Pchip>(std::move(x), std::move(y));
    }
    return s;
}

Schedule Schedule::with_hold(double duration) const {
    if (!(duration >= 0.0) || !std::isfinite(duration)) throw InvalidArgument("hold duration must be >= 0");
    Schedule s = *this;
    s.hold_ = duration;
    return s;
}

Schedule Schedule::with_lead(double duration) const {
    if (!(duration >= 0.0) || !std::isfinite(duration)) throw InvalidArgument("lead-in duration must be >= 0");
    Schedule s = *this;
    s.lead_ = duration;
    return s;
}

double Schedule::omega(double t) const {
    t -= lead_;
    const double t0 = samples_.front().first, t1 = samples_.back().first;
    if (t >= t1) return omega_to();
    if (t <= t0) return omega_from();
    switch (family_) {
        case ScheduleFamily::tanh: {
            const double mid = 0.5 * (omega_from() + omega_to());
            const double half = 0.5 * (omega_from() - omega_to());
            const double x = 2.0 * (t - t0) / (t1 - t0) - 1.0;
            return mid - half * std::tanh(steepness_ * x) / std::tanh(steepness_);
        }
        case ScheduleFamily::linear: {
            const double u = (t - t0) / (t1 - t0);
            return omega_from() + u * (omega_to() - omega_from());
        }
        case ScheduleFamily::samples: {
            if (interpolation_ == Interpolation::monotone_cubic) return (*pchip_)(t);
            const auto hi = std::upper_bound(samples_.begin(), samples_.end(), t,
                                             [](double v, const auto& p) { return v < p.first; });
            const auto lo = hi - 1;
            const double u = (t - lo->first) / (hi->first - lo->first);
            return lo->second + u * (hi->second - lo->second);
        }
    }
    return omega_to();
}

std::vector<double> Schedule::knots() const {
    std::vector<double> k;
    if (lead_ > 0.0) k.push_back(t_start());
    for (const auto& sample : samples_) k.push_back(sample.first + lead_);
    if (hold_ > 0.0) k.push_back(t_end());
    return k;
}

bool Schedule::storage_grade() const {
    return g_N_ > 0.0 && std::abs(omega_from()) >= 10.0 * g_N_ && std::abs(omega_to()) >= 10.0 * g_N_;
}

double eps3_at(const Schedule& s, double t) { return polariton_energies(s.g_N(), s.omega(t))[2]; }

PhaseIntegrals phase_integrals(const Schedule& s) {
    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
    const std::vector<double> k = s.knots();
    PhaseIntegrals out;
    double error_total = 0.0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        double err1 = 0.0, err3 = 0.0;
        out.eps1 += Quadrature::integrate(
            [&](double t) { return polariton_energies(s.g_N(), s.omega(t))[0]; }, k[i], k[i + 1], 15, 1e-12, &err1);
        out.eps3 += Quadrature::integrate([&](double t) { return eps3_at(s, t); }, k[i], k[i + 1], 15, 1e-12,
                                          &err3);
        error_total += std::max(err1, err3);
    }
    if (!(error_total < 1e-9)) {
        throw QuadratureFailure("phase integral error estimate " + std::to_string(error_total) + " exceeds 1e-9");
    }
    return out;
}

double dynamic_phase(const Schedule& s) { return phase_integrals(s).eps3; }

Schedule phase_tuned(const Schedule& s) {
    if (!(s.g_N() > 0.0)) throw InvalidArgument("phase tuning needs g_N > 0");
    const Schedule base = s.with_hold(0.0);
    const double phase0 = dynamic_phase(base);
    const double rate = polariton_energies(s.g_N(), s.omega_to())[2];  // < 0 for g_N > 0
    const double target = 2.0 * pi * std::floor(phase0 / (2.0 * pi));
    // The hold adds rate * h; bisect for phase0 + rate * h = target.
    const auto residual = [&](double h) { return phase0 + rate * h - target; };
    double lo = 0.0, hi = (2.0 * pi) / -rate;
    while (residual(hi) > 0.0) hi *= 2.0;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return base.with_hold(0.5 * (lo + hi));
}

Schedule phase_tuned_both(const Schedule& s, double eps1_residue) {
    if (!(s.g_N() > 0.0)) throw InvalidArgument("phase tuning needs g_N > 0");
    require_finite(eps1_residue, "eps1 residue");
    const Schedule base = s.with_lead(0.0).with_hold(0.0);
    const PhaseIntegrals phase0 = phase_integrals(base);
    const auto from = polariton_energies(s.g_N(), s.omega_from());
    const auto to = polariton_energies(s.g_N(), s.omega_to());
    // Columns: lead-in and hold. eps1 > 0 > eps3 on both.
    const double a11 = from[2], a12 = to[2], a21 = from[0], a22 = to[0];
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-12 * std::max(1.0, std::abs(a11 * a22))) {
        throw InvalidArgument("phase tuning of both integrals needs Omega to change across the schedule");
    }
    const double two_pi = 2.0 * pi;
    // Each hold is at most one full period of either phase beyond the other.
    const double span = two_pi * (1.0 / std::min(-a11, -a12) + 1.0 / std::min(a21, a22));
    const double reach3 = span * std::max(-a11, -a12), reach1 = span * std::max(a21, a22);
    const long k3_top = static_cast<long>(std::floor(phase0.eps3 / two_pi));
    const long k1_low = static_cast<long>(std::ceil((phase0.eps1 - eps1_residue) / two_pi));
    const long n3 = static_cast<long>(std::ceil(reach3 / two_pi)) + 1;
    const long n1 = static_cast<long>(std::ceil(reach1 / two_pi)) + 1;
    double best_lead = 0.0, best_hold = 0.0, best_total = std::numeric_limits<double>::infinity();
    for (long i = 0; i <= n3; ++i) {
        const double r3 = two_pi * static_cast<double>(k3_top - i) - phase0.eps3;
        for (long j = 0; j <= n1; ++j) {
            const double r1 = two_pi * static_cast<double>(k1_low + j) + eps1_residue - phase0.eps1;
            const double lead = (r3 * a22 - a12 * r1) / det;
            const double hold = (a11 * r1 - a21 * r3) / det;
            if (lead < -1e-12 || hold < -1e-12) continue;
            if (lead + hold < best_total) {
                best_total = lead + hold;
                best_lead = std::max(lead, 0.0);
                best_hold = std::max(hold, 0.0);
            }
        }
    }
    if (!std::isfinite(best_total)) throw InvalidArgument("no non-negative lead-in and hold tune both phases");
    return base.with_lead(best_lead).with_hold(best_hold);
}

namespace {

const char* family_name(ScheduleFamily f) {
    switch (f) {
        case ScheduleFamily::tanh: return "tanh";
        case ScheduleFamily::linear: return "linear";
        case ScheduleFamily::samples: return "samples";
    }
    return "linear";
}

}  // namespace

json schedule_to_json(const Schedule& s) {
    json j;
    j["g_N"] = s.g_N();
    j["family"] = family_name(s.family());
    if (s.family() == ScheduleFamily::samples) {
        json samples = json::array();
        for (const auto& [t, w] : s.samples()) samples.push_back({t, w});
        j["samples"] = samples;
        j["interpolation"] = s.interpolation() == Interpolation::linear ? "linear" : "monotone_cubic";
    } else {
        j["omega_from"] = s.omega_from();
        j["omega_to"] = s.omega_to();
        j["duration"] = s.sweep_end() - s.sweep_start();
        if (s.family() == ScheduleFamily::tanh) j["steepness"] = s.steepness();
    }
    j["lead"] = s.lead();
    j["hold"] = s.hold();
    j["hold_tail"] = false;
    return j;
}

Schedule schedule_from_json(const json& j) {
    try {
        const double g = j.at("g_N").get<double>();
        const std::string family = j.at("family").get<std::string>();
        Schedule s = [&] {
            if (family == "tanh") {
                return Schedule::tanh(g, j.at("omega_from").get<double>(), j.at("omega_to").get<double>(),
                                      j.at("duration").get<double>(), j.value("steepness", 1.5));
            }
            if (family == "linear") {
                return Schedule::linear(g, j.at("omega_from").get<double>(), j.at("omega_to").get<double>(),
                                        j.at("duration").get<double>());
            }
            if (family == "samples") {
                std::vector<std::pair<double, double>> samples;
                for (const auto& p : j.at("samples")) {
                    if (!p.is_array() || p.size() != 2) throw InvalidArgument("each sample must be [t, omega]");
                    samples.emplace_back(p[0].get<double>(), p[1].get<double>());
                }
                const std::string interp = j.value("interpolation", std::string("linear"));
                if (interp != "linear" && interp != "monotone_cubic") {
                    throw InvalidArgument("interpolation must be \"linear\" or \"monotone_cubic\"");
                }
                return Schedule::sampled(g, std::move(samples),
                                         interp == "linear" ? Interpolation::linear : Interpolation::monotone_cubic);
            }
            throw InvalidArgument("unknown schedule family \"" + family + "\" (tanh, linear, samples)");
        }();
        if (j.contains("lead")) s = s.with_lead(j.at("lead").get<double>());
        if (j.contains("hold")) s = s.with_hold(j.at("hold").get<double>());
        const std::string tuning = j.value("phase_tuning", std::string(j.value("hold_tail", false) ? "eps3" : "none"));
        if (tuning == "eps3") {
            s = phase_tuned(s);
        } else if (tuning == "both") {
            s = phase_tuned_both(s);
        } else if (tuning != "none") {
            throw InvalidArgument("phase_tuning must be \"none\", \"eps3\" or \"both\"");
        }
        return s;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed schedule: ") + e.what());
    }
}

}  // namespace cyclic
