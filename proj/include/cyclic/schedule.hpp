// schedule.hpp - time-dependent drive Omega(t) for adiabatic passages.

#pragma once

#include "cyclic/json_io.hpp"
#include "cyclic/types.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace boost::math::interpolators {
template <class RandomAccessContainer>
class pchip;
}

namespace cyclic {

enum class ScheduleFamily { tanh, linear, samples };
enum class Interpolation { linear, monotone_cubic };

// Omega(t) on [t_start, t_end]: an optional constant lead-in at the initial
// value, the sweep, and an optional constant hold at the final value. g_N is
// fixed throughout.
class Schedule {
public:
    // Omega(t) = mid - half * tanh(k (2t/T - 1)) / tanh(k), which starts at
    // omega_from and ends at omega_to exactly. k is the dimensionless steepness.
    static Schedule tanh(double g_N, double omega_from, double omega_to, double duration, double steepness = 1.5);
    static Schedule linear(double g_N, double omega_from, double omega_to, double duration);
    static Schedule constant(double g_N, double omega, double duration) {
        return linear(g_N, omega, omega, duration);
    }
    // Strictly ascending (t, Omega) samples, at least 2 (4 for monotone cubic).
    static Schedule sampled(double g_N, std::vector<std::pair<double, double>> samples,
                            Interpolation interpolation = Interpolation::linear);

    // Copy with the trailing hold replaced by `duration` (>= 0).
    Schedule with_hold(double duration) const;
    // Copy with the constant lead-in before the sweep replaced by `duration`.
    Schedule with_lead(double duration) const;

    double g_N() const noexcept { return g_N_; }
    ScheduleFamily family() const noexcept { return family_; }
    Interpolation interpolation() const noexcept { return interpolation_; }
    double steepness() const noexcept { return steepness_; }
    double omega_from() const noexcept { return samples_.front().second; }
    double omega_to() const noexcept { return samples_.back().second; }
    double t_start() const noexcept { return samples_.front().first; }
    double lead() const noexcept { return lead_; }
    double sweep_start() const noexcept { return t_start() + lead_; }
    double sweep_end() const noexcept { return samples_.back().first + lead_; }
    double hold() const noexcept { return hold_; }
    double t_end() const noexcept { return sweep_end() + hold_; }
    // Sweep samples, not shifted by the lead-in. For tanh and linear these
    // are just the two endpoints.
    const std::vector<std::pair<double, double>>& samples() const noexcept { return samples_; }

    // Clamped to [t_start, t_end].
    double omega(double t) const;
    // Ascending points where Omega(t) may lose smoothness, including both ends.
    std::vector<double> knots() const;
    // |Omega|/g_N >= 10 at both ends.
    bool storage_grade() const;

private:
    using Pchip = boost::math::interpolators::pchip<std::vector<double>>;

    Schedule() = default;

    double g_N_ = 1.0;
    ScheduleFamily family_ = ScheduleFamily::linear;
    Interpolation interpolation_ = Interpolation::linear;
    double steepness_ = 0.0;
    double lead_ = 0.0;
    double hold_ = 0.0;
    std::vector<std::pair<double, double>> samples_;
    std::shared_ptr<const Pchip> pchip_;
};

// eps3(t) = (Omega - sqrt(Omega^2 + 4 g_N^2)) / 2, the photon-like branch at Omega > 0.
double eps3_at(const Schedule& s, double t);

struct PhaseIntegrals {
    double eps1 = 0.0;
    double eps3 = 0.0;
};

// Adaptive Gauss-Kronrod per smooth segment; throws QuadratureFailure if the
// summed error estimate exceeds 1e-9.
PhaseIntegrals phase_integrals(const Schedule& s);
double dynamic_phase(const Schedule& s);  // integral of eps3

// Replaces the hold with the duration (found by bisection to 1e-10) that puts
// the integral of eps3 on the next multiple of 2 pi below its hold-free value.
// Throws InvalidArgument if g_N = 0.
Schedule phase_tuned(const Schedule& s);

// Replaces both the lead-in and the hold with the shortest pair (total
// duration) that puts the integral of eps3 on a multiple of 2 pi and the
// integral of eps1 on eps1_residue + 2 pi k. Throws InvalidArgument if g_N = 0
// or Omega starts and ends at the same value.
Schedule phase_tuned_both(const Schedule& s, double eps1_residue = pi);

// {g_N, family, omega_from, omega_to, duration, steepness | samples,
//  interpolation, lead, hold, hold_tail, phase_tuning}. phase_tuning is
// "none", "eps3" (phase_tuned) or "both" (phase_tuned_both with residue pi);
// hold_tail = true is shorthand for "eps3".
json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);

}  // namespace cyclic
