#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string_view>

namespace cyclic {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// Canonical basis order for every 4x4 matrix and 4-vector: (a, b, A, C).
// a, b are the quantized photon modes; A, C the collective atomic modes.
enum class Mode : int { a = 0, b = 1, A = 2, C = 3 };

inline constexpr std::array<Mode, 4> all_modes{Mode::a, Mode::b, Mode::A, Mode::C};

constexpr int index(Mode m) noexcept { return static_cast<int>(m); }

constexpr std::string_view mode_name(Mode m) noexcept {
    constexpr std::array<std::string_view, 4> names{"a", "b", "A", "C"};
    return names[static_cast<std::size_t>(m)];
}

// Subset of modes, e.g. the kept side of a bipartition.
class ModeSet {
public:
    constexpr ModeSet() = default;
    constexpr ModeSet(std::initializer_list<Mode> modes) {
        for (Mode m : modes) bits_ |= 1u << index(m);
    }

    constexpr bool contains(Mode m) const noexcept { return (bits_ >> index(m)) & 1u; }
    constexpr ModeSet with(Mode m) const noexcept {
        ModeSet out = *this;
        out.bits_ |= 1u << index(m);
        return out;
    }
    constexpr ModeSet complement() const noexcept {
        ModeSet out;
        out.bits_ = ~bits_ & 0xFu;
        return out;
    }
    constexpr int size() const noexcept {
        int n = 0;
        for (Mode m : all_modes) n += contains(m) ? 1 : 0;
        return n;
    }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr bool operator==(const ModeSet&) const = default;

private:
    unsigned bits_ = 0;
};

}  // namespace cyclic
