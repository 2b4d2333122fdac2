#include "cyclic/json_io.hpp"

#include "cyclic/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cyclic {

std::string format_double(double x) {
    if (!std::isfinite(x)) {
        // JSON has no inf/nan; callers are expected not to emit them.
        return std::isnan(x) ? "null" : (x > 0 ? "1e999" : "-1e999");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void write(std::ostream& os, const json& v, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (v.type()) {
        case json::value_t::number_float:
            os << format_double(v.get<double>());
            return;
        case json::value_t::array: {
            if (v.empty()) {
                os << "[]";
                return;
            }
            os << '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                write(os, item, indent, depth + 1);
            }
            newline(depth);
            os << ']';
            return;
        }
        case json::value_t::object: {
            if (v.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                os << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
                write(os, it.value(), indent, depth + 1);
            }
            newline(depth);
            os << '}';
            return;
        }
        default:
            os << v.dump();
    }
}

}  // namespace

std::string dump_json(const json& value, int indent) {
    std::ostringstream os;
    write(os, value, indent, 0);
    return os.str();
}

json fock_state_to_json(const FockState& s) {
    json amps = json::array();
    for (std::size_t k = 0; k < s.size(); ++k) {
        const cplx z = s.data()[k];
        if (std::abs(z) < 1e-15) continue;
        const Occupation occ = s.occupation(k);
        amps.push_back({{"idx", occ}, {"re", z.real()}, {"im", z.imag()}});
    }
    json j;
    j["cutoffs"] = s.cutoffs();
    j["sector"] = s.sector() ? json(*s.sector()) : json(nullptr);
    j["amplitudes"] = std::move(amps);
    return j;
}

FockState fock_state_from_json(const json& j) {
    try {
        const Cutoffs cutoffs = j.at("cutoffs").get<Cutoffs>();
        std::optional<int> sector;
        if (j.contains("sector") && !j.at("sector").is_null()) sector = j.at("sector").get<int>();
        FockState s(cutoffs, sector);
        for (const auto& entry : j.at("amplitudes")) {
            const Occupation occ = entry.at("idx").get<Occupation>();
            s.set_amplitude(occ, {entry.at("re").get<double>(), entry.at("im").get<double>()});
        }
        return s;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed Fock state JSON: ") + e.what());
    }
}

}  // namespace cyclic
