#pragma once

#include "cyclic/fock.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace cyclic {

using json = nlohmann::json;

// "%.17g": round-trips every double exactly.
std::string format_double(double x);

// Serializes like json::dump(indent) but prints every floating-point number
// with 17 significant digits.
std::string dump_json(const json& value, int indent = 2);

// {cutoffs:[4], sector:int|null, amplitudes:[{idx:[4], re, im}]}; amplitudes
// with modulus below 1e-15 are omitted.
json fock_state_to_json(const FockState& s);
FockState fock_state_from_json(const json& j);

}  // namespace cyclic
