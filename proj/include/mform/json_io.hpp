#pragma once

#include "mform/series.hpp"

#include <json.hpp>

#include <string>

namespace mform {

using json = nlohmann::json;

// "p/q" for rationals, {order, coeffs} otherwise
json cyc_to_json(const Cyclotomic& c);
Cyclotomic cyc_from_json(const json& j);

// {function, class, window: {qmax24, ylow}, coefficients: [[n24, r, value], ...]}
// unbounded window ends are written as null
json series_to_json(const QYSeries& s, const std::string& function, const std::string& cls);

// FNV-1a 64 over a string, hex
std::string fnv1a64(const std::string& text);

} // namespace mform
