#include "mform/json_io.hpp"

#include "mform/errors.hpp"

#include <cstdint>
#include <cstdio>

namespace mform {

json cyc_to_json(const Cyclotomic& c)
{
    if (c.is_rational())
        return to_string(c.coeffs()[0]);
    json j;
    j["order"] = c.order();
    json arr = json::array();
    for (const auto& x : c.coeffs())
        arr.push_back(to_string(x));
    j["coeffs"] = arr;
    return j;
}

Cyclotomic cyc_from_json(const json& j)
{
    if (j.is_string())
        return Cyclotomic(parse_rational(j.get<std::string>()));
    if (j.is_number_integer())
        return Cyclotomic(j.get<long>());
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        throw DataError("cyclotomic value must be \"p/q\" or {order, coeffs}");
    int n = j.at("order").get<int>();
    if (n < 1 || n > 4096)
        throw DataError("cyclotomic order out of range");
    std::vector<Rational> c;
    for (const auto& x : j.at("coeffs"))
        c.push_back(parse_rational(x.get<std::string>()));
    if (static_cast<int>(c.size()) != euler_phi(n))
        throw DataError("cyclotomic coeff vector must have length phi(" + std::to_string(n) + ")");
    return Cyclotomic::from_powers(n, std::move(c));
}

json series_to_json(const QYSeries& s, const std::string& function, const std::string& cls)
{
    json j;
    j["function"] = function;
    j["class"] = cls.empty() ? json(nullptr) : json(cls);
    json w;
    w["qmax24"] = s.qmax24() >= kInf ? json(nullptr) : json(s.qmax24());
    w["ylow"] = s.ylow() <= kNegInf ? json(nullptr) : json(s.ylow());
    j["window"] = w;
    json coeffs = json::array();
    for (const auto& t : s.terms())
        coeffs.push_back(json::array({t.n24, t.r, cyc_to_json(t.c)}));
    j["coefficients"] = coeffs;
    return j;
}

std::string fnv1a64(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : text) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace mform
