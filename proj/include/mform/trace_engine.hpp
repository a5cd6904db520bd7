#pragma once

#include "mform/m24_data.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mform {

enum class Component { Ap4, Wb, Aa, AaTw, Af, AfTw, Wf, WfTw };

struct TraceSpec {
    Component tag = Component::Ap4;
    bool ghat = false;   // lifted group element
    bool frakz = false;  // parity involution
    bool p0 = false;     // tensor product of the p(0)
    bool yJ = false;     // y^J(0)
    bool gammaJ = false; // gamma^J(0)
    const ConjClass* cls = nullptr;
};

std::string component_name(Component c);
// "Ap4", "Wf_tw", ... ; throws UserError
Component parse_component(const std::string& s);
// "Aa_tw:ghat,frakz" style; class attached by the caller
TraceSpec parse_trace_spec(const std::string& s);

// throws UserError for a combination the trace formulas do not cover
FactorProduct component_trace(const TraceSpec& spec);

// finite combination of factor products, gamma still formal
class GammaSeries {
public:
    GammaSeries() = default;
    explicit GammaSeries(const FactorProduct& fp) { terms_.emplace_back(Rational(1), fp); }

    const std::vector<std::pair<Rational, FactorProduct>>& terms() const { return terms_; }
    GammaSeries& operator+=(const GammaSeries& o);
    friend GammaSeries operator+(GammaSeries a, const GammaSeries& b) { return a += b; }
    GammaSeries scaled(const Rational& s) const;

private:
    std::vector<std::pair<Rational, FactorProduct>> terms_;
};

// parity 0: (a + b)/2, parity 1: (a - b)/2
GammaSeries project(int parity, const FactorProduct& with_g, const FactorProduct& with_zg);

// gamma -> -1 after symbolic cancellation; DomainError on a surviving pole
QYSeries gamma_limit(const GammaSeries& gs, long qmax24, long ylow);

enum class Route { Direct, T };
enum class Construction { I, II };

// graded trace of the lifted element times the parity involution; equals -phi_g
QYSeries vsnat_trace(const ConjClass& c, Route route, long qmax24, long ylow);
// eta^4 * (W_b trace) * vsnat_trace
QYSeries theorem_trace(const ConjClass& c, Construction k, long qmax24, long ylow);

} // namespace mform
