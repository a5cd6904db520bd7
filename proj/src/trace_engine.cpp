#include "mform/trace_engine.hpp"

#include "mform/classical_forms.hpp"
#include "mform/errors.hpp"
#include "mform/jacobi_forms.hpp"

#include <sstream>

namespace mform {

namespace {

const std::vector<std::pair<Component, std::string>>& component_names()
{
    static const std::vector<std::pair<Component, std::string>> names{
        {Component::Ap4, "Ap4"}, {Component::Wb, "Wb"},   {Component::Aa, "Aa"}, {Component::AaTw, "Aa_tw"},
        {Component::Af, "Af"},   {Component::AfTw, "Af_tw"}, {Component::Wf, "Wf"}, {Component::WfTw, "Wf_tw"},
    };
    return names;
}

void reject(const TraceSpec& s, const std::string& why)
{
    throw UserError("no trace formula for " + component_name(s.tag) + ": " + why);
}

} // namespace

std::string component_name(Component c)
{
    for (const auto& [k, n] : component_names())
        if (k == c)
            return n;
    return "?";
}

Component parse_component(const std::string& s)
{
    for (const auto& [k, n] : component_names())
        if (n == s)
            return k;
    throw UserError("unknown trace component " + s);
}

TraceSpec parse_trace_spec(const std::string& s)
{
    TraceSpec t;
    auto colon = s.find(':');
    t.tag = parse_component(s.substr(0, colon));
    if (colon == std::string::npos)
        return t;
    std::stringstream in(s.substr(colon + 1));
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok == "ghat")
            t.ghat = true;
        else if (tok == "frakz")
            t.frakz = true;
        else if (tok == "p0")
            t.p0 = true;
        else if (tok == "yJ")
            t.yJ = true;
        else if (tok == "gammaJ")
            t.gammaJ = true;
        else if (!tok.empty())
            throw UserError("unknown trace insertion " + tok);
    }
    return t;
}

FactorProduct component_trace(const TraceSpec& s)
{
    const Cyclotomic one(1);
    const Cyclotomic sgn = s.frakz ? Cyclotomic(1) : Cyclotomic(-1);
    switch (s.tag) {
    case Component::Ap4:
        if (!s.p0 || s.ghat || s.frakz || s.yJ || s.gammaJ)
            reject(s, "only the p(0) insertion is displayed");
        return eta_pow_fp(4);
    case Component::Wb: {
        if (!s.yJ || s.ghat || s.frakz || s.p0 || s.gammaJ)
            reject(s, "only the y^J(0) grading is displayed");
        FactorProduct fp(one, -1, -4);
        fp.times(family(one, -1, 24, -24, -2));
        fp.times(family(one, 1, 24, 0, -2));
        return fp;
    }
    case Component::Aa:
    case Component::AaTw: {
        if (!s.ghat || s.p0 || s.yJ || s.gammaJ)
            reject(s, "needs the lifted element and no other grading");
        if (!s.cls)
            reject(s, "needs a conjugacy class");
        EigenData e = eigen_data(*s.cls);
        if (s.tag == Component::Aa) {
            FactorProduct fp(one, 0, -12);
            fp.times(family(sgn, 0, 24, -12, 4));
            for (size_t i = 0; i < 10; ++i) {
                fp.times(family(sgn * e.pairs[i].lambda, 0, 24, -12, 1));
                fp.times(family(sgn * e.pairs[i].lambda.inverse(), 0, 24, -12, 1));
            }
            return fp;
        }
        FactorProduct fp(e.nu, 0, 24);
        fp.times(family(sgn, 0, 24, -24, 2));
        fp.times(family(sgn, 0, 24, 0, 2));
        for (size_t i = 0; i < 10; ++i) {
            fp.times(family(sgn * e.pairs[i].lambda, 0, 24, 0, 1));
            fp.times(family(sgn * e.pairs[i].lambda.inverse(), 0, 24, -24, 1));
        }
        return fp;
    }
    case Component::Af:
    case Component::AfTw: {
        // the lifted element acts trivially here
        if (!s.yJ || s.p0 || s.gammaJ)
            reject(s, "needs the y^J(0) grading only");
        if (s.tag == Component::Af) {
            FactorProduct fp(one, 0, -2);
            fp.times(family(sgn, -1, 24, -12, 2));
            fp.times(family(sgn, 1, 24, -12, 2));
            return fp;
        }
        FactorProduct fp(one, 1, 4);
        fp.times(family(sgn, -1, 24, -24, 2));
        fp.times(family(sgn, 1, 24, 0, 2));
        return fp;
    }
    case Component::Wf:
    case Component::WfTw: {
        if (!s.gammaJ || s.p0 || s.yJ)
            reject(s, "needs the gamma^J(0) grading only");
        const Cyclotomic c = s.frakz ? Cyclotomic(-1) : Cyclotomic(1);
        FactorProduct fp = s.tag == Component::Wf ? FactorProduct(one, 0, 2) : FactorProduct(one, 0, -4, -1);
        Factor lo = s.tag == Component::Wf ? family(c, 0, 24, -12, -2) : family(c, 0, 24, -24, -2);
        Factor hi = s.tag == Component::Wf ? family(c, 0, 24, -12, -2) : family(c, 0, 24, 0, -2);
        lo.gamma = -1;
        hi.gamma = 1;
        fp.times(lo);
        fp.times(hi);
        return fp;
    }
    }
    reject(s, "unknown component");
    return {};
}

GammaSeries& GammaSeries::operator+=(const GammaSeries& o)
{
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

GammaSeries GammaSeries::scaled(const Rational& s) const
{
    GammaSeries r = *this;
    for (auto& t : r.terms_)
        t.first *= s;
    return r;
}

GammaSeries project(int parity, const FactorProduct& with_g, const FactorProduct& with_zg)
{
    if (parity != 0 && parity != 1)
        throw UserError("parity must be 0 or 1");
    GammaSeries a = GammaSeries(with_g).scaled(Rational(1, 2));
    GammaSeries b = GammaSeries(with_zg).scaled(Rational(parity == 0 ? 1 : -1, 2));
    return a + b;
}

QYSeries gamma_limit(const GammaSeries& gs, long qmax24, long ylow)
{
    QYSeries sum;
    bool first = true;
    for (const auto& [w, fp] : gs.terms()) {
        FactorProduct at = fp.substitute_gamma(Cyclotomic(-1)).canonical();
        QYSeries e;
        try {
            e = expand(at, qmax24, ylow);
        } catch (const DomainError& err) {
            throw DomainError(std::string("gamma -> -1 leaves a pole: ") + err.what());
        }
        e = scale(e, Cyclotomic(w));
        sum = first ? e : add(sum, e);
        first = false;
    }
    return sum.field_reduced();
}

namespace {

FactorProduct sector(const ConjClass& c, bool twisted, bool frakz)
{
    TraceSpec a{twisted ? Component::AaTw : Component::Aa};
    a.ghat = true;
    a.frakz = frakz;
    a.cls = &c;
    TraceSpec f{twisted ? Component::AfTw : Component::Af};
    f.yJ = true;
    f.frakz = frakz;
    TraceSpec w{twisted ? Component::WfTw : Component::Wf};
    w.gammaJ = true;
    w.frakz = frakz;
    return component_trace(a) * component_trace(f) * component_trace(w);
}

} // namespace

QYSeries vsnat_trace(const ConjClass& c, Route route, long qmax24, long ylow)
{
    if (route == Route::Direct)
        return negate(phi_g(c, qmax24));
    // both sectors enter as (tr with frakz - tr without)/2
    GammaSeries gs = project(1, sector(c, false, true), sector(c, false, false)) +
                     project(1, sector(c, true, true), sector(c, true, false));
    return gamma_limit(gs, qmax24, ylow).truncated(qmax24, ylow);
}

QYSeries theorem_trace(const ConjClass& c, Construction k, long qmax24, long ylow)
{
    TraceSpec ap{Component::Ap4};
    ap.p0 = true;
    TraceSpec wb{Component::Wb};
    wb.yJ = true;
    FactorProduct outer = component_trace(ap) * component_trace(wb);
    long qv = qmax24 - outer.canonical().b0();
    QYSeries v = vsnat_trace(c, k == Construction::I ? Route::Direct : Route::T, qv, kNegInf);
    return expand_mul(outer, v, qmax24, ylow);
}

} // namespace mform
