#include "mform/jacobi_forms.hpp"

#include "mform/classical_forms.hpp"
#include "mform/errors.hpp"

#include <algorithm>
#include <fstream>

namespace mform {

FactorProduct eta3_over_theta1_sq_fp()
{
    return (eta_pow_fp(3) * theta1_sq_fp().inverse()).canonical();
}

FactorProduct eta6_over_theta1_sq_fp()
{
    return (eta_pow_fp(6) * theta1_sq_fp().inverse()).canonical();
}

FactorProduct theta1_sq_over_eta3_fp()
{
    return (theta1_sq_fp() * eta_pow_fp(-3)).canonical();
}

PhiParts phi_parts(const ConjClass& c, long qmax24)
{
    EigenData e = eigen_data(c);
    PhiParts p;
    p.theta4_g = expand(theta_quot_fp(4) * frame_eta(c, +1, true), qmax24, kNegInf);
    p.theta3_neg = expand(theta_quot_fp(3) * frame_eta(c, -1, true), qmax24, kNegInf);
    if (e.d_g != 0)
        p.d_term = scale(expand(frame_eta(c, +1, false) * theta1_sq_fp() * eta_pow_fp(-6), qmax24, kNegInf), e.d_g);
    if (e.c_neg != 0)
        p.c_term = scale(expand(frame_eta(c, -1, false) * theta_quot_fp(2), qmax24, kNegInf), e.c_neg);
    return p;
}

QYSeries phi_g(const ConjClass& c, long qmax24)
{
    PhiParts p = phi_parts(c, qmax24);
    QYSeries s = add(sub(p.theta4_g, p.theta3_neg), add(p.d_term, p.c_term));
    return scale(s, Rational(-1, 2)).truncated(qmax24, kNegInf);
}

QYSeries h_g_from_phi(const QYSeries& phi, long chi, long qmax24, long ylow)
{
    QYSeries polar = expand_mul(eta3_over_theta1_sq_fp(), phi, qmax24, ylow);
    QYSeries full = sub(polar, scale(appell_mu(qmax24, ylow), Cyclotomic(chi)));
    return assert_y_free(full.truncated(qmax24, ylow));
}

QYSeries h_g(const ConjClass& c, long qmax24, long ylow)
{
    return h_g_from_phi(phi_g(c, qmax24 + 3), c.chi(), qmax24, ylow);
}

namespace {

QYSeries times_eta3(const QYSeries& h, long qmax24)
{
    return mul_to(h, eta_pow(3, qmax24 - h.qmin24()), qmax24, kNegInf);
}

} // namespace

QYSeries m_g_tilde_from(const QYSeries& h, long chi, long qmax24, long ylow)
{
    QYSeries fin = times_eta3(h, qmax24);
    QYSeries pol = scale(eta3mu(qmax24, ylow), Cyclotomic(chi));
    return add(fin, pol).truncated(qmax24, ylow);
}

QYSeries q_g_from(const QYSeries& h, long chi, long qmax24)
{
    return sub(times_eta3(h, qmax24), scale(f2(qmax24), Cyclotomic(2 * chi))).truncated(qmax24, kNegInf);
}

QYSeries f_g_from(const QYSeries& h, const QYSeries& h_e, long chi, long qmax24)
{
    QYSeries a = scale(times_eta3(h_e, qmax24), Rational(chi, 24));
    return sub(a, times_eta3(h, qmax24)).truncated(qmax24, kNegInf);
}

QYSeries phi_times_eta6_over_theta1_sq(const QYSeries& phi, long qmax24, long ylow)
{
    return expand_mul(eta6_over_theta1_sq_fp(), phi, qmax24, ylow);
}

QYSeries f_g_from_phi(const QYSeries& phi, long chi, long qmax24, long ylow)
{
    QYSeries comb = sub(scale(z_k3_theta(qmax24), Rational(chi, 24)), phi);
    return assert_y_free(phi_times_eta6_over_theta1_sq(comb, qmax24, ylow).truncated(qmax24, ylow));
}

QYSeries m_g_tilde(const ConjClass& c, long qmax24, long ylow)
{
    return m_g_tilde_from(h_g(c, qmax24 - 3, ylow), c.chi(), qmax24, ylow);
}

QYSeries q_g(const ConjClass& c, long qmax24)
{
    return q_g_from(h_g(c, qmax24 - 3, -1), c.chi(), qmax24);
}

QYSeries f_g(const ConjClass& c, const ConjClass& identity, long qmax24)
{
    return f_g_from(h_g(c, qmax24 - 3, -1), h_g(identity, qmax24 - 3, -1), c.chi(), qmax24);
}

QYSeries z_k3_from(const QYSeries& h_e, long qmax24, long ylow)
{
    FactorProduct fp = theta1_sq_over_eta3_fp();
    QYSeries polar = scale(appell_times(fp, qmax24, ylow), Cyclotomic(24));
    QYSeries fin = expand_mul(fp, h_e, qmax24, ylow);
    return add(polar, fin).truncated(qmax24, ylow);
}

QYSeries z_k3(const ConjClass& identity, long qmax24, long ylow)
{
    return z_k3_from(h_g(identity, qmax24 - 3, ylow), qmax24, ylow);
}

QYSeries z_k3_theta(long qmax24)
{
    QYSeries s = add(theta_quot(2, qmax24, kNegInf), add(theta_quot(3, qmax24, kNegInf), theta_quot(4, qmax24, kNegInf)));
    return scale(s, Cyclotomic(8));
}

QYSeries phi01(const ConjClass& identity, long qmax24, long ylow)
{
    return scale(z_k3(identity, qmax24, ylow), Rational(1, 2));
}

QYSeries phi_neg21(long qmax24)
{
    return negate(expand(theta1_sq_fp() * eta_pow_fp(-6), qmax24, kNegInf));
}

AuxH parse_aux_h(const json& j, const CharacterTable& t)
{
    AuxH out;
    try {
        out.version = j.at("version").get<std::string>();
        for (const auto& jc : j.at("classes")) {
            std::string name = jc.at("name").get<std::string>();
            if (!t.has(name))
                throw DataError("aux H data names unknown class " + name);
            if (!t.find(name).excluded)
                throw DataError("aux H data given for allowed class " + name);
            if (out.h.count(name))
                throw DataError("aux H data repeats class " + name);
            long lead = jc.at("leading_exponent_24").get<long>();
            if (lead != -3)
                throw DataError("aux H for " + name + " must start at q^(-1/8)");
            const auto& cs = jc.at("coefficients");
            if (cs.empty())
                throw DataError("aux H for " + name + " has no coefficients");
            QYSeries s;
            long qmax = lead + 24 * (static_cast<long>(cs.size()) - 1);
            s.set_window(qmax, kNegInf, lead, -lead);
            long n24 = lead;
            for (const auto& v : cs) {
                Rational x = parse_rational(v.get<std::string>());
                if (x.get_den() != 1)
                    throw DataError("aux H for " + name + " has a non-integral coefficient at n24=" +
                                    std::to_string(n24));
                if (x != 0)
                    s.add_to(n24, 0, Cyclotomic(x));
                n24 += 24;
            }
            s.trim();
            if (!(s.coeff(lead, 0) == Cyclotomic(-2)))
                throw DataError("aux H for " + name + " does not lead with -2 q^(-1/8)");
            out.h.emplace(name, std::move(s));
        }
    } catch (const DataError&) {
        throw;
    } catch (const std::exception& e) {
        throw DataError(std::string("aux H schema error: ") + e.what());
    }
    return out;
}

AuxH load_aux_h(const std::string& path, const CharacterTable& t)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    return parse_aux_h(j, t);
}

Cyclotomic class_inner(const CharacterTable& t, const std::vector<Cyclotomic>& f, size_t irrep)
{
    Cyclotomic s;
    for (size_t k = 0; k < t.classes.size(); ++k) {
        if (f[k].is_zero())
            continue;
        const auto& c = t.classes[k];
        s += f[k] * c.characters[irrep].conj() * Cyclotomic(c.class_size());
    }
    return s * Cyclotomic(Rational(1, kM24Order));
}

MultiplicityResult multiplicity_series(const CharacterTable& t, const std::map<std::string, QYSeries>& m_tilde,
                                       const QYSeries& eta3mu_series, long nmax, long ylow)
{
    MultiplicityResult res;
    res.full = std::all_of(t.classes.begin(), t.classes.end(),
                           [&](const ConjClass& c) { return m_tilde.count(c.name) > 0; });
    const size_t nc = t.classes.size();
    for (long n = 0; n <= nmax; ++n) {
        const long n24 = 24 * n;
        long rmax = eta3mu_series.max_r_upto(n24);
        for (const auto& [name, s] : m_tilde)
            rmax = std::max(rmax, s.max_r_upto(n24));
        for (long r = ylow; r <= rmax; ++r) {
            MultiplicityEntry e;
            e.n = n;
            e.r = r;
            std::vector<Cyclotomic> f(nc);
            for (size_t k = 0; k < nc; ++k) {
                const auto& c = t.classes[k];
                auto it = m_tilde.find(c.name);
                if (it != m_tilde.end())
                    f[k] = it->second.coeff(n24, r);
                else if (r != 0)
                    f[k] = eta3mu_series.coeff(n24, r) * Cyclotomic(c.chi());
                else
                    e.checkable = false;
            }
            if (!e.checkable) {
                ++res.skipped;
                res.entries.push_back(std::move(e));
                continue;
            }
            ++res.checked;
            for (size_t i = 0; i < t.irreps.size(); ++i) {
                Rational m = rationality_check(class_inner(t, f, i));
                if (m.get_den() != 1)
                    res.problems.push_back("m_" + t.irreps[i].label + "(n=" + std::to_string(n) +
                                           ", r=" + std::to_string(r) + ") = " + to_string(m));
                e.m.push_back(m);
            }
            res.entries.push_back(std::move(e));
        }
    }
    return res;
}

} // namespace mform
