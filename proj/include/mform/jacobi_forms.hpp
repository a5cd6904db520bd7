#pragma once

#include "mform/m24_data.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mform {

// eta^3 / theta_1^2, eta^6 / theta_1^2, theta_1^2 / eta^3
FactorProduct eta3_over_theta1_sq_fp();
FactorProduct eta6_over_theta1_sq_fp();
FactorProduct theta1_sq_over_eta3_fp();

// the four brackets of the closed form; phi_g = -(theta + eta) / 2
struct PhiParts {
    QYSeries theta4_g;   // theta_4 quotient * eta_g(tau/2)/eta_g(tau)
    QYSeries theta3_neg; // theta_3 quotient * eta_{-g}(tau/2)/eta_{-g}(tau)
    QYSeries d_term;     // D_g eta_g theta_1^2 / eta^6
    QYSeries c_term;     // C_{-g} eta_{-g} theta_2 quotient
};
PhiParts phi_parts(const ConjClass& c, long qmax24);

// weak Jacobi form of weight 0, index 1; exact in y
QYSeries phi_g(const ConjClass& c, long qmax24);

// H_g from phi_g eta^3/theta_1^2 - chi mu; y-freeness is checked on r >= ylow
QYSeries h_g(const ConjClass& c, long qmax24, long ylow);
QYSeries h_g_from_phi(const QYSeries& phi, long chi, long qmax24, long ylow);

QYSeries m_g_tilde_from(const QYSeries& h, long chi, long qmax24, long ylow);
QYSeries q_g_from(const QYSeries& h, long chi, long qmax24);
QYSeries f_g_from(const QYSeries& h, const QYSeries& h_e, long chi, long qmax24);
// chi/24 Z eta^6/theta_1^2 - phi eta^6/theta_1^2, with Z the theta-quotient sum
QYSeries f_g_from_phi(const QYSeries& phi, long chi, long qmax24, long ylow);

QYSeries m_g_tilde(const ConjClass& c, long qmax24, long ylow);
QYSeries q_g(const ConjClass& c, long qmax24);
QYSeries f_g(const ConjClass& c, const ConjClass& identity, long qmax24);

// 24 mu theta_1^2/eta^3 + H_e theta_1^2/eta^3
QYSeries z_k3_from(const QYSeries& h_e, long qmax24, long ylow);
QYSeries z_k3(const ConjClass& identity, long qmax24, long ylow);
// 8 (theta_2 + theta_3 + theta_4 quotients)
QYSeries z_k3_theta(long qmax24);
QYSeries phi01(const ConjClass& identity, long qmax24, long ylow);
QYSeries phi_neg21(long qmax24);

// phi eta^6 / theta_1^2
QYSeries phi_times_eta6_over_theta1_sq(const QYSeries& phi, long qmax24, long ylow);

// H_g for excluded classes, supplied from outside
struct AuxH {
    std::string version;
    std::map<std::string, QYSeries> h;
};
AuxH parse_aux_h(const json& j, const CharacterTable& t);
AuxH load_aux_h(const std::string& path, const CharacterTable& t);

struct MultiplicityEntry {
    long n = 0;
    long r = 0;
    std::vector<Rational> m; // one per irrep
    bool checkable = true;   // every class contributes a known coefficient
};

struct MultiplicityResult {
    bool full = false; // all 26 classes supplied
    std::vector<MultiplicityEntry> entries;
    std::vector<std::string> problems; // non-integral entries among the checkable ones
    long checked = 0;
    long skipped = 0;
};

// class function n,r -> coefficient of M~_g; classes missing from m_tilde
// are filled on r != 0 slices by chi(g) eta^3 mu, which is all of M~_g there
MultiplicityResult multiplicity_series(const CharacterTable& t, const std::map<std::string, QYSeries>& m_tilde,
                                       const QYSeries& eta3mu_series, long nmax, long ylow);

// inner product (1/|G|) sum |cl| f(g) conj(chi_i(g))
Cyclotomic class_inner(const CharacterTable& t, const std::vector<Cyclotomic>& f, size_t irrep);

} // namespace mform
