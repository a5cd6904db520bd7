#include "mform/classical_forms.hpp"
#include "mform/errors.hpp"
#include "mform/jacobi_forms.hpp"

#include <doctest.h>

#include <fstream>

using namespace mform;

namespace {

const CharacterTable& table()
{
    static const CharacterTable t = load_class_data(std::string(MFORM_TEST_DATA_DIR) + "/m24_classes.json");
    return t;
}

size_t irrep(const std::string& label)
{
    const auto& t = table();
    for (size_t i = 0; i < t.irreps.size(); ++i)
        if (t.irreps[i].label == label)
            return i;
    throw std::runtime_error("no irrep " + label);
}

std::vector<const ConjClass*> allowed()
{
    std::vector<const ConjClass*> out;
    for (const auto& c : table().classes)
        if (is_allowed(c))
            out.push_back(&c);
    return out;
}

} // namespace

TEST_CASE("phi_e at q^0 and phi_g(tau, 0)")
{
    const auto& t = table();
    QYSeries p = phi_g(t.find("1A"), 96);
    CHECK(p.coeff(0, -1) == Cyclotomic(2));
    CHECK(p.coeff(0, 0) == Cyclotomic(20));
    CHECK(p.coeff(0, 1) == Cyclotomic(2));
    for (const ConjClass* c : allowed()) {
        QYSeries z = specialize_y_one(phi_g(*c, 96));
        CHECK_MESSAGE(compare_on(z, QYSeries::constant(Cyclotomic(c->chi())), 96, kNegInf).equal, c->name);
    }
}

TEST_CASE("second bracket of phi_2A vanishes")
{
    PhiParts p = phi_parts(table().find("2A"), 96);
    CHECK(p.d_term.term_count() == 0);
    CHECK(p.c_term.term_count() == 0);
}

TEST_CASE("phi_e equals the theta-quotient form of the K3 elliptic genus")
{
    CHECK(compare_on(phi_g(table().find("1A"), 120), z_k3_theta(120), 120, kNegInf).equal);
}

TEST_CASE("H_g coefficients are the characters of the first moonshine modules")
{
    const auto& t = table();
    // grades 1..4: 45 + 45', 231 + 231', 770 + 770', 2277 + 2277
    std::vector<std::pair<size_t, size_t>> mods{{irrep("45a"), irrep("45b")},
                                                {irrep("231a"), irrep("231b")},
                                                {irrep("770a"), irrep("770b")},
                                                {irrep("2277"), irrep("2277")}};
    for (const ConjClass* c : allowed()) {
        QYSeries h = h_g(*c, 93, -12);
        CHECK(h.coeff(-3, 0) == Cyclotomic(-2));
        CHECK(h.all_integral());
        for (size_t n = 0; n < mods.size(); ++n) {
            Cyclotomic want = c->characters[mods[n].first] + c->characters[mods[n].second];
            CHECK_MESSAGE(h.coeff(21 + 24 * static_cast<long>(n), 0) == want, c->name << " grade " << n + 1);
        }
    }
    (void)t;
}

TEST_CASE("H_e extraction is y-free with the known leading terms")
{
    QYSeries he = h_g(table().find("1A"), 69, -20);
    CHECK(he.coeff(-3, 0) == Cyclotomic(-2));
    CHECK(he.coeff(21, 0) == Cyclotomic(90));
    CHECK(he.coeff(45, 0) == Cyclotomic(462));
    CHECK(he.coeff(69, 0) == Cyclotomic(1540));
    CHECK(check_y_free(he).ok);
}

TEST_CASE("M~_e at q^0")
{
    QYSeries m = m_g_tilde(table().find("1A"), 48, -15);
    CHECK(m.coeff(0, 0) == Cyclotomic(-2));
    for (long k = 1; k <= 15; ++k)
        CHECK(m.coeff(0, -k) == Cyclotomic(-24 * k));
}

TEST_CASE("M~_g assembled two ways")
{
    const auto& c = table().find("7A");
    QYSeries h = h_g(c, 120, -10);
    QYSeries a = m_g_tilde_from(h, c.chi(), 120, -10);
    QYSeries b = add(mul_to(h, eta_pow(3, 120 - h.qmin24()), 120, kNegInf), scale(eta3mu(120, -10), Cyclotomic(c.chi())));
    CHECK(compare_on(a, b, 120, -10).equal);
}

TEST_CASE("decomposition of phi_g eta^6 / theta_1^2")
{
    const long Q = 96, L = -8;
    QYSeries pol = add(eta3mu(Q, L), scale(f2(Q), Cyclotomic(2)));
    for (const char* name : {"1A", "2B", "4A", "5A", "12A", "15B"}) {
        const auto& c = table().find(name);
        QYSeries phi = phi_g(c, Q + 3);
        QYSeries lhs = phi_times_eta6_over_theta1_sq(phi, Q, L);
        QYSeries rhs = add(scale(pol, Cyclotomic(c.chi())), q_g_from(h_g_from_phi(phi, c.chi(), Q, L), c.chi(), Q));
        CHECK_MESSAGE(compare_on(lhs, rhs, Q, L).equal, name);
    }
}

TEST_CASE("two expressions for F_g agree; F_e = 0")
{
    const long Q = 144;
    const auto& e = table().find("1A");
    CHECK(f_g(e, e, Q).term_count() == 0);
    for (const char* name : {"2A", "3A", "6A", "8A", "14A"}) {
        const auto& c = table().find(name);
        QYSeries a = f_g(c, e, Q);
        QYSeries b = f_g_from_phi(phi_g(c, Q + 3), c.chi(), Q, -10);
        CHECK_MESSAGE(compare_on(a, b, Q, kNegInf).equal, name);
    }
}

TEST_CASE("Z_K3 from H_e matches the theta-quotient form")
{
    const long Q = 96, L = -10;
    QYSeries z = z_k3(table().find("1A"), Q, L);
    CHECK(compare_on(z, z_k3_theta(Q), Q, L).equal);
    QYSeries p = phi01(table().find("1A"), Q, L);
    CHECK(p.coeff(0, 0) == Cyclotomic(10));
    CHECK(specialize_y_one(phi_neg21(96)).term_count() == 0);
}

TEST_CASE("class inner products")
{
    const auto& t = table();
    std::vector<Cyclotomic> ones(t.classes.size(), Cyclotomic(1));
    CHECK(class_inner(t, ones, irrep("1")) == Cyclotomic(1));
    CHECK(class_inner(t, ones, irrep("23")).is_zero());
    std::vector<Cyclotomic> perm;
    for (const auto& c : t.classes)
        perm.push_back(Cyclotomic(c.chi()));
    CHECK(class_inner(t, perm, irrep("23")) == Cyclotomic(1));
}

TEST_CASE("multiplicities from a full synthetic data set are integral")
{
    // chi(g) eta^3 mu for every class: multiplicities are those of 1 + 23
    const auto& t = table();
    const long Q = 72, L = -6;
    QYSeries base = eta3mu(Q, L);
    std::map<std::string, QYSeries> mt;
    for (const auto& c : t.classes)
        mt.emplace(c.name, scale(base, Cyclotomic(c.chi())));
    MultiplicityResult r = multiplicity_series(t, mt, base, 3, L);
    CHECK(r.full);
    CHECK(r.problems.empty());
    CHECK(r.skipped == 0);
    CHECK(r.checked > 0);
    for (const auto& e : r.entries) {
        Rational c = base.rational_coeff(24 * e.n, e.r);
        CHECK(e.m[irrep("1")] == c);
        CHECK(e.m[irrep("23")] == c);
        CHECK(e.m[irrep("45a")] == 0);
    }
}

TEST_CASE("non-class-function input is caught")
{
    const auto& t = table();
    QYSeries base = eta3mu(24, -2);
    std::map<std::string, QYSeries> mt;
    for (const auto& c : t.classes)
        mt.emplace(c.name, c.name == "2A" ? scale(base, Cyclotomic(2)) : QYSeries());
    MultiplicityResult r = multiplicity_series(t, mt, base, 1, -2);
    CHECK_FALSE(r.problems.empty());
}

TEST_CASE("missing classes: r = 0 slices are skipped, the rest checked")
{
    const auto& t = table();
    const long Q = 48, L = -4;
    QYSeries base = eta3mu(Q, L);
    std::map<std::string, QYSeries> mt;
    for (const auto& c : t.classes)
        if (is_allowed(c))
            mt.emplace(c.name, m_g_tilde(c, Q, L));
    MultiplicityResult r = multiplicity_series(t, mt, base, 2, L);
    CHECK_FALSE(r.full);
    CHECK(r.skipped == 3);
    CHECK(r.problems.empty());
    for (const auto& e : r.entries)
        CHECK(e.checkable == (e.r != 0));
}

TEST_CASE("aux H validation")
{
    const auto& t = table();
    auto make = [](const std::string& name, const std::vector<std::string>& c) {
        json j;
        j["version"] = "test";
        j["classes"] = json::array({{{"name", name}, {"leading_exponent_24", -3}, {"coefficients", c}}});
        return j;
    };
    AuxH ok = parse_aux_h(make("3B", {"-2", "0", "6"}), t);
    CHECK(ok.h.at("3B").coeff(45, 0) == Cyclotomic(6));
    CHECK(ok.h.at("3B").qmax24() == 45);
    CHECK_THROWS_AS(parse_aux_h(make("2A", {"-2"}), t), DataError);
    CHECK_THROWS_AS(parse_aux_h(make("3B", {"2"}), t), DataError);
    CHECK_THROWS_AS(parse_aux_h(make("3B", {"-2", "1/2"}), t), DataError);
    CHECK_THROWS_AS(parse_aux_h(make("9Z", {"-2"}), t), DataError);
    CHECK_THROWS_AS(load_aux_h("/nonexistent/aux.json", t), DataError);
}
