#include "mform/classical_forms.hpp"
#include "mform/errors.hpp"
#include "mform/jacobi_forms.hpp"
#include "mform/trace_engine.hpp"

#include <doctest.h>

using namespace mform;

namespace {

const CharacterTable& table()
{
    static const CharacterTable t = load_class_data(std::string(MFORM_TEST_DATA_DIR) + "/m24_classes.json");
    return t;
}

QYSeries expand_spec(const std::string& s, const ConjClass* c, long Q, long L)
{
    TraceSpec spec = parse_trace_spec(s);
    spec.cls = c;
    return expand(component_trace(spec), Q, L);
}

} // namespace

TEST_CASE("trace spec parsing")
{
    TraceSpec s = parse_trace_spec("Aa_tw:ghat,frakz");
    CHECK(s.tag == Component::AaTw);
    CHECK(s.ghat);
    CHECK(s.frakz);
    CHECK_FALSE(s.p0);
    CHECK(parse_trace_spec("Ap4:p0").p0);
    CHECK_THROWS_AS(parse_trace_spec("Zz:p0"), UserError);
    CHECK_THROWS_AS(parse_trace_spec("Ap4:what"), UserError);
    CHECK(component_name(Component::WfTw) == "Wf_tw");
}

TEST_CASE("uncovered insertions are refused")
{
    CHECK_THROWS_AS(component_trace(parse_trace_spec("Ap4:ghat")), UserError);
    CHECK_THROWS_AS(component_trace(parse_trace_spec("Wb:p0")), UserError);
    CHECK_THROWS_AS(component_trace(parse_trace_spec("Aa:ghat")), UserError); // no class
    TraceSpec s = parse_trace_spec("Aa:ghat");
    s.cls = &table().find("3B");
    CHECK_THROWS_AS(component_trace(s), DomainError);
}

TEST_CASE("Ap4 trace is eta^4")
{
    CHECK(compare_on(expand_spec("Ap4:p0", nullptr, 240, kNegInf), eta_pow(4, 240), 240, kNegInf).equal);
}

TEST_CASE("-Wb trace times theta_1^2 is eta^2")
{
    const long Q = 144, L = -20;
    QYSeries w = expand_spec("Wb:yJ", nullptr, Q, L - 20);
    QYSeries p = mul_to(negate(w), theta1_sq(Q + 4, kNegInf), Q, L);
    CHECK(compare_on(p, eta_pow(2, Q), Q, L).equal);
}

TEST_CASE("Af with the parity involution, n = 1 factor")
{
    // q^(-1/12) (1 - y^-1 q^(1/2))^2 (1 - y q^(1/2))^2 ...
    QYSeries a = expand_spec("Af:yJ,frakz", nullptr, 10, kNegInf);
    CHECK(a.coeff(-2, 0) == Cyclotomic(1));
    CHECK(a.coeff(10, 1) == Cyclotomic(-2));
    CHECK(a.coeff(10, -1) == Cyclotomic(-2));
}

TEST_CASE("projections")
{
    FactorProduct a = theta1_sq_fp(), b = eta_pow_fp(3);
    const long Q = 96, L = -6;
    QYSeries p0 = gamma_limit(project(0, a, b), Q, L);
    QYSeries p1 = gamma_limit(project(1, a, b), Q, L);
    CHECK(compare_on(add(p0, p1), expand(a, Q, L), Q, L).equal);
    CHECK(gamma_limit(project(1, a, a), Q, L).term_count() == 0);
    // no gamma: passes through
    CHECK(compare_on(gamma_limit(GammaSeries(b), Q, L), eta_pow(3, Q), Q, L).equal);
}

TEST_CASE("frakz-inserted Wf_tw alone keeps a pole at gamma = -1")
{
    TraceSpec s = parse_trace_spec("Wf_tw:gammaJ,frakz");
    try {
        gamma_limit(GammaSeries(component_trace(s)), 48, -4);
        FAIL("no error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("pole") != std::string::npos);
    }
    // without frakz the n = 1 factor is (1 + 1)^-2
    CHECK_NOTHROW(gamma_limit(GammaSeries(component_trace(parse_trace_spec("Wf_tw:gammaJ"))), 48, -4));
}

TEST_CASE("both routes give -phi_g")
{
    const long Q = 96, L = -8;
    for (const char* name : {"1A", "2A", "3A", "5A", "7A", "10A", "15A"}) {
        const auto& c = table().find(name);
        QYSeries d = vsnat_trace(c, Route::Direct, Q, L);
        QYSeries t = vsnat_trace(c, Route::T, Q, L);
        CHECK_MESSAGE(compare_on(d, t, Q, L).equal, name);
    }
    QYSeries e = vsnat_trace(table().find("1A"), Route::Direct, 96, kNegInf);
    CHECK(compare_on(specialize_y_one(negate(e)), QYSeries::constant(Cyclotomic(24)), 96, kNegInf).equal);
}

TEST_CASE("theorem traces equal M~_g")
{
    const long Q = 96, L = -8;
    for (const char* name : {"1A", "4B", "11A", "14B"}) {
        const auto& c = table().find(name);
        QYSeries m = m_g_tilde(c, Q, L);
        QYSeries one = theorem_trace(c, Construction::I, Q, L);
        QYSeries two = theorem_trace(c, Construction::II, Q, L);
        CHECK_MESSAGE(compare_on(one, m, Q, L).equal, name);
        CHECK_MESSAGE(compare_on(two, m, Q, L).equal, name);
    }
}
