#include "mform/errors.hpp"
#include "mform/kernels.hpp"
#include "mform/series.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace mform;

namespace {

using Poly = std::map<std::pair<long, long>, Rational>;

// finite polynomial with exact bounds
QYSeries from_poly(const Poly& p)
{
    long qmin = kInf, ycap = kNegInf;
    for (const auto& [k, v] : p) {
        qmin = std::min(qmin, k.first);
        ycap = std::max(ycap, 12 * k.second - k.first);
    }
    QYSeries s;
    if (p.empty())
        return s;
    s.set_window(kInf, kNegInf, qmin, ycap);
    for (const auto& [k, v] : p)
        s.add_to(k.first, k.second, Cyclotomic(v));
    s.trim();
    return s;
}

Poly random_poly(std::mt19937& rng, int terms)
{
    std::uniform_int_distribution<long> q(-3, 60), r(-6, 4), c(-9, 9);
    Poly p;
    for (int i = 0; i < terms; ++i) {
        Rational v(c(rng), 1 + i % 2);
        v.canonicalize();
        p[{q(rng), r(rng)}] += v;
    }
    return p;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly c;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b)
            c[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
    return c;
}

Rational at(const Poly& p, long n, long r)
{
    auto it = p.find({n, r});
    return it == p.end() ? Rational(0) : it->second;
}

} // namespace

TEST_CASE("ring identities")
{
    std::mt19937 rng(11);
    QYSeries a = from_poly(random_poly(rng, 20)), b = from_poly(random_poly(rng, 20)),
             c = from_poly(random_poly(rng, 20));
    QYSeries one = QYSeries::constant(Cyclotomic(1));
    CHECK(compare_on(mul(a, one), a, kInf, kNegInf).equal);
    CHECK(compare_on(add(a, QYSeries()), a, kInf, kNegInf).equal);
    CHECK(compare_on(mul(a, b), mul(b, a), kInf, kNegInf).equal);
    CHECK(compare_on(mul(mul(a, b), c), mul(a, mul(b, c)), kInf, kNegInf).equal);
    CHECK(compare_on(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), kInf, kNegInf).equal);
    CHECK(sub(a, a).term_count() == 0);
    QYSeries n = scale(a, Cyclotomic(-1));
    for (const auto& t : a.terms())
        CHECK(n.coeff(t.n24, t.r) == -t.c);
}

TEST_CASE("products of finite polynomials against a map oracle")
{
    std::mt19937 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        Poly pa = random_poly(rng, 25), pb = random_poly(rng, 25);
        Poly pc = poly_mul(pa, pb);
        QYSeries c = mul(from_poly(pa), from_poly(pb));
        for (const auto& [k, v] : pc)
            CHECK(c.rational_coeff(k.first, k.second) == v);
        for (const auto& t : c.terms())
            CHECK(t.c == Cyclotomic(at(pc, t.n24, t.r)));
    }
}

TEST_CASE("kernels agree: parallel, serial, reference")
{
    std::mt19937 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        QYSeries a = from_poly(random_poly(rng, 40)).truncated(40, -3);
        QYSeries b = from_poly(random_poly(rng, 40)).truncated(50, -4);
        QYSeries p = kernels::mul_blocked(a, b, true);
        QYSeries s = kernels::mul_blocked(a, b, false);
        QYSeries r = kernels::mul_reference(a, b);
        CHECK(p.qmax24() == r.qmax24());
        CHECK(p.ylow() == r.ylow());
        CHECK(compare_on(p, s, p.qmax24(), p.ylow()).equal);
        CHECK(compare_on(p, r, p.qmax24(), p.ylow()).equal);
    }
}

TEST_CASE("window soundness: truncated inputs give the true product inside the reported window")
{
    std::mt19937 rng(19);
    for (int rep = 0; rep < 20; ++rep) {
        Poly pa = random_poly(rng, 30), pb = random_poly(rng, 30);
        Poly pc = poly_mul(pa, pb);
        std::uniform_int_distribution<long> qd(0, 50), yd(-5, 0);
        QYSeries a = from_poly(pa).truncated(qd(rng), yd(rng));
        QYSeries b = from_poly(pb).truncated(qd(rng), yd(rng));
        QYSeries c = mul(a, b);
        if (c.is_exact_zero())
            continue;
        for (long n = -6; n <= c.qmax24(); ++n)
            for (long r = std::max(c.ylow(), -12L); r <= 8; ++r)
                CHECK(c.rational_coeff(n, r) == at(pc, n, r));
        CHECK_NOTHROW(c.validate());
    }
}

TEST_CASE("coefficient access outside the window throws")
{
    QYSeries s = QYSeries::monomial(Cyclotomic(2), 3, 0).truncated(10, -2);
    CHECK(s.coeff(3, 0) == Cyclotomic(2));
    CHECK(s.coeff(0, 0).is_zero());
    CHECK_THROWS_AS(s.coeff(11, 0), WindowError);
    CHECK_THROWS_AS(s.coeff(3, -3), WindowError);
    CHECK(QYSeries::constant(Cyclotomic(1)).coeff(0, 0) == Cyclotomic(1));
}

TEST_CASE("y = 1 specialization and y-freeness")
{
    // -y + 2 - y^-1 at n24 = 6
    QYSeries t = add(add(QYSeries::monomial(Cyclotomic(-1), 6, 1), QYSeries::monomial(Cyclotomic(2), 6, 0)),
                     QYSeries::monomial(Cyclotomic(-1), 6, -1));
    CHECK(specialize_y_one(t).term_count() == 0);
    CHECK(specialize_y_one(QYSeries::constant(Cyclotomic(1))).coeff(0, 0) == Cyclotomic(1));
    CHECK_THROWS_AS(specialize_y_one(t.truncated(kInf, -1)), WindowError);

    auto res = check_y_free(t);
    CHECK_FALSE(res.ok);
    CHECK(res.n24 == 6);
    CHECK_THROWS_AS(assert_y_free(t), DomainError);
    CHECK_NOTHROW(assert_y_free(QYSeries::monomial(Cyclotomic(5), 24, 0)));
}

TEST_CASE("shift and field reduction")
{
    QYSeries m = QYSeries::monomial(Cyclotomic(3), 24, 1);
    QYSeries s = shift(m, -24, 2);
    CHECK(s.coeff(0, 3) == Cyclotomic(3));
    QYSeries z = add(QYSeries::monomial(Cyclotomic::zeta(3), 0, 0), QYSeries::monomial(Cyclotomic::zeta(3, 2), 0, 0));
    CHECK(z.order() % 3 == 0);
    QYSeries f = z.field_reduced();
    CHECK(f.order() == 1);
    CHECK(f.coeff(0, 0) == Cyclotomic(-1));
    CHECK(f.all_integral());
}
