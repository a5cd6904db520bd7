#include "mform/classical_forms.hpp"
#include "mform/errors.hpp"
#include "mform/factor_product.hpp"

#include <doctest.h>

#include <vector>

using namespace mform;

namespace {

const Cyclotomic one(1);

// brute-force prod_{n=1..N} (1 - q^n)^k in integer q-powers
std::vector<mpz_class> brute_eta(long k, long N)
{
    std::vector<mpz_class> p(N + 1, 0);
    p[0] = 1;
    for (long n = 1; n <= N; ++n) {
        long e = k < 0 ? -k : k;
        for (long rep = 0; rep < e; ++rep) {
            if (k > 0)
                for (long m = N; m >= n; --m)
                    p[m] -= p[m - n];
            else
                for (long m = n; m <= N; ++m)
                    p[m] += p[m - n];
        }
    }
    return p;
}

} // namespace

TEST_CASE("eta^3 factor form to q^2")
{
    QYSeries s = expand(eta_pow_fp(3), 51, 0);
    CHECK(s.coeff(3, 0) == Cyclotomic(1));
    CHECK(s.coeff(27, 0) == Cyclotomic(-3));
    CHECK(s.coeff(51, 0).is_zero());
}

TEST_CASE("empty product is 1")
{
    QYSeries s = expand(FactorProduct(one), 100, -5);
    CHECK(s.term_count() == 1);
    CHECK(s.coeff(0, 0) == Cyclotomic(1));
}

TEST_CASE("(1 - y^-1)^-2 to y^-3")
{
    FactorProduct fp(one);
    fp.times(single(one, -1, 0, -2));
    QYSeries s = expand(fp, 0, -3);
    for (long k = 0; k <= 3; ++k)
        CHECK(s.coeff(0, -k) == Cyclotomic(k + 1));
    CHECK_THROWS_AS(expand(fp, 0, kNegInf), WindowError);
}

TEST_CASE("eta powers against brute-force products")
{
    for (long k : {-3L, -1L, 1L, 2L, 5L, 24L}) {
        auto want = brute_eta(k, 12);
        QYSeries s = expand(eta_pow_fp(k), k + 24 * 12, 0);
        for (long n = 0; n <= 12; ++n)
            CHECK(s.rational_coeff(k + 24 * n, 0) == Rational(want[n]));
    }
}

TEST_CASE("expansion is multiplicative")
{
    FactorProduct a = theta1_sq_fp(), b = eta_pow_fp(3), c = theta_quot_fp(3);
    const long Q = 120, L = -8;
    QYSeries direct = expand(a * b * c, Q, L);
    QYSeries ea = expand(a, Q, kNegInf), eb = expand(b, Q, kNegInf), ec = expand(c, Q, kNegInf);
    QYSeries prod = mul(mul(ea, eb), ec);
    CHECK(compare_on(direct, prod, Q - 6, L).equal);
}

TEST_CASE("symbolic cancellation")
{
    FactorProduct t = theta1_sq_fp();
    QYSeries s = expand((t * t.inverse()).canonical(), 200, -10);
    CHECK(compare_on(s, QYSeries::constant(one), 200, -10).equal);
    // theta_1^2 * (1/theta_1^2 expanded separately) = 1 in the window
    QYSeries inv = expand(t.inverse(), 200, -30);
    QYSeries p = mul(expand(t, 206, kNegInf), inv);
    CHECK(compare_on(p, QYSeries::constant(one), 180, -10).equal);
}

TEST_CASE("eta^3 * eta = eta^4 from its own factor form")
{
    QYSeries a = mul(eta_pow(3, 240), eta_pow(1, 240));
    CHECK(compare_on(a, eta_pow(4, 240), 240, kNegInf).equal);
}

TEST_CASE("gamma substitution")
{
    FactorProduct fp(one, 0, 0, 1);
    Factor f = single(one, 0, 24, 1);
    f.gamma = 1;
    fp.times(f);
    CHECK(fp.has_gamma());
    FactorProduct at = fp.substitute_gamma(Cyclotomic(-1)).canonical();
    CHECK_FALSE(at.has_gamma());
    // -(1 + q)
    QYSeries s = expand(at, 48, kNegInf);
    CHECK(s.coeff(0, 0) == Cyclotomic(-1));
    CHECK(s.coeff(24, 0) == Cyclotomic(-1));
}

TEST_CASE("a vanishing factor with negative exponent is a pole")
{
    FactorProduct fp(one);
    fp.times(single(one, 0, 0, -1));
    CHECK_THROWS_AS(expand(fp.canonical(), 24, kNegInf), DomainError);
}
