#include "mform/classical_forms.hpp"
#include "mform/errors.hpp"

#include <doctest.h>

using namespace mform;

namespace {

// sum_n (-1)^n (2n+1) q^((2n+1)^2/8)
QYSeries eta3_sum(long Q)
{
    QYSeries s;
    s.set_window(Q, kNegInf, 3, -3);
    for (long n = 0; 3 * (2 * n + 1) * (2 * n + 1) <= Q; ++n)
        s.add_to(3 * (2 * n + 1) * (2 * n + 1), 0, Cyclotomic((n % 2 ? -1 : 1) * (2 * n + 1)));
    s.trim();
    return s;
}

// theta_3(tau, z) = sum q^(n^2/2) y^n, theta_3(tau, 0) likewise
QYSeries theta3_sum(long Q, bool with_y)
{
    QYSeries s;
    s.set_window(Q, kNegInf, 0, 12);
    for (long n = -20; n <= 20; ++n)
        if (12 * n * n <= Q)
            s.add_to(12 * n * n, with_y ? n : 0, Cyclotomic(1));
    s.trim();
    return s;
}

} // namespace

TEST_CASE("eta^3 against the Jacobi sum")
{
    CHECK(compare_on(eta_pow(3, 240), eta3_sum(240), 240, kNegInf).equal);
    QYSeries s = eta_pow(3, 75);
    CHECK(s.coeff(75, 0) == Cyclotomic(5));
    CHECK(compare_on(eta_pow(0, 100), QYSeries::constant(Cyclotomic(1)), 100, kNegInf).equal);
}

TEST_CASE("eta^24 gives the tau function")
{
    QYSeries d = eta_pow(24, 24 * 6);
    long tau[] = {1, -24, 252, -1472, 4830, -6048};
    for (long n = 0; n < 6; ++n)
        CHECK(d.coeff(24 + 24 * n, 0) == Cyclotomic(tau[n]));
}

TEST_CASE("theta_1^2 leading slice and zero at y = 1")
{
    QYSeries t = theta1_sq(120, kNegInf);
    CHECK(t.coeff(6, 1) == Cyclotomic(-1));
    CHECK(t.coeff(6, 0) == Cyclotomic(2));
    CHECK(t.coeff(6, -1) == Cyclotomic(-1));
    CHECK(specialize_y_one(t).term_count() == 0);
}

TEST_CASE("theta quotients")
{
    // j = 2 at q^0: (y + 2 + y^-1)/4
    QYSeries t2 = theta_quot(2, 48, kNegInf);
    CHECK(t2.coeff(0, 1) == Cyclotomic(Rational(1, 4)));
    CHECK(t2.coeff(0, 0) == Cyclotomic(Rational(1, 2)));
    CHECK(t2.coeff(0, -1) == Cyclotomic(Rational(1, 4)));
    // j = 3, 4 at y = 1 are 1
    for (int j : {2, 3, 4}) {
        QYSeries z = specialize_y_one(theta_quot(j, 144, kNegInf));
        CHECK(compare_on(z, QYSeries::constant(Cyclotomic(1)), 144, kNegInf).equal);
    }
    // j = 4 at q^(1/2): -2y + 4 - 2y^-1
    QYSeries t4 = theta_quot(4, 12, kNegInf);
    CHECK(t4.coeff(12, 1) == Cyclotomic(-2));
    CHECK(t4.coeff(12, 0) == Cyclotomic(4));
    CHECK(t4.coeff(12, -1) == Cyclotomic(-2));
}

TEST_CASE("theta_3 quotient times theta_3(0)^2 is theta_3(z)^2")
{
    const long Q = 192;
    QYSeries z = theta3_sum(Q, true), c = theta3_sum(Q, false);
    QYSeries lhs = mul(theta_quot(3, Q, kNegInf), mul(c, c));
    CHECK(compare_on(lhs, mul(z, z), Q, kNegInf).equal);
}

TEST_CASE("eta^3 mu")
{
    QYSeries s = eta3mu(240, -40);
    for (long m = 1; m <= 40; ++m)
        CHECK(s.coeff(0, -m) == Cyclotomic(-m));
    CHECK(s.coeff(0, 0).is_zero());
    CHECK(s.all_integral());
}

TEST_CASE("mu theta_1^2 is a y-polynomial at every q-order")
{
    QYSeries a = appell_times(theta1_sq_fp(), 120, -30);
    // the y tail stops well above the window edge
    for (const auto& t : a.terms())
        CHECK(t.r > -20);
}

TEST_CASE("F2 against a divisor enumeration")
{
    const long N = 30;
    QYSeries f = f2(24 * N);
    for (long n = 1; n <= N; ++n) {
        long want = 0;
        for (long s = 1; s * s < 2 * n; ++s)
            if ((2 * n) % s == 0) {
                long r = 2 * n / s;
                if (r > s && (r - s) % 2 == 1)
                    want += s;
            }
        CHECK(f.coeff(24 * n, 0) == Cyclotomic(want));
    }
    CHECK(f.coeff(72, 0) == Cyclotomic(3));
}

TEST_CASE("mul_to refuses a window the product cannot reach")
{
    QYSeries a = eta_pow(1, 24);
    CHECK_THROWS_AS(mul_to(a, a, 48, kNegInf), WindowError);
}
