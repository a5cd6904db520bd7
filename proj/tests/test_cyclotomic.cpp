#include "mform/cyclotomic.hpp"
#include "mform/errors.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace mform;

namespace {

int mobius(int n)
{
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        m = -m;
    }
    return n > 1 ? -m : m;
}

Cyclotomic random_element(std::mt19937& rng, int n)
{
    std::uniform_int_distribution<int> d(-5, 5);
    Cyclotomic x;
    for (int k = 0; k < n; ++k)
    {
        Rational v(d(rng), 1 + (k % 3));
        v.canonicalize();
        x += Cyclotomic(v) * Cyclotomic::zeta(n, k);
    }
    return x;
}

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b)
{
    std::vector<long> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

} // namespace

TEST_CASE("examples from the arithmetic layer")
{
    CHECK((Cyclotomic::zeta(4).pow(12) - Cyclotomic(1)).is_zero());
    Cyclotomic s = Cyclotomic::zeta(3) + Cyclotomic::zeta(3, 2);
    CHECK(s == Cyclotomic(-1));
    CHECK(rationality_check(s) == -1);
    CHECK_THROWS_AS(rationality_check(Cyclotomic::zeta(5)), RationalityError);
}

TEST_CASE("euler_phi against a gcd count")
{
    for (int n = 1; n <= 120; ++n) {
        int c = 0;
        for (int k = 1; k <= n; ++k)
            c += std::gcd(k, n) == 1;
        CHECK(euler_phi(n) == c);
    }
}

TEST_CASE("product of Phi_d over d | n is x^n - 1")
{
    for (int n = 1; n <= 60; ++n) {
        std::vector<long> p{1};
        for (int d = 1; d <= n; ++d)
            if (n % d == 0)
                p = poly_mul(p, cyclotomic_poly(d));
        std::vector<long> want(n + 1, 0);
        want[0] = -1;
        want[n] = 1;
        CHECK(p == want);
        CHECK(static_cast<int>(cyclotomic_poly(n).size()) == euler_phi(n) + 1);
    }
}

TEST_CASE("sum of primitive n-th roots is the Moebius function")
{
    for (int n = 1; n <= 60; ++n) {
        Cyclotomic s;
        for (int k = 1; k <= n; ++k)
            if (std::gcd(k, n) == 1)
                s += Cyclotomic::zeta(n, k);
        CHECK(s == Cyclotomic(mobius(n)));
    }
}

TEST_CASE("field axioms on random elements")
{
    std::mt19937 rng(7);
    for (int n : {1, 3, 4, 5, 8, 12, 15, 20, 60}) {
        for (int rep = 0; rep < 4; ++rep) {
            Cyclotomic a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, n);
            CHECK((a + b) == (b + a));
            CHECK((a * b) == (b * a));
            CHECK(((a * b) * c) == (a * (b * c)));
            CHECK((a * (b + c)) == (a * b + a * c));
            CHECK((a - a).is_zero());
            if (!a.is_zero())
                CHECK((a * a.inverse()).is_one());
        }
    }
}

TEST_CASE("embedding and mixed orders")
{
    Cyclotomic i = Cyclotomic::zeta(4);
    CHECK(i.embed(12) == i);
    CHECK(i * i == Cyclotomic(-1));
    // zeta_3 * zeta_4 = zeta_12^7
    CHECK(Cyclotomic::zeta(3) * i == Cyclotomic::zeta(12, 7));
    CHECK(Cyclotomic(Rational(1, 2)).embed(60).rational() == Rational(1, 2));
}

TEST_CASE("galois action and conjugation")
{
    // golden ratio: zeta_5 + zeta_5^-1 satisfies x^2 + x - 1 = 0
    Cyclotomic x = Cyclotomic::zeta(5) + Cyclotomic::zeta(5, -1);
    CHECK((x * x + x - Cyclotomic(1)).is_zero());
    CHECK(x.conj() == x);
    Cyclotomic z = Cyclotomic::zeta(7, 2);
    CHECK(z.galois(3) == Cyclotomic::zeta(7, 6));
    CHECK((z * z.conj()).is_one());
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == -4);
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK_THROWS(parse_rational("x/2"));
}
