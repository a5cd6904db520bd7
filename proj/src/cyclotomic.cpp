#include "mform/cyclotomic.hpp"

#include "mform/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mform {

Rational parse_rational(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

int euler_phi(int n)
{
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            r -= r / p;
        }
    }
    if (n > 1)
        r -= r / n;
    return r;
}

namespace {

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den)
{
    // den monic
    int dn = static_cast<int>(den.size()) - 1;
    int nn = static_cast<int>(num.size()) - 1;
    std::vector<long> q(nn - dn + 1, 0);
    for (int i = nn; i >= dn; --i) {
        long c = num[i];
        q[i - dn] = c;
        if (c != 0)
            for (int j = 0; j <= dn; ++j)
                num[i - dn + j] -= c * den[j];
    }
    return q;
}

std::vector<long> build_phi(int n)
{
    // x^n - 1 divided by Phi_d for proper divisors d
    std::vector<long> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0)
            p = poly_div_exact(p, cyclotomic_poly(d));
    return p;
}

} // namespace

const std::vector<long>& cyclotomic_poly(int n)
{
    if (n < 1)
        throw std::invalid_argument("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<int, std::vector<long>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end())
            return it->second;
    }
    auto p = build_phi(n);
    std::lock_guard<std::mutex> lock(mu);
    // std::map nodes are stable, so handing out references is fine
    return cache.emplace(n, std::move(p)).first->second;
}

template <class T>
static void reduce_impl(std::vector<T>& p, int n)
{
    const auto& phi = cyclotomic_poly(n);
    int d = static_cast<int>(phi.size()) - 1;
    for (int i = static_cast<int>(p.size()) - 1; i >= d; --i) {
        if (p[i] == 0)
            continue;
        T c = p[i];
        for (int j = 0; j <= d; ++j)
            if (phi[j] != 0)
                p[i - d + j] -= c * phi[j];
    }
    p.resize(d);
}

void reduce_mod_phi(std::vector<Rational>& p, int n) { reduce_impl(p, n); }
void reduce_mod_phi(std::vector<mpz_class>& p, int n) { reduce_impl(p, n); }

int lcm_order(int a, int b)
{
    return std::lcm(a, b);
}

Cyclotomic Cyclotomic::zeta(int n, long k)
{
    long m = ((k % n) + n) % n;
    std::vector<Rational> c(m + 1);
    c[m] = 1;
    return from_powers(n, std::move(c));
}

Cyclotomic Cyclotomic::from_powers(int n, std::vector<Rational> c)
{
    int d = euler_phi(n);
    if (static_cast<int>(c.size()) < d)
        c.resize(d);
    reduce_mod_phi(c, n);
    return Cyclotomic(n, std::move(c));
}

Cyclotomic Cyclotomic::embed(int m) const
{
    if (m == order_)
        return *this;
    if (m % order_ != 0)
        throw std::invalid_argument("embed: order does not divide target");
    int s = m / order_;
    std::vector<Rational> p(static_cast<size_t>(c_.size() - 1) * s + 1);
    for (size_t i = 0; i < c_.size(); ++i)
        p[i * s] = c_[i];
    return from_powers(m, std::move(p));
}

bool Cyclotomic::is_zero() const
{
    for (const auto& x : c_)
        if (x != 0)
            return false;
    return true;
}

bool Cyclotomic::is_rational() const
{
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0)
            return false;
    return true;
}

bool Cyclotomic::is_one() const
{
    return is_rational() && c_[0] == 1;
}

std::optional<Rational> Cyclotomic::rational() const
{
    if (!is_rational())
        return std::nullopt;
    return c_[0];
}

Cyclotomic Cyclotomic::galois(long k) const
{
    long n = order_;
    long kk = ((k % n) + n) % n;
    if (std::gcd(kk, n) != 1 && n > 1)
        throw std::invalid_argument("galois: exponent not a unit");
    std::vector<Rational> p(static_cast<size_t>(n));
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            p[(i * kk) % n] += c_[i];
    return from_powers(order_, std::move(p));
}

Cyclotomic Cyclotomic::inverse() const
{
    if (is_zero())
        throw DomainError("cyclotomic inverse of zero");
    if (is_rational())
        return Cyclotomic(order_, [&] {
            std::vector<Rational> c(c_.size());
            c[0] = 1 / c_[0];
            return c;
        }());
    // product of the other Galois conjugates is norm / x
    Cyclotomic rest(1);
    rest = rest.embed(order_);
    for (long k = 2; k < order_; ++k)
        if (std::gcd(k, static_cast<long>(order_)) == 1)
            rest *= galois(k);
    Cyclotomic norm = rest * *this;
    auto nv = norm.rational();
    if (!nv)
        throw RationalityError("cyclotomic norm not rational");
    Rational inv = 1 / *nv;
    for (auto& x : rest.c_)
        x *= inv;
    return rest;
}

Cyclotomic Cyclotomic::pow(long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Cyclotomic r = Cyclotomic(1).embed(order_);
    Cyclotomic b = *this;
    while (e > 0) {
        if (e & 1)
            r *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return r;
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic r = *this;
    for (auto& x : r.c_)
        x = -x;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o)
{
    if (o.order_ != order_) {
        int m = lcm_order(order_, o.order_);
        *this = embed(m);
        return *this += o.embed(m);
    }
    for (size_t i = 0; i < c_.size(); ++i)
        c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o)
{
    return *this += -o;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o)
{
    if (o.order_ != order_) {
        int m = lcm_order(order_, o.order_);
        *this = embed(m);
        return *this *= o.embed(m);
    }
    if (c_.size() == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    std::vector<Rational> p(2 * c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0)
                p[i + j] += c_[i] * o.c_[j];
    }
    reduce_mod_phi(p, order_);
    c_ = std::move(p);
    return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.order_ != b.order_) {
        int m = lcm_order(a.order_, b.order_);
        return a.embed(m).c_ == b.embed(m).c_;
    }
    return a.c_ == b.c_;
}

std::string Cyclotomic::str() const
{
    if (is_rational())
        return to_string(c_[0]);
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        if (!first)
            os << (c_[i] > 0 ? " + " : " - ");
        else if (c_[i] < 0)
            os << "-";
        first = false;
        Rational a = abs(c_[i]);
        if (i == 0) {
            os << a;
            continue;
        }
        if (a != 1)
            os << a << "*";
        os << "z" << order_;
        if (i > 1)
            os << "^" << i;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x)
{
    return os << x.str();
}

Rational rationality_check(const Cyclotomic& x)
{
    if (auto q = x.rational())
        return *q;
    std::ostringstream os;
    os << "not rational in Q(zeta_" << x.order() << "): residual";
    for (size_t i = 1; i < x.coeffs().size(); ++i)
        if (x.coeffs()[i] != 0)
            os << " [" << i << "]=" << x.coeffs()[i];
    throw RationalityError(os.str());
}

} // namespace mform
