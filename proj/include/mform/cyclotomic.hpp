#pragma once

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mform {

using Rational = mpq_class;

// "p/q" or "p"; throws std::invalid_argument on junk
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

int euler_phi(int n);
// integer coefficients of Phi_n, lowest degree first
const std::vector<long>& cyclotomic_poly(int n);

// reduce p (power basis in zeta_n, any length) modulo Phi_n in place;
// p is resized to deg Phi_n
void reduce_mod_phi(std::vector<Rational>& p, int n);
void reduce_mod_phi(std::vector<mpz_class>& p, int n);

// element of Q(zeta_N) in the power basis 1, z, ..., z^(phi(N)-1)
class Cyclotomic {
public:
    Cyclotomic() : order_(1), c_(1) {}
    Cyclotomic(const Rational& q) : order_(1), c_{q} {}
    Cyclotomic(long v) : order_(1), c_{Rational(v)} {}

    // zeta_n^k, any integer k
    static Cyclotomic zeta(int n, long k = 1);
    // coefficients w.r.t. 1, z, ..., z^(m-1) for any m; reduced on entry
    static Cyclotomic from_powers(int n, std::vector<Rational> c);

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    Cyclotomic embed(int m) const;
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    std::optional<Rational> rational() const;

    // zeta -> zeta^k, gcd(k, N) = 1
    Cyclotomic galois(long k) const;
    Cyclotomic conj() const { return galois(-1); }
    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    std::string str() const;

private:
    Cyclotomic(int n, std::vector<Rational> c) : order_(n), c_(std::move(c)) {}

    int order_;
    std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

int lcm_order(int a, int b);

// throws RationalityError carrying the residual coordinates
Rational rationality_check(const Cyclotomic& x);

} // namespace mform
