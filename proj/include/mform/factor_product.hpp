#pragma once

#include "mform/series.hpp"

#include <string>
#include <vector>

namespace mform {

inline constexpr long kFamilyEnd = -1; // n runs to infinity

// (1 - c * gamma^g * y^a * q^(b/24))^e with b = bstep * n + boff,
// for n = nfirst..nlast (nlast = kFamilyEnd for the infinite family)
struct Factor {
    Cyclotomic c{1};
    int gamma = 0;
    long a = 0;
    long bstep = 0;
    long boff = 0;
    long e = 1;
    long nfirst = 1;
    long nlast = 1;

    bool family() const { return nlast == kFamilyEnd; }
    long b_at(long n) const { return bstep * n + boff; }
    std::string str() const;
};

// single factor with fixed q exponent
Factor single(const Cyclotomic& c, long a, long b24, long e);
// family n = 1..inf with q exponent bstep*n + boff
Factor family(const Cyclotomic& c, long a, long bstep, long boff, long e, long nfirst = 1);

// prefactor scalar * gamma^g0 * y^a0 * q^(b0/24) times the factors
class FactorProduct {
public:
    FactorProduct() = default;
    explicit FactorProduct(const Cyclotomic& scalar, long a0 = 0, long b0 = 0, int gamma0 = 0)
        : scalar_(scalar), gamma0_(gamma0), a0_(a0), b0_(b0)
    {
    }

    const Cyclotomic& scalar() const { return scalar_; }
    int gamma0() const { return gamma0_; }
    long a0() const { return a0_; }
    long b0() const { return b0_; }
    const std::vector<Factor>& factors() const { return factors_; }

    FactorProduct& times(const Factor& f)
    {
        factors_.push_back(f);
        return *this;
    }
    FactorProduct& operator*=(const FactorProduct& o);
    friend FactorProduct operator*(FactorProduct a, const FactorProduct& b) { return a *= b; }
    FactorProduct inverse() const;
    FactorProduct pow(long k) const;

    bool has_gamma() const;
    // gamma -> value
    FactorProduct substitute_gamma(const Cyclotomic& value) const;
    // merges identical factors, drops e = 0, peels b = 0 members out of
    // families so they can meet their partners
    FactorProduct canonical() const;

    // bound C with 12 r <= n24 + C on the expanded product
    long ycap() const;

    std::string str() const;

private:
    Cyclotomic scalar_{1};
    int gamma0_ = 0;
    long a0_ = 0;
    long b0_ = 0;
    std::vector<Factor> factors_;
};

// coefficients exact for n24 <= qmax24 and r >= ylow; if no factor has an
// infinite y tail the result is exact in y (ylow = -inf)
QYSeries expand(const FactorProduct& fp, long qmax24, long ylow);

} // namespace mform
