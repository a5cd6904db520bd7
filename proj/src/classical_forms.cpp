#include "mform/classical_forms.hpp"

#include "mform/errors.hpp"

#include <algorithm>
#include <sstream>

namespace mform {

namespace {

const Cyclotomic one{1};
const Cyclotomic minus_one{-1};

} // namespace

FactorProduct eta_pow_fp(long k)
{
    FactorProduct fp(one, 0, k);
    if (k != 0)
        fp.times(family(one, 0, 24, 0, k));
    return fp;
}

FactorProduct theta1_sq_fp()
{
    FactorProduct fp(minus_one, 1, 6);
    fp.times(family(one, -1, 24, -24, 2));
    fp.times(family(one, 1, 24, 0, 2));
    fp.times(family(one, 0, 24, 0, 2));
    return fp;
}

FactorProduct theta_quot_fp(int j)
{
    switch (j) {
    case 2: {
        // y prod (1 + y^-1 q^(n-1))^2 (1 + y q^n)^2 / (1 + q^(n-1))^2 (1 + q^n)^2
        FactorProduct fp(one, 1, 0);
        fp.times(family(minus_one, -1, 24, -24, 2));
        fp.times(family(minus_one, 1, 24, 0, 2));
        fp.times(family(minus_one, 0, 24, -24, -2));
        fp.times(family(minus_one, 0, 24, 0, -2));
        return fp;
    }
    case 3:
    case 4: {
        const Cyclotomic& c = j == 3 ? minus_one : one;
        FactorProduct fp(one);
        fp.times(family(c, -1, 24, -12, 2));
        fp.times(family(c, 1, 24, -12, 2));
        fp.times(family(c, 0, 24, -12, -4));
        return fp;
    }
    default:
        throw UserError("theta quotient index must be 2, 3 or 4");
    }
}

FactorProduct appell_prefactor_fp()
{
    FactorProduct fp(one, 0, -3);
    fp.times(family(one, -1, 24, -24, -1));
    fp.times(family(one, 1, 24, 0, -1));
    fp.times(family(one, 0, 24, 0, -1));
    return fp;
}

std::vector<FactorProduct> appell_terms(long qmax24)
{
    std::vector<FactorProduct> out;
    // n = 0: 1/(1-y) = -y^-1 / (1 - y^-1)
    out.push_back(FactorProduct(minus_one, -1, 0).times(single(one, -1, 0, -1)));
    for (long n = 1; 12 * n * (n + 1) <= qmax24; ++n) {
        Cyclotomic s = (n % 2 == 0) ? one : minus_one;
        out.push_back(FactorProduct(s, n, 12 * n * (n + 1)).times(single(one, 1, 24 * n, -1)));
    }
    // n = -m: (-1)^(m+1) y^(-m-1) q^(m(m+1)/2) / (1 - y^-1 q^m)
    for (long m = 1; 12 * m * (m + 1) <= qmax24; ++m) {
        Cyclotomic s = (m % 2 == 1) ? one : minus_one;
        out.push_back(FactorProduct(s, -m - 1, 12 * m * (m + 1)).times(single(one, -1, 24 * m, -1)));
    }
    return out;
}

long ymax_bound(long ycap, long qtop)
{
    if (ycap <= kNegInf)
        return kNegInf;
    if (qtop >= kInf || ycap >= kInf)
        return kInf;
    return floor_div(qtop + ycap, 12);
}

QYSeries mul_to(const QYSeries& a, const QYSeries& b, long qmax24, long ylow)
{
    QYSeries p = mul(a, b);
    if (p.is_exact_zero())
        return p;
    if (p.qmax24() < qmax24 || p.ylow() > ylow) {
        std::ostringstream os;
        os << "product reaches only qmax24=" << p.qmax24() << " ylow=" << p.ylow() << ", needed " << qmax24 << ", "
           << ylow;
        throw WindowError(os.str());
    }
    return p.truncated(qmax24, ylow);
}

QYSeries expand_mul(const FactorProduct& a, const QYSeries& b, long qmax24, long ylow)
{
    long qa = b.qmin24() >= kInf ? qmax24 : qmax24 - b.qmin24();
    long rb = b.max_r_upto(qmax24 - a.b0());
    // rb = -inf: b has nothing below the top, any finite la will do
    long la = ylow <= kNegInf ? kNegInf : rb <= kNegInf ? ylow : ylow - rb;
    QYSeries ea = expand(a, qa, la);
    return mul_to(ea, b, qmax24, ylow);
}

QYSeries eta_pow(long k, long qmax24)
{
    return expand(eta_pow_fp(k), qmax24, kNegInf);
}

QYSeries theta1_sq(long qmax24, long ylow)
{
    return expand(theta1_sq_fp(), qmax24, ylow);
}

QYSeries theta_quot(int j, long qmax24, long ylow)
{
    return expand(theta_quot_fp(j), qmax24, ylow);
}

QYSeries theta_quot_half(int j, const FactorProduct& pairing, long qmax24, long ylow)
{
    if (j != 3 && j != 4)
        throw UserError("half-lattice theta quotient needs j = 3 or 4");
    return expand(theta_quot_fp(j) * pairing, qmax24, ylow);
}

QYSeries appell_sum(long qmax24, long ylow)
{
    QYSeries s;
    bool first = true;
    for (const auto& t : appell_terms(qmax24)) {
        QYSeries e = expand(t, qmax24, ylow);
        s = first ? e : add(s, e);
        first = false;
    }
    return s;
}

QYSeries appell_times(const FactorProduct& extra, long qmax24, long ylow)
{
    FactorProduct pre = (extra * appell_prefactor_fp()).canonical();
    // the sum starts at q^0; its y powers are bounded by the prefactor's
    long qs = qmax24 - pre.b0();
    long ls = ylow - std::max(0L, ymax_bound(pre.ycap(), qmax24));
    QYSeries s = appell_sum(qs, ls);
    return expand_mul(pre, s, qmax24, ylow);
}

QYSeries appell_mu(long qmax24, long ylow)
{
    return appell_times(FactorProduct(one), qmax24, ylow);
}

QYSeries eta3mu(long qmax24, long ylow)
{
    return appell_times(eta_pow_fp(3), qmax24, ylow);
}

QYSeries f2(long qmax24)
{
    QYSeries s;
    s.set_window(qmax24, kNegInf, 24, -24);
    long top = qmax24 / 12; // bound on r*s
    for (long r = 2; r <= top; ++r)
        for (long t = 1; t < r && r * t <= top; ++t)
            if ((r - t) % 2 == 1)
                s.add_to(12 * r * t, 0, Cyclotomic(t));
    s.trim();
    return s;
}

} // namespace mform
