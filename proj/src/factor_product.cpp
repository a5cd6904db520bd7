#include "mform/factor_product.hpp"

#include "mform/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mform {

Factor single(const Cyclotomic& c, long a, long b24, long e)
{
    Factor f;
    f.c = c;
    f.a = a;
    f.bstep = 0;
    f.boff = b24;
    f.e = e;
    f.nfirst = f.nlast = 1;
    return f;
}

Factor family(const Cyclotomic& c, long a, long bstep, long boff, long e, long nfirst)
{
    Factor f;
    f.c = c;
    f.a = a;
    f.bstep = bstep;
    f.boff = boff;
    f.e = e;
    f.nfirst = nfirst;
    f.nlast = kFamilyEnd;
    return f;
}

std::string Factor::str() const
{
    std::ostringstream os;
    os << "(1 - (" << c.str() << ")";
    if (gamma != 0)
        os << "*gamma^" << gamma;
    if (a != 0)
        os << "*y^" << a;
    os << "*q^(";
    if (bstep != 0 && nlast != nfirst)
        os << bstep << "n" << (boff >= 0 ? "+" : "") << boff;
    else
        os << b_at(nfirst);
    os << ")/24)^" << e;
    if (nlast != nfirst || bstep != 0) {
        os << " n=" << nfirst << "..";
        if (family())
            os << "inf";
        else
            os << nlast;
    }
    return os.str();
}

FactorProduct& FactorProduct::operator*=(const FactorProduct& o)
{
    scalar_ *= o.scalar_;
    gamma0_ += o.gamma0_;
    a0_ += o.a0_;
    b0_ += o.b0_;
    factors_.insert(factors_.end(), o.factors_.begin(), o.factors_.end());
    return *this;
}

FactorProduct FactorProduct::inverse() const
{
    FactorProduct r(scalar_.inverse(), -a0_, -b0_, -gamma0_);
    for (auto f : factors_) {
        f.e = -f.e;
        r.factors_.push_back(f);
    }
    return r;
}

FactorProduct FactorProduct::pow(long k) const
{
    if (k < 0)
        return inverse().pow(-k);
    FactorProduct r(scalar_.pow(k), a0_ * k, b0_ * k, static_cast<int>(gamma0_ * k));
    if (k == 0)
        return r;
    for (auto f : factors_) {
        f.e *= k;
        r.factors_.push_back(f);
    }
    return r;
}

bool FactorProduct::has_gamma() const
{
    if (gamma0_ != 0)
        return true;
    for (const auto& f : factors_)
        if (f.gamma != 0)
            return true;
    return false;
}

FactorProduct FactorProduct::substitute_gamma(const Cyclotomic& value) const
{
    FactorProduct r(scalar_ * value.pow(gamma0_), a0_, b0_, 0);
    for (auto f : factors_) {
        if (f.gamma != 0) {
            f.c *= value.pow(f.gamma);
            f.gamma = 0;
        }
        r.factors_.push_back(f);
    }
    return r;
}

namespace {

bool same_shape(const Factor& x, const Factor& y)
{
    return x.gamma == y.gamma && x.a == y.a && x.bstep == y.bstep && x.boff == y.boff && x.nfirst == y.nfirst &&
           x.nlast == y.nlast && x.c == y.c;
}

} // namespace

FactorProduct FactorProduct::canonical() const
{
    std::vector<Factor> flat;
    for (const auto& f0 : factors_) {
        if (f0.e == 0)
            continue;
        if (f0.bstep == 0 || f0.nfirst == f0.nlast) {
            if (!f0.family() && f0.nlast < f0.nfirst)
                continue;
            if (f0.family() && f0.bstep == 0)
                throw DomainError("infinite family with constant q exponent: " + f0.str());
            flat.push_back(single(f0.c, f0.a, f0.b_at(f0.nfirst), f0.e));
            flat.back().gamma = f0.gamma;
            continue;
        }
        Factor f = f0;
        if (!f.family()) {
            for (long n = f.nfirst; n <= f.nlast; ++n) {
                flat.push_back(single(f.c, f.a, f.b_at(n), f.e));
                flat.back().gamma = f.gamma;
            }
            continue;
        }
        if (f.bstep < 0)
            throw DomainError("family with decreasing q exponent: " + f.str());
        while (f.b_at(f.nfirst) <= 0) {
            if (f.b_at(f.nfirst) < 0)
                throw DomainError("negative q exponent in factor " + f.str());
            flat.push_back(single(f.c, f.a, 0, f.e));
            flat.back().gamma = f.gamma;
            ++f.nfirst;
        }
        flat.push_back(f);
    }
    FactorProduct r(scalar_, a0_, b0_, gamma0_);
    for (const auto& f : flat) {
        auto it = std::find_if(r.factors_.begin(), r.factors_.end(),
                               [&](const Factor& g) { return same_shape(f, g); });
        if (it == r.factors_.end())
            r.factors_.push_back(f);
        else
            it->e += f.e;
    }
    r.factors_.erase(std::remove_if(r.factors_.begin(), r.factors_.end(), [](const Factor& f) { return f.e == 0; }),
                     r.factors_.end());
    return r;
}

long FactorProduct::ycap() const
{
    FactorProduct cf = canonical();
    long C = 12 * cf.a0_ - cf.b0_;
    for (const auto& f : cf.factors_) {
        if (f.e <= 0 || f.a <= 0)
            continue;
        if (!f.family()) {
            long d = 12 * f.a - f.b_at(f.nfirst);
            if (d > 0)
                C += f.e * d;
            continue;
        }
        for (long n = f.nfirst;; ++n) {
            long d = 12 * f.a - f.b_at(n);
            if (d <= 0)
                break;
            C += f.e * d;
        }
    }
    return C;
}

std::string FactorProduct::str() const
{
    std::ostringstream os;
    os << scalar_.str();
    if (gamma0_ != 0)
        os << "*gamma^" << gamma0_;
    if (a0_ != 0)
        os << "*y^" << a0_;
    if (b0_ != 0)
        os << "*q^(" << b0_ << "/24)";
    for (const auto& f : factors_)
        os << " * " << f.str();
    return os.str();
}

// ---------------------------------------------------------------------------
// expansion

namespace {

struct WRow {
    long rlo = 0;
    std::vector<mpz_class> v; // width * deg
};

class Grid {
public:
    Grid(int order, long qcap, long ycut) : order_(order), deg_(euler_phi(order)), qcap_(qcap), ycut_(ycut)
    {
        WRow r;
        r.rlo = 0;
        r.v.assign(deg_, mpz_class(0));
        r.v[0] = 1;
        rows_[0] = std::move(r);
    }

    int deg() const { return deg_; }
    std::map<long, WRow>& rows() { return rows_; }

    // factor coefficients are algebraic integers (roots of unity and
    // their sums); integral power-basis coordinates keep the grid integral
    std::vector<mpz_class> integral(const Cyclotomic& c0) const
    {
        Cyclotomic c = c0.embed(order_);
        std::vector<mpz_class> num(deg_);
        for (int i = 0; i < deg_; ++i) {
            const Rational& x = c.coeffs()[i];
            if (x.get_den() != 1)
                throw DomainError("factor coefficient " + c0.str() + " is not an algebraic integer");
            num[i] = x.get_num();
        }
        return num;
    }

    // (1 - c y^a q^b)^(+-1) as an in-place update
    void apply(const std::vector<mpz_class>& c, long a, long b, bool inverse)
    {
        if (b > 0)
            apply_q(c, a, b, inverse);
        else
            apply_y(c, a, inverse);
        tidy();
    }

private:
    void ensure(WRow& row, long lo, long hi)
    {
        long w = static_cast<long>(row.v.size()) / deg_;
        if (w == 0) {
            row.rlo = lo;
            row.v.assign(static_cast<size_t>((hi - lo + 1) * deg_), mpz_class(0));
            return;
        }
        long rhi = row.rlo + w - 1;
        if (lo >= row.rlo && hi <= rhi)
            return;
        long nlo = std::min(lo, row.rlo), nhi = std::max(hi, rhi);
        std::vector<mpz_class> nv(static_cast<size_t>((nhi - nlo + 1) * deg_));
        for (long k = 0; k < w * deg_; ++k)
            nv[(row.rlo - nlo) * deg_ + k].swap(row.v[k]);
        row.v = std::move(nv);
        row.rlo = nlo;
    }

    // dst[r + a] += sign * c * src[r]
    void add_shifted(WRow& dst, const WRow& src, long a, const std::vector<mpz_class>& c, int sign)
    {
        long w = static_cast<long>(src.v.size()) / deg_;
        if (w == 0)
            return;
        long lo = src.rlo + a, hi = src.rlo + w - 1 + a;
        lo = std::max(lo, ycut_);
        if (lo > hi)
            return;
        ensure(dst, lo, hi);
        if (deg_ == 1) {
            const mpz_class& cv = c[0];
            bool unit = (cv == 1 || cv == -1);
            int s = unit ? sign * sgn(cv) : sign;
            for (long r = lo; r <= hi; ++r) {
                const mpz_class& x = src.v[r - a - src.rlo];
                if (sgn(x) == 0)
                    continue;
                mpz_class& y = dst.v[r - dst.rlo];
                if (unit) {
                    if (s > 0)
                        y += x;
                    else
                        y -= x;
                } else if (s > 0) {
                    mpz_addmul(y.get_mpz_t(), cv.get_mpz_t(), x.get_mpz_t());
                } else {
                    mpz_submul(y.get_mpz_t(), cv.get_mpz_t(), x.get_mpz_t());
                }
            }
            return;
        }
        std::vector<mpz_class> prod(2 * deg_ - 1);
        for (long r = lo; r <= hi; ++r) {
            long ks = r - a - src.rlo;
            bool zero = true;
            for (int i = 0; i < deg_; ++i)
                if (sgn(src.v[ks * deg_ + i]) != 0)
                    zero = false;
            if (zero)
                continue;
            prod.assign(2 * deg_ - 1, mpz_class(0));
            for (int i = 0; i < deg_; ++i) {
                if (sgn(src.v[ks * deg_ + i]) == 0)
                    continue;
                for (int j = 0; j < deg_; ++j)
                    if (sgn(c[j]) != 0)
                        mpz_addmul(prod[i + j].get_mpz_t(), src.v[ks * deg_ + i].get_mpz_t(), c[j].get_mpz_t());
            }
            reduce_mod_phi(prod, order_);
            long kd = r - dst.rlo;
            for (int i = 0; i < deg_; ++i) {
                if (sign > 0)
                    dst.v[kd * deg_ + i] += prod[i];
                else
                    dst.v[kd * deg_ + i] -= prod[i];
            }
        }
    }

    void apply_q(const std::vector<mpz_class>& c, long a, long b, bool inverse)
    {
        if (inverse) {
            // P'[n] = P[n] + c P'[n-b], ascending n
            for (auto it = rows_.begin(); it != rows_.end(); ++it) {
                long m = it->first + b;
                if (m > qcap_)
                    continue;
                add_shifted(rows_[m], it->second, a, c, +1);
            }
        } else {
            // P'[n] = P[n] - c P[n-b], descending n; new keys would upset a
            // reverse iterator, so walk a snapshot
            std::vector<long> keys;
            for (const auto& kv : rows_)
                keys.push_back(kv.first);
            for (auto k = keys.rbegin(); k != keys.rend(); ++k) {
                long m = *k + b;
                if (m > qcap_)
                    continue;
                add_shifted(rows_[m], rows_.at(*k), a, c, -1);
            }
        }
    }

    void apply_y(const std::vector<mpz_class>& c, long a, bool inverse)
    {
        for (auto& [n, row] : rows_) {
            long w = static_cast<long>(row.v.size()) / deg_;
            if (w == 0)
                continue;
            if (inverse) {
                // a < 0: v'[r] = v[r] + c v'[r - a], r descending down to ycut
                long lo = ycut_;
                ensure(row, lo, row.rlo + w - 1);
                long hi = row.rlo + static_cast<long>(row.v.size()) / deg_ - 1;
                for (long r = hi; r >= lo; --r) {
                    long s = r - a;
                    if (s > hi)
                        continue;
                    add_cell(row, r, row, s, c, +1);
                }
            } else if (a < 0) {
                long oldlo = row.rlo, oldhi = row.rlo + w - 1;
                long lo = std::max(oldlo + a, ycut_);
                if (lo < oldlo)
                    ensure(row, lo, oldhi);
                // source r - a > r still old when walking upward
                for (long r = std::max(lo, row.rlo); r <= oldhi; ++r) {
                    long s = r - a;
                    if (s < oldlo || s > oldhi)
                        continue;
                    add_cell(row, r, row, s, c, -1);
                }
            } else {
                long oldlo = row.rlo, oldhi = row.rlo + w - 1;
                ensure(row, oldlo, oldhi + a);
                for (long r = oldhi + a; r >= oldlo + a; --r) {
                    if (r < ycut_)
                        break;
                    add_cell(row, r, row, r - a, c, -1);
                }
            }
        }
    }

    void add_cell(WRow& dst, long r, const WRow& src, long s, const std::vector<mpz_class>& c, int sign)
    {
        long kd = r - dst.rlo, ks = s - src.rlo;
        if (deg_ == 1) {
            if (sgn(src.v[ks]) == 0)
                return;
            mpz_class t = c[0] * src.v[ks];
            if (sign > 0)
                dst.v[kd] += t;
            else
                dst.v[kd] -= t;
            return;
        }
        std::vector<mpz_class> prod(2 * deg_ - 1);
        for (int i = 0; i < deg_; ++i)
            for (int j = 0; j < deg_; ++j)
                if (sgn(src.v[ks * deg_ + i]) != 0 && sgn(c[j]) != 0)
                    mpz_addmul(prod[i + j].get_mpz_t(), src.v[ks * deg_ + i].get_mpz_t(), c[j].get_mpz_t());
        reduce_mod_phi(prod, order_);
        for (int i = 0; i < deg_; ++i) {
            if (sign > 0)
                dst.v[kd * deg_ + i] += prod[i];
            else
                dst.v[kd * deg_ + i] -= prod[i];
        }
    }

    void tidy()
    {
        for (auto it = rows_.begin(); it != rows_.end();) {
            WRow& row = it->second;
            long w = static_cast<long>(row.v.size()) / deg_;
            auto zero = [&](long k) {
                for (int i = 0; i < deg_; ++i)
                    if (sgn(row.v[k * deg_ + i]) != 0)
                        return false;
                return true;
            };
            long lo = 0, hi = w - 1;
            if (row.rlo < ycut_)
                lo = std::min(w, ycut_ - row.rlo);
            while (lo <= hi && zero(lo))
                ++lo;
            while (hi >= lo && zero(hi))
                --hi;
            if (lo > hi) {
                it = rows_.erase(it);
                continue;
            }
            if (lo > 0 || hi < w - 1) {
                std::vector<mpz_class> nv(static_cast<size_t>((hi - lo + 1) * deg_));
                for (long k = 0; k < (hi - lo + 1) * deg_; ++k)
                    nv[k].swap(row.v[lo * deg_ + k]);
                row.v = std::move(nv);
                row.rlo += lo;
            }
            ++it;
        }
    }

    int order_;
    int deg_;
    long qcap_;
    long ycut_;
    std::map<long, WRow> rows_;
};

// members of a canonical factor that can matter below qcap
std::vector<long> member_exponents(const Factor& f, long qcap)
{
    std::vector<long> bs;
    if (!f.family()) {
        bs.push_back(f.b_at(f.nfirst));
        return bs;
    }
    for (long n = f.nfirst;; ++n) {
        long b = f.b_at(n);
        if (b > qcap)
            break;
        bs.push_back(b);
    }
    return bs;
}

} // namespace

QYSeries expand(const FactorProduct& fp0, long qmax24, long ylow)
{
    if (fp0.has_gamma())
        throw DomainError("expand: unresolved gamma in " + fp0.str());
    FactorProduct fp = fp0.canonical();

    // scalar factors and domain checks
    Cyclotomic scalar = fp.scalar();
    std::vector<Factor> work;
    bool tails = false;
    bool infinite = false;
    for (const auto& f : fp.factors()) {
        long b0 = f.family() ? -1 : f.b_at(f.nfirst);
        if (!f.family() && f.a == 0 && b0 == 0) {
            Cyclotomic base = Cyclotomic(1) - f.c;
            if (base.is_zero()) {
                if (f.e < 0)
                    throw DomainError("uncancelled pole: factor " + f.str() + " vanishes");
                scalar = Cyclotomic(0);
                continue;
            }
            scalar *= base.pow(f.e);
            continue;
        }
        if (!f.family() && b0 == 0) {
            if (f.e < 0 && f.a > 0)
                throw DomainError("non-convergent factor " + f.str() + " (needs |y^a| < 1)");
            if (f.e < 0)
                tails = true;
        } else {
            long bmin = f.b_at(f.nfirst);
            if (f.e < 0 && f.a > 0 && bmin < 24 * f.a)
                throw DomainError("non-convergent factor " + f.str() + " in 0 < -Im z < Im tau");
            if (f.family() || f.e < 0)
                infinite = true;
        }
        work.push_back(f);
    }

    QYSeries out;
    if (scalar.is_zero())
        return out; // exactly zero

    if (tails && ylow <= kNegInf)
        throw WindowError("expand: infinite y tail needs a finite ylow: " + fp.str());
    if (infinite && qmax24 >= kInf)
        throw WindowError("expand: infinite product needs a finite qmax24");
    long L = tails ? ylow : kNegInf;
    long C = fp.ycap();

    int order = scalar.order();
    for (const auto& f : work)
        order = lcm_order(order, f.c.order());
    if (order > 4096)
        throw CapacityError("cyclotomic order too large");

    long qr = qmax24 >= kInf ? kInf : qmax24 - fp.b0();
    out.set_order(order);
    out.set_window(qmax24, L, fp.b0(), C);
    if (qr < 0)
        return out;

    long ycut = kNegInf;
    if (L > kNegInf) {
        // largest positive y power the factors can still add
        long M = 0;
        for (const auto& f : work) {
            if (f.a <= 0)
                continue;
            for (long b : member_exponents(f, qr)) {
                long k = b == 0 ? f.e : (f.e > 0 ? std::min(f.e, qr / b) : qr / b);
                M += f.a * std::max(0L, k);
            }
        }
        long slope = floor_div(qr + (C - 12 * fp.a0() + fp.b0()), 12);
        M = std::max(0L, std::min(M, slope));
        ycut = L - fp.a0() - M;
    }

    Grid grid(order, qr, ycut);
    for (const auto& f : work) {
        auto cnum = grid.integral(f.c);
        for (long b : member_exponents(f, qr)) {
            if (b > qr)
                continue;
            long reps = f.e > 0 ? f.e : -f.e;
            for (long k = 0; k < reps; ++k)
                grid.apply(cnum, f.a, b, f.e < 0);
        }
    }

    Cyclotomic sc = scalar.embed(order);
    int deg = grid.deg();
    bool plain = sc.is_rational();
    Rational sq = plain ? sc.coeffs()[0] : Rational(0);
    for (auto& [n, row] : grid.rows()) {
        QYSeries::Row qr_row;
        qr_row.rlo = row.rlo + fp.a0();
        long w = static_cast<long>(row.v.size()) / deg;
        qr_row.c.resize(static_cast<size_t>(w * deg));
        if (plain) {
            for (size_t i = 0; i < row.v.size(); ++i)
                if (sgn(row.v[i]) != 0) {
                    qr_row.c[i] = Rational(row.v[i]) * sq;
                }
        } else {
            for (long k = 0; k < w; ++k) {
                std::vector<Rational> v(deg);
                for (int i = 0; i < deg; ++i)
                    v[i] = Rational(row.v[k * deg + i]);
                Cyclotomic x = Cyclotomic::from_powers(order, std::move(v)) * sc;
                for (int i = 0; i < deg; ++i)
                    qr_row.c[k * deg + i] = x.coeffs()[i];
            }
        }
        out.put_row(n + fp.b0(), std::move(qr_row));
    }
    out.trim();
    return out.field_reduced();
}

} // namespace mform
