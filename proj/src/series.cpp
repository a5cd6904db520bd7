#include "mform/series.hpp"

#include "mform/errors.hpp"

#include <algorithm>
#include <sstream>

namespace mform {

long sat_add(long a, long b)
{
    if (a >= kInf || b >= kInf)
        return kInf;
    if (a <= kNegInf || b <= kNegInf)
        return kNegInf;
    long s = a + b;
    if (s >= kInf || s <= kNegInf)
        throw CapacityError("exponent overflow");
    return s;
}

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

namespace {

std::string fmt_window(long v)
{
    if (v >= kInf)
        return "inf";
    if (v <= kNegInf)
        return "-inf";
    return std::to_string(v);
}

Cyclotomic cell_value(const std::vector<Rational>& c, long k, int n, int deg)
{
    std::vector<Rational> v(c.begin() + k * deg, c.begin() + (k + 1) * deg);
    return Cyclotomic::from_powers(n, std::move(v));
}

bool cell_zero(const std::vector<Rational>& c, long k, int deg)
{
    for (int i = 0; i < deg; ++i)
        if (c[k * deg + i] != 0)
            return false;
    return true;
}

long yfree_ycap(long qmin)
{
    return qmin >= kInf ? kNegInf : (qmin <= kNegInf ? kInf : -qmin);
}

} // namespace

QYSeries::QYSeries() = default;

QYSeries QYSeries::constant(const Cyclotomic& c)
{
    return monomial(c, 0, 0);
}

QYSeries QYSeries::monomial(const Cyclotomic& c, long n24, long r)
{
    QYSeries s;
    s.set_order(c.order());
    if (c.is_zero())
        return s;
    s.qmin_ = n24;
    s.ycap_ = 12 * r - n24;
    s.add_to(n24, r, c);
    return s;
}

void QYSeries::set_window(long qmax24, long ylow, long qmin24, long ycap)
{
    qmax_ = qmax24;
    ylow_ = ylow;
    qmin_ = qmin24;
    ycap_ = ycap;
}

void QYSeries::set_order(int n)
{
    if (n == order_)
        return;
    *this = embedded(n);
}

void QYSeries::add_to(long n24, long r, const Cyclotomic& c0)
{
    if (c0.order() != order_ && order_ % c0.order() != 0)
        set_order(lcm_order(order_, c0.order()));
    Cyclotomic c = c0.embed(order_);
    if (c.is_zero())
        return;
    Row& row = rows_[n24];
    long w = row.width(deg_);
    if (w == 0) {
        row.rlo = r;
        row.c.assign(deg_, Rational(0));
    } else if (r < row.rlo) {
        std::vector<Rational> nc(static_cast<size_t>((row.rlo - r + w) * deg_));
        std::copy(row.c.begin(), row.c.end(), nc.begin() + (row.rlo - r) * deg_);
        row.c = std::move(nc);
        row.rlo = r;
    } else if (r > row.rhi(deg_)) {
        row.c.resize(static_cast<size_t>((r - row.rlo + 1) * deg_));
    }
    long k = r - row.rlo;
    for (int i = 0; i < deg_; ++i)
        row.c[k * deg_ + i] += c.coeffs()[i];
}

void QYSeries::put_row(long n24, Row row)
{
    rows_[n24] = std::move(row);
}

void QYSeries::trim()
{
    for (auto it = rows_.begin(); it != rows_.end();) {
        Row& row = it->second;
        long n = it->first;
        long w = row.width(deg_);
        long lo = 0, hi = w - 1;
        if (n > qmax_) {
            it = rows_.erase(it);
            continue;
        }
        if (row.rlo < ylow_)
            lo = std::min(w, ylow_ - row.rlo);
        while (lo <= hi && cell_zero(row.c, lo, deg_))
            ++lo;
        while (hi >= lo && cell_zero(row.c, hi, deg_))
            --hi;
        if (lo > hi) {
            it = rows_.erase(it);
            continue;
        }
        if (lo > 0 || hi < w - 1) {
            std::vector<Rational> nc(row.c.begin() + lo * deg_, row.c.begin() + (hi + 1) * deg_);
            row.c = std::move(nc);
            row.rlo += lo;
        }
        ++it;
    }
}

Cyclotomic QYSeries::coeff(long n24, long r) const
{
    if (!in_window(n24, r)) {
        std::ostringstream os;
        os << "coefficient (" << n24 << ", " << r << ") outside window qmax24="
           << fmt_window(qmax_) << " ylow=" << fmt_window(ylow_);
        throw WindowError(os.str());
    }
    auto it = rows_.find(n24);
    if (it == rows_.end())
        return Cyclotomic(0).embed(order_);
    const Row& row = it->second;
    if (r < row.rlo || r > row.rhi(deg_))
        return Cyclotomic(0).embed(order_);
    return cell_value(row.c, r - row.rlo, order_, deg_);
}

Rational QYSeries::rational_coeff(long n24, long r) const
{
    return rationality_check(coeff(n24, r));
}

std::vector<Term> QYSeries::terms() const
{
    std::vector<Term> out;
    for (const auto& [n, row] : rows_) {
        long w = row.width(deg_);
        for (long k = 0; k < w; ++k)
            if (!cell_zero(row.c, k, deg_))
                out.push_back({n, row.rlo + k, cell_value(row.c, k, order_, deg_)});
    }
    return out;
}

size_t QYSeries::term_count() const
{
    size_t cnt = 0;
    for (const auto& [n, row] : rows_) {
        long w = row.width(deg_);
        for (long k = 0; k < w; ++k)
            if (!cell_zero(row.c, k, deg_))
                ++cnt;
    }
    return cnt;
}

long QYSeries::max_r_upto(long n24) const
{
    long m = ylow_ <= kNegInf ? kNegInf : ylow_ - 1;
    for (const auto& [n, row] : rows_) {
        if (n > n24)
            break;
        if (!row.c.empty())
            m = std::max(m, row.rhi(deg_));
    }
    return m;
}

QYSeries QYSeries::truncated(long qmax24, long ylow) const
{
    QYSeries s = *this;
    s.qmax_ = std::min(qmax_, qmax24);
    s.ylow_ = std::max(ylow_, ylow);
    s.trim();
    return s;
}

QYSeries QYSeries::embedded(int n) const
{
    if (n == order_)
        return *this;
    if (n % order_ != 0)
        throw std::invalid_argument("series embed: order does not divide target");
    QYSeries s;
    s.order_ = n;
    s.deg_ = euler_phi(n);
    s.set_window(qmax_, ylow_, qmin_, ycap_);
    for (const auto& [nn, row] : rows_) {
        Row out;
        out.rlo = row.rlo;
        long w = row.width(deg_);
        out.c.resize(static_cast<size_t>(w * s.deg_));
        for (long k = 0; k < w; ++k) {
            Cyclotomic v = cell_value(row.c, k, order_, deg_).embed(n);
            for (int i = 0; i < s.deg_; ++i)
                out.c[k * s.deg_ + i] = v.coeffs()[i];
        }
        s.rows_[nn] = std::move(out);
    }
    return s;
}

bool QYSeries::all_rational() const
{
    if (deg_ == 1)
        return true;
    for (const auto& [n, row] : rows_) {
        long w = row.width(deg_);
        for (long k = 0; k < w; ++k)
            for (int i = 1; i < deg_; ++i)
                if (row.c[k * deg_ + i] != 0)
                    return false;
    }
    return true;
}

bool QYSeries::all_integral() const
{
    for (const auto& [n, row] : rows_)
        for (const auto& x : row.c)
            if (x.get_den() != 1)
                return false;
    return true;
}

QYSeries QYSeries::field_reduced() const
{
    if (order_ == 1 || !all_rational())
        return *this;
    QYSeries s;
    s.set_window(qmax_, ylow_, qmin_, ycap_);
    for (const auto& [n, row] : rows_) {
        Row out;
        out.rlo = row.rlo;
        long w = row.width(deg_);
        out.c.resize(static_cast<size_t>(w));
        for (long k = 0; k < w; ++k)
            out.c[k] = row.c[k * deg_];
        s.rows_[n] = std::move(out);
    }
    return s;
}

void QYSeries::validate() const
{
    for (const auto& [n, row] : rows_) {
        long w = row.width(deg_);
        for (long k = 0; k < w; ++k) {
            if (cell_zero(row.c, k, deg_))
                continue;
            long r = row.rlo + k;
            bool bad = n > qmax_ || r < ylow_ || n < qmin_ || sat_add(12 * r, -n) > ycap_;
            if (bad) {
                std::ostringstream os;
                os << "stored entry (" << n << ", " << r << ") breaks window qmax24=" << fmt_window(qmax_)
                   << " ylow=" << fmt_window(ylow_) << " qmin24=" << fmt_window(qmin_)
                   << " ycap=" << fmt_window(ycap_);
                throw WindowError(os.str());
            }
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

void align_orders(QYSeries& a, QYSeries& b)
{
    if (a.order() == b.order())
        return;
    int m = lcm_order(a.order(), b.order());
    a = a.embedded(m);
    b = b.embedded(m);
}

void accumulate(QYSeries& out, const QYSeries& s, const Rational& f)
{
    int deg = s.deg();
    for (const auto& [n, row] : s.rows()) {
        if (n > out.qmax24())
            break;
        long w = row.width(deg);
        for (long k = 0; k < w; ++k) {
            long r = row.rlo + k;
            if (r < out.ylow() || cell_zero(row.c, k, deg))
                continue;
            std::vector<Rational> v(row.c.begin() + k * deg, row.c.begin() + (k + 1) * deg);
            for (auto& x : v)
                x *= f;
            out.add_to(n, r, Cyclotomic::from_powers(s.order(), std::move(v)));
        }
    }
}

QYSeries combine(QYSeries a, QYSeries b, const Rational& fb)
{
    align_orders(a, b);
    QYSeries out;
    out.set_order(a.order());
    out.set_window(std::min(a.qmax24(), b.qmax24()), std::max(a.ylow(), b.ylow()),
                   std::min(a.qmin24(), b.qmin24()), std::max(a.ycap(), b.ycap()));
    accumulate(out, a, Rational(1));
    accumulate(out, b, fb);
    out.trim();
    return out;
}

} // namespace

QYSeries add(const QYSeries& a, const QYSeries& b)
{
    return combine(a, b, Rational(1));
}

QYSeries sub(const QYSeries& a, const QYSeries& b)
{
    return combine(a, b, Rational(-1));
}

QYSeries scale(const QYSeries& s, const Cyclotomic& c)
{
    QYSeries out;
    int m = lcm_order(s.order(), c.order());
    out.set_order(m);
    out.set_window(s.qmax24(), s.ylow(), s.qmin24(), s.ycap());
    if (c.is_zero())
        return out;
    if (c.is_rational()) {
        QYSeries t = s.embedded(m);
        accumulate(out, t, c.coeffs()[0]);
        out.trim();
        return out;
    }
    for (const auto& t : s.terms())
        out.add_to(t.n24, t.r, t.c * c);
    out.trim();
    return out;
}

QYSeries negate(const QYSeries& s)
{
    return scale(s, Cyclotomic(-1));
}

QYSeries shift(const QYSeries& s, long b24, long a)
{
    QYSeries out;
    out.set_order(s.order());
    out.set_window(sat_add(s.qmax24(), b24), sat_add(s.ylow(), a), sat_add(s.qmin24(), b24),
                   sat_add(s.ycap(), 12 * a - b24));
    for (const auto& [n, row] : s.rows()) {
        QYSeries::Row r = row;
        r.rlo += a;
        out.put_row(n + b24, std::move(r));
    }
    return out;
}

ProductWindow product_window(const QYSeries& a, const QYSeries& b)
{
    ProductWindow w{};
    if (a.is_exact_zero() || b.is_exact_zero()) {
        w.zero = true;
        w.qmax24 = kInf;
        w.ylow = kNegInf;
        w.qmin24 = kInf;
        w.ycap = kNegInf;
        return w;
    }
    w.zero = false;
    w.qmin24 = sat_add(a.qmin24(), b.qmin24());
    w.ycap = sat_add(a.ycap(), b.ycap());
    w.qmax24 = std::min(sat_add(a.qmax24(), b.qmin24()), sat_add(b.qmax24(), a.qmin24()));
    // highest y power either side can feed into the result window;
    // stored rows are never truncated from above in y
    long ra = a.max_r_upto(w.qmax24 >= kInf ? kInf : w.qmax24 - b.qmin24());
    long rb = b.max_r_upto(w.qmax24 >= kInf ? kInf : w.qmax24 - a.qmin24());
    long l1 = sat_add(a.ylow(), rb);
    long l2 = sat_add(b.ylow(), ra);
    if (a.ylow() <= kNegInf)
        l1 = kNegInf;
    if (b.ylow() <= kNegInf)
        l2 = kNegInf;
    if (a.ylow() > kNegInf && rb <= kNegInf)
        l1 = kNegInf; // b has no terms at all in range
    if (b.ylow() > kNegInf && ra <= kNegInf)
        l2 = kNegInf;
    w.ylow = std::max(l1, l2);
    return w;
}

QYSeries specialize_y_one(const QYSeries& s)
{
    if (s.ylow() > kNegInf)
        throw WindowError("specialize_y_one: y tail below ylow=" + std::to_string(s.ylow()) +
                          " is not provably zero");
    QYSeries out;
    out.set_order(s.order());
    out.set_window(s.qmax24(), kNegInf, s.qmin24(), yfree_ycap(s.qmin24()));
    int deg = s.deg();
    for (const auto& [n, row] : s.rows()) {
        std::vector<Rational> v(deg);
        long w = row.width(deg);
        for (long k = 0; k < w; ++k)
            for (int i = 0; i < deg; ++i)
                v[i] += row.c[k * deg + i];
        out.add_to(n, 0, Cyclotomic::from_powers(s.order(), std::move(v)));
    }
    out.trim();
    return out;
}

YFreeResult check_y_free(const QYSeries& s)
{
    if (s.ylow() > 0)
        throw WindowError("check_y_free: window ylow=" + std::to_string(s.ylow()) + " excludes r = 0");
    YFreeResult res;
    res.slice.set_order(s.order());
    res.slice.set_window(s.qmax24(), kNegInf, s.qmin24(), yfree_ycap(s.qmin24()));
    int deg = s.deg();
    for (const auto& [n, row] : s.rows()) {
        long w = row.width(deg);
        for (long k = 0; k < w; ++k) {
            if (cell_zero(row.c, k, deg))
                continue;
            long r = row.rlo + k;
            if (r != 0) {
                if (res.ok) {
                    res.ok = false;
                    res.n24 = n;
                    res.r = r;
                }
                continue;
            }
            res.slice.add_to(n, 0, cell_value(row.c, k, s.order(), deg));
        }
    }
    res.slice.trim();
    return res;
}

QYSeries assert_y_free(const QYSeries& s)
{
    auto res = check_y_free(s);
    if (!res.ok)
        throw DomainError("series is not y-free: nonzero coefficient at (" + std::to_string(res.n24) + ", " +
                          std::to_string(res.r) + ")");
    return res.slice;
}

Mismatch compare_on(const QYSeries& a, const QYSeries& b, long qmax24, long ylow)
{
    if (a.qmax24() < qmax24 || b.qmax24() < qmax24 || a.ylow() > ylow || b.ylow() > ylow) {
        std::ostringstream os;
        os << "compare_on: requested window (" << fmt_window(qmax24) << ", " << fmt_window(ylow)
           << ") exceeds guarantees (" << fmt_window(a.qmax24()) << ", " << fmt_window(a.ylow()) << ") / ("
           << fmt_window(b.qmax24()) << ", " << fmt_window(b.ylow()) << ")";
        throw WindowError(os.str());
    }
    QYSeries d = sub(a.truncated(qmax24, ylow), b.truncated(qmax24, ylow));
    Mismatch m;
    auto ts = d.terms();
    if (ts.empty())
        return m;
    m.equal = false;
    m.n24 = ts.front().n24;
    m.r = ts.front().r;
    m.lhs = a.coeff(m.n24, m.r).str();
    m.rhs = b.coeff(m.n24, m.r).str();
    return m;
}

} // namespace mform
