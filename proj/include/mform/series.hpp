#pragma once

#include "mform/cyclotomic.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace mform {

// window bounds are plain longs; these stand for "no truncation"
inline constexpr long kInf = 1L << 40;
inline constexpr long kNegInf = -kInf;

long sat_add(long a, long b);
long floor_div(long a, long b);

struct Term {
    long n24;
    long r;
    Cyclotomic c;
};

// Truncated series in q^(1/24) and y over Q(zeta_N).
//
// Guarantees: coefficients are exact for n24 <= qmax24 and r >= ylow.
// The true series vanishes below q^(qmin24/24), and every nonzero true
// coefficient satisfies 12*r <= n24 + ycap.
class QYSeries {
public:
    struct Row {
        long rlo = 0;
        std::vector<Rational> c; // width * deg entries, cell-major
        long width(int deg) const { return static_cast<long>(c.size()) / deg; }
        long rhi(int deg) const { return rlo + width(deg) - 1; }
    };

    // the zero series, exact everywhere
    QYSeries();
    static QYSeries constant(const Cyclotomic& c);
    static QYSeries monomial(const Cyclotomic& c, long n24, long r);

    int order() const { return order_; }
    int deg() const { return deg_; }
    long qmax24() const { return qmax_; }
    long ylow() const { return ylow_; }
    long qmin24() const { return qmin_; }
    long ycap() const { return ycap_; }
    const std::map<long, Row>& rows() const { return rows_; }
    bool is_exact_zero() const { return rows_.empty() && qmax_ >= kInf && ylow_ <= kNegInf; }

    bool in_window(long n24, long r) const { return n24 <= qmax_ && r >= ylow_; }
    // throws WindowError outside the window
    Cyclotomic coeff(long n24, long r) const;
    Rational rational_coeff(long n24, long r) const;
    std::vector<Term> terms() const;
    size_t term_count() const;
    long max_r_upto(long n24) const;

    // builder interface used by the kernels; keeps the invariants
    void set_window(long qmax24, long ylow, long qmin24, long ycap);
    void set_order(int n);
    void add_to(long n24, long r, const Cyclotomic& c);
    void put_row(long n24, Row row);
    void trim();

    QYSeries truncated(long qmax24, long ylow) const;
    QYSeries embedded(int n) const;
    // drops to Q when every coefficient is rational
    QYSeries field_reduced() const;
    bool all_rational() const;
    bool all_integral() const;

    // throws WindowError naming the first stored entry that breaks the
    // structural bounds
    void validate() const;

private:
    int order_ = 1;
    int deg_ = 1;
    long qmax_ = kInf;
    long ylow_ = kNegInf;
    long qmin_ = kInf;
    long ycap_ = kNegInf;
    std::map<long, Row> rows_;
};

QYSeries add(const QYSeries& a, const QYSeries& b);
QYSeries sub(const QYSeries& a, const QYSeries& b);
QYSeries scale(const QYSeries& s, const Cyclotomic& c);
QYSeries negate(const QYSeries& s);
// multiply by y^a q^(b/24)
QYSeries shift(const QYSeries& s, long b24, long a);

// window of a product; shared by the kernels and the reference
struct ProductWindow {
    long qmax24, ylow, qmin24, ycap;
    bool zero;
};
ProductWindow product_window(const QYSeries& a, const QYSeries& b);

QYSeries mul(const QYSeries& a, const QYSeries& b);

// y -> 1; needs the series exact for all y (ylow = -inf)
QYSeries specialize_y_one(const QYSeries& s);

struct YFreeResult {
    bool ok = true;
    long n24 = 0;
    long r = 0;
    QYSeries slice;
};
YFreeResult check_y_free(const QYSeries& s);
// throws DomainError with the first offending (n24, r)
QYSeries assert_y_free(const QYSeries& s);

// equality of stored coefficients inside both windows
struct Mismatch {
    bool equal = true;
    long n24 = 0;
    long r = 0;
    std::string lhs, rhs;
};
Mismatch compare_on(const QYSeries& a, const QYSeries& b, long qmax24, long ylow);

} // namespace mform
