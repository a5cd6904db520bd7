#include "mform/kernels.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace mform {

namespace kernels {

namespace {

struct IntRow {
    long n = 0;
    long rlo = 0;
    long width = 0;
    mpz_class den = 1;
    std::vector<mpz_class> num; // width * deg
};

std::vector<IntRow> integer_rows(const QYSeries& s, long nmax)
{
    std::vector<IntRow> out;
    int deg = s.deg();
    for (const auto& [n, row] : s.rows()) {
        if (n > nmax)
            break;
        IntRow ir;
        ir.n = n;
        ir.rlo = row.rlo;
        ir.width = row.width(deg);
        for (const auto& x : row.c)
            if (x.get_den() != 1)
                mpz_lcm(ir.den.get_mpz_t(), ir.den.get_mpz_t(), x.get_den_mpz_t());
        ir.num.resize(row.c.size());
        for (size_t i = 0; i < row.c.size(); ++i) {
            if (row.c[i] == 0)
                continue;
            if (ir.den == 1) {
                ir.num[i] = row.c[i].get_num();
            } else {
                mpz_divexact(ir.num[i].get_mpz_t(), ir.den.get_mpz_t(), row.c[i].get_den_mpz_t());
                ir.num[i] *= row.c[i].get_num();
            }
        }
        out.push_back(std::move(ir));
    }
    return out;
}

struct OutTask {
    long n;
    std::vector<std::pair<int, int>> pairs;
};

bool row_cell_zero(const std::vector<mpz_class>& v, long k, int deg)
{
    for (int i = 0; i < deg; ++i)
        if (sgn(v[k * deg + i]) != 0)
            return false;
    return true;
}

// one output row; returns an empty row if nothing survives
QYSeries::Row compute_row(const OutTask& t, const std::vector<IntRow>& ra, const std::vector<IntRow>& rb,
                          long ylow, int order, int deg)
{
    long lo = kInf, hi = kNegInf;
    mpz_class D = 1;
    for (auto [i, j] : t.pairs) {
        const IntRow& x = ra[i];
        const IntRow& y = rb[j];
        lo = std::min(lo, x.rlo + y.rlo);
        hi = std::max(hi, x.rlo + x.width - 1 + y.rlo + y.width - 1);
        mpz_class dd = x.den * y.den;
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), dd.get_mpz_t());
    }
    lo = std::max(lo, ylow);
    QYSeries::Row out;
    if (lo > hi)
        return out;
    int pd = 2 * deg - 1;
    long w = hi - lo + 1;
    std::vector<mpz_class> acc(static_cast<size_t>(w * pd));
    std::vector<mpz_class> scaled;
    mpz_class sc;
    for (auto [i, j] : t.pairs) {
        const IntRow& x = ra[i];
        const IntRow& y = rb[j];
        const std::vector<mpz_class>* A = &x.num;
        sc = x.den * y.den;
        mpz_divexact(sc.get_mpz_t(), D.get_mpz_t(), sc.get_mpz_t());
        if (sc != 1) {
            scaled = x.num;
            for (auto& v : scaled)
                v *= sc;
            A = &scaled;
        }
        for (long ka = 0; ka < x.width; ++ka) {
            long r1 = x.rlo + ka;
            if (row_cell_zero(*A, ka, deg))
                continue;
            long kb0 = std::max(0L, lo - r1 - y.rlo);
            long kb1 = std::min(y.width - 1, hi - r1 - y.rlo);
            if (deg == 1) {
                mpz_srcptr av = (*A)[ka].get_mpz_t();
                for (long kb = kb0; kb <= kb1; ++kb) {
                    const mpz_class& bv = y.num[kb];
                    if (sgn(bv) == 0)
                        continue;
                    mpz_addmul(acc[r1 + y.rlo + kb - lo].get_mpz_t(), av, bv.get_mpz_t());
                }
                continue;
            }
            for (long kb = kb0; kb <= kb1; ++kb) {
                long cell = (r1 + y.rlo + kb - lo) * pd;
                for (int p = 0; p < deg; ++p) {
                    const mpz_class& av = (*A)[ka * deg + p];
                    if (sgn(av) == 0)
                        continue;
                    for (int q = 0; q < deg; ++q) {
                        const mpz_class& bv = y.num[kb * deg + q];
                        if (sgn(bv) != 0)
                            mpz_addmul(acc[cell + p + q].get_mpz_t(), av.get_mpz_t(), bv.get_mpz_t());
                    }
                }
            }
        }
    }
    out.rlo = lo;
    out.c.resize(static_cast<size_t>(w * deg));
    std::vector<mpz_class> cellv(pd);
    for (long k = 0; k < w; ++k) {
        if (deg == 1) {
            if (sgn(acc[k]) != 0) {
                out.c[k] = Rational(acc[k], D);
                out.c[k].canonicalize();
            }
            continue;
        }
        std::copy(acc.begin() + k * pd, acc.begin() + (k + 1) * pd, cellv.begin());
        cellv.resize(pd);
        reduce_mod_phi(cellv, order);
        for (int p = 0; p < deg; ++p)
            if (sgn(cellv[p]) != 0) {
                out.c[k * deg + p] = Rational(cellv[p], D);
                out.c[k * deg + p].canonicalize();
            }
    }
    return out;
}

} // namespace

QYSeries mul_blocked(const QYSeries& a0, const QYSeries& b0, bool parallel)
{
    ProductWindow pw = product_window(a0, b0);
    QYSeries out;
    if (pw.zero)
        return out;
    QYSeries a = a0, b = b0;
    if (a.order() != b.order()) {
        int m = lcm_order(a.order(), b.order());
        a = a.embedded(m);
        b = b.embedded(m);
    }
    int order = a.order();
    int deg = a.deg();
    out.set_order(order);
    out.set_window(pw.qmax24, pw.ylow, pw.qmin24, pw.ycap);

    long amax = pw.qmax24 >= kInf ? kInf : pw.qmax24 - b.qmin24();
    long bmax = pw.qmax24 >= kInf ? kInf : pw.qmax24 - a.qmin24();
    auto ra = integer_rows(a, amax);
    auto rb = integer_rows(b, bmax);

    std::map<long, std::vector<std::pair<int, int>>> bucket;
    for (int i = 0; i < static_cast<int>(ra.size()); ++i)
        for (int j = 0; j < static_cast<int>(rb.size()); ++j) {
            long n = ra[i].n + rb[j].n;
            if (n <= pw.qmax24)
                bucket[n].emplace_back(i, j);
        }
    std::vector<OutTask> tasks;
    tasks.reserve(bucket.size());
    for (auto& [n, p] : bucket)
        tasks.push_back({n, std::move(p)});

    std::vector<QYSeries::Row> rows(tasks.size());
    long ntask = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (long t = 0; t < ntask; ++t)
        rows[t] = compute_row(tasks[t], ra, rb, pw.ylow, order, deg);

    for (long t = 0; t < ntask; ++t)
        if (!rows[t].c.empty())
            out.put_row(tasks[t].n, std::move(rows[t]));
    out.trim();
    return out;
}

QYSeries mul_reference(const QYSeries& a, const QYSeries& b)
{
    ProductWindow pw = product_window(a, b);
    QYSeries out;
    if (pw.zero)
        return out;
    std::map<std::pair<long, long>, Cyclotomic> acc;
    auto ta = a.terms();
    auto tb = b.terms();
    for (const auto& x : ta)
        for (const auto& y : tb) {
            long n = x.n24 + y.n24;
            long r = x.r + y.r;
            if (n > pw.qmax24 || r < pw.ylow)
                continue;
            auto key = std::make_pair(n, r);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, x.c * y.c);
            else
                it->second += x.c * y.c;
        }
    out.set_order(lcm_order(a.order(), b.order()));
    out.set_window(pw.qmax24, pw.ylow, pw.qmin24, pw.ycap);
    for (const auto& [k, v] : acc)
        out.add_to(k.first, k.second, v);
    out.trim();
    return out;
}

} // namespace kernels

QYSeries mul(const QYSeries& a, const QYSeries& b)
{
    return kernels::mul_blocked(a, b, true);
}

} // namespace mform
