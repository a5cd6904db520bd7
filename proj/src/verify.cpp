#include "mform/verify.hpp"

#include "mform/classical_forms.hpp"
#include "mform/errors.hpp"
#include "mform/jacobi_forms.hpp"
#include "mform/kernels.hpp"
#include "mform/subgroups.hpp"
#include "mform/trace_engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#ifndef MFORM_DEFAULT_DATA_DIR
#define MFORM_DEFAULT_DATA_DIR "data"
#endif

namespace mform {

std::string status_name(Status s)
{
    switch (s) {
    case Status::Pass:
        return "PASS";
    case Status::Fail:
        return "FAIL";
    case Status::Partial:
        return "PARTIAL";
    }
    return "?";
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"all", "series", "forms", "traces", "multiplicities", "subgroups"};
    return names;
}

std::string default_data_dir()
{
    if (const char* env = std::getenv("MFORM_DATA_DIR"); env && *env)
        return env;
    return MFORM_DEFAULT_DATA_DIR;
}

namespace {

// windows fixed by the numbered checks
constexpr long kTraceQ = 192;
constexpr long kTraceY = -10;
constexpr long kPhiEY = -12;

// closed sums, built without any product expansion

// eta = sum (-1)^k q^((6k+1)^2/24)
QYSeries eta_sum(long qmax24)
{
    QYSeries s;
    s.set_window(qmax24, kNegInf, 1, -1);
    long kmax = 1;
    while ((6 * kmax - 1) * (6 * kmax - 1) <= qmax24)
        ++kmax;
    for (long k = -kmax; k <= kmax; ++k) {
        long n = (6 * k + 1) * (6 * k + 1);
        if (n <= qmax24)
            s.add_to(n, 0, Cyclotomic(k % 2 == 0 ? 1 : -1));
    }
    s.trim();
    return s;
}

// eta^3 = sum_{n >= 0} (-1)^n (2n+1) q^((2n+1)^2/8)
QYSeries eta3_sum(long qmax24)
{
    QYSeries s;
    s.set_window(qmax24, kNegInf, 3, -3);
    for (long n = 0; 3 * (2 * n + 1) * (2 * n + 1) <= qmax24; ++n)
        s.add_to(3 * (2 * n + 1) * (2 * n + 1), 0, Cyclotomic((n % 2 == 0 ? 1 : -1) * (2 * n + 1)));
    s.trim();
    return s;
}

// theta_1^2 = -(sum_n (-1)^n q^((2n+1)^2/8) y^(n+1/2))^2
QYSeries theta1_sq_sum(long qmax24)
{
    QYSeries s;
    s.set_window(qmax24, kNegInf, 6, 6);
    std::vector<long> ns;
    for (long n = 0; 3 * (2 * n + 1) * (2 * n + 1) <= qmax24; ++n) {
        ns.push_back(n);
        ns.push_back(-n - 1);
    }
    for (long n : ns)
        for (long m : ns) {
            long e = 3 * ((2 * n + 1) * (2 * n + 1) + (2 * m + 1) * (2 * m + 1));
            if (e > qmax24)
                continue;
            s.add_to(e, n + m + 1, Cyclotomic(((n + m) % 2 == 0) ? -1 : 1));
        }
    s.trim();
    return s;
}

std::string where(const Mismatch& m)
{
    std::ostringstream os;
    os << "differ at (n24=" << m.n24 << ", r=" << m.r << "): " << m.lhs << " vs " << m.rhs;
    return os.str();
}

std::string window_text(long q, long y)
{
    std::ostringstream os;
    os << "q^" << q / 24 << (q % 24 ? "+" : "") << ", y >= " << y;
    return os.str();
}

struct Bench {
    const CharacterTable& t;
    long Q, L;
    std::map<std::string, QYSeries> phi_, h_, mt_;
    std::map<std::string, std::string> h_err_;
    std::optional<QYSeries> eta3mu_;

    const QYSeries& phi(const ConjClass& c)
    {
        auto it = phi_.find(c.name);
        if (it == phi_.end())
            it = phi_.emplace(c.name, phi_g(c, Q + 3)).first;
        return it->second;
    }
    // nullptr when extraction failed; the reason is in h_err_
    const QYSeries* h(const ConjClass& c)
    {
        if (h_err_.count(c.name))
            return nullptr;
        auto it = h_.find(c.name);
        if (it == h_.end()) {
            try {
                it = h_.emplace(c.name, h_g_from_phi(phi(c), c.chi(), Q, L)).first;
            } catch (const std::exception& e) {
                h_err_[c.name] = e.what();
                return nullptr;
            }
        }
        return &it->second;
    }
    const QYSeries& e3mu()
    {
        if (!eta3mu_)
            eta3mu_ = eta3mu(Q, L);
        return *eta3mu_;
    }
    const QYSeries* mt(const ConjClass& c)
    {
        auto it = mt_.find(c.name);
        if (it != mt_.end())
            return &it->second;
        const QYSeries* hh = h(c);
        if (!hh)
            return nullptr;
        QYSeries fin = mul_to(*hh, eta_pow(3, Q - hh->qmin24()), Q, kNegInf);
        QYSeries m = add(fin, scale(e3mu(), Cyclotomic(c.chi()))).truncated(Q, L);
        return &mt_.emplace(c.name, std::move(m)).first->second;
    }
    std::vector<const ConjClass*> allowed() const
    {
        std::vector<const ConjClass*> out;
        for (const auto& c : t.classes)
            if (is_allowed(c))
                out.push_back(&c);
        return out;
    }
};

using Fn = std::function<void(Check&)>;

Check run_check(int criterion, const std::string& suite, const std::string& name, const Fn& fn)
{
    Check c;
    c.criterion = criterion;
    c.suite = suite;
    c.name = name;
    try {
        fn(c);
    } catch (const DataError&) {
        throw;
    } catch (const std::exception& e) {
        c.status = Status::Fail;
        c.detail = std::string("error: ") + e.what();
    }
    return c;
}

// per-class loop: pass iff every class passes, detail names the first failure
void per_class(Check& ck, Bench& b, const std::function<std::string(const ConjClass&)>& one)
{
    long n = 0;
    for (const ConjClass* c : b.allowed()) {
        std::string err = one(*c);
        if (!err.empty()) {
            ck.status = Status::Fail;
            ck.detail = c->name + ": " + err;
            return;
        }
        ++n;
    }
    ck.status = Status::Pass;
    ck.detail = std::to_string(n) + " classes" + (ck.detail.empty() ? "" : ", " + ck.detail);
}

void series_suite(std::vector<Check>& out, Bench& b)
{
    const long Q = b.Q, L = b.L;
    const std::string s = "series";
    out.push_back(run_check(0, s, "eta^3 product = Jacobi sum", [&](Check& c) {
        auto m = compare_on(eta_pow(3, Q), eta3_sum(Q), Q, kNegInf);
        c.status = m.equal ? Status::Pass : Status::Fail;
        c.detail = m.equal ? window_text(Q, 0) : where(m);
    }));
    out.push_back(run_check(0, s, "eta^24 coefficient of q^2 is -24", [&](Check& c) {
        Cyclotomic v = eta_pow(24, 48).coeff(48, 0);
        c.status = v == Cyclotomic(-24) ? Status::Pass : Status::Fail;
        c.detail = "got " + v.str();
    }));
    out.push_back(run_check(0, s, "(1 - y^-1)^-2 = sum (k+1) y^-k", [&](Check& c) {
        FactorProduct fp(Cyclotomic(1));
        fp.times(single(Cyclotomic(1), -1, 0, -2));
        QYSeries e = expand(fp, 0, L);
        QYSeries o;
        o.set_window(kInf, kNegInf, 0, 0);
        for (long k = 0; k <= -L; ++k)
            o.add_to(0, -k, Cyclotomic(k + 1));
        auto m = compare_on(e, o, 0, L);
        c.status = m.equal ? Status::Pass : Status::Fail;
        c.detail = m.equal ? "down to y^" + std::to_string(L) : where(m);
    }));
    out.push_back(run_check(0, s, "F2 coefficients q^1..q^3 = 1, 1, 3", [&](Check& c) {
        QYSeries f = f2(72);
        bool ok = f.coeff(24, 0) == Cyclotomic(1) && f.coeff(48, 0) == Cyclotomic(1) &&
                  f.coeff(72, 0) == Cyclotomic(3);
        c.status = ok ? Status::Pass : Status::Fail;
    }));
    out.push_back(run_check(0, s, "row-parallel product = reference product", [&](Check& c) {
        QYSeries a = theta1_sq(Q, L), m = appell_mu(Q, L);
        QYSeries p = kernels::mul_blocked(a, m, true), r = kernels::mul_reference(a, m);
        auto mm = compare_on(p, r, p.qmax24(), p.ylow());
        bool win = p.qmax24() == r.qmax24() && p.ylow() == r.ylow();
        c.status = mm.equal && win ? Status::Pass : Status::Fail;
        c.detail = mm.equal ? std::to_string(p.term_count()) + " terms" : where(mm);
    }));
    out.push_back(run_check(0, s, "theta_1^2 vanishes at y = 1", [&](Check& c) {
        QYSeries z = specialize_y_one(theta1_sq(Q, kNegInf));
        c.status = z.term_count() == 0 ? Status::Pass : Status::Fail;
    }));
    out.push_back(run_check(0, s, "eta^3 mu and mu theta_1^2/eta^3 are integral", [&](Check& c) {
        bool ok = b.e3mu().all_integral() && appell_times(theta1_sq_over_eta3_fp(), Q, L).all_integral();
        c.status = ok ? Status::Pass : Status::Fail;
    }));
    out.push_back(run_check(10, s, "class data self-validation", [&](Check& c) {
        auto v = table_violations(b.t);
        long frame = 0;
        for (const auto& cc : b.t.classes)
            frame += frame_polynomial_identity(cc) ? 1 : 0;
        c.status = v.empty() ? Status::Pass : Status::Fail;
        std::ostringstream os;
        os << b.t.classes.size() << " classes, orthogonality + class equation + chi = 1 + chi_23, " << frame
           << " Frame identities";
        if (!v.empty())
            os << "; " << v.front();
        c.detail = os.str();
    }));
}

void forms_suite(std::vector<Check>& out, Bench& b)
{
    const long Q = b.Q, L = b.L;
    const long QT = std::min(Q, kTraceQ);
    const std::string s = "forms";
    const ConjClass& e = b.t.find("1A");

    out.push_back(run_check(1, s, "phi_g(tau, 0) = chi(g)", [&](Check& c) {
        per_class(c, b, [&](const ConjClass& g) -> std::string {
            QYSeries z = specialize_y_one(b.phi(g));
            auto m = compare_on(z, QYSeries::constant(Cyclotomic(g.chi())), Q, kNegInf);
            return m.equal ? "" : where(m);
        });
        if (c.status == Status::Pass)
            c.detail += ", to q^" + std::to_string(Q / 24);
    }));
    out.push_back(run_check(2, s, "phi_e = 8 (theta_2 + theta_3 + theta_4 quotients)", [&](Check& c) {
        auto m = compare_on(b.phi(e), z_k3_theta(QT), QT, kPhiEY);
        c.status = m.equal ? Status::Pass : Status::Fail;
        c.detail = m.equal ? window_text(QT, kPhiEY) + ", all r" : where(m);
    }));
    out.push_back(run_check(3, s, "H_g y-free and integral; H_e = -2, 90, 462, 1540", [&](Check& c) {
        per_class(c, b, [&](const ConjClass& g) -> std::string {
            const QYSeries* h = b.h(g);
            if (!h)
                return b.h_err_[g.name];
            if (!h->all_integral())
                return "non-integral coefficient";
            if (!(h->coeff(-3, 0) == Cyclotomic(-2)))
                return "leading coefficient " + h->coeff(-3, 0).str();
            return "";
        });
        if (c.status != Status::Pass)
            return;
        const QYSeries* he = b.h(e);
        std::vector<long> want{-2, 90, 462, 1540};
        auto deg = [&](const std::string& label) {
            for (const auto& ir : b.t.irreps)
                if (ir.label == label)
                    return ir.degree;
            throw DataError("no irrep " + label);
        };
        std::vector<long> twice{-2, 2 * deg("45a"), 2 * deg("231a"), 2 * deg("770a")};
        for (size_t k = 0; k < want.size(); ++k) {
            Cyclotomic v = he->coeff(-3 + 24 * static_cast<long>(k), 0);
            if (!(v == Cyclotomic(want[k])) || want[k] != twice[k]) {
                c.status = Status::Fail;
                c.detail = "H_e coefficient " + std::to_string(k) + " is " + v.str();
                return;
            }
        }
        c.detail += ", y-free on y >= " + std::to_string(L) + ", H_e matches 2 x (45, 231, 770)";
    }));
    out.push_back(run_check(4, s, "phi_g eta^6/theta_1^2 = chi (eta^3 mu + 2 F2) + Q_g", [&](Check& c) {
        QYSeries pol = add(eta3mu(QT, kTraceY), scale(f2(QT), Cyclotomic(2)));
        per_class(c, b, [&](const ConjClass& g) -> std::string {
            const QYSeries* h = b.h(g);
            if (!h)
                return b.h_err_[g.name];
            QYSeries lhs = phi_times_eta6_over_theta1_sq(b.phi(g), QT, kTraceY);
            QYSeries rhs = add(scale(pol, Cyclotomic(g.chi())), q_g_from(*h, g.chi(), QT));
            auto m = compare_on(lhs, rhs, QT, kTraceY);
            return m.equal ? "" : where(m);
        });
        if (c.status == Status::Pass)
            c.detail += ", " + window_text(QT, kTraceY);
    }));
    out.push_back(run_check(5, s, "F_g from H_e, H_g = F_g from phi_g and Z_K3; F_e = 0", [&](Check& c) {
        const QYSeries* he = b.h(e);
        if (!he)
            throw DomainError("H_e unavailable: " + b.h_err_["1A"]);
        QYSeries fe = f_g_from(*he, *he, 24, Q);
        if (fe.term_count() != 0) {
            c.status = Status::Fail;
            c.detail = "F_e has " + std::to_string(fe.term_count()) + " nonzero terms";
            return;
        }
        per_class(c, b, [&](const ConjClass& g) -> std::string {
            const QYSeries* h = b.h(g);
            if (!h)
                return b.h_err_[g.name];
            QYSeries a = f_g_from(*h, *he, g.chi(), Q);
            QYSeries z = f_g_from_phi(b.phi(g), g.chi(), Q, L);
            auto m = compare_on(a, z, Q, kNegInf);
            return m.equal ? "" : where(m);
        });
        if (c.status == Status::Pass)
            c.detail += ", F_e = 0, to q^" + std::to_string(Q / 24);
    }));
}

void traces_suite(std::vector<Check>& out, Bench& b)
{
    const long Q = b.Q, L = b.L;
    const long QT = std::min(Q, kTraceQ);
    const std::string s = "traces";

    out.push_back(run_check(6, s, "direct route = T route after gamma -> -1", [&](Check& c) {
        per_class(c, b, [&](const ConjClass& g) -> std::string {
            QYSeries d = vsnat_trace(g, Route::Direct, QT, kTraceY);
            QYSeries t = vsnat_trace(g, Route::T, QT, kTraceY);
            if (t.qmax24() < QT || t.ylow() > kTraceY)
                return "T route window too small";
            auto m = compare_on(d, t, QT, kTraceY);
            return m.equal ? "" : where(m);
        });
        if (c.status == Status::Pass)
            c.detail += ", " + window_text(QT, kTraceY) + ", no poles left";
    }));
    out.push_back(run_check(7, s, "construction I = construction II = M~_g", [&](Check& c) {
        per_class(c, b, [&](const ConjClass& g) -> std::string {
            const QYSeries* mt = b.mt(g);
            if (!mt)
                return b.h_err_[g.name];
            QYSeries one = theorem_trace(g, Construction::I, QT, kTraceY);
            QYSeries two = theorem_trace(g, Construction::II, QT, kTraceY);
            auto m1 = compare_on(one, *mt, QT, kTraceY);
            if (!m1.equal)
                return "I vs M~: " + where(m1);
            auto m2 = compare_on(two, *mt, QT, kTraceY);
            return m2.equal ? "" : "II vs M~: " + where(m2);
        });
        if (c.status == Status::Pass)
            c.detail += ", " + window_text(QT, kTraceY);
    }));
    out.push_back(run_check(8, s, "Ap4 trace = eta^4, -Wb trace = eta^2/theta_1^2", [&](Check& c) {
        TraceSpec ap{Component::Ap4};
        ap.p0 = true;
        QYSeries e1 = eta_sum(Q);
        QYSeries e2 = mul(e1, e1);
        auto m = compare_on(expand(component_trace(ap), Q, kNegInf), mul(e2, e2), Q, kNegInf);
        if (!m.equal) {
            c.status = Status::Fail;
            c.detail = "Ap4: " + where(m);
            return;
        }
        TraceSpec wb{Component::Wb};
        wb.yJ = true;
        FactorProduct wfp = component_trace(wb).canonical();
        QYSeries th = theta1_sq_sum(Q - wfp.b0());
        QYSeries w = expand(wfp, Q - th.qmin24(), L - ymax_bound(th.ycap(), th.qmax24()));
        QYSeries lhs = mul_to(negate(w), th, Q, L);
        auto m2 = compare_on(lhs, e2, Q, L);
        c.status = m2.equal ? Status::Pass : Status::Fail;
        c.detail = m2.equal ? "against pentagonal and lattice sums, " + window_text(Q, L) : "Wb: " + where(m2);
    }));
}

void multiplicities_suite(std::vector<Check>& out, Bench& b, const VerifyConfig& cfg)
{
    const long Q = b.Q, L = b.L;
    const std::string s = "multiplicities";
    std::string aux_path = cfg.aux_path;
    if (aux_path.empty()) {
        auto p = std::filesystem::path(cfg.data_dir) / "aux_h_excluded.json";
        if (std::filesystem::exists(p))
            aux_path = p.string();
    }
    std::optional<AuxH> aux;
    if (!aux_path.empty())
        aux = load_aux_h(aux_path, b.t);

    out.push_back(run_check(9, s, "multiplicities m_i(n, r) are integers", [&](Check& c) {
        std::map<std::string, QYSeries> mt;
        for (const ConjClass* g : b.allowed()) {
            const QYSeries* m = b.mt(*g);
            if (!m)
                throw DomainError(g->name + ": " + b.h_err_[g->name]);
            mt.emplace(g->name, *m);
        }
        if (aux)
            for (const auto& [name, h] : aux->h)
                mt.emplace(name, m_g_tilde_from(h, b.t.find(name).chi(), Q, L));
        MultiplicityResult r = multiplicity_series(b.t, mt, b.e3mu(), Q / 24, L);
        std::ostringstream os;
        os << r.checked << " (n, r) slices checked over " << b.t.irreps.size() << " irreps";
        if (!r.problems.empty()) {
            c.status = Status::Fail;
            os << "; " << r.problems.size() << " non-integral, first " << r.problems.front();
        } else if (r.full) {
            c.status = Status::Pass;
        } else {
            c.status = Status::Partial;
            std::vector<std::string> missing;
            for (const auto& cc : b.t.classes)
                if (!mt.count(cc.name))
                    missing.push_back(cc.name);
            os << "; " << r.skipped << " r = 0 slices need H_g for";
            for (const auto& m : missing)
                os << ' ' << m;
        }
        c.detail = os.str();
    }));
}

struct Fixture {
    std::string name;
    Construction verdict;
    long group_dim;
    size_t classes;
};

void subgroups_suite(std::vector<Check>& out, Bench& b, const VerifyConfig& cfg)
{
    const long QS = std::min(b.Q, 120L);
    const std::string s = "subgroups";
    auto fusions = load_fusions((std::filesystem::path(cfg.data_dir) / "subgroup_fusions.json").string(), b.t);
    const std::vector<Fixture> want{
        {"L3(4)", Construction::I, 4, 10}, {"M22:2", Construction::II, 2, 21}, {"2^4:A7", Construction::II, 3, 15},
        {"A8", Construction::II, 3, 14},   {"M11", Construction::II, 3, 10},
    };
    out.push_back(run_check(11, s, "subgroup fixtures and eligibility verdicts", [&](Check& c) {
        std::ostringstream os;
        for (const auto& f : want) {
            const SubgroupFusion& sf = find_subgroup(fusions, f.name);
            EligibilityReport r = eligibility(sf, b.t);
            std::string bad;
            if (sf.fused_classes.size() != f.classes)
                bad = "has " + std::to_string(sf.fused_classes.size()) + " classes";
            else if (r.group_dim != f.group_dim)
                bad = "group fixed dim " + std::to_string(r.group_dim);
            else if (r.min_dim < 4)
                bad = "an element fixes only " + std::to_string(r.min_dim) + " dimensions";
            else if (!r.eligible || r.verdict != f.verdict || !r.matches_declared)
                bad = "verdict " + construction_name(r.verdict);
            if (!bad.empty()) {
                c.status = Status::Fail;
                c.detail = f.name + " " + bad;
                return;
            }
            os << f.name << " " << construction_name(r.verdict) << " (dim " << r.group_dim << ") ";
        }
        c.status = Status::Pass;
        c.detail = os.str() + "of " + std::to_string(fusions.size()) + " records";
    }));
    out.push_back(run_check(0, s, "subgroup trace tables integral, repeated classes agree", [&](Check& c) {
        long rows = 0;
        for (const auto& f : want) {
            SubgroupTable tab = subgroup_trace_table(find_subgroup(fusions, f.name), b.t, QS, kTraceY);
            if (!tab.all_integral) {
                c.status = Status::Fail;
                c.detail = f.name + " has a non-integral row";
                return;
            }
            for (size_t i = 0; i < tab.rows.size(); ++i)
                for (size_t j = i + 1; j < tab.rows.size(); ++j)
                    if (tab.rows[i].cls == tab.rows[j].cls &&
                        !compare_on(tab.rows[i].series, tab.rows[j].series, QS, kTraceY).equal) {
                        c.status = Status::Fail;
                        c.detail = f.name + ": rows for " + tab.rows[i].cls + " differ";
                        return;
                    }
            rows += static_cast<long>(tab.rows.size());
        }
        c.status = Status::Pass;
        c.detail = std::to_string(rows) + " rows, " + window_text(QS, kTraceY);
    }));
}

} // namespace

std::vector<Check> run_suite(const std::string& suite, const VerifyConfig& cfg)
{
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw UserError("unknown suite " + suite);
    if (cfg.ylow > -1)
        throw UserError("ylow must be <= -1");
    VerifyConfig c = cfg;
    if (c.data_dir.empty())
        c.data_dir = default_data_dir();
    CharacterTable t = load_class_data((std::filesystem::path(c.data_dir) / "m24_classes.json").string());
    Bench b{t, c.qmax24, c.ylow, {}, {}, {}, {}, {}};
    std::vector<Check> out;
    const bool all = suite == "all";
    if (all || suite == "series")
        series_suite(out, b);
    if (all || suite == "forms")
        forms_suite(out, b);
    if (all || suite == "traces")
        traces_suite(out, b);
    if (all || suite == "multiplicities")
        multiplicities_suite(out, b, c);
    if (all || suite == "subgroups")
        subgroups_suite(out, b, c);
    return out;
}

} // namespace mform
