#include "mform/classical_forms.hpp"
#include "mform/errors.hpp"
#include "mform/jacobi_forms.hpp"
#include "mform/subgroups.hpp"
#include "mform/trace_engine.hpp"
#include "mform/verify.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace mform;

namespace {

struct Options {
    long qmax = 10;
    long ylow = -40;
    std::string data_dir;
    std::string aux;
    std::string format = "json";
    int threads = 0;
};

std::string data_dir(const Options& o)
{
    return o.data_dir.empty() ? default_data_dir() : o.data_dir;
}

CharacterTable load_table(const Options& o)
{
    return load_class_data((fs::path(data_dir(o)) / "m24_classes.json").string());
}

void check_window(const Options& o)
{
    if (o.qmax < 0)
        throw UserError("--qmax must be >= 0");
    if (o.ylow > -1)
        throw UserError("--ylow must be <= -1");
}

QYSeries expand_function(const std::string& fn, const std::string& cls, const Options& o)
{
    const long Q = 24 * o.qmax, L = o.ylow;
    if (fn.rfind("eta^", 0) == 0) {
        long k;
        try {
            k = std::stol(fn.substr(4));
        } catch (const std::exception&) {
            throw UserError("bad exponent in " + fn);
        }
        return eta_pow(k, Q);
    }
    if (fn == "theta1_sq")
        return theta1_sq(Q, L);
    if (fn == "mu")
        return appell_mu(Q, L);
    if (fn == "eta3mu")
        return eta3mu(Q, L);
    if (fn == "F2")
        return f2(Q);
    CharacterTable t = load_table(o);
    if (fn == "Z_K3")
        return z_k3(t.find("1A"), Q, L);

    const bool is_trace = fn.rfind("trace:", 0) == 0;
    if (cls.empty() && !is_trace)
        throw UserError(fn + " needs --class");
    const ConjClass* c = cls.empty() ? nullptr : &t.find(cls);
    if (is_trace) {
        TraceSpec spec = parse_trace_spec(fn.substr(6));
        spec.cls = c;
        FactorProduct fp = component_trace(spec);
        if (fp.has_gamma())
            return gamma_limit(GammaSeries(fp), Q, L).truncated(Q, L);
        return expand(fp, Q, L).field_reduced();
    }
    if (fn == "eta_g")
        return expand(frame_eta(*c, +1, false), Q, kNegInf);
    if (fn == "phi_g")
        return phi_g(*c, Q);
    if (fn == "H_g")
        return h_g(*c, Q, L);
    if (fn == "M_g")
        return m_g_tilde(*c, Q, L);
    if (fn == "Q_g")
        return q_g(*c, Q);
    if (fn == "F_g")
        return f_g(*c, t.find("1A"), Q);
    throw UserError("unknown function " + fn);
}

void print_series(const QYSeries& s, const std::string& fn, const std::string& cls, const std::string& format)
{
    if (format == "json") {
        std::cout << series_to_json(s, fn, cls).dump(1) << '\n';
        return;
    }
    if (format == "csv") {
        std::cout << "n24,r,value\n";
        for (const auto& t : s.terms())
            std::cout << t.n24 << ',' << t.r << ",\"" << t.c.str() << "\"\n";
        return;
    }
    std::cout << fn << (cls.empty() ? "" : " [" + cls + "]") << "  window qmax24="
              << (s.qmax24() >= kInf ? std::string("inf") : std::to_string(s.qmax24()))
              << " ylow=" << (s.ylow() <= kNegInf ? std::string("-inf") : std::to_string(s.ylow())) << '\n';
    for (const auto& t : s.terms())
        std::cout << "  q^(" << t.n24 << "/24) y^" << t.r << "  " << t.c.str() << '\n';
}

int cmd_verify(const std::string& suite, const Options& o)
{
    VerifyConfig cfg;
    cfg.qmax24 = 24 * o.qmax;
    cfg.ylow = o.ylow;
    cfg.data_dir = data_dir(o);
    cfg.aux_path = o.aux;
    std::vector<Check> checks = run_suite(suite, cfg);
    bool ok = true, partial = false;
    for (const auto& c : checks) {
        ok = ok && c.status != Status::Fail;
        partial = partial || c.status == Status::Partial;
    }
    if (o.format == "json") {
        json j;
        j["suite"] = suite;
        j["window"] = {{"qmax24", cfg.qmax24}, {"ylow", cfg.ylow}};
        json arr = json::array();
        for (const auto& c : checks)
            arr.push_back({{"criterion", c.criterion},
                           {"suite", c.suite},
                           {"name", c.name},
                           {"status", status_name(c.status)},
                           {"detail", c.detail}});
        j["checks"] = arr;
        j["ok"] = ok;
        j["partial"] = partial;
        std::cout << j.dump(1) << '\n';
    } else if (o.format == "csv") {
        std::cout << "criterion,suite,name,status,detail\n";
        for (const auto& c : checks)
            std::cout << c.criterion << ',' << c.suite << ",\"" << c.name << "\"," << status_name(c.status) << ",\""
                      << c.detail << "\"\n";
    } else {
        for (const auto& c : checks) {
            std::cout << status_name(c.status) << "  " << c.suite << ": " << c.name;
            if (c.criterion)
                std::cout << " [" << c.criterion << "]";
            std::cout << "\n        " << c.detail << '\n';
        }
        if (partial)
            std::cout << "warning: some checks are partial\n";
    }
    return ok ? 0 : 1;
}

int cmd_report(const std::string& name, const Options& o)
{
    const long Q = 24 * o.qmax, L = o.ylow;
    CharacterTable t = load_table(o);
    auto fusions = load_fusions((fs::path(data_dir(o)) / "subgroup_fusions.json").string(), t);
    const SubgroupFusion& sf = find_subgroup(fusions, name);
    SubgroupTable tab = subgroup_trace_table(sf, t, Q, L);
    const auto& r = tab.report;
    if (o.format == "json") {
        json j;
        j["subgroup"] = sf.name;
        j["verdict"] = "construction " + construction_name(r.verdict);
        j["declared"] = "construction " + construction_name(sf.construction);
        j["group_fixed_dim"] = r.group_dim;
        j["min_element_fixed_dim"] = r.min_dim;
        j["all_integral"] = tab.all_integral;
        if (!sf.note.empty())
            j["note"] = sf.note;
        json rows = json::array();
        for (size_t i = 0; i < tab.rows.size(); ++i) {
            json row = series_to_json(tab.rows[i].series, "M_g", tab.rows[i].cls);
            row["fixed_dim"] = r.per_class_dim[i].second;
            rows.push_back(row);
        }
        j["rows"] = rows;
        std::cout << j.dump(1) << '\n';
    } else if (o.format == "csv") {
        std::cout << "row,class,n24,r,value\n";
        for (size_t i = 0; i < tab.rows.size(); ++i)
            for (const auto& term : tab.rows[i].series.terms())
                std::cout << i << ',' << tab.rows[i].cls << ',' << term.n24 << ',' << term.r << ",\"" << term.c.str()
                          << "\"\n";
    } else {
        std::cout << sf.name << ": construction " << construction_name(r.verdict) << ", group fixes a "
                  << r.group_dim << "-space, elements fix >= " << r.min_dim << '\n';
        if (!sf.note.empty())
            std::cout << "note: " << sf.note << '\n';
        for (size_t i = 0; i < tab.rows.size(); ++i) {
            const auto& s = tab.rows[i].series;
            std::cout << "  " << tab.rows[i].cls << " (dim " << r.per_class_dim[i].second << "): " << s.term_count()
                      << " terms, y^0:";
            for (long n = 0; n <= Q; n += 24)
                if (s.in_window(n, 0))
                    std::cout << ' ' << s.coeff(n, 0).str();
            std::cout << '\n';
        }
    }
    return 0;
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const DataError*>(&e))
        return 4;
    if (dynamic_cast<const WindowError*>(&e) || dynamic_cast<const CapacityError*>(&e))
        return 3;
    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact q,y-series for Mathieu moonshine twining genera"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--qmax", o.qmax, "q-order of the window")->capture_default_str();
        sub->add_option("--ylow", o.ylow, "lowest y power, <= -1")->capture_default_str();
        sub->add_option("--data-dir", o.data_dir, "asset directory (default: $MFORM_DATA_DIR)");
        sub->add_option("--format", o.format, "json | csv | text")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
        sub->add_option("--threads", o.threads, "OpenMP threads, 0 = runtime default");
    };

    std::string fn, cls, suite = "all", subgroup;
    auto* ex = app.add_subcommand("expand", "print one series");
    common(ex);
    ex->add_option("--function", fn, "eta^k theta1_sq mu eta3mu F2 eta_g phi_g H_g M_g Q_g F_g Z_K3 trace:<spec>")
        ->required();
    ex->add_option("--class", cls, "conjugacy class label");

    auto* ve = app.add_subcommand("verify", "run a verification suite");
    common(ve);
    ve->add_option("--suite", suite)->check(CLI::IsMember(suite_names()))->capture_default_str();
    ve->add_option("--aux", o.aux, "H_g data for the excluded classes");

    auto* re = app.add_subcommand("report", "subgroup eligibility and trace table");
    common(re);
    re->add_option("--subgroup", subgroup)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        check_window(o);
        if (o.threads > 0)
            omp_set_num_threads(o.threads);
        if (*ex) {
            print_series(expand_function(fn, cls, o), fn, cls, o.format);
            return 0;
        }
        if (*ve)
            return cmd_verify(suite, o);
        return cmd_report(subgroup, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}
