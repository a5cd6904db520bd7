#include "mform/m24_data.hpp"

#include "mform/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace mform {

long ConjClass::chi() const
{
    for (const auto& [l, m] : cycle_shape)
        if (l == 1)
            return m;
    return 0;
}

long ConjClass::fixed_space_dim() const
{
    long n = 0;
    for (const auto& [l, m] : cycle_shape)
        n += m;
    return n;
}

const ConjClass& CharacterTable::find(const std::string& name) const
{
    for (const auto& c : classes)
        if (c.name == name)
            return c;
    throw UserError("unknown conjugacy class " + name);
}

bool CharacterTable::has(const std::string& name) const
{
    return std::any_of(classes.begin(), classes.end(), [&](const ConjClass& c) { return c.name == name; });
}

const std::vector<std::string>& excluded_class_names()
{
    static const std::vector<std::string> names{"3B", "4C", "6B", "12B", "21A", "21B", "23A", "23B"};
    return names;
}

bool is_allowed(const ConjClass& c)
{
    return !c.excluded && c.fixed_space_dim() >= 4;
}

namespace {

Cyclotomic inner(const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b, const std::vector<long>& w)
{
    Cyclotomic s;
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero() || b[k].is_zero())
            continue;
        Cyclotomic t = a[k] * b[k].conj();
        s += w.empty() ? t : t * Cyclotomic(w[k]);
    }
    return s;
}

// polynomial in x with cyclotomic coefficients, lowest degree first
using CycPoly = std::vector<Cyclotomic>;

CycPoly times_linear(const CycPoly& p, const Cyclotomic& lambda)
{
    // p * (1 - lambda x)
    CycPoly out(p.size() + 1);
    for (size_t i = 0; i < p.size(); ++i) {
        out[i] += p[i];
        out[i + 1] -= p[i] * lambda;
    }
    return out;
}

long lcm_all(const std::vector<std::pair<long, long>>& shape)
{
    long n = 1;
    for (const auto& [l, m] : shape)
        n = std::lcm(n, l);
    return n;
}

} // namespace

std::vector<std::string> table_violations(const CharacterTable& t)
{
    std::vector<std::string> bad;
    const size_t nc = t.classes.size();
    const size_t ni = t.irreps.size();
    for (const auto& name : excluded_class_names())
        if (!t.has(name))
            bad.push_back("excluded class " + name + " missing from the table");
    if (nc != ni) {
        bad.push_back("table is not square: " + std::to_string(nc) + " classes, " + std::to_string(ni) + " irreps");
        return bad;
    }
    for (const auto& c : t.classes)
        if (c.characters.size() != ni) {
            bad.push_back("class " + c.name + " has " + std::to_string(c.characters.size()) + " character values");
            return bad;
        }

    // class equation
    long total = 0;
    std::vector<long> sizes;
    for (const auto& c : t.classes) {
        if (c.centralizer_order <= 0 || kM24Order % c.centralizer_order != 0) {
            bad.push_back("centralizer order of " + c.name + " does not divide |M24|");
            sizes.push_back(0);
            continue;
        }
        sizes.push_back(c.class_size());
        total += c.class_size();
    }
    if (total != kM24Order)
        bad.push_back("class equation: sizes sum to " + std::to_string(total));

    // per-class structure
    for (const auto& c : t.classes) {
        long deg = 0;
        for (const auto& [l, m] : c.cycle_shape) {
            if (l < 1 || m < 1)
                bad.push_back("cycle shape of " + c.name + " has a nonpositive entry");
            deg += l * m;
        }
        if (deg != 24)
            bad.push_back("cycle shape of " + c.name + " moves " + std::to_string(deg) + " points");
        if (lcm_all(c.cycle_shape) != c.element_order)
            bad.push_back("element order of " + c.name + " differs from the lcm of its cycle lengths");
        if (!frame_polynomial_identity(c))
            bad.push_back("Frame polynomial identity fails for " + c.name);
    }

    // columns index irreps; rows are the characters
    std::vector<std::vector<Cyclotomic>> chars(ni, std::vector<Cyclotomic>(nc));
    for (size_t k = 0; k < nc; ++k)
        for (size_t i = 0; i < ni; ++i)
            chars[i][k] = t.classes[k].characters[i];

    size_t id = nc;
    for (size_t k = 0; k < nc; ++k)
        if (t.classes[k].element_order == 1)
            id = k;
    if (id == nc)
        bad.push_back("no identity class");
    else
        for (size_t i = 0; i < ni; ++i)
            if (!(chars[i][id] == Cyclotomic(t.irreps[i].degree)))
                bad.push_back("degree of " + t.irreps[i].label + " differs from its value at 1A");

    for (size_t i = 0; i < ni; ++i)
        for (size_t j = i; j < ni; ++j) {
            Cyclotomic v = inner(chars[i], chars[j], sizes);
            Cyclotomic want(i == j ? kM24Order : 0);
            if (!(v == want))
                bad.push_back("row orthogonality fails for " + t.irreps[i].label + ", " + t.irreps[j].label);
        }
    for (size_t k = 0; k < nc; ++k)
        for (size_t l = k; l < nc; ++l) {
            Cyclotomic v = inner(t.classes[k].characters, t.classes[l].characters, {});
            Cyclotomic want(k == l ? t.classes[k].centralizer_order : 0);
            if (!(v == want))
                bad.push_back("column orthogonality fails for " + t.classes[k].name + ", " + t.classes[l].name);
        }

    // permutation character
    size_t i23 = ni;
    for (size_t i = 0; i < ni; ++i)
        if (t.irreps[i].degree == 23)
            i23 = i;
    if (i23 == ni)
        bad.push_back("no 23-dimensional irrep");
    else
        for (const auto& c : t.classes)
            if (!(c.characters[i23] + Cyclotomic(1) == Cyclotomic(c.chi())))
                bad.push_back("chi != 1 + chi_23 on " + c.name);

    return bad;
}

CharacterTable parse_class_data(const json& j)
{
    CharacterTable t;
    std::vector<std::string> bad;
    try {
        t.version = j.at("version").get<std::string>();
        t.checksum = j.at("checksum").get<std::string>();
        for (const auto& ir : j.at("irreps"))
            t.irreps.push_back({ir.at("label").get<std::string>(), ir.at("degree").get<long>()});
        for (const auto& jc : j.at("classes")) {
            ConjClass c;
            c.name = jc.at("name").get<std::string>();
            c.element_order = jc.at("element_order").get<int>();
            for (const auto& p : jc.at("cycle_shape"))
                c.cycle_shape.emplace_back(p.at(0).get<long>(), p.at(1).get<long>());
            std::sort(c.cycle_shape.begin(), c.cycle_shape.end());
            c.centralizer_order = jc.at("centralizer_order").get<long>();
            for (const auto& v : jc.at("characters"))
                c.characters.push_back(cyc_from_json(v));
            const auto& ex = excluded_class_names();
            c.excluded = std::find(ex.begin(), ex.end(), c.name) != ex.end();
            t.classes.push_back(std::move(c));
        }
    } catch (const DataError&) {
        throw;
    } catch (const std::exception& e) {
        throw DataError(std::string("class data schema error: ") + e.what());
    }

    json body;
    body["classes"] = j.at("classes");
    body["irreps"] = j.at("irreps");
    std::string want = "fnv1a64:" + fnv1a64(body.dump());
    if (t.checksum != want)
        bad.push_back("checksum mismatch: file says " + t.checksum + ", content hashes to " + want);

    auto v = table_violations(t);
    bad.insert(bad.end(), v.begin(), v.end());
    if (!bad.empty()) {
        std::ostringstream os;
        os << "class data rejected:";
        for (const auto& b : bad)
            os << "\n  " << b;
        throw DataError(os.str());
    }
    return t;
}

CharacterTable load_class_data(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    return parse_class_data(j);
}

std::vector<std::pair<long, long>> eigen_fractions(const std::vector<std::pair<long, long>>& shape, bool shift_half)
{
    // fraction p/d of a full turn, keyed in lowest terms
    std::map<std::pair<long, long>, long> count;
    auto key = [](long p, long d) {
        long g = std::gcd(p, d);
        return std::pair<long, long>{p / g, d / g};
    };
    for (const auto& [l, m] : shape)
        for (long j = 0; j < l; ++j) {
            long p = j, d = l;
            if (shift_half) {
                p = (2 * j + l) % (2 * l);
                d = 2 * l;
            }
            count[key(p, d)] += m;
        }
    auto value_less = [](const std::pair<long, long>& a, const std::pair<long, long>& b) {
        return a.first * b.second < b.first * a.second;
    };
    std::vector<std::pair<long, long>> reps, units;
    for (const auto& [f, n] : count) {
        const auto [p, d] = f;
        if (p == 0 || 2 * p == d) {
            if (n % 2 != 0)
                throw DataError("odd multiplicity of a real eigenvalue");
            auto& dst = p == 0 ? units : reps;
            for (long k = 0; k < n / 2; ++k)
                dst.push_back(f);
        } else if (2 * p < d) {
            auto partner = key(d - p, d);
            auto it = count.find(partner);
            if (it == count.end() || it->second != n)
                throw DataError("eigenvalues are not closed under inversion");
            for (long k = 0; k < n; ++k)
                reps.push_back(f);
        }
    }
    std::stable_sort(reps.begin(), reps.end(), value_less);
    reps.insert(reps.end(), units.begin(), units.end());
    if (reps.size() != 12)
        throw DataError("expected 12 eigenvalue pairs");
    return reps;
}

namespace {

std::vector<EigenPair> make_pairs(const std::vector<std::pair<long, long>>& fr, int n)
{
    std::vector<EigenPair> out;
    for (const auto& [p, d] : fr) {
        EigenPair e;
        e.num = p;
        e.den = d;
        e.lambda = Cyclotomic::zeta(n, p * (n / d)).embed(n);
        e.nu = Cyclotomic::zeta(n, p * (n / (2 * d))).embed(n);
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

EigenData eigen_data(const ConjClass& c)
{
    if (c.excluded)
        throw DomainError("class " + c.name + " is excluded");
    if (c.fixed_space_dim() < 4)
        throw DomainError("class " + c.name + " has fewer than 4 unit eigenvalues");
    EigenData e;
    e.field_order = 4 * c.element_order;
    const int n = e.field_order;
    e.pairs = make_pairs(eigen_fractions(c.cycle_shape, false), n);
    e.neg_pairs = make_pairs(eigen_fractions(c.cycle_shape, true), n);

    Cyclotomic one(1);
    e.nu = one.embed(n);
    e.nu_prime = one.embed(n);
    e.nu_neg = one.embed(n);
    Cyclotomic pc = one, pd = one, pn = one;
    for (size_t i = 0; i < 12; ++i) {
        const auto& p = e.pairs[i];
        e.nu *= p.nu;
        pc *= one - p.lambda.inverse();
        if (i < 10) {
            e.nu_prime *= p.nu;
            pd *= one - p.lambda.inverse();
        }
        const auto& q = e.neg_pairs[i];
        e.nu_neg *= q.nu;
        pn *= one - q.lambda.inverse();
    }
    e.c_g = rationality_check(e.nu * pc);
    e.d_g = rationality_check(e.nu_prime * pd);
    e.c_neg = rationality_check(e.nu_neg * pn);
    return e;
}

FactorProduct frame_eta(const ConjClass& c, int sign, bool half)
{
    // prod over a length-l cycle of (1 - (+-lambda) x) = 1 - (+-1)^l x^l
    FactorProduct fp(Cyclotomic(1), 0, half ? -12 : 24);
    for (const auto& [l, m] : c.cycle_shape) {
        Cyclotomic s = (sign < 0 && l % 2 == 1) ? Cyclotomic(-1) : Cyclotomic(1);
        if (half)
            fp.times(family(s, 0, 24 * l, -12 * l, m));
        else
            fp.times(family(s, 0, 24 * l, 0, m));
    }
    return fp;
}

bool frame_polynomial_identity(const ConjClass& c)
{
    long n = lcm_all(c.cycle_shape);
    if (n <= 0 || n > 1000)
        return false;
    CycPoly lhs{Cyclotomic(1)};
    for (const auto& [l, m] : c.cycle_shape)
        for (long j = 0; j < l; ++j)
            for (long k = 0; k < m; ++k)
                lhs = times_linear(lhs, Cyclotomic::zeta(static_cast<int>(n), j * (n / l)));
    std::vector<long> rhs{1};
    for (const auto& [l, m] : c.cycle_shape)
        for (long k = 0; k < m; ++k) {
            std::vector<long> next(rhs.size() + l, 0);
            for (size_t i = 0; i < rhs.size(); ++i) {
                next[i] += rhs[i];
                next[i + l] -= rhs[i];
            }
            rhs = std::move(next);
        }
    if (lhs.size() != rhs.size())
        return false;
    for (size_t i = 0; i < lhs.size(); ++i)
        if (!(lhs[i] == Cyclotomic(rhs[i])))
            return false;
    return true;
}

} // namespace mform
