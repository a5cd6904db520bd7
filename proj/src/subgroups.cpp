#include "mform/subgroups.hpp"

#include "mform/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace mform {

std::string construction_name(Construction k)
{
    return k == Construction::I ? "I" : "II";
}

std::vector<SubgroupFusion> parse_fusions(const json& j, const CharacterTable& t)
{
    std::vector<SubgroupFusion> out;
    try {
        for (const auto& js : j.at("subgroups")) {
            SubgroupFusion sf;
            sf.name = js.at("name").get<std::string>();
            sf.fused_classes = js.at("fused_classes").get<std::vector<std::string>>();
            sf.asserted_group_fixed_dim = js.at("asserted_group_fixed_dim").get<long>();
            std::string k = js.at("construction").get<std::string>();
            if (k != "I" && k != "II")
                throw DataError(sf.name + ": construction must be I or II");
            sf.construction = k == "I" ? Construction::I : Construction::II;
            sf.note = js.value("note", "");
            if (sf.fused_classes.empty())
                throw DataError(sf.name + ": empty fusion list");
            for (const auto& c : sf.fused_classes) {
                if (!t.has(c))
                    throw DataError(sf.name + ": unknown class " + c);
                const auto& cc = t.find(c);
                if (cc.excluded)
                    throw DataError(sf.name + ": excluded class " + c);
                if (cc.fixed_space_dim() < 4)
                    throw DataError(sf.name + ": class " + c + " fixes only a " +
                                    std::to_string(cc.fixed_space_dim()) + "-space");
            }
            if (sf.construction == Construction::I && sf.asserted_group_fixed_dim < 4)
                throw DataError(sf.name + ": construction I needs a fixed 4-space");
            out.push_back(std::move(sf));
        }
    } catch (const DataError&) {
        throw;
    } catch (const std::exception& e) {
        throw DataError(std::string("fusion data schema error: ") + e.what());
    }
    return out;
}

std::vector<SubgroupFusion> load_fusions(const std::string& path, const CharacterTable& t)
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
    return parse_fusions(j, t);
}

const SubgroupFusion& find_subgroup(const std::vector<SubgroupFusion>& all, const std::string& name)
{
    for (const auto& sf : all)
        if (sf.name == name)
            return sf;
    throw UserError("unknown subgroup " + name);
}

EligibilityReport eligibility(const SubgroupFusion& sf, const CharacterTable& t)
{
    EligibilityReport r;
    r.group_dim = sf.asserted_group_fixed_dim;
    r.min_dim = 24;
    for (const auto& c : sf.fused_classes) {
        long d = t.find(c).fixed_space_dim();
        r.per_class_dim.emplace_back(c, d);
        r.min_dim = std::min(r.min_dim, d);
    }
    if (r.group_dim >= 4) {
        r.eligible = true;
        r.verdict = Construction::I;
    } else if (r.min_dim >= 4) {
        r.eligible = true;
        r.verdict = Construction::II;
    }
    r.matches_declared = r.eligible && r.verdict == sf.construction;
    return r;
}

SubgroupTable subgroup_trace_table(const SubgroupFusion& sf, const CharacterTable& t, long qmax24, long ylow)
{
    SubgroupTable tab;
    tab.report = eligibility(sf, t);
    if (!tab.report.eligible)
        throw DomainError(sf.name + " is not eligible for either construction");
    std::map<std::string, QYSeries> done;
    for (const auto& c : sf.fused_classes) {
        auto it = done.find(c);
        if (it == done.end())
            it = done.emplace(c, theorem_trace(t.find(c), tab.report.verdict, qmax24, ylow)).first;
        tab.all_integral = tab.all_integral && it->second.all_integral();
        tab.rows.push_back({c, it->second});
    }
    return tab;
}

} // namespace mform
