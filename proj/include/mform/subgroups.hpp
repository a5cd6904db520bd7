#pragma once

#include "mform/trace_engine.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mform {

struct SubgroupFusion {
    std::string name;
    std::vector<std::string> fused_classes; // one entry per subgroup class
    long asserted_group_fixed_dim = 0;
    Construction construction = Construction::II;
    std::string note;
};

std::string construction_name(Construction k);

// throws DataError for unknown or excluded classes and fixed-space violations
std::vector<SubgroupFusion> parse_fusions(const json& j, const CharacterTable& t);
std::vector<SubgroupFusion> load_fusions(const std::string& path, const CharacterTable& t);
// throws UserError for an unknown name
const SubgroupFusion& find_subgroup(const std::vector<SubgroupFusion>& all, const std::string& name);

struct EligibilityReport {
    std::vector<std::pair<std::string, long>> per_class_dim; // fusion order
    long min_dim = 0;
    long group_dim = 0;
    bool eligible = false;
    Construction verdict = Construction::II;
    bool matches_declared = false;
};

EligibilityReport eligibility(const SubgroupFusion& sf, const CharacterTable& t);

struct TraceRow {
    std::string cls;
    QYSeries series;
};

struct SubgroupTable {
    EligibilityReport report;
    std::vector<TraceRow> rows; // fusion order, repeats included
    bool all_integral = true;
};

// throws DomainError when the subgroup is not eligible
SubgroupTable subgroup_trace_table(const SubgroupFusion& sf, const CharacterTable& t, long qmax24, long ylow);

} // namespace mform
