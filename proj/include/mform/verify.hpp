#pragma once

#include <string>
#include <vector>

namespace mform {

enum class Status { Pass, Fail, Partial };
std::string status_name(Status s);

struct Check {
    int criterion = 0; // 0 for checks outside the numbered list
    std::string suite;
    std::string name;
    Status status = Status::Fail;
    std::string detail;
};

struct VerifyConfig {
    long qmax24 = 240;
    long ylow = -40;
    std::string data_dir;
    std::string aux_path; // empty: look for aux_h_excluded.json in data_dir
};

const std::vector<std::string>& suite_names();

// asset problems propagate as DataError
std::vector<Check> run_suite(const std::string& suite, const VerifyConfig& cfg);

// MFORM_DATA_DIR, else the directory baked in at build time
std::string default_data_dir();

} // namespace mform
