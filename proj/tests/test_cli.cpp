#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, bool merge_stderr = false)
{
    std::string cmd = std::string(MFORM_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string data_flag()
{
    return std::string("--data-dir ") + MFORM_TEST_DATA_DIR;
}

} // namespace

TEST_CASE("expand H_g")
{
    Run r = run("expand --function H_g --class 1A --qmax 3 " + data_flag());
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["function"] == "H_g");
    CHECK(j["class"] == "1A");
    CHECK(j["window"]["qmax24"] == 72);
    auto c = j["coefficients"];
    CHECK(c[0] == nlohmann::json::array({-3, 0, "-2"}));
    CHECK(c[1] == nlohmann::json::array({21, 0, "90"}));
}

TEST_CASE("expand F2")
{
    Run r = run("expand --function F2 --qmax 3");
    REQUIRE(r.code == 0);
    auto c = nlohmann::json::parse(r.out)["coefficients"];
    REQUIRE(c.size() == 3);
    CHECK(c[0][2] == "1");
    CHECK(c[1][2] == "1");
    CHECK(c[2][2] == "3");
}

TEST_CASE("exit codes")
{
    CHECK(run("expand --function phi_g --class 3B " + data_flag()).code == 2);
    CHECK(run("expand --function phi_g " + data_flag()).code == 2);
    CHECK(run("expand --function nope --class 1A " + data_flag()).code == 2);
    CHECK(run("expand --function eta^3 --ylow 0").code == 2);
    CHECK(run("report --subgroup nope " + data_flag()).code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("expand --function trace:Wf_tw:gammaJ,frakz --qmax 1").code == 2);
    CHECK(run("verify --suite series --data-dir /nonexistent").code == 4);
}

TEST_CASE("corrupted class asset exits 4 naming orthogonality")
{
    auto dir = std::filesystem::temp_directory_path() / "mform_cli_corrupt";
    std::filesystem::create_directories(dir);
    nlohmann::json j;
    std::ifstream(std::string(MFORM_TEST_DATA_DIR) + "/m24_classes.json") >> j;
    j["classes"][3]["characters"][1] = "100";
    std::ofstream(dir / "m24_classes.json") << j.dump();
    Run r = run("verify --suite series --data-dir " + dir.string(), true);
    CHECK(r.code == 4);
    CHECK(r.out.find("orthogonality") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("MFORM_DATA_DIR is honoured")
{
    Run r = run("expand --function phi_g --class 1A --qmax 1 --data-dir /nonexistent");
    CHECK(r.code == 4);
    Run e = run(std::string("--help"));
    CHECK(e.code == 0);
    std::string env = std::string("env MFORM_DATA_DIR=") + MFORM_TEST_DATA_DIR + " " + MFORM_CLI_PATH +
                      " expand --function phi_g --class 1A --qmax 1 > /dev/null 2>&1";
    CHECK(std::system(env.c_str()) == 0);
}

TEST_CASE("report")
{
    Run m = run("report --subgroup M11 --qmax 2 " + data_flag());
    REQUIRE(m.code == 0);
    auto j = nlohmann::json::parse(m.out);
    CHECK(j["verdict"] == "construction II");
    CHECK(j["rows"].size() == 10);
    Run l = run("report --subgroup 'L3(4)' --qmax 1 --format csv " + data_flag());
    CHECK(l.code == 0);
    CHECK(l.out.rfind("row,class,n24,r,value\n", 0) == 0);
    Run t = run("report --subgroup 'L3(4)' --qmax 1 --format text " + data_flag());
    CHECK(t.out.find("construction I,") != std::string::npos);
}

TEST_CASE("output is deterministic across thread counts")
{
    std::string a = run("expand --function M_g --class 5A --qmax 4 --threads 1 " + data_flag()).out;
    std::string b = run("expand --function M_g --class 5A --qmax 4 --threads 4 " + data_flag()).out;
    CHECK(!a.empty());
    CHECK(a == b);
}

TEST_CASE("verify series suite passes")
{
    Run r = run("verify --suite series --format json " + data_flag());
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["ok"] == true);
}
