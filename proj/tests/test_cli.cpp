#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& stdin_file = "") {
    std::string cmd = std::string(RELALG_CLI_PATH) + " " + args + " 2>/dev/null";
    if (!stdin_file.empty()) cmd += " < " + stdin_file;
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("relalg_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

const char* kApath =
    "vertices: 4\n"
    "edge 0 1 {a}\nedge 1 2 {a}\nedge 2 3 {a}\nedge 0 2 {r}\nedge 0 3 {r}\nedge 1 3 {r}\n";

}  // namespace

TEST_CASE("cli census") {
    auto r = run("census");
    CHECK(r.code == 0);
    CHECK(r.out.find("4: 102 integral (65/37)") != std::string::npos);
}

TEST_CASE("cli solve") {
    auto file = temp_file("apath.net", kApath);
    auto r = run("solve 17_37 " + file);
    CHECK(r.code == 1);
    CHECK(r.out.find("UNSAT (method: dc_17_37)") != std::string::npos);

    auto js = run("--json solve 17_37 " + file);
    CHECK(js.code == 1);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["status"] == "UNSAT");
    CHECK(j["method"] == "dc_17_37");

    auto in = run("solve 17_37 -", file);
    CHECK(in.code == 1);
    CHECK(in.out == r.out);

    auto sat = run("solve 65_65 " + temp_file("edge.net", "vertices: 2\nedge 0 1 {a}\n"));
    CHECK(sat.code == 0);
    CHECK(sat.out.rfind("SAT (method: atom_structure_csp)", 0) == 0);
}

TEST_CASE("cli amalgamation") {
    auto r = run("ap 5_7 4 3 4");
    CHECK(r.code == 1);
    CHECK(r.out.rfind("AP(4,3,4): FAIL", 0) == 0);
    auto ok = run("ap 65_65 4 3 4");
    CHECK(ok.code == 0);
    CHECK(ok.out == "AP(4,3,4): PASS\n");
}

TEST_CASE("cli errors") {
    CHECK(run("").code == 2);
    CHECK(run("solve no_such_algebra x.net").code == 2);
    CHECK(run("solve 17_37 /nonexistent/file.net").code == 2);
    CHECK(run("solve 17_37 " + temp_file("bad.net", "vertices: 2\nfrobnicate\n")).code == 2);
    CHECK(run("ap 5_7 2 3 4").code == 2);
    CHECK(run("--budget 5 ap 62_65 3 2 4").code == 3);
}

TEST_CASE("cli gadgets") {
    auto r = run("gadgets");
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(run("gadgets").out == r.out);
    auto js = nlohmann::json::parse(run("--json gadgets").out);
    CHECK(js["failed"] == 0);
    CHECK(js["entries"].size() >= 30);
    auto one = run("gadgets " + std::string(RELALG_DATA_DIR) + "/gadgets/27_65_equal.gadget");
    CHECK(one.code == 0);
    CHECK(one.out.find("27_65_equal") != std::string::npos);
}

TEST_CASE("cli polymorphisms and representations") {
    auto p = run("poly 34_65");
    CHECK(p.code == 1);
    auto q = run("poly 65_65");
    CHECK(q.code == 0);
    CHECK(run("rep-verify 5_7 Z5_5_7").code == 0);
    CHECK(run("rep-verify 39_65 Z5_5_7").code == 2);
    auto pc = run("pc 17_37 " + temp_file("apath2.net", kApath));
    CHECK(pc.out.rfind("PC: ", 0) == 0);
    auto e = run("--json enumerate --atoms 3 --signature sym");
    CHECK(e.code == 0);
    CHECK(nlohmann::json::parse(e.out)["count"] == 7);
}
