#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" ANGLEKIT_CLI_PATH "\" " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::vector<std::string>> csv(const std::string& s) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("spectrum of the WH angle operator") {
    const auto r = run("spectrum --construction wh --t 0 --dim 8");
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 9);
    CHECK(rows[0] == std::vector<std::string>{"construction", "D", "param", "index", "eigenvalue"});
    double prev = -1e9;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double e = std::stod(rows[i][4]);
        CHECK(e >= -0.2);
        CHECK(e <= 2 * std::numbers::pi + 0.2);
        CHECK(e >= prev);
        prev = e;
    }
}

TEST_CASE("lower symbol follows the sawtooth") {
    const auto r = run("lower-symbol --construction wh --t 0 --J 100 --dim 160 --gamma-grid 64");
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 65);
    CHECK(rows[0] == std::vector<std::string>{"J", "gamma_or_phi", "re", "im"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double g = std::stod(rows[i][1]);
        if (g < 0.5 || g > 2 * std::numbers::pi - 0.5) continue;
        CHECK(std::abs(std::stod(rows[i][2]) - g) <= 0.05);
    }
}

TEST_CASE("commutator table") {
    const auto r = run("commutator --construction halfcircle --dim 64 --windows 4,8");
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][2] == "-4");
}

TEST_CASE("check subcommand: exit codes and JSON schema") {
    CHECK(run("check halfcircle --dim 64 --mode cyclic").code == 0);
    const auto r = run("check specfun --format json");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    for (const auto& row : j) {
        CHECK(row.contains("suite"));
        CHECK(row.contains("invariant"));
        CHECK(row.contains("status"));
        CHECK(row.contains("measured"));
        CHECK(row.contains("tolerance"));
    }
    CHECK(run("check nosuch").code == 2);
}

TEST_CASE("config files and usage errors") {
    {
        std::ofstream("cli_good.cfg") << "# wh spectrum\nconstruction = wh\ndim = 6\n";
        std::ofstream("cli_bad.cfg") << "dim = 6\nflavour = strange\n";
    }
    const auto good = run("--config cli_good.cfg spectrum");
    CHECK(good.code == 0);
    CHECK(csv(good.out).size() == 7);
    // Flags override the file.
    CHECK(csv(run("--config cli_good.cfg spectrum --dim 5").out).size() == 6);
    const auto bad = run("--config cli_bad.cfg spectrum");
    CHECK(bad.code == 2);
    CHECK(bad.out.find("flavour") != std::string::npos);
    CHECK(run("spectrum --dim 1").code == 2);
    CHECK(run("spectrum --construction octagon").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("spectrum", "ANGLEKIT_THREADS=zero").code == 2);
}

TEST_CASE("identical configuration gives identical output files") {
    REQUIRE(run("spectrum --construction circle --sigma 2 --dim 32 --output cli_a.csv").code == 0);
    REQUIRE(run("spectrum --construction circle --sigma 2 --dim 32 --output cli_b.csv --threads 2").code == 0);
    CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
    CHECK(!slurp("cli_a.csv").empty());
    REQUIRE(run("check moments --format json --output cli_a.json").code == 0);
    REQUIRE(run("check moments --format json --output cli_b.json", "ANGLEKIT_THREADS=2").code == 0);
    CHECK(slurp("cli_a.json") == slurp("cli_b.json"));
}
