// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks that drive the installed CLI binary as a subprocess.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using std::string;
namespace fs = std::filesystem;

namespace {

struct RunOutput {
    int exit_code = -1;
    string stdout_text;
};

RunOutput run_cli(const string &args) {
    const string cmd = string(SUBSYNTH_CLI_PATH) + " " + args + " 2>/dev/null";
    RunOutput out;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.stdout_text.append(buf.data(), got);
    const int status = pclose(pipe);
    out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

fs::path fresh_dir(const char *name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::vector<string> lines_of(const string &text) {
    std::vector<string> lines;
    std::istringstream is(text);
    string line;
    while (std::getline(is, line))
        lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("pattern subcommand writes the CSV and reports the measured level") {
    const fs::path csv = fs::temp_directory_path() / "subsynth_cli_pattern.csv";
    fs::remove(csv);
    const RunOutput out = run_cli("pattern --family taylor -N 128 --sll 50 --nbar 5 --out " +
                                  csv.string());
    CHECK(out.exit_code == 0);
    const auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 1802);
    CHECK(lines[0] == "theta_deg,re,im");
    CHECK(out.stdout_text.find("measured SLL") != string::npos);
    fs::remove(csv);
}

TEST_CASE("invalid generator parameters exit with the config code and write nothing") {
    const fs::path csv = fs::temp_directory_path() / "subsynth_cli_bad.csv";
    fs::remove(csv);
    const RunOutput out = run_cli("pattern --family taylor -N 128 --sll 50 --nbar 0 --out " +
                                  csv.string());
    CHECK(out.exit_code == 2);
    CHECK(!fs::exists(csv));
}

TEST_CASE("synth writes result files and a one-line summary") {
    const fs::path dir = fresh_dir("subsynth_cli_synth");
    const RunOutput out = run_cli(
        "synth --family chebyshev -N 20 --sll 20 --solver ogomp --mode 1 -K 5 -Q 10 --out " +
        dir.string());
    CHECK(out.exit_code == 0);
    CHECK(fs::exists(dir / "result.json"));
    CHECK(fs::exists(dir / "achieved_pattern.csv"));
    CHECK(fs::exists(dir / "meta.json"));

    // summary: solver mode K chi xi sll_db runtime_ms
    const auto lines = lines_of(out.stdout_text);
    REQUIRE(!lines.empty());
    std::istringstream is(lines.back());
    string solver;
    int mode = 0, k = 0;
    double chi = 0, xi = 0, sll = 0, ms = 0;
    is >> solver >> mode >> k >> chi >> xi >> sll >> ms;
    CHECK(solver == "ogomp");
    CHECK(mode == 1);
    CHECK(k == 5);
    CHECK(chi == doctest::Approx(0.25));
    CHECK(xi <= 1e-4);
    CHECK(sll < -19.0);
    fs::remove_all(dir);
}

TEST_CASE("eval passes on fresh results and pinpoints corrupted fields") {
    const fs::path dir = fresh_dir("subsynth_cli_eval");
    REQUIRE(run_cli("synth --family chebyshev -N 12 --sll 20 --solver omp --mode 1 -K 3 --out " +
                    dir.string())
                .exit_code == 0);

    const RunOutput ok = run_cli("eval " + (dir / "result.json").string());
    CHECK(ok.exit_code == 0);
    CHECK(ok.stdout_text.find("drift: pass") != string::npos);
    CHECK(ok.stdout_text.find("layout: K=3 runs") != string::npos);

    // corrupt one excitation value
    string doc = slurp(dir / "result.json");
    const auto pos = doc.find("\"re\": [");
    REQUIRE(pos != string::npos);
    const auto num_start = doc.find_first_of("-0123456789", pos);
    const auto num_end = doc.find_first_of(",]", num_start);
    doc.replace(num_start, num_end - num_start, "99.5");
    {
        std::ofstream os(dir / "result.json", std::ios::binary);
        os << doc;
    }
    const RunOutput bad = run_cli("eval " + (dir / "result.json").string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.stdout_text.find("drift: fail") != string::npos);
    CHECK(bad.stdout_text.find("metrics.xi") != string::npos);
    fs::remove_all(dir);
}

TEST_CASE("eval on a missing file uses the io-error exit code") {
    const RunOutput out = run_cli("eval /nonexistent/subsynth/result.json");
    CHECK(out.exit_code == 4);
}

TEST_CASE("mode-2 without a target is a config error") {
    const RunOutput out = run_cli("synth --family chebyshev -N 12 --sll 20 --mode 2 --out " +
                                  fresh_dir("subsynth_cli_cfg").string());
    CHECK(out.exit_code == 2);
}

TEST_CASE("an unreachable mode-2 target exits infeasible but still writes the best result") {
    // a generator target of the same N is exactly representable at full
    // support (xi collapses to roundoff, about 1e-30), so the target must sit
    // below even that floor
    const fs::path dir = fresh_dir("subsynth_cli_infeasible");
    const RunOutput out =
        run_cli("synth --family chebyshev -N 8 --sll 20 --solver omp --mode 2 "
                "--xi-target 1e-40 --out " +
                dir.string());
    CHECK(out.exit_code == 3);
    REQUIRE(fs::exists(dir / "result.json"));
    const string doc = slurp(dir / "result.json");
    CHECK(doc.find("\"infeasible\": true") != string::npos);
    fs::remove_all(dir);
}

TEST_CASE("the raw residual threshold form and the literal variants run end to end") {
    const fs::path dir = fresh_dir("subsynth_cli_eps");
    // a threshold equal to the target norm is met after one greedy pick
    const RunOutput eps = run_cli("synth --family chebyshev -N 12 --sll 20 --solver omp "
                                  "--mode 2 --epsilon 1e9 --out " +
                                  dir.string());
    CHECK(eps.exit_code == 0);
    std::istringstream is(lines_of(eps.stdout_text).back());
    string solver;
    int mode = 0, k = -1;
    is >> solver >> mode >> k;
    CHECK(k == 1);

    const RunOutput literal = run_cli("synth --family chebyshev -N 12 --sll 20 --solver ogomp "
                                      "--mode 1 -K 3 -Q 2 --paper-literal --out " +
                                      dir.string());
    CHECK(literal.exit_code == 0);
    fs::remove_all(dir);
}

TEST_CASE("sweep with no values emits only the header") {
    const fs::path dir = fresh_dir("subsynth_cli_sweep_empty");
    const RunOutput out = run_cli("sweep --family chebyshev -N 12 --sll 20 --axis K --out " +
                                  dir.string());
    CHECK(out.exit_code == 0);
    CHECK(slurp(dir / "sweep.csv") == "value,chi,xi,sll_db,runtime_ms,status\n");
    fs::remove_all(dir);
}

TEST_CASE("greedy-only error decreases as the subarray budget grows") {
    const fs::path dir = fresh_dir("subsynth_cli_sweep_k");
    const RunOutput out = run_cli("sweep --family chebyshev -N 20 --sll 20 --solver omp "
                                  "--mode 1 --axis K --values 1,7,13,17 --out " +
                                  dir.string());
    CHECK(out.exit_code == 0);
    const auto lines = lines_of(slurp(dir / "sweep.csv"));
    REQUIRE(lines.size() == 5);
    double prev = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < lines.size(); ++i) {
        std::istringstream is(lines[i]);
        string field;
        std::getline(is, field, ','); // value
        std::getline(is, field, ','); // chi
        std::getline(is, field, ','); // xi
        const double xi = std::stod(field);
        CHECK(xi < prev);
        prev = xi;
    }
    fs::remove_all(dir);
}

TEST_CASE("refinement sweep error is non-increasing through the convergence point") {
    const fs::path dir = fresh_dir("subsynth_cli_sweep_q");
    const RunOutput out = run_cli("sweep --family chebyshev -N 20 --sll 20 --solver ogomp "
                                  "--mode 1 -K 5 --axis Q --values 0,1,2,3,4 --out " +
                                  dir.string());
    CHECK(out.exit_code == 0);
    const auto lines = lines_of(slurp(dir / "sweep.csv"));
    REQUIRE(lines.size() == 6);
    double prev = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < lines.size(); ++i) {
        std::istringstream is(lines[i]);
        string field;
        std::getline(is, field, ',');
        std::getline(is, field, ',');
        std::getline(is, field, ',');
        const double xi = std::stod(field);
        CHECK(xi <= prev * (1.0 + 1e-9));
        prev = xi;
    }
    fs::remove_all(dir);
}
