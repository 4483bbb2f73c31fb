#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

// Set by ctest; direct runs without it skip the CLI cases.
bool cli_available() { return std::getenv("BISPECTRAL_CLI") != nullptr; }

std::string cli_path() { return std::getenv("BISPECTRAL_CLI"); }

#define REQUIRE_CLI()                                        \
    if (!cli_available()) {                                  \
        MESSAGE("skipped: BISPECTRAL_CLI not set");          \
        return;                                              \
    }

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const auto out_path = fs::temp_directory_path() / "bispectral_cli_out.txt";
    const std::string cmd = cli_path() + " " + args + " > " + out_path.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

fs::path write_job(const std::string& name, const std::string& body) {
    const auto path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

const char* kCubicJob = R"({
  "word": [
    {"kind": "p", "poly": "t^3/3"},
    {"kind": "q", "poly": ["0", "0", "0", "1/3"]}
  ],
  "grid": {"points": [["0.5", "-0.5"], ["-0.25", "0.75"]]}
})";

}  // namespace

TEST_CASE("cli operators") {
    REQUIRE_CLI();
    const auto job = write_job("cli_cubic.json", kCubicJob);
    const auto res = run_cli("operators --job " + job.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("1 * D^4 + -2 * x^1 * D^2 + -1 * D^1 + 1 * x^2") != std::string::npos);
    CHECK(res.output.find("Lambda") != std::string::npos);
    CHECK(res.output.find("NewBispectral") != std::string::npos);
}

TEST_CASE("cli classify") {
    REQUIRE_CLI();
    const auto job = write_job("cli_rank1.json", R"({
      "word": [
        {"kind": "p", "poly": "t^2"}, {"kind": "q", "poly": "t^2 + t"},
        {"kind": "p", "poly": "2t^2"}, {"kind": "q", "poly": "t^2"}
      ]
    })");
    const auto res = run_cli("classify --job " + job.string());
    CHECK(res.exit_code == 0);  // computation-only command succeeds
    CHECK(res.output.find("Rank1OrTrivial") != std::string::npos);
    CHECK(res.output.find("matrix") != std::string::npos);
    CHECK(res.output.find("convergence: violation") != std::string::npos);
}

TEST_CASE("cli eval") {
    REQUIRE_CLI();
    const auto job = write_job("cli_cubic.json", kCubicJob);
    const auto res = run_cli("eval --job " + job.string() + " --x 0.5 --z -0.5");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("psi(0.5, -0.5)") != std::string::npos);
    CHECK(res.output.find("est_error") != std::string::npos);
}

TEST_CASE("cli verify writes reports and passes on the cubic job") {
    REQUIRE_CLI();
    const auto job = write_job("cli_cubic.json", kCubicJob);
    const auto report = fs::temp_directory_path() / "cli_report.json";
    const auto csv = fs::temp_directory_path() / "cli_residuals.csv";
    const auto res = run_cli("verify --job " + job.string() + " --report-out " + report.string() +
                             " --grid-out " + csv.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("PASS") != std::string::npos);

    std::ifstream rj(report);
    std::stringstream js;
    js << rj.rdbuf();
    CHECK(js.str().find("\"pass\": true") != std::string::npos);
    CHECK(js.str().find("\"operators\"") != std::string::npos);

    std::ifstream cj(csv);
    std::string header;
    std::getline(cj, header);
    CHECK(header == "x_re,x_im,z_re,z_im,identity,residual,scale");
}

TEST_CASE("cli verify on the default grid") {
    REQUIRE_CLI();
    const auto job = write_job("cli_cubic_nogrid.json", R"({
      "word": [{"kind": "p", "poly": "t^3/3"}, {"kind": "q", "poly": "t^3/3"}]
    })");
    const auto report = fs::temp_directory_path() / "cli_default_grid.json";
    const auto csv = fs::temp_directory_path() / "cli_default_grid.csv";
    const auto res = run_cli("verify --job " + job.string() + " --report-out " + report.string() +
                             " --grid-out " + csv.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("25 grid points") != std::string::npos);
}

TEST_CASE("cli rejects divergent words with exit code 2") {
    REQUIRE_CLI();
    const auto job = write_job("cli_degenerate.json", R"({
      "word": [{"kind": "p", "poly": "t^2"}, {"kind": "q", "poly": "t^2"}]
    })");
    const auto res = run_cli("verify --job " + job.string());
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("convergence violation") != std::string::npos);
}

TEST_CASE("cli symmetry scenario") {
    REQUIRE_CLI();
    const auto report = fs::temp_directory_path() / "cli_symmetry.json";
    const auto res = run_cli("symmetry --report-out " + report.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("numerical rank           = 3") != std::string::npos);
    CHECK(res.output.find("PASS") != std::string::npos);
}

TEST_CASE("cli reports bad input with exit code 1") {
    REQUIRE_CLI();
    const auto job = write_job("cli_bad.json", R"({
      "word": [{"kind": "p", "poly": "0.5*t^3"}]
    })");
    const auto res = run_cli("operators --job " + job.string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("error") != std::string::npos);
}
