// End-to-end tests of the isoent binary: output contracts, exit codes,
// config handling, and byte-level determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <isoent/plot.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_file = "cli_tmp_out_" + std::to_string(counter);
    const std::string err_file = "cli_tmp_err_" + std::to_string(counter);
    ++counter;
    const std::string cmd = std::string(ISOENT_CLI_PATH) + " " + args +
                            " > " + out_file + " 2> " + err_file;
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    std::remove(out_file.c_str());
    std::remove(err_file.c_str());
    return result;
}

// Value following "name = " in the point output.
double parse_point_value(const std::string& out, const std::string& name) {
    const std::string key = name + " = ";
    const std::size_t pos = out.find(key);
    REQUIRE(pos != std::string::npos);
    return std::strtod(out.c_str() + pos + key.size(), nullptr);
}

}  // namespace

TEST_CASE("point: separable boundary has vanishing measures") {
    const RunResult r = run_cli("point --d 3 --F 0.333333333333333");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("separable = true") != std::string::npos);
    CHECK(std::abs(parse_point_value(r.out, "tangle")) <= 1e-12);
    CHECK(std::abs(parse_point_value(r.out, "concurrence")) <= 1e-12);
    CHECK(std::abs(parse_point_value(r.out, "eof")) <= 1e-12);
}

TEST_CASE("point: maximal values at F = 1") {
    const RunResult r = run_cli("point --d 3 --F 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("separable = false") != std::string::npos);
    CHECK(parse_point_value(r.out, "tangle") ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(parse_point_value(r.out, "concurrence") ==
          doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-12));
    CHECK(parse_point_value(r.out, "eof") ==
          doctest::Approx(std::log2(3.0)).epsilon(1e-12));
}

TEST_CASE("point: linear segment is reported past the tangent point") {
    const RunResult r = run_cli("point --d 3 --F 0.95");
    CHECK(r.exit_code == 0);
    CHECK(parse_point_value(r.out, "tangle") ==
          doctest::Approx(3.0 * (0.95 - 1.0) + 4.0 / 3.0).epsilon(1e-12));
    // The tangle line must be marked as the linear segment.
    const std::size_t pos = r.out.find("tangle = ");
    REQUIRE(pos != std::string::npos);
    const std::size_t eol = r.out.find('\n', pos);
    CHECK(r.out.substr(pos, eol - pos).find("linear segment") !=
          std::string::npos);
}

TEST_CASE("curve: CSV matches the library values") {
    const RunResult r = run_cli(
        "curve --d 3 --measures csquared --from 0.4 --to 0.6 --step 0.1 "
        "--format csv --out cli_tmp_curve.csv");
    CHECK(r.exit_code == 0);
    const isoent::DataTable table =
        isoent::parse_csv(slurp("cli_tmp_curve.csv"));
    REQUIRE(table.columns.size() == 2);
    CHECK(table.columns[1] == "C2(d=3)");
    REQUIRE(table.rows.size() == 3);
    for (const auto& row : table.rows)
        CHECK(row[1] == isoent::csquared(row[0], 3));
    std::remove("cli_tmp_curve.csv");
}

TEST_CASE("curve: identical invocations produce identical bytes") {
    const std::string args =
        "curve --d 2,3 --measures tangle concurrence --from 0 --to 1 "
        "--step 0.01 --format svg --out ";
    CHECK(run_cli(args + "cli_tmp_a.svg").exit_code == 0);
    CHECK(run_cli(args + "cli_tmp_b.svg").exit_code == 0);
    CHECK(slurp("cli_tmp_a.svg") == slurp("cli_tmp_b.svg"));
    std::remove("cli_tmp_a.svg");
    std::remove("cli_tmp_b.svg");
}

TEST_CASE("curve: CSV round trip renders byte-identical SVG") {
    const std::string base =
        "curve --d 3 --measures branch:1,1 branch:2,1 branch:1,2 "
        "--from 0.3334 --to 1 --step 0.01 ";
    CHECK(run_cli(base + "--format csv --out cli_tmp_fig1.csv").exit_code ==
          0);
    CHECK(run_cli(base + "--format svg --out cli_tmp_fig1.svg").exit_code ==
          0);
    const isoent::DataTable table =
        isoent::parse_csv(slurp("cli_tmp_fig1.csv"));
    CHECK(isoent::render_svg(table) == slurp("cli_tmp_fig1.svg"));
    std::remove("cli_tmp_fig1.csv");
    std::remove("cli_tmp_fig1.svg");
}

TEST_CASE("verify: closed-form suite passes and is deterministic") {
    const RunResult a = run_cli("verify closed-form");
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("overall: pass") != std::string::npos);
    const RunResult b = run_cli("verify closed-form");
    // The report includes timings, so compare the stable parts.
    CHECK(a.out.substr(0, a.out.find(" 0.")) ==
          b.out.substr(0, b.out.find(" 0.")));
}

TEST_CASE("config file supplies grid defaults; flags override") {
    {
        std::ofstream cfg("cli_tmp_cfg");
        cfg << "# grid defaults\nfrom = 0.4\nto = 0.6\nstep = 0.1\n";
    }
    const RunResult defaults = run_cli(
        "curve --d 3 --measures csquared --config cli_tmp_cfg --format csv "
        "--out cli_tmp_cfg_a.csv");
    CHECK(defaults.exit_code == 0);
    CHECK(isoent::parse_csv(slurp("cli_tmp_cfg_a.csv")).rows.size() == 3);

    const RunResult overridden = run_cli(
        "curve --d 3 --measures csquared --config cli_tmp_cfg --step 0.05 "
        "--format csv --out cli_tmp_cfg_b.csv");
    CHECK(overridden.exit_code == 0);
    CHECK(isoent::parse_csv(slurp("cli_tmp_cfg_b.csv")).rows.size() == 5);
    std::remove("cli_tmp_cfg");
    std::remove("cli_tmp_cfg_a.csv");
    std::remove("cli_tmp_cfg_b.csv");
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("bogus").exit_code == 2);
    CHECK(run_cli("curve --d 3 --step 0").exit_code == 2);
    CHECK(run_cli("curve --d 3 --measures nope").exit_code == 2);
    CHECK(run_cli("curve --d 3 --measures branch:2,2").exit_code == 2);
    CHECK(run_cli("curve --d 1 --measures tangle").exit_code == 2);
    CHECK(run_cli("point --d 3 --F 1.5").exit_code == 2);
    CHECK(run_cli("verify nonsense").exit_code == 2);
    CHECK(run_cli("curve --d 3 --measures tangle --derivative 3").exit_code ==
          2);
    CHECK(run_cli("curve --d 3 --measures tangle --derivative 1").exit_code ==
          2);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("curve --help").exit_code == 0);
}
