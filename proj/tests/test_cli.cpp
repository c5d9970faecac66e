#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "revlab/cli/config.hpp"
#include "revlab/cli/run.hpp"

using namespace revlab;
namespace fs = std::filesystem;

namespace {

const char* kMinimalConfig = R"(# X^2 + XY + Y^2 at the (0.5, 0.5) torus
coeff = 2 0 1.0
coeff = 1 1 1.0
coeff = 0 2 1.0
omega1 = 1.0
omega2 = 1.0
E1 = 0.5
E2 = 0.5
h = 0.01
delta1 = 0.75
delta2 = 0.75
delta1p = 0.8
delta2p = 0.8
t_end = 13.0
samples = 64
)";

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("revlab_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "scenario.cfg";
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

}  // namespace

TEST_CASE("minimal config parses") {
    const cli::Config cfg = cli::parse_config_text(kMinimalConfig, "mem");
    CHECK(cfg.h == 0.01);
    CHECK(cfg.scenario.f.coeffs.size() == 3);
    CHECK(cfg.samples == 64);
    CHECK(cfg.scenario.params.delta1p == 0.8);
    CHECK(cfg.max_den == 64);  // default
}

TEST_CASE("config rejections") {
    // delta1p <= delta1 violates the tail-lemma hypothesis
    std::string bad(kMinimalConfig);
    bad += "\n";
    auto swap_line = [&](const std::string& key, const std::string& repl) {
        std::string text(kMinimalConfig);
        const auto pos = text.find(key);
        const auto end = text.find('\n', pos);
        return text.substr(0, pos) + repl + text.substr(end);
    };
    CHECK_THROWS_AS(cli::parse_config_text(swap_line("delta1p = 0.8", "delta1p = 0.7"), "mem"),
                    ValidationError);
    CHECK_THROWS_AS(cli::parse_config_text(std::string(kMinimalConfig) + "h = 0.02\n", "mem"),
                    ParseError);  // duplicate key
    CHECK_THROWS_AS(cli::parse_config_text(std::string(kMinimalConfig) + "banana = 1\n", "mem"),
                    ParseError);  // unknown key
    CHECK_THROWS_AS(cli::parse_config_text("coeff = 1 0 1\nomega1 = 1\n", "mem"),
                    ValidationError);  // missing keys
    CHECK_THROWS_AS(cli::parse_config_text(swap_line("E1 = 0.5", "E1 = 1.5"), "mem"),
                    ValidationError);
    CHECK_THROWS_AS(cli::parse_config_text(swap_line("h = 0.01", "h = oops"), "mem"), ParseError);
}

TEST_CASE("simulate writes a well-formed CSV") {
    const fs::path dir = temp_dir("simulate");
    const fs::path cfg = write_config(dir, kMinimalConfig);
    const int rc = cli::run_cli("simulate", cfg.string(), (dir / "out").string(), 2);
    REQUIRE(rc == cli::kExitOk);

    const std::string csv = read_file(dir / "out" / "simulate.csv");
    std::istringstream in(csv);
    std::string header, first;
    std::getline(in, header);
    CHECK(header == "t,r_abs,a1_abs,a2_abs,envelope");
    std::getline(in, first);
    // first row: t = 0, every magnitude 1
    double t, r, a1, a2, env;
    char comma;
    std::istringstream row(first);
    row >> t >> comma >> r >> comma >> a1 >> comma >> a2 >> comma >> env;
    CHECK(t == 0.0);
    CHECK(std::abs(r - 1.0) < 1e-10);
    CHECK(std::abs(a1 - 1.0) < 1e-10);
    CHECK(std::abs(a2 - 1.0) < 1e-10);
    CHECK(std::abs(env - 1.0) < 1e-10);
    CHECK(fs::exists(dir / "out" / "manifest.txt"));
}

TEST_CASE("identical config produces byte-identical output") {
    const fs::path dir = temp_dir("determinism");
    const fs::path cfg = write_config(dir, kMinimalConfig);
    REQUIRE(cli::run_cli("simulate", cfg.string(), (dir / "a").string(), 1) == cli::kExitOk);
    REQUIRE(cli::run_cli("simulate", cfg.string(), (dir / "b").string(), 3) == cli::kExitOk);
    CHECK(read_file(dir / "a" / "simulate.csv") == read_file(dir / "b" / "simulate.csv"));
    CHECK(read_file(dir / "a" / "manifest.txt") == read_file(dir / "b" / "manifest.txt"));
}

TEST_CASE("periods report marks undefined revival periods") {
    const fs::path dir = temp_dir("periods");
    std::string cfg_text = R"(coeff = 1 0 1.0
coeff = 0 1 1.0
omega1 = 1.0
omega2 = 1.0
E1 = 0.5
E2 = 0.5
h = 0.01
delta1 = 0.75
delta2 = 0.75
delta1p = 0.8
delta2p = 0.8
)";
    const fs::path cfg = write_config(dir, cfg_text);
    REQUIRE(cli::run_cli("periods", cfg.string(), (dir / "out").string(), 1) == cli::kExitOk);
    const std::string report = read_file(dir / "out" / "periods.txt");
    CHECK(report.find("T_rev1   = undefined") != std::string::npos);
    CHECK(report.find("revival periods undefined") != std::string::npos);
    CHECK(report.find("commensurate: |T_cl1/T_cl2| = 1/1") != std::string::npos);
}

TEST_CASE("revival subcommand reports T_frac = 400 pi and a tiny residual") {
    const fs::path dir = temp_dir("revival");
    const fs::path cfg = write_config(dir, kMinimalConfig);
    REQUIRE(cli::run_cli("revival", cfg.string(), (dir / "out").string(), 1) == cli::kExitOk);
    const std::string report = read_file(dir / "out" / "revival.txt");
    CHECK(report.find("T_frac  = 1256.63706143") != std::string::npos);  // 400 pi
    const auto pos = report.find("reconstruction residual at t=0:");
    REQUIRE(pos != std::string::npos);
    const double residual = std::stod(report.substr(report.find(':', pos) + 1));
    CHECK(residual < 1e-9);
    CHECK(fs::exists(dir / "out" / "revival_coefficients.csv"));
}

TEST_CASE("convergence subcommand writes errors and slopes") {
    const fs::path dir = temp_dir("convergence");
    std::string cfg_text(kMinimalConfig);
    cfg_text += "h_sweep = 0.01 0.005 0.0025\n";
    const fs::path cfg = write_config(dir, cfg_text);
    REQUIRE(cli::run_cli("convergence", cfg.string(), (dir / "out").string(), 2) == cli::kExitOk);
    const std::string csv = read_file(dir / "out" / "convergence.csv");
    CHECK(csv.rfind("h,sup_error_linear,sup_error_quadratic", 0) == 0);
    CHECK(fs::exists(dir / "out" / "slopes.csv"));
}

TEST_CASE("cf subcommand emits quotients and approach times") {
    const fs::path dir = temp_dir("cf");
    // omega2 = sqrt(2) gives theta = T_cl1/T_cl2 = sqrt(2)
    std::string cfg_text = R"(coeff = 1 0 1.0
coeff = 0 1 1.0
omega1 = 1.0
omega2 = 1.4142135623730951
E1 = 0.5
E2 = 0.5
h = 0.001
delta1 = 0.75
delta2 = 0.75
delta1p = 0.8
delta2p = 0.8
)";
    const fs::path cfg = write_config(dir, cfg_text);
    REQUIRE(cli::run_cli("cf", cfg.string(), (dir / "out").string(), 1) == cli::kExitOk);
    const std::string report = read_file(dir / "out" / "cf.txt");
    CHECK(report.find("partial quotients: 1 2 2 2") != std::string::npos);
    const std::string csv = read_file(dir / "out" / "cf.csv");
    CHECK(csv.rfind("k,a_k,p_k,q_k,approach_time,flow_distance,in_A_h", 0) == 0);
}

TEST_CASE("exit codes distinguish error classes") {
    const fs::path dir = temp_dir("exit_codes");
    CHECK(cli::run_cli("simulate", (dir / "missing.cfg").string(), (dir / "o1").string(), 1) ==
          cli::kExitParse);

    // linear symbol: revival periods undefined -> revival subcommand fails
    std::string lin = R"(coeff = 1 0 1.0
coeff = 0 1 1.0
omega1 = 1.0
omega2 = 1.0
E1 = 0.5
E2 = 0.5
h = 0.01
delta1 = 0.75
delta2 = 0.75
delta1p = 0.8
delta2p = 0.8
)";
    const fs::path cfg1 = write_config(dir, lin);
    CHECK(cli::run_cli("revival", cfg1.string(), (dir / "o2").string(), 1) ==
          cli::kExitPeriodUndefined);

    // irrational revival ratios -> NoResonance
    const fs::path dir2 = temp_dir("exit_codes2");
    std::string irr = R"(coeff = 2 0 0.70710678118654752
coeff = 1 1 1.0
coeff = 0 2 1.0
omega1 = 1.0
omega2 = 1.0
E1 = 0.5
E2 = 0.5
h = 0.01
delta1 = 0.75
delta2 = 0.75
delta1p = 0.8
delta2p = 0.8
max_den = 50
)";
    const fs::path cfg2 = write_config(dir2, irr);
    CHECK(cli::run_cli("revival", cfg2.string(), (dir2 / "o3").string(), 1) ==
          cli::kExitNoResonance);

    CHECK(cli::run_cli("warp", cfg2.string(), (dir2 / "o4").string(), 1) == cli::kExitValidation);
}

TEST_CASE("simulate on a linear symbol leaves a2 cells empty") {
    const fs::path dir = temp_dir("simulate_linear");
    std::string lin = R"(coeff = 1 0 1.0
coeff = 0 1 1.0
omega1 = 1.0
omega2 = 1.0
E1 = 0.5
E2 = 0.5
h = 0.01
delta1 = 0.75
delta2 = 0.75
delta1p = 0.8
delta2p = 0.8
t_end = 10.0
samples = 16
)";
    const fs::path cfg = write_config(dir, lin);
    REQUIRE(cli::run_cli("simulate", cfg.string(), (dir / "out").string(), 1) == cli::kExitOk);
    std::istringstream in(read_file(dir / "out" / "simulate.csv"));
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    // t, r, a1 populated; a2 empty; envelope populated
    CHECK(row.find(",,") != std::string::npos);
}

TEST_CASE("packet dump is optional") {
    const fs::path dir = temp_dir("dump");
    std::string cfg_text(kMinimalConfig);
    cfg_text += "dump_packet = true\n";
    const fs::path cfg = write_config(dir, cfg_text);
    REQUIRE(cli::run_cli("simulate", cfg.string(), (dir / "out").string(), 1) == cli::kExitOk);
    const std::string pk = read_file(dir / "out" / "packet.csv");
    CHECK(pk.rfind("n,m,a", 0) == 0);
}
