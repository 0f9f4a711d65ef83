#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef GCS_CLI_PATH
#error "GCS_CLI_PATH must point at the built cli binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "gcs_cli_stdout.txt";
    const std::string cmd = std::string(GCS_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    result.stdout_text = ss.str();
    return result;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("cli: groupoid-verify passes on a pair groupoid") {
    const auto res = run_cli("groupoid-verify --pairs 4");
    CHECK(res.exit_code == 0);
    const json report = json::parse(res.stdout_text);
    CHECK(report.at("all_pass").get<bool>());
    CHECK(report.at("morphisms").get<int>() == 16);
    CHECK(report.at("violations").empty());
}

TEST_CASE("cli: algebra-check residuals stay at rounding level") {
    const auto res = run_cli("algebra-check --pairs 4 --trials 25 --seed 0");
    CHECK(res.exit_code == 0);
    const json report = json::parse(res.stdout_text);
    CHECK(report.at("max_fundamental_residual").get<double>() <= 1e-12);
    CHECK(report.at("max_cstar_residual").get<double>() <= 1e-10);
    CHECK(report.at("max_left_regular_residual").get<double>() <= 1e-12);
}

TEST_CASE("cli: resolution report is deterministic and tolerance-gated") {
    const fs::path out1 = temp_file("gcs_res1.json");
    const fs::path out2 = temp_file("gcs_res2.json");
    const std::string args = "resolution --R 4.5 --nr 24 --ntheta 48 --dim 48 --probe 5 --tol 1e-4";
    CHECK(run_cli(args + " --out " + out1.string()).exit_code == 0);
    CHECK(run_cli(args + " --out " + out2.string()).exit_code == 0);
    const std::string r1 = slurp(out1);
    CHECK(!r1.empty());
    CHECK(r1 == slurp(out2));

    const json report = json::parse(r1);
    CHECK(report.at("max_abs_deviation").get<double>() <= 1e-4);
    CHECK(report.at("diag").size() == 5);

    // an impossible tolerance flips the exit code to 2 and records a violation
    const auto strict = run_cli("resolution --R 4.5 --nr 8 --ntheta 16 --dim 48 --probe 5 --tol 1e-12");
    CHECK(strict.exit_code == 2);
    CHECK(!json::parse(strict.stdout_text).at("violations").empty());
}

TEST_CASE("cli: csv plot table with column selection") {
    const auto res = run_cli("resolution --R 4.5 --nr 16 --ntheta 32 --dim 48 --probe 5 --format csv");
    CHECK(res.exit_code == 0);
    CHECK(res.stdout_text.rfind("n,diag,abs_deviation\n", 0) == 0);

    const auto subset = run_cli(
        "resolution --R 4.5 --nr 16 --ntheta 32 --dim 48 --probe 5 --format csv --columns n,abs_deviation");
    CHECK(subset.exit_code == 0);
    CHECK(subset.stdout_text.rfind("n,abs_deviation\n", 0) == 0);

    const auto unknown = run_cli(
        "resolution --R 4.5 --nr 16 --ntheta 32 --dim 48 --probe 5 --format csv --columns banana");
    CHECK(unknown.exit_code == 1);
}

TEST_CASE("cli: frame-check full disk passes, half disk fails the gate") {
    const auto good = run_cli("frame-check --R 5 --nr 32 --ntheta 64 --dim 60 --probe 6 --tol 1e-4");
    CHECK(good.exit_code == 0);
    const json report = json::parse(good.stdout_text);
    CHECK(std::abs(report.at("lambda").get<double>() - 1.0) <= 1e-4);

    const auto half =
        run_cli("frame-check --R 5 --nr 24 --ntheta 48 --dim 60 --probe 6 --theta-span 3.14159265358979 --tol 1e-4");
    CHECK(half.exit_code == 2);
    const json hreport = json::parse(half.stdout_text);
    REQUIRE(!hreport.at("violations").empty());
    CHECK(hreport.at("violations")[0].get<std::string>().find("tightness_deviation") !=
          std::string::npos);
}

TEST_CASE("cli: stability contrasts harmonic and deformed flows") {
    const auto harmonic = run_cli("stability --dim 50 --ts 0.1,1.0 --evolution harmonic --tol 1e-6");
    CHECK(harmonic.exit_code == 0);
    for (const auto& row : json::parse(harmonic.stdout_text).at("rows")) {
        CHECK(row.at("max_residual").get<double>() <= 1e-6);
    }

    const auto deformed = run_cli("stability --dim 50 --ts 0.1 --evolution deformed --f sqrt");
    CHECK(deformed.exit_code == 0);
    CHECK(json::parse(deformed.stdout_text).at("rows")[0].at("max_residual").get<double>() > 1e-2);
}

TEST_CASE("cli: f-oscillator-report emits spectra") {
    const auto res = run_cli("f-oscillator-report --dim 12 --f sqrt --omega 1.0");
    CHECK(res.exit_code == 0);
    const json report = json::parse(res.stdout_text);
    CHECK(report.at("energies").size() == 12);
    CHECK(report.at("closed_form_residual").get<double>() <= 1e-12);

    const auto csv = run_cli("f-oscillator-report --dim 12 --f sqrt --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.stdout_text.rfind("n,energy,commutator\n", 0) == 0);
}

TEST_CASE("cli: oscillator-report documents the composition phase constant") {
    const auto res = run_cli("oscillator-report --dim 40");
    CHECK(res.exit_code == 0);
    const json report = json::parse(res.stdout_text);
    CHECK(std::abs(report.at("composition_phase_constant").get<double>() - 1.0) <= 1e-8);
    CHECK(report.at("commutator_corner").get<double>() == -39.0);
}

TEST_CASE("cli: config file drives a run, flags override it") {
    const fs::path cfg = temp_file("gcs_cfg.json");
    {
        std::ofstream out(cfg);
        out << R"({"command": "groupoid-verify", "params": {"pairs": 3}})";
    }
    const auto from_config = run_cli("--config " + cfg.string());
    CHECK(from_config.exit_code == 0);
    CHECK(json::parse(from_config.stdout_text).at("morphisms").get<int>() == 9);

    const auto overridden = run_cli("groupoid-verify --config " + cfg.string() + " --pairs 5");
    CHECK(overridden.exit_code == 0);
    CHECK(json::parse(overridden.stdout_text).at("morphisms").get<int>() == 25);

    // mismatched command and unknown param keys are validation errors
    const auto mismatched = run_cli("resolution --config " + cfg.string());
    CHECK(mismatched.exit_code == 1);

    const fs::path bad = temp_file("gcs_bad_cfg.json");
    {
        std::ofstream out(bad);
        out << R"({"command": "groupoid-verify", "params": {"sides": 3}})";
    }
    CHECK(run_cli("--config " + bad.string()).exit_code == 1);
}

TEST_CASE("cli: validation failures exit with code 1") {
    CHECK(run_cli("").exit_code == 1);                            // no command
    CHECK(run_cli("groupoid-verify --no-such-flag 1").exit_code == 1);
    CHECK(run_cli("groupoid-verify --pairs 0").exit_code == 1);   // rejected constructor
    CHECK(run_cli("stability --evolution sideways").exit_code == 1);
    CHECK(run_cli("--config /no/such/file.json").exit_code == 1);
    const auto missing_dir =
        run_cli("groupoid-verify --pairs 3 --out /no/such/dir/report.json");
    CHECK(missing_dir.exit_code == 1);
}

TEST_CASE("cli: groupoid file input") {
    const fs::path gfile = temp_file("gcs_groupoid.json");
    {
        // the pair groupoid on 2 objects, morphism (j,k) : k -> j with id 2j+k
        std::ofstream out(gfile);
        out << R"({"objects": 2,
                   "morphisms": [[0,0,0],[1,1,0],[2,0,1],[3,1,1]],
                   "compose": [[0,0,0],[0,1,1],[1,2,0],[1,3,1],[2,0,2],[2,1,3],[3,2,2],[3,3,3]],
                   "units": [0,3],
                   "inverses": [0,2,1,3]})";
    }
    const auto res = run_cli("groupoid-verify --file " + gfile.string());
    CHECK(res.exit_code == 0);
    const json report = json::parse(res.stdout_text);
    CHECK(report.at("all_pass").get<bool>());
    CHECK(report.at("objects").get<int>() == 2);

    // corrupt one composite: (0,1)∘(1,0) = (0,0) becomes (0,1)
    const fs::path broken = temp_file("gcs_groupoid_broken.json");
    {
        std::ofstream out(broken);
        out << R"({"objects": 2,
                   "morphisms": [[0,0,0],[1,1,0],[2,0,1],[3,1,1]],
                   "compose": [[0,0,0],[0,1,1],[1,2,1],[1,3,1],[2,0,2],[2,1,3],[3,2,2],[3,3,3]],
                   "units": [0,3],
                   "inverses": [0,2,1,3]})";
    }
    const auto bad = run_cli("groupoid-verify --file " + broken.string());
    CHECK(bad.exit_code == 2);
    CHECK_FALSE(json::parse(bad.stdout_text).at("all_pass").get<bool>());
}

TEST_CASE("cli: algebra convolve, norm, and rep on element files") {
    // delta elements on the pair groupoid: (2,1) with id 9 and (1,3) with id 7 (n = 4)
    const fs::path lhs = temp_file("gcs_lhs.json");
    const fs::path rhs = temp_file("gcs_rhs.json");
    {
        std::ofstream out(lhs);
        out << R"({"groupoid": "pairs:4", "coeffs": [[9, 1.0, 0.0]]})";
    }
    {
        std::ofstream out(rhs);
        out << R"({"groupoid": "pairs:4", "coeffs": [[7, 1.0, 0.0]]})";
    }
    const auto conv = run_cli("algebra --action convolve --lhs " + lhs.string() + " --rhs " + rhs.string());
    CHECK(conv.exit_code == 0);
    const json product = json::parse(conv.stdout_text);
    REQUIRE(product.at("coeffs").size() == 1);
    CHECK(product.at("coeffs")[0][0].get<int>() == 11);   // (2,1)∘(1,3) = (2,3)

    const auto norm = run_cli("algebra --action norm --in " + lhs.string());
    CHECK(norm.exit_code == 0);
    CHECK(std::abs(json::parse(norm.stdout_text).at("norm").get<double>() - 1.0) <= 1e-12);

    const auto rep = run_cli("algebra --action rep --in " + lhs.string());
    CHECK(rep.exit_code == 0);
    const json matrix = json::parse(rep.stdout_text).at("matrix");
    CHECK(matrix.size() == 4);
    CHECK(matrix[2][1][0].get<double>() == 1.0);          // pi_0 places (2,1) at row 2, col 1

    const auto regular = run_cli("algebra --action rep --rep-kind regular --in " + lhs.string());
    CHECK(regular.exit_code == 0);
    CHECK(json::parse(regular.stdout_text).at("matrix").size() == 16);

    // mismatched groupoids and unknown actions are validation errors
    const fs::path other = temp_file("gcs_other.json");
    {
        std::ofstream out(other);
        out << R"({"groupoid": "pairs:3", "coeffs": [[0, 1.0, 0.0]]})";
    }
    CHECK(run_cli("algebra --action convolve --lhs " + lhs.string() + " --rhs " + other.string()).exit_code == 1);
    CHECK(run_cli("algebra --action transpose --in " + lhs.string()).exit_code == 1);
}

TEST_CASE("cli: stability and oscillator plot tables") {
    const auto st = run_cli("stability --dim 40 --ts 0.1,0.5 --format csv");
    CHECK(st.exit_code == 0);
    CHECK(st.stdout_text.rfind("t,max_residual\n", 0) == 0);

    const auto osc = run_cli("oscillator-report --dim 30 --format csv");
    CHECK(osc.exit_code == 0);
    CHECK(osc.stdout_text.rfind("abs_z,eigen_residual,series_distance\n", 0) == 0);
}

TEST_CASE("cli: family file input for frame-check") {
    const fs::path fam = temp_file("gcs_family.json");
    {
        std::ofstream out(fam);
        out << R"({"builtin": "weyl_disk", "dim": 40, "R": 4.0, "n_r": 24, "n_theta": 48})";
    }
    const auto res = run_cli("frame-check --family " + fam.string() + " --probe 4 --tol 1e-3");
    CHECK(res.exit_code == 0);
    CHECK(std::abs(json::parse(res.stdout_text).at("lambda").get<double>() - 1.0) <= 1e-3);
}
