#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fpent/csv.hpp"
#include "fpent/numfmt.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

// Runs the CLI with the given arguments; stderr is discarded unless asked for.
Run run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(FPENT_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, EntropyReportsUniformApproximation) {
    const auto r = run("entropy --dist uniform:a=-1,b=1 --p 3 --E 2");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["approx_H_s"].get<double>(), 4.94, 0.005);
    EXPECT_EQ(j["format"]["precision"], 3);
    EXPECT_EQ(j["format"]["exponent_bits"], 2);
    // long aliases give the same document
    EXPECT_EQ(run("entropy --dist uniform:a=-1,b=1 --precision 3 --exponent-bits 2").out, r.out);
}

TEST(Cli, GridCsvHasOneRowPerValue) {
    const auto r = run("grid --p 3 --E 3");
    ASSERT_EQ(r.code, 0);
    const auto t = fpent::parse_csv(r.out);
    EXPECT_EQ(t.rows.size(), 64u);
    EXPECT_EQ(*t.meta("format"), "p=3,E=3");
}

TEST(Cli, ScaleSweepWritesFileAtomically) {
    const auto dir = std::filesystem::temp_directory_path() / "fpent_cli_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / "sweep.csv";
    const std::string args = "sweep --mode scale --dist gaussian:sigma=1 --p 3 --E 4 --points 500 --min 1e-12 --max 1e12 --out ";
    ASSERT_EQ(run(args + path.string()).code, 0);
    const auto first = slurp(path);
    const auto t = fpent::parse_csv(first);
    EXPECT_EQ(t.rows.size(), 500u);
    ASSERT_NE(t.meta("timestamp"), nullptr);
    ASSERT_EQ(run(args + path.string()).code, 0);
    // identical apart from the timestamp line
    auto strip = [](std::string s) {
        const auto a = s.find("# timestamp:");
        return s.erase(a, s.find('\n', a) - a + 1);
    };
    EXPECT_EQ(strip(first), strip(slurp(path)));
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
    EXPECT_EQ(files, 1u);
    std::filesystem::remove_all(dir);
}

TEST(Cli, PrecisionSweepJson) {
    const auto r = run("sweep --mode precision --dist gaussian:sigma=1 --E 7 --p-min 1 --p-max 8 --format json --no-timestamp");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), 8u);
    for (const auto& row : j["rows"])
        if (row["precision"].get<double>() >= 3)
            EXPECT_NEAR(row["exact_H"].get<double>() - row["precision"].get<double>(), 2.46, 0.05);
}

TEST(Cli, BoundsAndMc) {
    const auto b = run("bounds --dist gaussian:sigma=1 --p 2 --E 2 --t-grid 1,1.5,2,3");
    ASSERT_EQ(b.code, 0);
    const auto j = json::parse(b.out);
    EXPECT_LE(j["kl"]["lower"].get<double>(), j["kl"]["kl"].get<double>());
    EXPECT_LE(j["kl"]["kl"].get<double>(), j["kl"]["upper"].get<double>());
    const auto pb = run("bounds --dist gaussian:sigma=1 --p 2 --E 2 --per-bin --format csv");
    ASSERT_EQ(pb.code, 0);
    const auto table = fpent::parse_csv(pb.out);
    EXPECT_EQ(table.rows.size(), 16u);
    EXPECT_EQ(*table.meta("distribution"), "gaussian:sigma=1");
    double kl = 0.0;
    for (std::size_t r = 0; r < table.rows.size(); ++r) kl += table.number(r, "kl");
    EXPECT_NEAR(kl, fpent::parse_double(*table.meta("kl.kl")), 1e-12);
    const auto m1 = run("mc --dist gaussian:sigma=1 --p 3 --E 4 --samples 50000 --seed 4 --bias-correction");
    const auto m2 = run("mc --dist gaussian:sigma=1 --p 3 --E 4 --samples 50000 --seed 4 --bias-correction");
    ASSERT_EQ(m1.code, 0);
    EXPECT_EQ(m1.out, m2.out);
    const auto mj = json::parse(m1.out);
    EXPECT_EQ(mj["mc"]["samples"], 50000);
    EXPECT_TRUE(mj["mc"]["bias_corrected"].get<bool>());
    const auto mv = run("mc --cov '1,0.5;0.5,1' --p 3 --E 4 --samples 20000");
    ASSERT_EQ(mv.code, 0);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("entropy --p three --dist gaussian:sigma=1").code, 2);
    EXPECT_EQ(run("entropy --bogus").code, 2);
    const auto bad_dist = run("entropy --dist cauchy:s=1", true);
    EXPECT_EQ(bad_dist.code, 2);
    EXPECT_NE(bad_dist.out.find("valid families"), std::string::npos);
    EXPECT_EQ(run("entropy --dist gaussian:sigma=1 --p 1 --E 0").code, 2);
    EXPECT_EQ(run("sweep --mode size --dist gaussian:sigma=1").code, 2);
    EXPECT_EQ(run("bounds --dist gaussian:sigma=1 --p 12 --E 6").code, 2);
    const auto usage = run("grid --p", true);
    EXPECT_EQ(usage.code, 2);
    EXPECT_NE(usage.out.find("Usage"), std::string::npos);
    EXPECT_EQ(run("--help").code, 0);
    // the strong pole of this density at 1 defeats the per-bin quadrature
    const auto numerical = run("bounds --dist beta:alpha=0.01,beta=0.01 --p 6 --E 5", true);
    EXPECT_EQ(numerical.code, 3);
    EXPECT_NE(numerical.out.find("error_analysis"), std::string::npos);
    EXPECT_EQ(run("grid --p 3 --E 3 --out /nonexistent/dir/x.csv").code, 2);
}
