// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace aniso::cli {
namespace {

namespace fs = std::filesystem;

ParseResult parse(std::vector<std::string> args) {
    args.insert(args.begin(), "aniso");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_args(int(argv.size()), argv.data());
}

int run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "aniso");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return main_entry(int(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& tag) {
    const std::string name = ::testing::UnitTest::GetInstance()->current_test_info()->name();
    const fs::path dir = fs::temp_directory_path() / ("aniso_cli_" + name + "_" + tag);
    fs::remove_all(dir);
    return dir;
}

TEST(ParseArgs, GramFlags) {
    const ParseResult r = parse({"gram", "--p", "1.0", "--jmax", "5"});
    ASSERT_TRUE(r.config.has_value()) << r.output;
    EXPECT_EQ(r.config->subcommand, "gram");
    EXPECT_EQ(r.config->gram.p, 1.0);
    EXPECT_EQ(r.config->gram.j_max, 5);
    const GramArgs defaults;
    EXPECT_EQ(r.config->gram.m_radius, defaults.m_radius);
    EXPECT_EQ(r.config->gram.threshold, defaults.threshold);
    EXPECT_EQ(r.config->version, kVersion);
}

TEST(ParseArgs, GridMustBePowerOfTwo) {
    const ParseResult r = parse({"approx", "--grid", "500"});
    EXPECT_FALSE(r.config.has_value());
    EXPECT_EQ(r.exit_code, kUsage);
    EXPECT_NE(r.output.find("grid must be a power of 2"), std::string::npos) << r.output;
}

TEST(ParseArgs, EmptyArgvIsUsage) {
    const ParseResult r = parse({});
    EXPECT_FALSE(r.config.has_value());
    EXPECT_EQ(r.exit_code, kUsage);
    EXPECT_NE(r.output.find("Usage"), std::string::npos) << r.output;
    EXPECT_EQ(run_args({}), kUsage);
}

TEST(ParseArgs, UnknownFlagAndMissingPath) {
    EXPECT_EQ(parse({"gram", "--bogus", "1"}).exit_code, kUsage);
    EXPECT_EQ(parse({"transform", "--input", "x"}).exit_code, kUsage);
    EXPECT_EQ(parse({"atoms", "--frame", "ridgelet"}).exit_code, kUsage);
}

TEST(ParseArgs, GlobalFlags) {
    const ParseResult r =
        parse({"--workers", "3", "--seed", "17", "--out", "elsewhere", "separate", "--scales", "3..5"});
    ASSERT_TRUE(r.config.has_value()) << r.output;
    EXPECT_EQ(r.config->workers, 3);
    EXPECT_EQ(r.config->seed, 17u);
    EXPECT_EQ(r.config->out, "elsewhere");
    EXPECT_EQ(parse_scales(r.config->separate.scales), (std::vector<int>{3, 4, 5}));
    EXPECT_EQ(parse_scales("4"), (std::vector<int>{4}));
    EXPECT_THROW(parse_scales("5..3"), std::invalid_argument);
}

TEST(Run, ConfigEchoEqualsParsedConfig) {
    const fs::path out = scratch("a");
    const ParseResult r = parse({"--out", out.string(), "atoms", "--frame", "curvelet", "--j", "3", "--grid", "32"});
    ASSERT_TRUE(r.config.has_value());
    ASSERT_EQ(run(*r.config), kOk);
    const Json echo = Json::parse(slurp(out / "config.json"));
    EXPECT_EQ(echo, to_json(*r.config));
    EXPECT_TRUE(fs::exists(out / "atom.bin"));
    EXPECT_EQ(fs::file_size(out / "atom.bin"), 32u * 32u * 2u * 8u);
    fs::remove_all(out);
}

TEST(Run, GramSummaryIsFinite) {
    const fs::path out = scratch("a");
    ASSERT_EQ(run_args({"--out", out.string(), "--workers", "1", "gram", "--jmax", "1", "--mradius", "4"}), kOk);
    const Json s = Json::parse(slurp(out / "gram_summary.json"));
    ASSERT_TRUE(s.contains("op_p_norm"));
    EXPECT_TRUE(s["op_p_norm"].is_number());
    EXPECT_GT(s["op_p_norm"].get<double>(), 0.0);
    EXPECT_TRUE(fs::exists(out / "gram.csv"));
    fs::remove_all(out);
}

TEST(Run, QuadratureRefusalExitsOne) {
    const fs::path out = scratch("a");
    EXPECT_EQ(run_args({"--out", out.string(), "gram", "--jmax", "1", "--mradius", "4", "--quad-max-samples", "4"}),
              kRefused);
    fs::remove_all(out);
}

TEST(Run, DeterministicOutputs) {
    const fs::path a = scratch("a"), b = scratch("b");
    for (const fs::path& out : {a, b}) {
        const std::string workers = out == a ? "1" : "2";
        ASSERT_EQ(run_args({"--out", out.string(), "--workers", workers, "gram", "--jmax", "1", "--mradius", "4"}),
                  kOk);
        ASSERT_EQ(run_args({"--out", out.string(), "--workers", workers, "separate", "--grid", "64", "--scales",
                            "3"}),
                  kOk);
    }
    for (const char* f : {"gram.csv", "gram_summary.json", "ratios.csv", "coherence.csv"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Run, TransformRoundTrip) {
    const fs::path out = scratch("a");
    fs::create_directories(out);
    GridFile g;
    g.rows = g.cols = 32;
    for (int i = 0; i < 32 * 32; ++i) g.data.push_back(std::sin(0.37 * i) + 0.1 * (i % 7));
    write_grid((out / "in").string(), g);
    ASSERT_EQ(run_args({"--out", out.string(), "transform", "--frame", "wavelet", "--input", (out / "in").string(),
                        "--output", (out / "coef").string()}),
              kOk);
    ASSERT_EQ(run_args({"--out", out.string(), "transform", "--frame", "wavelet", "--inverse", "--input",
                        (out / "coef").string(), "--output", (out / "back").string()}),
              kOk);
    const GridFile back = read_grid((out / "back").string());
    ASSERT_EQ(back.data.size(), g.data.size());
    for (std::size_t i = 0; i < g.data.size(); ++i) EXPECT_NEAR(back.data[i], g.data[i], 1e-12);
    fs::remove_all(out);
}

}  // namespace
}  // namespace aniso::cli
