// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aniso/io.hpp"

namespace aniso::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kRefused = 1, kUsage = 2 };

struct AtomsArgs {
    std::string frame = "shearlet";
    int j = 2;
    int k = 0;     // shear (shearlet)
    int ell = 0;   // wedge (curvelet)
    int h = 1;     // band (wavelet)
    int cone = 1;
    int m1 = 0, m2 = 0;
    int grid = 64;
    std::string domain = "frequency";
};

struct GramArgs {
    double p = 1.0;
    int j_max = 2;
    int m_radius = 4;
    double threshold = 1e-3;
    int checks = 8;             // quadrature spot checks against the tabulated entries
    int quad_max_samples = 0;   // hidden; 0: library default
};

struct ApproxArgs {
    std::vector<std::string> frames{"curvelet", "shearlet", "wavelet"};
    int seeds = 10;
    double nu = 10.0;
    int grid = 512;
};

struct SeparateArgs {
    std::string mixture;  // JSON path, empty: default mixture
    int grid = 512;
    std::string scales = "3..6";
    int max_iter = 2000;
    std::string weighting = "none";
    bool coherence = true;
};

struct TransformArgs {
    std::string frame = "shearlet";
    int grid = 0;
    std::string input;
    std::string output;
    bool inverse = false;
};

struct RunConfig {
    std::string subcommand;
    int workers = 1;
    std::uint64_t seed = 0;
    std::string out = "out";
    std::string version = kVersion;
    AtomsArgs atoms;
    GramArgs gram;
    ApproxArgs approx;
    SeparateArgs separate;
    TransformArgs transform;
};

struct ParseResult {
    std::optional<RunConfig> config;
    int exit_code = kOk;  // meaningful when config is empty
    std::string output;   // usage or error text
};

ParseResult parse_args(int argc, const char* const* argv);
Json to_json(const RunConfig& config);

// Runs a parsed configuration; messages go to stderr.
int run(const RunConfig& config);

// parse_args followed by run.
int main_entry(int argc, const char* const* argv);

// "a..b" or "a" into an ascending list.
std::vector<int> parse_scales(const std::string& text);

}  // namespace aniso::cli
