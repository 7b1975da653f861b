// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <random>

#include "aniso/io.hpp"

namespace aniso {
namespace {

std::filesystem::path scratch_dir() {
    const std::string name = ::testing::UnitTest::GetInstance()->current_test_info()->name();
    const auto dir = std::filesystem::temp_directory_path() / ("aniso_io_" + name);
    std::filesystem::create_directories(dir);
    return dir;
}

TEST(FormatDouble, RoundTripsExactly) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, int(i % 40) - 20);
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(std::strtod(format_double(std::numeric_limits<double>::denorm_min()).c_str(), nullptr),
              std::numeric_limits<double>::denorm_min());
}

TEST(GridFile, RoundTrip) {
    const auto dir = scratch_dir();
    GridFile g;
    g.rows = 3;
    g.cols = 5;
    for (int i = 0; i < 15; ++i) g.data.push_back(std::sin(0.7 * i) * 1e-3 * i);
    g.meta["note"] = "test";
    const std::string stem = (dir / "grid").string();
    write_grid(stem, g);
    const GridFile back = read_grid(stem);
    EXPECT_EQ(back.rows, 3);
    EXPECT_EQ(back.cols, 5);
    EXPECT_EQ(back.data, g.data);
    EXPECT_EQ(back.meta.value("note", ""), "test");
    // Little-endian float64, row-major.
    EXPECT_EQ(std::filesystem::file_size(stem + ".bin"), 15u * 8u);
    std::filesystem::remove_all(dir);
}

TEST(GridFile, RejectsBadShapeAndMissingFiles) {
    GridFile g;
    g.rows = 2;
    g.cols = 2;
    g.data = {1.0, 2.0, 3.0};
    EXPECT_THROW(write_grid((scratch_dir() / "bad").string(), g), std::invalid_argument);
    EXPECT_THROW(read_grid((scratch_dir() / "missing").string()), std::runtime_error);
    std::filesystem::remove_all(scratch_dir());
}

TEST(AtomIndexJson, RoundTrip) {
    const AtomIndex atoms[] = {CurveletIndex{3, 5, {-1, 2}}, ShearletIndex{4, -2, {0, 7}, 2},
                               WaveletIndex{3, 2, {1, -1}}};
    for (const AtomIndex& a : atoms) {
        const AtomIndex b = atom_index_from_json(to_json(a));
        EXPECT_EQ(a.index(), b.index());
        EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    }
}

}  // namespace
}  // namespace aniso
