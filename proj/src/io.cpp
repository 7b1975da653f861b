// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "aniso/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace aniso {

namespace {

std::uint64_t to_le(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    return __builtin_bswap64(v);
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_grid(const std::string& stem, const GridFile& grid) {
    if (grid.rows < 0 || grid.cols < 0 ||
        grid.data.size() != std::size_t(grid.rows) * std::size_t(grid.cols))
        throw std::invalid_argument("grid shape does not match data");
    std::ofstream bin(stem + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open " + stem + ".bin");
    for (double v : grid.data) {
        std::uint64_t u;
        std::memcpy(&u, &v, sizeof(u));
        u = to_le(u);
        bin.write(reinterpret_cast<const char*>(&u), sizeof(u));
    }
    if (!bin) throw std::runtime_error("write failed: " + stem + ".bin");

    Json side;
    side["rows"] = grid.rows;
    side["cols"] = grid.cols;
    side["dtype"] = "float64";
    side["endianness"] = "little";
    side["order"] = "row-major";
    if (grid.meta.is_object())
        for (auto it = grid.meta.begin(); it != grid.meta.end(); ++it) side[it.key()] = it.value();
    std::ofstream js(stem + ".json");
    if (!js) throw std::runtime_error("cannot open " + stem + ".json");
    js << side.dump(2) << "\n";
}

GridFile read_grid(const std::string& stem) {
    std::ifstream js(stem + ".json");
    if (!js) throw std::runtime_error("cannot open " + stem + ".json");
    Json side = Json::parse(js);
    GridFile g;
    g.rows = side.at("rows").get<int>();
    g.cols = side.at("cols").get<int>();
    if (side.value("dtype", "float64") != "float64") throw std::runtime_error("unsupported dtype");
    g.meta = side;
    std::ifstream bin(stem + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open " + stem + ".bin");
    g.data.resize(std::size_t(g.rows) * std::size_t(g.cols));
    for (double& v : g.data) {
        std::uint64_t u;
        bin.read(reinterpret_cast<char*>(&u), sizeof(u));
        if (!bin) throw std::runtime_error("truncated grid file " + stem + ".bin");
        u = to_le(u);
        std::memcpy(&v, &u, sizeof(u));
    }
    return g;
}

Json to_json(const AtomIndex& index) {
    Json j;
    std::visit(
        [&](const auto& idx) {
            using T = std::decay_t<decltype(idx)>;
            if constexpr (std::is_same_v<T, CurveletIndex>) {
                j = {{"type", "curvelet"}, {"j", idx.j}, {"ell", idx.ell}, {"m", {idx.m[0], idx.m[1]}}};
            } else if constexpr (std::is_same_v<T, ShearletIndex>) {
                j = {{"type", "shearlet"}, {"j", idx.j}, {"k", idx.k}, {"m", {idx.m[0], idx.m[1]}},
                     {"cone", idx.cone}};
            } else {
                j = {{"type", "wavelet"}, {"h", idx.h}, {"j", idx.j}, {"n", {idx.n[0], idx.n[1]}}};
            }
        },
        index);
    return j;
}

AtomIndex atom_index_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    auto pair = [&](const char* key) {
        const auto& a = j.at(key);
        return IntPair{a.at(0).get<int>(), a.at(1).get<int>()};
    };
    if (type == "curvelet") return CurveletIndex{j.at("j").get<int>(), j.at("ell").get<int>(), pair("m")};
    if (type == "shearlet")
        return ShearletIndex{j.at("j").get<int>(), j.at("k").get<int>(), pair("m"), j.value("cone", 1)};
    if (type == "wavelet") return WaveletIndex{j.at("h").get<int>(), j.at("j").get<int>(), pair("n")};
    throw std::invalid_argument("unknown atom type '" + type + "'");
}

}  // namespace aniso
