// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "aniso/atoms.hpp"

namespace aniso {

using Json = nlohmann::ordered_json;

// Text for a double with 17 significant digits (round-trips exactly).
std::string format_double(double v);

// Grid of 64-bit little-endian floats, row-major, written to <stem>.bin with a
// JSON sidecar <stem>.json holding {rows, cols, dtype, order, ...meta}.
struct GridFile {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;
    Json meta;
};

void write_grid(const std::string& stem, const GridFile& grid);
GridFile read_grid(const std::string& stem);

Json to_json(const AtomIndex& index);
AtomIndex atom_index_from_json(const Json& j);

}  // namespace aniso
