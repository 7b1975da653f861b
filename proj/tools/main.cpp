// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 aniso contributors

#include "cli.hpp"

int main(int argc, char** argv) { return aniso::cli::main_entry(argc, argv); }
