#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kp/field.hpp"

namespace kp {

// Writes <stem>.json (header) and <stem>.bin (nx*ny little-endian f64,
// sample (i, j) at offset i*ny + j).
void write_snapshot(const RealField& f, const std::filesystem::path& stem);
// Accepts either the .json header path or the stem.
RealField read_snapshot(const std::filesystem::path& header_or_stem);

}  // namespace kp
