#pragma once

#include "mems/radial_core.hpp"

#include <filesystem>

namespace mems {

// CSV with header `r,u` plus a JSON sidecar {N, M, gamma, alpha, beta} at the same stem.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);
void write_field(const std::filesystem::path& csv, const RadialField& field);
RadialField read_field(const std::filesystem::path& csv);

}  // namespace mems
