#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "maxavg/cyclic_sums.hpp"
#include "maxavg/periodic.hpp"

namespace maxavg {

// {"values": [number | "p/q", ...]}. Numbers enter the rational backend
// through their shortest decimal form, so 1.2 becomes 6/5.
template <class T>
PeriodicTuple<T> parse_tuple(const std::string& json_text);

// {"radii": [int, ...]}
RadiusTuple parse_radii(const std::string& json_text);

// {"collections": [[[int, ...], ...], ...]} with 1-based indices.
SubsetCollectionSystem parse_subset_system(const std::string& json_text);

std::string read_file(const std::filesystem::path& path);

}  // namespace maxavg
