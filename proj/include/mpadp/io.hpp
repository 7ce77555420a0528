#pragma once

// Text formats: per-state CSV (`state,value` / `state,action`, 1-indexed),
// two-column `.dat` plot data, integer grids.

#include "mpadp/mdp.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mpadp::io {

/// Decimal with 10 significant digits.
std::string format_number(double v);

/// The value that format_number(v) reads back as.
double quantize(double v);
std::vector<double> quantize(std::span<const double> v);

double parse_number(const std::string& text);

void write_value_csv(std::ostream& out, std::span<const double> values);
void write_value_csv(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_value_csv(const std::filesystem::path& path);

void write_policy_csv(const std::filesystem::path& path, const Policy& policy);
Policy read_policy_csv(const std::filesystem::path& path);

void write_dat(const std::filesystem::path& path, std::span<const double> x,
               std::span<const double> y);
std::vector<std::pair<double, double>> read_dat(const std::filesystem::path& path);

/// Comma-separated integer grid, one line per row.
std::vector<std::vector<int>> read_int_grid_csv(const std::filesystem::path& path);

std::vector<std::string> split(const std::string& line, char sep);
std::string trim(const std::string& s);

} // namespace mpadp::io
