#pragma once

#include <string>
#include <vector>

namespace lorentz {

/// Weight files: JSON array of numbers, or CSV one value per line.
/// The format is sniffed from the content; dimension is inferred.
std::vector<double> read_weight_file(const std::string& path);

/// Point files: JSON array of arrays, or CSV one comma-separated row per point.
std::vector<std::vector<double>> read_point_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace lorentz
