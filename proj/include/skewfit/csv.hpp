#pragma once

#include <string>
#include <vector>

#include "skewfit/likelihood.hpp"

namespace skewfit {

// Comma-separated numeric table. An optional header row is auto-detected
// (first row with any non-numeric cell). Ragged rows, non-numeric cells and
// missing values raise ParseError naming the 1-based row and column.
Dataset load_csv(const std::string& path);

void write_csv(const std::string& path, const Dataset& data,
               const std::vector<std::string>& column_names = {});

}  // namespace skewfit
