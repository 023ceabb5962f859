#pragma once

#include <filesystem>
#include <iosfwd>

#include "trackcop/grid.hpp"
#include "trackcop/pl_function.hpp"

namespace trackcop::cli {

// Values are written with 17 significant digits so that reading a file back
// reproduces every double bit for bit.

/// Header "x,value", then one knot per row.
void write_function_csv(std::ostream& out, const PLFunction& f);
void write_function_csv(const std::filesystem::path& path, const PLFunction& f);
PLFunction read_function_csv(std::istream& in);
PLFunction read_function_csv(const std::filesystem::path& path);

/// Empty first cell, mesh along the first row and first column, C(x_i, y_j)
/// in row i, column j.
void write_grid_csv(std::ostream& out, const GridCopula& grid);
void write_grid_csv(const std::filesystem::path& path, const GridCopula& grid);
GridCopula read_grid_csv(std::istream& in);
GridCopula read_grid_csv(const std::filesystem::path& path);

}  // namespace trackcop::cli
