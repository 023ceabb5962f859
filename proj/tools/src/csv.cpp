#include "csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "problem.hpp"
#include "trackcop/errors.hpp"

namespace trackcop::cli {

namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.write(buf, len);
}

std::vector<double> split_numbers(std::string_view line, std::size_t line_no, bool leading_blank) {
  std::vector<double> out;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::size_t pos = 0;
  bool first = true;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    std::string_view cell = line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos);
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
    if (!(first && leading_blank && cell.empty())) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw InputError("line " + std::to_string(line_no) + ": '" + std::string(cell) +
                         "' is not a number");
      }
      out.push_back(v);
    }
    first = false;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <class Write>
void to_file(const std::filesystem::path& path, Write&& write) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write(out);
  if (!out) throw InputError("error while writing " + path.string());
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  return in;
}

}  // namespace

void write_function_csv(std::ostream& out, const PLFunction& f) {
  out << "x,value\n";
  for (std::size_t k = 0; k < f.size(); ++k) {
    put(out, f.xs()[k]);
    out << ',';
    put(out, f.ys()[k]);
    out << '\n';
  }
}

void write_function_csv(const std::filesystem::path& path, const PLFunction& f) {
  to_file(path, [&](std::ostream& out) { write_function_csv(out, f); });
}

PLFunction read_function_csv(std::istream& in) {
  std::vector<double> xs, ys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line_no == 1 && line.starts_with("x")) continue;
    auto cells = split_numbers(line, line_no, false);
    if (cells.size() != 2) throw InputError("line " + std::to_string(line_no) + ": expected two columns");
    xs.push_back(cells[0]);
    ys.push_back(cells[1]);
  }
  try {
    return PLFunction(std::move(xs), std::move(ys));
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

PLFunction read_function_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_function_csv(in);
}

void write_grid_csv(std::ostream& out, const GridCopula& grid) {
  const auto mesh = grid.mesh();
  for (double y : mesh) {
    out << ',';
    put(out, y);
  }
  out << '\n';
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    put(out, mesh[i]);
    for (std::size_t j = 0; j < mesh.size(); ++j) {
      out << ',';
      put(out, grid.at(i, j));
    }
    out << '\n';
  }
}

void write_grid_csv(const std::filesystem::path& path, const GridCopula& grid) {
  to_file(path, [&](std::ostream& out) { write_grid_csv(out, grid); });
}

GridCopula read_grid_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> mesh;
  std::vector<double> values;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (mesh.empty()) {
      mesh = split_numbers(line, line_no, true);
      values.reserve(mesh.size() * mesh.size());
      continue;
    }
    auto cells = split_numbers(line, line_no, false);
    if (cells.size() != mesh.size() + 1) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(mesh.size() + 1) + " columns");
    }
    if (row >= mesh.size() || cells[0] != mesh[row]) {
      throw InputError("line " + std::to_string(line_no) + ": row label does not match the mesh");
    }
    values.insert(values.end(), cells.begin() + 1, cells.end());
    ++row;
  }
  if (mesh.empty() || row != mesh.size()) throw InputError("grid is not square");
  try {
    return GridCopula(std::move(mesh), std::move(values));
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

GridCopula read_grid_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_grid_csv(in);
}

}  // namespace trackcop::cli
