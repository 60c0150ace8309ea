#include "turnpike/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace turnpike {

double ScalarField::l2_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return grid_.h * std::sqrt(s);
}

double ScalarField::h1_seminorm() const {
  double s = 0.0;
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const double v = at(i, j);
      const double ve = (i + 1 < grid_.nx) ? at(i + 1, j) : 0.0;
      const double vn = (j + 1 < grid_.ny) ? at(i, j + 1) : 0.0;
      s += (ve - v) * (ve - v) + (vn - v) * (vn - v);
    }
  }
  return std::sqrt(s);
}

double ScalarField::h1_norm() const {
  const double l2 = l2_norm();
  const double h1 = h1_seminorm();
  return std::sqrt(l2 * l2 + h1 * h1);
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

ScalarField restrict_to(const ScalarField& field, const DomainMask& mask) {
  if (field.grid() != mask.grid()) throw GridMismatchError("restrict_to: grids differ");
  ScalarField out = field;
  for (int c = 0; c < out.size(); ++c)
    if (!mask.active(c)) out[c] = 0.0;
  out.set_mask_generation(mask.generation());
  return out;
}

ScalarField extend_by_zero(const ScalarField& field, const DomainMask& mask) {
  ScalarField out = restrict_to(field, mask);
  out.set_mask_generation(0);
  return out;
}

void save_field_csv(const std::filesystem::path& path, const ScalarField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open field file for writing: " + path.string());
  out << "i,j,value\n";
  char line[96];
  const GridSpec& g = field.grid();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      std::snprintf(line, sizeof(line), "%d,%d,%.17g\n", i, j, field.at(i, j));
      out << line;
    }
}

ScalarField load_field_csv(const std::filesystem::path& path, const GridSpec& grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open field file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("i,j,value", 0) != 0)
    throw ConfigError("field csv: missing 'i,j,value' header in " + path.string());
  ScalarField field(grid);
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int i = 0, j = 0;
    double v = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%lg", &i, &j, &v) != 3)
      throw ConfigError("field csv: malformed row '" + line + "'");
    if (!grid.in_range(i, j)) throw ConfigError("field csv: cell out of range");
    field.at(i, j) = v;
    ++rows;
  }
  if (rows != grid.cells()) throw ConfigError("field csv: row count does not match grid");
  return field;
}

nlohmann::json field_to_json(const ScalarField& field) {
  const GridSpec& g = field.grid();
  return nlohmann::json{{"nx", g.nx},
                        {"ny", g.ny},
                        {"h", g.h},
                        {"origin", {g.origin_x, g.origin_y}},
                        {"mask_generation", field.mask_generation()},
                        {"values", std::vector<double>(field.values().begin(), field.values().end())}};
}

ScalarField field_from_json(const nlohmann::json& j) {
  try {
    GridSpec grid(j.at("nx").get<int>(), j.at("ny").get<int>(), j.at("h").get<double>());
    if (j.contains("origin")) {
      grid.origin_x = j["origin"].at(0).get<double>();
      grid.origin_y = j["origin"].at(1).get<double>();
    }
    ScalarField field(grid, 0.0, j.value("mask_generation", std::uint64_t{0}));
    const auto& vals = j.at("values");
    if (static_cast<int>(vals.size()) != grid.cells())
      throw ConfigError("field json: value count does not match grid");
    for (int c = 0; c < grid.cells(); ++c) field[c] = vals.at(c).get<double>();
    return field;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("field json: ") + e.what());
  }
}

}  // namespace turnpike
