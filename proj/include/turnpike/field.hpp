#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "turnpike/mask.hpp"

namespace turnpike {

/// Grid function with one real value per cell. Fields attached to a mask keep
/// exact zeros on inactive cells (Dirichlet condition / extension by zero);
/// mask_generation records which mask state the field belongs to (0 = the
/// full grid).
class ScalarField {
 public:
  explicit ScalarField(const GridSpec& grid, double fill = 0.0, std::uint64_t mask_generation = 0)
      : grid_(grid),
        values_(static_cast<std::size_t>(grid.cells()), fill),
        mask_generation_(mask_generation) {}

  const GridSpec& grid() const { return grid_; }
  double& at(int i, int j) { return values_[grid_.index(i, j)]; }
  double at(int i, int j) const { return values_[grid_.index(i, j)]; }
  double& operator[](int cell) { return values_[static_cast<std::size_t>(cell)]; }
  double operator[](int cell) const { return values_[static_cast<std::size_t>(cell)]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  int size() const { return grid_.cells(); }

  std::uint64_t mask_generation() const { return mask_generation_; }
  void set_mask_generation(std::uint64_t g) { mask_generation_ = g; }

  /// Discrete L2 norm: sqrt(h^2 sum v^2).
  double l2_norm() const;

  /// Discrete H1 seminorm from forward differences, with the field extended
  /// by zero outside the grid: sqrt(sum over cells of (v_E - v)^2 + (v_N - v)^2).
  /// For a field vanishing off a mask this equals sqrt(<A v, v>_{L2}) with A
  /// the Dirichlet Laplacian of that mask.
  double h1_seminorm() const;

  double h1_norm() const;

  /// Max |v|.
  double max_abs() const;

  bool same_grid(const ScalarField& other) const { return grid_ == other.grid_; }

 private:
  GridSpec grid_;
  std::vector<double> values_;
  std::uint64_t mask_generation_;
};

/// Copy with cells off the mask forced to zero; stamped with the mask's
/// generation.
ScalarField restrict_to(const ScalarField& field, const DomainMask& mask);

/// Extension by zero to the full grid. Values off the mask are zeroed (they
/// are expected to be zero already) and the stamp is reset to the full grid.
/// Preserves the discrete L2 and H1 norms exactly.
ScalarField extend_by_zero(const ScalarField& field, const DomainMask& mask);

// --- serialization -----------------------------------------------------------
//
// CSV: header "i,j,value" then one row per cell, j-major from the bottom row.
// JSON: grid metadata plus the value array. Values print with 17 significant
// digits, so round trips are bit-exact.

void save_field_csv(const std::filesystem::path& path, const ScalarField& field);
ScalarField load_field_csv(const std::filesystem::path& path, const GridSpec& grid);

nlohmann::json field_to_json(const ScalarField& field);
ScalarField field_from_json(const nlohmann::json& j);

}  // namespace turnpike
