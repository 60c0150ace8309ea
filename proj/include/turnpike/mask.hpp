#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "turnpike/grid.hpp"

namespace turnpike {

/// Boolean pixel set representing an open subset of the design rectangle.
/// The outer frame of cells is always inactive, so the complement (taken in
/// the closed rectangle) is never empty. Edits bump a process-wide monotone
/// generation counter, which fields use as a consistency stamp.
///
/// Connectivity convention: the active set is read with 4-connectivity, the
/// complement with 8-connectivity, so a diagonal crack in the active set does
/// not disconnect the complement.
class DomainMask {
 public:
  DomainMask(const GridSpec& grid, std::vector<std::uint8_t> active);

  /// All non-frame cells active.
  static DomainMask interior(const GridSpec& grid);
  /// Cells of [i0,i1) x [j0,j1) active (must not touch the frame).
  static DomainMask block(const GridSpec& grid, int i0, int j0, int i1, int j1);

  const GridSpec& grid() const { return grid_; }
  bool active(int cell) const { return active_[static_cast<std::size_t>(cell)] != 0; }
  bool active(int i, int j) const { return active(grid_.index(i, j)); }
  const std::vector<std::uint8_t>& cells() const { return active_; }
  int active_count() const { return active_count_; }
  std::uint64_t generation() const { return generation_; }

  /// Flip one cell in place. Throws on frame activation or on emptying the
  /// active set; bumps the generation stamp.
  void set(int i, int j, bool on);

  /// Copy with one cell flipped.
  DomainMask flipped(int cell) const;

  /// Copy with all cells of [i0,i1) x [j0,j1) forced to `on`.
  DomainMask with_block(int i0, int j0, int i1, int j1, bool on) const;

  /// True iff mask is a subset of `other` (same grid required).
  bool subset_of(const DomainMask& other) const;

  bool same_cells(const DomainMask& other) const {
    return grid_ == other.grid_ && active_ == other.active_;
  }

 private:
  void validate() const;

  GridSpec grid_;
  std::vector<std::uint8_t> active_;
  int active_count_ = 0;
  std::uint64_t generation_ = 0;
};

/// Number of connected components of the complement (inactive cells,
/// 8-connectivity). Deterministic; independent of scan order.
int count_complement_components(const DomainMask& mask);

/// The admissible class: shapes containing `omega` whose complement has at
/// most `max_components` connected components.
struct AdmissibleClass {
  DomainMask omega;
  int max_components = 1;

  AdmissibleClass(DomainMask omega_, int max_components_);
};

/// True iff omega's active cells are all active in `mask` and the complement
/// component count does not exceed the class bound. Throws GridMismatchError
/// if the grids differ.
bool is_admissible(const DomainMask& mask, const AdmissibleClass& cls);

// --- serialization -----------------------------------------------------------
//
// Text format: header line "nx ny h", then ny rows of 0/1 characters, top row
// (j = ny-1) first. JSON carries the same fields plus the origin. Round trips
// are bit-exact.

std::string mask_to_text(const DomainMask& mask);
DomainMask mask_from_text(const std::string& text);
void save_mask_text(const std::filesystem::path& path, const DomainMask& mask);
DomainMask load_mask_text(const std::filesystem::path& path);

nlohmann::json mask_to_json(const DomainMask& mask);
DomainMask mask_from_json(const nlohmann::json& j);

}  // namespace turnpike
