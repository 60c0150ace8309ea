#include "turnpike/mask.hpp"

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace turnpike {

namespace {

std::uint64_t next_generation() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

}  // namespace

DomainMask::DomainMask(const GridSpec& grid, std::vector<std::uint8_t> active)
    : grid_(grid), active_(std::move(active)) {
  if (static_cast<int>(active_.size()) != grid_.cells())
    throw Error("DomainMask: cell array size does not match grid");
  for (auto& c : active_) c = (c != 0);
  active_count_ = 0;
  for (auto c : active_) active_count_ += c;
  validate();
  generation_ = next_generation();
}

void DomainMask::validate() const {
  if (active_count_ == 0) throw Error("DomainMask: active set is empty");
  for (int i = 0; i < grid_.nx; ++i)
    if (active_[grid_.index(i, 0)] || active_[grid_.index(i, grid_.ny - 1)])
      throw Error("DomainMask: frame cell is active");
  for (int j = 0; j < grid_.ny; ++j)
    if (active_[grid_.index(0, j)] || active_[grid_.index(grid_.nx - 1, j)])
      throw Error("DomainMask: frame cell is active");
}

DomainMask DomainMask::interior(const GridSpec& grid) {
  std::vector<std::uint8_t> a(static_cast<std::size_t>(grid.cells()), 0);
  for (int j = 1; j < grid.ny - 1; ++j)
    for (int i = 1; i < grid.nx - 1; ++i) a[grid.index(i, j)] = 1;
  return DomainMask(grid, std::move(a));
}

DomainMask DomainMask::block(const GridSpec& grid, int i0, int j0, int i1, int j1) {
  std::vector<std::uint8_t> a(static_cast<std::size_t>(grid.cells()), 0);
  for (int j = j0; j < j1; ++j)
    for (int i = i0; i < i1; ++i) {
      if (!grid.in_range(i, j) || grid.on_frame(i, j))
        throw Error("DomainMask::block: block leaves the interior");
      a[grid.index(i, j)] = 1;
    }
  return DomainMask(grid, std::move(a));
}

void DomainMask::set(int i, int j, bool on) {
  if (!grid_.in_range(i, j)) throw Error("DomainMask::set: cell out of range");
  if (on && grid_.on_frame(i, j)) throw Error("DomainMask::set: cannot activate a frame cell");
  std::uint8_t& cell = active_[grid_.index(i, j)];
  if (cell == static_cast<std::uint8_t>(on)) return;
  if (!on && active_count_ == 1) throw Error("DomainMask::set: cannot empty the active set");
  cell = on ? 1 : 0;
  active_count_ += on ? 1 : -1;
  generation_ = next_generation();
}

DomainMask DomainMask::flipped(int cell) const {
  DomainMask copy = *this;
  copy.set(grid_.cell_i(cell), grid_.cell_j(cell), !active(cell));
  return copy;
}

DomainMask DomainMask::with_block(int i0, int j0, int i1, int j1, bool on) const {
  std::vector<std::uint8_t> a = active_;
  for (int j = j0; j < j1; ++j)
    for (int i = i0; i < i1; ++i) {
      if (!grid_.in_range(i, j)) throw Error("DomainMask::with_block: block out of range");
      a[grid_.index(i, j)] = on ? 1 : 0;
    }
  return DomainMask(grid_, std::move(a));
}

bool DomainMask::subset_of(const DomainMask& other) const {
  if (grid_ != other.grid_) throw GridMismatchError("DomainMask::subset_of: grids differ");
  for (std::size_t c = 0; c < active_.size(); ++c)
    if (active_[c] && !other.active_[c]) return false;
  return true;
}

namespace {

// Union-find over inactive cells. The independent test oracle uses BFS.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

int count_complement_components(const DomainMask& mask) {
  const GridSpec& g = mask.grid();
  UnionFind uf(g.cells());
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (mask.active(i, j)) continue;
      const int c = g.index(i, j);
      // Half of the 8-neighborhood; the other half is covered by symmetry.
      static constexpr int di[4] = {1, -1, 0, 1};
      static constexpr int dj[4] = {0, 1, 1, 1};
      for (int k = 0; k < 4; ++k) {
        const int ni = i + di[k], nj = j + dj[k];
        if (g.in_range(ni, nj) && !mask.active(ni, nj)) uf.unite(c, g.index(ni, nj));
      }
    }
  }
  int count = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const int c = g.index(i, j);
      if (!mask.active(c) && uf.find(c) == c) ++count;
    }
  return count;
}

AdmissibleClass::AdmissibleClass(DomainMask omega_, int max_components_)
    : omega(std::move(omega_)), max_components(max_components_) {
  if (max_components < 1) throw Error("AdmissibleClass: max_components must be >= 1");
}

bool is_admissible(const DomainMask& mask, const AdmissibleClass& cls) {
  if (mask.grid() != cls.omega.grid())
    throw GridMismatchError("is_admissible: mask and class grids differ");
  if (!cls.omega.subset_of(mask)) return false;
  return count_complement_components(mask) <= cls.max_components;
}

std::string mask_to_text(const DomainMask& mask) {
  const GridSpec& g = mask.grid();
  char header[96];
  std::snprintf(header, sizeof(header), "%d %d %.17g\n", g.nx, g.ny, g.h);
  std::string out(header);
  out.reserve(out.size() + static_cast<std::size_t>(g.cells()) + g.ny);
  for (int j = g.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx; ++i) out.push_back(mask.active(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

DomainMask mask_from_text(const std::string& text) {
  std::istringstream in(text);
  int nx = 0, ny = 0;
  double h = 0.0;
  if (!(in >> nx >> ny >> h)) throw ConfigError("mask text: malformed header (expected 'nx ny h')");
  GridSpec grid;
  try {
    grid = GridSpec(nx, ny, h);
  } catch (const Error& e) {
    throw ConfigError(std::string("mask text: ") + e.what());
  }
  std::vector<std::uint8_t> a(static_cast<std::size_t>(grid.cells()), 0);
  std::string row;
  std::getline(in, row);  // rest of the header line
  for (int j = ny - 1; j >= 0; --j) {
    if (!std::getline(in, row)) throw ConfigError("mask text: missing row");
    if (static_cast<int>(row.size()) < nx) throw ConfigError("mask text: short row");
    for (int i = 0; i < nx; ++i) {
      if (row[i] == '1')
        a[grid.index(i, j)] = 1;
      else if (row[i] != '0')
        throw ConfigError("mask text: rows must contain only 0/1 characters");
    }
  }
  try {
    return DomainMask(grid, std::move(a));
  } catch (const Error& e) {
    throw ConfigError(std::string("mask text: ") + e.what());
  }
}

void save_mask_text(const std::filesystem::path& path, const DomainMask& mask) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open mask file for writing: " + path.string());
  out << mask_to_text(mask);
}

DomainMask load_mask_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open mask file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return mask_from_text(buf.str());
}

nlohmann::json mask_to_json(const DomainMask& mask) {
  const GridSpec& g = mask.grid();
  std::vector<std::string> rows;
  rows.reserve(g.ny);
  for (int j = g.ny - 1; j >= 0; --j) {
    std::string row(g.nx, '0');
    for (int i = 0; i < g.nx; ++i)
      if (mask.active(i, j)) row[i] = '1';
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"nx", g.nx},
                        {"ny", g.ny},
                        {"h", g.h},
                        {"origin", {g.origin_x, g.origin_y}},
                        {"rows", rows}};
}

DomainMask mask_from_json(const nlohmann::json& j) {
  try {
    GridSpec grid(j.at("nx").get<int>(), j.at("ny").get<int>(), j.at("h").get<double>());
    if (j.contains("origin")) {
      grid.origin_x = j["origin"].at(0).get<double>();
      grid.origin_y = j["origin"].at(1).get<double>();
    }
    const auto& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != grid.ny) throw ConfigError("mask json: wrong row count");
    std::vector<std::uint8_t> a(static_cast<std::size_t>(grid.cells()), 0);
    for (int r = 0; r < grid.ny; ++r) {
      const std::string row = rows.at(r).get<std::string>();
      if (static_cast<int>(row.size()) != grid.nx) throw ConfigError("mask json: wrong row width");
      const int jrow = grid.ny - 1 - r;
      for (int i = 0; i < grid.nx; ++i)
        if (row[i] == '1') a[grid.index(i, jrow)] = 1;
    }
    return DomainMask(grid, std::move(a));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("mask json: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("mask json: ") + e.what());
  }
}

}  // namespace turnpike
