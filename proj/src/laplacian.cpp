#include "turnpike/laplacian.hpp"

#include <algorithm>

namespace turnpike {

SparseOperator::SparseOperator(const DomainMask& mask)
    : grid_(mask.grid()), mask_generation_(mask.generation()), h_(mask.grid().h) {
  const GridSpec& g = grid_;
  dof_of_cell_.assign(static_cast<std::size_t>(g.cells()), -1);
  cell_of_dof_.reserve(mask.active_count());
  for (int c = 0; c < g.cells(); ++c) {
    if (mask.active(c)) {
      dof_of_cell_[c] = static_cast<std::int32_t>(cell_of_dof_.size());
      cell_of_dof_.push_back(c);
    }
  }
  dim_ = cell_of_dof_.size();

  const double coupling = -1.0 / (h_ * h_);
  static constexpr int di[4] = {-1, 1, 0, 0};
  static constexpr int dj[4] = {0, 0, -1, 1};
  for (int k = 0; k < 4; ++k) {
    nb_[k].resize(dim_);
    w_[k].resize(dim_);
  }
  for (std::size_t d = 0; d < dim_; ++d) {
    const int c = cell_of_dof_[d];
    const int i = g.cell_i(c), j = g.cell_j(c);
    for (int k = 0; k < 4; ++k) {
      const int ni = i + di[k], nj = j + dj[k];
      const std::int32_t ndof = g.in_range(ni, nj) ? dof_of_cell_[g.index(ni, nj)] : -1;
      if (ndof >= 0) {
        nb_[k][d] = ndof;
        w_[k][d] = coupling;
      } else {
        nb_[k][d] = static_cast<std::int32_t>(d);  // self, weight 0
        w_[k][d] = 0.0;
      }
    }
  }
}

kernels::Stencil SparseOperator::stencil() const {
  kernels::Stencil s;
  s.n = dim_;
  for (int k = 0; k < 4; ++k) {
    s.nb[k] = nb_[k].data();
    s.w[k] = w_[k].data();
  }
  return s;
}

void SparseOperator::apply(const double* x, double* y) const {
  kernels::ops().stencil_apply(stencil(), 4.0 / (h_ * h_), 1.0, x, y);
}

void SparseOperator::apply_shifted(double sigma, const double* x, double* y) const {
  kernels::ops().stencil_apply(stencil(), 1.0 + sigma * 4.0 / (h_ * h_), sigma, x, y);
}

void SparseOperator::gather(const ScalarField& field, std::vector<double>& dofs) const {
  if (field.grid() != grid_) throw GridMismatchError("SparseOperator::gather: grids differ");
  dofs.resize(dim_);
  for (std::size_t d = 0; d < dim_; ++d) dofs[d] = field[cell_of_dof_[d]];
}

void SparseOperator::scatter(const std::vector<double>& dofs, ScalarField& field) const {
  if (field.grid() != grid_) throw GridMismatchError("SparseOperator::scatter: grids differ");
  if (dofs.size() != dim_) throw Error("SparseOperator::scatter: dof vector size mismatch");
  std::fill(field.values().begin(), field.values().end(), 0.0);
  for (std::size_t d = 0; d < dim_; ++d) field[cell_of_dof_[d]] = dofs[d];
  field.set_mask_generation(mask_generation_);
}

ScalarField SparseOperator::scatter(const std::vector<double>& dofs) const {
  ScalarField field(grid_);
  scatter(dofs, field);
  return field;
}

SparseOperator::Csr SparseOperator::csr() const {
  Csr m;
  m.row_ptr.assign(dim_ + 1, 0);
  m.col.reserve(dim_ * 5);
  m.val.reserve(dim_ * 5);
  const double diag = 4.0 / (h_ * h_);
  for (std::size_t d = 0; d < dim_; ++d) {
    struct Entry {
      std::int32_t col;
      double val;
    };
    Entry row[5];
    int count = 0;
    row[count++] = {static_cast<std::int32_t>(d), diag};
    for (int k = 0; k < 4; ++k)
      if (w_[k][d] != 0.0) row[count++] = {nb_[k][d], w_[k][d]};
    std::sort(row, row + count, [](const Entry& a, const Entry& b) { return a.col < b.col; });
    for (int e = 0; e < count; ++e) {
      m.col.push_back(row[e].col);
      m.val.push_back(row[e].val);
    }
    m.row_ptr[d + 1] = static_cast<std::int64_t>(m.col.size());
  }
  return m;
}

SparseOperator assemble_laplacian(const DomainMask& mask) { return SparseOperator(mask); }

}  // namespace turnpike
