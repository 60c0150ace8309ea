#pragma once

#include <cstdint>
#include <vector>

#include "turnpike/field.hpp"
#include "turnpike/kernels.hpp"
#include "turnpike/mask.hpp"

namespace turnpike {

/// Sparse discrete Dirichlet Laplacian (5-point, -Delta) restricted to the
/// active cells of a mask. Symmetric positive definite: diagonal 4/h^2,
/// off-diagonal -1/h^2 between 4-adjacent active cells. Stored as a fixed
/// 4-neighbor struct-of-arrays stencil so applications vectorize; a CSR view
/// is materialized on demand for inspection and dense oracles.
class SparseOperator {
 public:
  explicit SparseOperator(const DomainMask& mask);

  std::size_t dimension() const { return dim_; }
  double scale() const { return h_; }
  const GridSpec& grid() const { return grid_; }
  std::uint64_t mask_generation() const { return mask_generation_; }

  /// dof index per cell (-1 on inactive cells).
  const std::vector<std::int32_t>& dof_of_cell() const { return dof_of_cell_; }
  const std::vector<std::int32_t>& cell_of_dof() const { return cell_of_dof_; }

  /// y = A x on packed dof vectors.
  void apply(const double* x, double* y) const;

  /// y = (I + sigma A) x on packed dof vectors.
  void apply_shifted(double sigma, const double* x, double* y) const;

  /// Pack a grid field into a dof vector (values at active cells).
  void gather(const ScalarField& field, std::vector<double>& dofs) const;

  /// Unpack a dof vector into a grid field; inactive cells are zeroed and the
  /// field is stamped with the defining mask's generation.
  void scatter(const std::vector<double>& dofs, ScalarField& field) const;
  ScalarField scatter(const std::vector<double>& dofs) const;

  struct Csr {
    std::vector<std::int64_t> row_ptr;
    std::vector<std::int32_t> col;
    std::vector<double> val;
  };

  /// Compressed-sparse-rows view with columns in increasing order per row.
  Csr csr() const;

 private:
  kernels::Stencil stencil() const;

  GridSpec grid_;
  std::uint64_t mask_generation_ = 0;
  std::size_t dim_ = 0;
  double h_ = 0.0;
  std::vector<std::int32_t> dof_of_cell_;
  std::vector<std::int32_t> cell_of_dof_;
  std::vector<std::int32_t> nb_[4];
  std::vector<double> w_[4];
};

/// Assemble the operator for a mask (named per the module contract).
SparseOperator assemble_laplacian(const DomainMask& mask);

}  // namespace turnpike
