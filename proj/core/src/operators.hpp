#pragma once

#include <Eigen/SparseCore>

#include "shapegeo/curves.hpp"

namespace shapegeo::detail {

/// Half-node speeds (r_i + r_{i+1}) / 2 on a closed grid.
RealVec half_speeds(const ArcData& arc);

/// Symmetric stiffness matrix of the compact -D_s^2 on a closed grid, i.e.
/// diag(ds weights) * (-D_s^2). Optionally adds diag(ds weights * potential).
Eigen::SparseMatrix<double> closed_stiffness(const ArcData& arc, const RealVec* potential = nullptr);

}  // namespace shapegeo::detail
