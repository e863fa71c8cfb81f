#ifndef PIPECG_SYNTHETIC_HPP
#define PIPECG_SYNTHETIC_HPP

#include "pipecg/csr_matrix.hpp"

namespace pipecg {

/// tridiag(-1, 2+shift, -1); shift > -4 sin^2(pi/(2(n+1))) keeps it SPD.
SparseMatrixD tridiag_spd(Eigen::Index n, double shift);

/// 1-D biharmonic stencil (1, -4, 6+shift, -4, 1). Condition numbers up to
/// ~n^4 are reachable, which covers the ill-conditioned test regime.
SparseMatrixD pentadiag_biharmonic(Eigen::Index n, double shift);

/// 5-point Laplacian on an nx-by-ny grid.
SparseMatrixD laplacian_2d(Eigen::Index nx, Eigen::Index ny);

/// diag with geometrically spaced spectrum in [1/condition, 1].
SparseMatrixD diag_geometric(Eigen::Index n, double condition);

/// Shifts that hit a requested condition number exactly (from the known
/// analytic spectra). Throws if kappa is not reachable.
double tridiag_shift_for_condition(Eigen::Index n, double kappa);
double biharmonic_shift_for_condition(Eigen::Index n, double kappa);

}  // namespace pipecg

#endif  // PIPECG_SYNTHETIC_HPP
