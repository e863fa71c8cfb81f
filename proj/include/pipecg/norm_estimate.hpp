#ifndef PIPECG_NORM_ESTIMATE_HPP
#define PIPECG_NORM_ESTIMATE_HPP

#include "pipecg/csr_matrix.hpp"

namespace pipecg {

/// Power-iteration estimate of ||A||_2 from a fixed seeded start vector.
/// Stops when successive Rayleigh quotients agree to a relative tol. The
/// result is also stored in A.norm2_estimate. The detection bounds only
/// need a rough value; the defaults are plenty.
double estimate_norm2(SparseMatrixD& A, double tol = 1e-4, long max_iters = 200);

}  // namespace pipecg

#endif  // PIPECG_NORM_ESTIMATE_HPP
