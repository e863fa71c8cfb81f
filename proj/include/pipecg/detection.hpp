#ifndef PIPECG_DETECTION_HPP
#define PIPECG_DETECTION_HPP

#include "pipecg/csr_matrix.hpp"
#include "pipecg/solver_state.hpp"

#include <cmath>
#include <stdexcept>

namespace pipecg {

/// Constants the rounding-error bounds need: unit roundoff of binary64,
/// the dimension, c = m*sqrt(n), and the (rough) 2-norm estimate.
struct BoundConstants {
  double eps = 0x1p-53;
  long n = 0;
  double c = 0.0;
  double norm_A = 0.0;
};

inline BoundConstants make_bound_constants(const SparseMatrixD& A) {
  if (A.norm2_estimate <= 0.0)
    throw std::invalid_argument("make_bound_constants: run estimate_norm2 first");
  BoundConstants bc;
  bc.n = static_cast<long>(A.n);
  bc.c = static_cast<double>(A.max_row_nnz) * std::sqrt(static_cast<double>(A.n));
  bc.norm_A = A.norm2_estimate;
  return bc;
}

/// eps*(21+6n)*(||r_{k-1}||^2 + ||r_k||^2)
inline double nu_gap_bound(double norm_r_prev_sq, double norm_r_sq,
                           const BoundConstants& bc) {
  return bc.eps * (21.0 + 6.0 * static_cast<double>(bc.n)) *
         (norm_r_prev_sq + norm_r_sq);
}

/// Preconditioned form: halves the constant, doubles the norm terms. With
/// M = I it collapses bitwise onto nu_gap_bound.
inline double nu_gap_bound_preconditioned(double norm_r_prev_sq, double norm_rt_prev_sq,
                                          double norm_r_sq, double norm_rt_sq,
                                          const BoundConstants& bc) {
  return bc.eps * ((21.0 + 6.0 * static_cast<double>(bc.n)) / 2.0) *
         ((norm_r_prev_sq + norm_rt_prev_sq) + (norm_r_sq + norm_rt_sq));
}

/// eps*||A||*((c+3)||r_k|| + (c+4)||r_{k-1}|| + (c+2)|alpha_{k-1}|*||s_{k-1}||).
/// This is the form the fault-tolerant iterations evaluate; the simplified
/// form below exists for cross-checks only.
inline double w_gap_bound(double norm_r, double norm_r_prev, double abs_alpha_prev,
                          double norm_s_prev, const BoundConstants& bc) {
  return bc.eps * bc.norm_A *
         ((bc.c + 3.0) * norm_r + (bc.c + 4.0) * norm_r_prev +
          (bc.c + 2.0) * abs_alpha_prev * norm_s_prev);
}

/// 2(c+3)*eps*||A||*(||r_{k-1}|| + ||r_k||)
inline double w_gap_bound_simplified(double norm_r, double norm_r_prev,
                                     const BoundConstants& bc) {
  return 2.0 * (bc.c + 3.0) * bc.eps * bc.norm_A * (norm_r_prev + norm_r);
}

/// Preconditioned simplified form; identical shape over the tilde norms.
inline double w_gap_bound_preconditioned(double norm_rt, double norm_rt_prev,
                                         const BoundConstants& bc) {
  return 2.0 * (bc.c + 3.0) * bc.eps * bc.norm_A * (norm_rt_prev + norm_rt);
}

/// |beta|*|<p_{k-1},s_k>| + eps*||s_k||*(||r_k|| + 2|beta|*||p_{k-1}|| +
/// n*(||p_k|| + ||r_k||))
inline double mu_gap_bound(double beta, double ip_p_prev_s, double norm_s,
                           double norm_r, double norm_p_prev, double norm_p,
                           const BoundConstants& bc) {
  return std::abs(beta) * std::abs(ip_p_prev_s) +
         bc.eps * norm_s *
             (norm_r + 2.0 * std::abs(beta) * norm_p_prev +
              static_cast<double>(bc.n) * (norm_p + norm_r));
}

/// Preconditioned form: the residual norms become tilde norms.
inline double mu_gap_bound_preconditioned(double beta, double ip_p_prev_s,
                                          double norm_s, double norm_rt,
                                          double norm_p_prev, double norm_p,
                                          const BoundConstants& bc) {
  return std::abs(beta) * std::abs(ip_p_prev_s) +
         bc.eps * norm_s *
             (norm_rt + 2.0 * std::abs(beta) * norm_p_prev +
              static_cast<double>(bc.n) * (norm_p + norm_rt));
}

/// One iteration's detection output. The w pair refers to iteration k-1:
/// its inner product joins the next iteration's reduction, so the criterion
/// runs one iteration late. The other three are immediate.
struct GapReport {
  long k = 0;
  double nu_gap = 0.0, nu_bound = 0.0;
  bool has_w = false;
  double w_gap = 0.0, w_bound = 0.0;  // iteration k-1
  double mu_gap = 0.0, mu_bound = 0.0;
  double rel_mu_diff = 0.0;
  bool rel_skipped = false;  // mu_bound was zero; criterion not applicable
  bool alarm_nu = false, alarm_w = false, alarm_mu = false, alarm_rel = false;

  bool any() const { return alarm_nu || alarm_w || alarm_mu || alarm_rel; }
};

/// Evaluates the four-criterion detection set from two consecutive states.
/// Norms come from the already-computed inner products (|nu|, |gamma|,
/// <p,p>), with absolute values guarding against flip-corrupted negatives.
inline GapReport evaluate_detection_set(const SolverState<double>& sk,
                                        const SolverState<double>& skm1,
                                        const BoundConstants& bc, double threshold) {
  GapReport g;
  g.k = sk.k;
  const double r2k = std::abs(sk.nu);
  const double r2km1 = std::abs(skm1.nu);

  g.nu_gap = std::abs(sk.nu - sk.nu_prime);
  g.nu_bound = nu_gap_bound(r2km1, r2k, bc);
  g.alarm_nu = g.nu_gap > g.nu_bound;

  if (sk.has_w_gap_prev) {
    g.has_w = true;
    g.w_gap = std::sqrt(std::abs(sk.w_gap_prev_sq));
    g.w_bound = w_gap_bound(std::sqrt(r2km1), std::sqrt(std::abs(skm1.prev_nu)),
                            std::abs(skm1.prev_alpha),
                            std::sqrt(std::abs(skm1.prev_gamma)), bc);
    g.alarm_w = g.w_gap > g.w_bound;
  }

  g.mu_gap = std::abs(sk.mu - sk.sigma);
  g.mu_bound = mu_gap_bound(sk.beta, sk.ip_p_prev_s, std::sqrt(std::abs(sk.gamma)),
                            std::sqrt(r2k), std::sqrt(std::abs(skm1.norm_p_sq)),
                            std::sqrt(std::abs(sk.norm_p_sq)), bc);
  g.alarm_mu = g.mu_gap > g.mu_bound;

  if (g.mu_bound > 0.0) {
    g.rel_mu_diff = std::abs(g.mu_bound - g.mu_gap) / g.mu_bound;
    g.alarm_rel = g.rel_mu_diff < threshold;
  } else {
    // Only possible at exact convergence; treat as not violated.
    g.rel_skipped = true;
  }
  return g;
}

struct FpModelBounds {
  double axpy_bound = 0.0;
  double dot_bound = 0.0;
  double matvec_bound = 0.0;
};

/// Right-hand sides of the floating-point model for test oracles:
/// eps*(||x||+2|a|*||y||), eps*n*||x||*||y||, eps*c*||A||*||x||.
inline FpModelBounds fp_model_bounds_reference(const VectorXd& x, const VectorXd& y,
                                               double a, const BoundConstants& bc) {
  FpModelBounds out;
  const double nx = nrm2(x);
  const double ny = nrm2(y);
  const double n = static_cast<double>(x.size());
  out.axpy_bound = bc.eps * (nx + 2.0 * std::abs(a) * ny);
  out.dot_bound = bc.eps * n * nx * ny;
  out.matvec_bound = bc.eps * bc.c * bc.norm_A * nx;
  return out;
}

}  // namespace pipecg

#endif  // PIPECG_DETECTION_HPP
